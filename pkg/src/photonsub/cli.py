"""Command-line front end.

Subcommands::

    photonsub sweep-entanglement   entanglement measures over an r grid
    photonsub wavefunction         quadrature field plus winding-number summary
    photonsub herald               beam-splitter heralding probabilities
    photonsub reproduce-fig2       k = 1..4 ratio curves and a discrepancy report

Settings are resolved as defaults < ``--config`` JSON file < explicit flags.
Exit codes: 0 success, 2 configuration error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np

from .entanglement import log_negativity_closed
from .errors import PhotonSubError, RangeError
from .fock import K_MAX, R_MAX, SqueezeParams, ladder_coefficients
from .heralding import HERALD_K_MAX, BeamSplitterSpec, herald_subtract
from .quadrature import (
    GRID_LIMIT,
    fit_global_constant,
    make_axis,
    wavefunction_k1_closed,
    wavefunction_series,
    winding_number,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

SWEEP_COLUMNS = ["k", "r", "sum_c", "log_negativity", "ratio_eq16", "ratio_of_logs",
                 "tail_rel", "paper_claim"]
WAVE_COLUMNS = ["x_a", "x_b", "re", "im", "abs2", "phase"]
HERALD_COLUMNS = ["k", "rho2", "probability", "fidelity_ideal"]

# Previously reported start values (r -> 0) of the multiphoton ratio curves,
# keyed by number of subtracted photons.
PAPER_START_CLAIMS = {3: 0.5, 4: 0.042, 5: 1e-6}
PAPER_CLAIM_TEXT = {
    1: "Since ε̃ > 1",
    2: "a very small increase for two photon subtraction which falls sharply after reaching the peak",
    3: "For three photon subtraction the initial value falls to half",
    4: "For four photon subtraction, the starting value is 0.042",
    5: "for five photon subtraction it starts from a value of the order of 10^{-6}",
}
FIG2_PANELS = {"a": 1, "b": 2, "c": 3, "d": 4}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str = "sweep-entanglement"
    r_start: float = 0.0
    r_stop: float = 3.0
    r_step: float = 0.05
    r: float = 0.5
    k: List[int] = field(default_factory=lambda: [1])
    theta: float = 0.0
    tol: float = 1e-12
    grid_min: float = -4.0
    grid_max: float = 4.0
    grid_points: int = 161
    loop_halfwidth: float = 1.0
    rho2: List[float] = field(default_factory=lambda: [0.01])
    cross_check: bool = False
    out: Optional[str] = None
    format: str = "csv"

    def validate(self):
        if not self.r_step > 0:
            raise ConfigError("r-step must be > 0")
        if self.r_start > self.r_stop:
            raise ConfigError("r-start must not exceed r-stop")
        if self.r_start < 0 or self.r_stop > R_MAX:
            raise ConfigError(f"r range must lie within [0, {R_MAX}]")
        if not 0 <= self.r <= R_MAX:
            raise ConfigError(f"r must lie within [0, {R_MAX}]")
        if not 0 < self.tol < 1:
            raise ConfigError("tol must lie in (0, 1)")
        if not self.k:
            raise ConfigError("at least one k is required")
        k_max = HERALD_K_MAX if self.command == "herald" else K_MAX
        if any(k < 0 or k > k_max for k in self.k):
            raise ConfigError(f"k values must lie within [0, {k_max}]")
        if any(not 0 <= x < 1 for x in self.rho2):
            raise ConfigError("rho2 values must lie in [0, 1)")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if not (-GRID_LIMIT <= self.grid_min < self.grid_max <= GRID_LIMIT):
            raise ConfigError(f"grid must satisfy -{GRID_LIMIT} <= grid-min < grid-max <= {GRID_LIMIT}")
        if self.grid_points < 3:
            raise ConfigError("grid-points must be >= 3")
        if not self.loop_halfwidth > 0:
            raise ConfigError("loop-halfwidth must be > 0")

    def r_values(self) -> List[float]:
        n = int(math.floor((self.r_stop - self.r_start) / self.r_step + 1e-9))
        return [round(self.r_start + i * self.r_step, 12) for i in range(n + 1)]


# ---------------------------------------------------------------- output


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render_table(command: str, config: RunConfig, columns, rows, fmt: str) -> str:
    cfg = asdict(config)
    if fmt == "json":
        payload = {"command": command, "config": cfg, "columns": list(columns),
                   "rows": [dict(zip(columns, row)) for row in rows]}
        return json.dumps(payload, indent=1, ensure_ascii=False) + "\n"
    buf = io.StringIO()
    buf.write(f"# command: {command}\n")
    buf.write(f"# config: {json.dumps(cfg, sort_keys=True, ensure_ascii=False)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _emit(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
    else:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")


# ---------------------------------------------------------------- commands


def sweep_rows(ks, r_values, theta, tol):
    rows = []
    for k in ks:
        for r in r_values:
            state = ladder_coefficients(k, SqueezeParams(r, theta), tol)
            rep = log_negativity_closed(state)
            claim = PAPER_START_CLAIMS.get(k) if r == 0 else None
            rows.append([k, r, rep.sum_c, rep.log_negativity, rep.ratio_eq16,
                         rep.ratio_of_logs, rep.tail_rel, claim])
    return rows


def cmd_sweep_entanglement(config: RunConfig) -> int:
    rows = sweep_rows(config.k, config.r_values(), config.theta, config.tol)
    _emit(render_table("sweep-entanglement", config, SWEEP_COLUMNS, rows, config.format),
          config.out)
    return EXIT_OK


def cmd_wavefunction(config: RunConfig) -> int:
    if len(config.k) != 1:
        raise ConfigError("wavefunction takes a single k")
    k = config.k[0]
    params = SqueezeParams(config.r, config.theta)
    state = ladder_coefficients(k, params, config.tol)
    axis = make_axis(config.grid_min, config.grid_max, config.grid_points)
    fld = wavefunction_series(state, axis, axis)

    values = np.asarray(fld.values, dtype=complex)
    XA, XB = np.meshgrid(axis, axis, indexing="ij")
    rows = zip(XA.ravel().tolist(), XB.ravel().tolist(), values.real.ravel().tolist(),
               values.imag.ravel().tolist(), (np.abs(values) ** 2).ravel().tolist(),
               np.angle(values).ravel().tolist())
    _emit(render_table("wavefunction", config, WAVE_COLUMNS, list(rows), config.format),
          config.out)

    h = config.loop_halfwidth
    summary = {"k": k, "r": config.r, "theta": config.theta, "loop": [-h, h, -h, h],
               "orientation": "counterclockwise in (x_a, x_b), x_a horizontal",
               "mass": fld.mass()}
    status = EXIT_OK
    if config.cross_check and k == 1:
        closed = wavefunction_k1_closed(params, axis, axis)
        const, dev = fit_global_constant(closed.values, fld.values)
        summary["closed_form_constant"] = [const.real, const.imag]
        summary["closed_form_max_rel_dev"] = dev
    try:
        summary["winding_number"] = winding_number(fld, (-h, h, -h, h))
    except PhotonSubError as exc:
        summary["winding_number"] = None
        summary["error"] = type(exc).__name__
        summary["message"] = str(exc)
        summary["hint"] = ("increase --grid-points" if "refine" in str(exc)
                           else "change --loop-halfwidth so the loop avoids field zeros")
        status = EXIT_NUMERIC
    text = json.dumps(summary, indent=1, sort_keys=True) + "\n"
    if config.out is None:
        sys.stderr.write(text)
    else:
        Path(config.out + ".summary.json").write_text(text, encoding="utf-8")
    if status != EXIT_OK:
        print(f"error: {summary['error']}: {summary['message']} ({summary['hint']})",
              file=sys.stderr)
    return status


def herald_rows(ks, rho2s, r, theta, tol):
    rows = []
    params = SqueezeParams(r, theta)
    for k in ks:
        for rho2 in rho2s:
            if k > 0 and (rho2 == 0.0 or r == 0.0):
                # impossible outcome: report it instead of failing the batch
                rows.append([k, rho2, 0.0, None])
                continue
            out = herald_subtract(params, BeamSplitterSpec.from_reflectivity(rho2), k, tol)
            rows.append([k, rho2, out.probability, out.fidelity_ideal])
    return rows


def cmd_herald(config: RunConfig) -> int:
    rows = herald_rows(config.k, config.rho2, config.r, config.theta, config.tol)
    _emit(render_table("herald", config, HERALD_COLUMNS, rows, config.format), config.out)
    return EXIT_OK


def _claim_status(k, curve):
    """Compare a computed ratio curve ``[(r, ratio), ...]`` with the stated claim."""
    start = curve[0][1]
    ratios = np.array([v for _, v in curve])
    if k in PAPER_START_CLAIMS:
        claim = PAPER_START_CLAIMS[k]
        ok = abs(start - claim) <= 0.05 * claim
        return f"{claim:g}", "MATCH" if ok else "DIVERGENT"
    if k == 1:
        ok = bool(np.all(ratios[1:] > 1.0))
        return "> 1 for r > 0", "CONSISTENT" if ok else "DIVERGENT"
    # k == 2: small rise to an interior peak, then a sharp fall
    peak = int(np.argmax(ratios))
    ok = 0 < peak < len(ratios) - 1
    return "interior peak", "CONSISTENT" if ok else "DIVERGENT"


def cmd_reproduce_fig2(config: RunConfig) -> int:
    outdir = Path(config.out or "fig2")
    outdir.mkdir(parents=True, exist_ok=True)
    r_values = config.r_values()
    lines = [
        "# Multiphoton ratio curves: computed start values vs reported claims",
        "",
        f"r grid: {r_values[0]} to {r_values[-1]} step {config.r_step}; tol {config.tol}",
        "",
        "| panel | k | computed ratio_eq16 at r=0 | computed at r_max | claim | status | claim text |",
        "|---|---|---|---|---|---|---|",
    ]
    for panel, k in list(FIG2_PANELS.items()) + [("-", 5)]:
        rows = sweep_rows([k], r_values, config.theta, config.tol)
        if panel != "-":
            _emit(render_table("reproduce-fig2", config, SWEEP_COLUMNS, rows, config.format),
                  str(outdir / f"fig2{panel}.{config.format}"))
        curve = [(row[1], row[4]) for row in rows]
        claim, status = _claim_status(k, curve)
        lines.append(
            f"| {panel} | {k} | {curve[0][1]:.6g} | {curve[-1][1]:.6g} | {claim} | {status} "
            f"| \"{PAPER_CLAIM_TEXT[k]}\" |"
        )
    lines += [
        "",
        "Every curve is computed from the normalized state b^k|xi>; at r = 0 it is the",
        "product state |k, 0>, whose ratio is exactly 1 for any k.",
        "",
    ]
    (outdir / "discrepancy.md").write_text("\n".join(lines), encoding="utf-8")
    return EXIT_OK


COMMANDS = {
    "sweep-entanglement": cmd_sweep_entanglement,
    "wavefunction": cmd_wavefunction,
    "herald": cmd_herald,
    "reproduce-fig2": cmd_reproduce_fig2,
}


# ---------------------------------------------------------------- parsing


def _int_list(text):
    try:
        return [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text):
    try:
        return [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--r-start", type=float, default=S)
    common.add_argument("--r-stop", type=float, default=S)
    common.add_argument("--r-step", type=float, default=S)
    common.add_argument("--r", type=float, default=S, help="single r for wavefunction/herald")
    common.add_argument("--k", type=_int_list, default=S, help="comma-separated photon numbers")
    common.add_argument("--theta", type=float, default=S)
    common.add_argument("--tol", type=float, default=S)
    common.add_argument("--grid-min", type=float, default=S)
    common.add_argument("--grid-max", type=float, default=S)
    common.add_argument("--grid-points", type=int, default=S)
    common.add_argument("--loop-halfwidth", type=float, default=S)
    common.add_argument("--rho2", type=_float_list, default=S,
                        help="comma-separated beam-splitter reflectivities")
    common.add_argument("--cross-check", action="store_true", default=S,
                        help="compare the k=1 series field with the closed form")
    common.add_argument("--out", default=S)
    common.add_argument("--format", choices=["csv", "json"], default=S)
    common.add_argument("--config", default=None, help="JSON file with settings")
    common.add_argument("--print-config", action="store_true",
                        help="print the effective configuration and exit")

    parser = argparse.ArgumentParser(prog="photonsub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = asdict(RunConfig(command=args.command))
    known = set(values)
    if args.config:
        try:
            loaded = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}")
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        for key, val in loaded.items():
            key = key.replace("-", "_")
            if key not in known or key == "command":
                raise ConfigError(f"unknown config key {key!r}")
            if key == "k" and isinstance(val, int):
                val = [val]
            if key == "rho2" and isinstance(val, (int, float)):
                val = [val]
            values[key] = val
    for key, val in vars(args).items():
        if key in known and key != "command":
            values[key] = val
    try:
        config = RunConfig(**values)
        config.k = [int(k) for k in config.k]
        config.rho2 = [float(x) for x in config.rho2]
        for name in ("r_start", "r_stop", "r_step", "r", "theta", "tol", "grid_min",
                     "grid_max", "loop_halfwidth"):
            setattr(config, name, float(getattr(config, name)))
        config.grid_points = int(config.grid_points)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid config value: {exc}")
    config.validate()
    return config


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
    except ConfigError as exc:
        print(f"photonsub: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.print_config:
        print(json.dumps(asdict(config), indent=1, sort_keys=True))
        return EXIT_OK
    try:
        return COMMANDS[config.command](config)
    except (ConfigError, RangeError) as exc:
        print(f"photonsub: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhotonSubError as exc:
        print(f"photonsub: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
