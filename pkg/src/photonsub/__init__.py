"""Entanglement and quadrature vortices of photon-subtracted two-mode squeezed vacuum."""

from .entanglement import (
    DenseTwoModeState,
    EntanglementReport,
    densify,
    entanglement_ratio,
    expand_spectrum,
    log_negativity_closed,
    pt_negativity_oracle,
    pt_spectrum_structural,
)
from .errors import *  # noqa: F401,F403
from .fock import (
    K_MAX,
    N_HARD_CAP,
    R_MAX,
    SchmidtLadderState,
    SqueezeParams,
    ladder_coefficients,
    log_sum_coefficients,
    subtracted_coefficients,
    tmsv_coefficients,
    truncate_state,
)
from .heralding import BeamSplitterSpec, HeraldOutcome, fidelity, herald_subtract
from .jacobi import jacobi_eigvalsh
from .quadrature import (
    QuadratureField,
    make_axis,
    oscillator_eigenfunction,
    wavefunction_k1_closed,
    wavefunction_series,
    winding_number,
)

__version__ = "0.1.0"
