"""Minkowski question mark function: exact values, moments, transfer operators,
the period function G(z) and the dyadic zeta function."""

from .config import PrecisionConfig, get_config, set_config, using
from .minkowski import F_exact, F_real, qm_exact, qm_inverse, qm_real, psi
from .moments import default_table, moment_tables
from .periodfn import G_eval
from .transfer import eigenfunction, spectrum
from .zeta import fourier_coeff, zeta_M

__all__ = [
    "PrecisionConfig", "get_config", "set_config", "using",
    "F_exact", "F_real", "qm_exact", "qm_inverse", "qm_real", "psi",
    "default_table", "moment_tables", "G_eval", "eigenfunction", "spectrum",
    "fourier_coeff", "zeta_M",
]
__version__ = "0.1.0"
