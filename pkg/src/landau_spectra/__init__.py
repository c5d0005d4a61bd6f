"""Numerical laboratory for Landau-level Toeplitz spectra and eigenvalue counting."""

from .errors import ConvergenceError, DomainError, QuadratureError, UnsupportedError
from .special_fns import LogValue, laguerre, log_gamma, log_reg_inc_gamma_lower
from .landau import FieldConfig, LandauLevel, kernel_diagonal, weight_log_density
from .profiles import Disk, PowerLaw, Scaled, Sum, SuperGaussian, Tabulated
from .toeplitz import (
    ToeplitzSpectrum,
    dominating_bracket,
    gamma_sequence,
    nu_sequence,
    toeplitz_eigenvalue,
)
from .asymptotics import AsymptoticLaw, coefficient, coefficient_inverse, prime_pi
from .counting2d import CountBracket, count_near_level, n_plus, theorem_ratio_2d
from .potentials import Exponential1D, Gaussian1D, Potential1D, SquareWell, TabulatedWell
from .schrodinger1d import bs_count, ground_state_energy, weak_coupling_ratio
from .dim3 import SeparableBracket3D, count_3d_bracket, theorem_ratio_3d

__version__ = "0.1.0"
