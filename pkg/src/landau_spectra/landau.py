"""Landau-level structure in the symmetric gauge (units hbar = 2m = 1).

The projection kernel onto the q-th level is

    K_q(x, x') = (b/2pi) L_q^{(0)}(b|x-x'|^2/2) exp(-b(|x-x'|^2 + 2i(x'y - xy'))/4),

and only its diagonal b/(2pi) is ever needed here. Angular-momentum
eigenfunctions are never materialized: for radial multipliers the Toeplitz
compression is diagonal and only the radial weight w_{q,k} matters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .special_fns import LogValue, log_abs_laguerre


@dataclass(frozen=True)
class FieldConfig:
    b: float

    def __post_init__(self):
        if not self.b > 0:
            raise DomainError(f"field strength b must be positive, got {self.b!r}")

    def level(self, q: int) -> "LandauLevel":
        return LandauLevel(q, (2 * q + 1) * self.b)

    def xi_of_radius(self, r):
        """Map |x| to the weight variable xi = b|x|^2/2."""
        return self.b * np.asarray(r) ** 2 / 2.0


@dataclass(frozen=True)
class LandauLevel:
    q: int
    energy: float

    def __post_init__(self):
        if self.q < 0:
            raise DomainError("level index q must be non-negative")


def log_weight(q: int, k: int, xi) -> np.ndarray:
    """Vectorized ln w_{q,k}(xi); -inf where w vanishes."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    lognorm = math.lgamma(q + 1) - math.lgamma(k + q + 1)
    _, log_l = log_abs_laguerre(q, k, xi)
    with np.errstate(divide="ignore", invalid="ignore"):
        kterm = np.where(xi > 0, k * np.log(xi), 0.0 if k == 0 else (-np.inf if k > 0 else np.inf))
        out = lognorm - xi + kterm + 2.0 * log_l
    return np.where(np.isnan(out), -np.inf, out)


def weight_log_density(q: int, k: int, xi: float) -> LogValue:
    """w_{q,k}(xi) = q!/(k+q)! e^{-xi} xi^k L_q^{(k)}(xi)^2 as a LogValue.

    For fixed (q, k) this is a probability density on [0, inf).
    """
    if k + q < 0 or int(k) != k:
        raise DomainError("need integer k with k + q >= 0")
    if not xi > 0:
        raise DomainError("xi must be positive")
    lg = float(log_weight(q, k, xi)[0])
    return LogValue.from_log(lg)


def kernel_diagonal(config: FieldConfig) -> float:
    """K_q(x, x) = b / (2 pi), independent of q and x."""
    return config.b / (2.0 * math.pi)
