"""Asymptotic coefficient functions a_mu^(beta), their inverses, and comparators.

The counting laws near a Landau level read N ~ a(|ln E|). Four regimes:

    beta < 1        (b/2) (kappa/mu)^(1/beta)        quasi-classical
    beta = 1        kappa / ln(1 + 2 mu / b)
    1 < beta < inf  beta/(beta-1) * kappa / ln kappa
    beta = inf      kappa / ln kappa                  compact support

All are defined for kappa > e only.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from . import defaults
from .errors import DomainError, UnsupportedError
from .landau import FieldConfig
from .profiles import DecayProfile, Disk, SuperGaussian

PRIME_SIEVE_LIMIT = defaults.SIEVE_LIMIT


@dataclass(frozen=True)
class AsymptoticLaw:
    beta: float  # math.inf for compactly supported profiles
    mu: float
    config: FieldConfig

    def __post_init__(self):
        if not self.beta > 0:
            raise DomainError("beta must be positive")
        if self.beta <= 1 and not self.mu > 0:
            raise DomainError("mu must be positive for beta <= 1")

    @classmethod
    def for_profile(cls, profile: DecayProfile, config: FieldConfig) -> "AsymptoticLaw":
        if isinstance(profile, SuperGaussian):
            return cls(profile.beta, profile.mu, config)
        if isinstance(profile, Disk):
            return cls(math.inf, 1.0, config)
        raise UnsupportedError(f"no asymptotic law registered for {type(profile).__name__}")

    @property
    def regime(self) -> str:
        if self.beta < 1:
            return "sub-gaussian"
        if self.beta == 1:
            return "gaussian"
        return "compact" if math.isinf(self.beta) else "super-gaussian"


def coefficient(law: AsymptoticLaw, kappa: float) -> float:
    """a_mu^(beta)(kappa) for kappa > e."""
    if not kappa > math.e:
        raise DomainError(f"coefficient needs kappa > e, got {kappa!r}")
    b, mu, beta = law.config.b, law.mu, law.beta
    if beta < 1:
        return 0.5 * b * (kappa / mu) ** (1.0 / beta)
    if beta == 1:
        return kappa / math.log1p(2.0 * mu / b)
    if math.isinf(beta):
        return kappa / math.log(kappa)
    return beta / (beta - 1.0) * kappa / math.log(kappa)


@dataclass(frozen=True)
class InverseValue:
    """Inverse of the coefficient function.

    ``exact`` solves a(kappa) = k; ``surrogate`` is the large-k form
    k ln k (beta-1)/beta (k ln k at beta = inf), which equals ``exact`` for
    beta <= 1. ``exact`` is NaN when k lies below a(e) and no inverse exists.
    """

    exact: float
    surrogate: float

    def __float__(self):
        return self.exact


def coefficient_inverse(law: AsymptoticLaw, k: float) -> InverseValue:
    if not k >= 1:
        raise DomainError("coefficient_inverse needs k >= 1")
    b, mu, beta = law.config.b, law.mu, law.beta
    if beta < 1:
        v = mu * (2.0 * k / b) ** beta
        return InverseValue(v, v)
    if beta == 1:
        v = k * math.log1p(2.0 * mu / b)
        return InverseValue(v, v)
    factor = 1.0 if math.isinf(beta) else (beta - 1.0) / beta
    surrogate = factor * k * math.log(k)
    if k <= coefficient(law, math.e * (1 + 1e-15)):
        return InverseValue(math.nan, surrogate)
    lo = math.e * (1 + 1e-15)
    hi = max(2.0 * surrogate, 4.0 * math.e)
    while coefficient(law, hi) < k:
        hi *= 2.0
    exact = bisect(lambda t: coefficient(law, t) - k, lo, hi, xtol=1e-300, rtol=1e-14, maxiter=2000)
    return InverseValue(exact, surrogate)


def quasi_classical_2d(profile: DecayProfile, config: FieldConfig, E: float) -> float:
    """(b/2pi) |{F > E}| for a radial, non-increasing profile."""
    if not E > 0:
        raise DomainError("E must be positive")
    R = profile.radius_at_level(E)
    return 0.5 * config.b * R * R


def quasi_classical_3d(U_profile: DecayProfile, v, config: FieldConfig, E: float) -> float:
    """(b/2pi) |{X : U(X) * int v > 2 sqrt(E)}| for separable V = U(X) v(z)."""
    if not E > 0:
        raise DomainError("E must be positive")
    return quasi_classical_2d(U_profile, config, 2.0 * math.sqrt(E) / v.moment0)


class _PrimeTable:
    def __init__(self):
        self._lock = threading.Lock()
        self._primes: np.ndarray | None = None

    def primes(self) -> np.ndarray:
        if self._primes is None:
            with self._lock:
                if self._primes is None:
                    n = PRIME_SIEVE_LIMIT
                    sieve = np.ones(n + 1, dtype=bool)
                    sieve[:2] = False
                    for p in range(2, int(n ** 0.5) + 1):
                        if sieve[p]:
                            sieve[p * p::p] = False
                    table = np.flatnonzero(sieve)
                    table.setflags(write=False)
                    self._primes = table
        return self._primes


_PRIMES = _PrimeTable()


def prime_pi(lam: float) -> int:
    """Number of primes <= lam, for lam up to 10^7."""
    if not lam > 0:
        raise DomainError("lambda must be positive")
    if lam > PRIME_SIEVE_LIMIT:
        raise UnsupportedError(f"prime_pi is limited to lambda <= {PRIME_SIEVE_LIMIT}")
    return int(np.searchsorted(_PRIMES.primes(), math.floor(lam), side="right"))
