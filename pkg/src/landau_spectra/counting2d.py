"""Eigenvalue counts near a Landau level via the Toeplitz surrogate.

Near E_q the count of eigenvalues of H(V) in (E_q + E, E') is sandwiched,
up to O(1), between n_+(E; (1-eps) P_q V_lo P_q) and n_+(E; (1+eps) P_q V_hi P_q).
Only the Toeplitz counts are computed; the O(1) terms are reported as a caveat.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import defaults
from .asymptotics import AsymptoticLaw, coefficient
from .errors import DomainError
from .landau import FieldConfig
from .profiles import DecayProfile, Disk, PowerLaw, SuperGaussian, Tabulated, flatten
from .special_fns import LogValue
from .toeplitz import DEFAULT_TOL, ToeplitzSpectrum, toeplitz_eigenvalue

DEFAULT_EPSILON = defaults.EPSILON
DEFAULT_K_BUDGET = defaults.K_BUDGET
CERT_WINDOW = defaults.CERT_WINDOW
CERT_MARGIN = defaults.CERT_MARGIN
O1_CAVEAT = "counts exclude O(1) Birman-Schwinger and kernel corrections"


@dataclass(frozen=True)
class CountBracket:
    lower: int
    upper: int
    epsilon: float
    tail_certified: bool
    k_scanned: int
    caveat: str = O1_CAVEAT

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"inverted bracket ({self.lower}, {self.upper})")

    @property
    def authoritative(self) -> bool:
        return self.tail_certified


def n_plus(threshold: float, spectrum: ToeplitzSpectrum | Sequence[LogValue], scale: float = 1.0) -> int:
    """#{k : scale * lambda_k > threshold} (strict)."""
    entries = spectrum.entries if isinstance(spectrum, ToeplitzSpectrum) else list(enumerate(spectrum))
    t = LogValue.from_real(threshold)
    s = LogValue.from_real(scale)
    return sum(1 for _, v in entries if v * s > t)


def _is_monotone_q0(profile: DecayProfile) -> bool:
    # For q = 0 the weight is a Gamma(k+1) density, which increases stochastically
    # with k; a non-increasing F therefore has non-increasing eigenvalues in k.
    for coef, prim in flatten(profile):
        if coef <= 0:
            return False
        if isinstance(prim, (SuperGaussian, Disk, PowerLaw)):
            continue
        if isinstance(prim, Tabulated) and np.all(np.diff(prim.values) <= 0):
            continue
        return False
    return True


class LevelCounter:
    """Lazily extended spectra of the two envelopes at one Landau level.

    Shared across an E-grid so each eigenvalue is computed once.
    """

    def __init__(self, q: int, lower: DecayProfile, upper: DecayProfile, config: FieldConfig,
                 tol: float = DEFAULT_TOL, k_budget: int = DEFAULT_K_BUDGET, block: int = 32,
                 threads: int = 1):
        if q < 0:
            raise DomainError("q must be non-negative")
        self.q, self.lower, self.upper, self.config = q, lower, upper, config
        self.tol, self.k_budget, self.block, self.threads = tol, k_budget, block, threads
        self.same = lower == upper
        self.monotone = q == 0 and _is_monotone_q0(upper)
        self._lo: list[LogValue] = []
        self._hi: list[LogValue] = []
        self._lock = threading.Lock()

    def _eig(self, profile, k):
        return toeplitz_eigenvalue(self.q, k, profile, self.config, self.tol)

    def _extend(self):
        start = -self.q + len(self._hi)
        ks = list(range(start, start + self.block))
        if self.threads > 1:
            from concurrent.futures import ThreadPoolExecutor
            with ThreadPoolExecutor(self.threads) as pool:
                hi = list(pool.map(lambda k: self._eig(self.upper, k), ks))
                lo = hi if self.same else list(pool.map(lambda k: self._eig(self.lower, k), ks))
        else:
            hi = [self._eig(self.upper, k) for k in ks]
            lo = hi if self.same else [self._eig(self.lower, k) for k in ks]
        self._hi.extend(hi)
        self._lo.extend(lo)

    def _certified_at(self, n: int, cut: LogValue) -> bool:
        # all entries with index >= n satisfy scale*lambda_hi <= threshold?
        hi = self._hi
        if self.monotone:
            return hi[n - 1] <= cut
        if n < CERT_WINDOW + 1:
            return False
        tail = [v.log for v in hi[n - CERT_WINDOW - 1:n]]
        if any(math.isinf(t) for t in tail):
            return all(math.isinf(t) for t in tail[1:])
        rho = max(b - a for a, b in zip(tail[:-1], tail[1:]))
        if rho >= 0:
            return False
        # geometric extrapolation from the last entry, with a safety margin
        return tail[-1] <= cut.log + math.log(CERT_MARGIN)

    def spectra(self, E: float, epsilon: float) -> tuple[list[LogValue], list[LogValue], bool]:
        cut = LogValue.from_real(E) / (1.0 + epsilon)
        with self._lock:
            n = 0
            while True:
                if n >= len(self._hi):
                    if len(self._hi) >= self.k_budget:
                        return self._lo[:n], self._hi[:n], False
                    self._extend()
                n += 1
                if self._certified_at(n, cut):
                    return self._lo[:n], self._hi[:n], True

    def count(self, E: float, epsilon: float = DEFAULT_EPSILON) -> CountBracket:
        if not E > 0:
            raise DomainError("E must be positive")
        if not 0 <= epsilon < 1:
            raise DomainError("epsilon must lie in [0, 1)")
        lo, hi, ok = self.spectra(E, epsilon)
        lower = n_plus(E, lo, 1.0 - epsilon)
        upper = n_plus(E, hi, 1.0 + epsilon)
        return CountBracket(lower, upper, epsilon, ok, len(hi))


def count_near_level(q: int, lower: DecayProfile, upper: DecayProfile, config: FieldConfig,
                     E: float, epsilon: float = DEFAULT_EPSILON, tol: float = DEFAULT_TOL,
                     k_budget: int = DEFAULT_K_BUDGET, threads: int = 1) -> CountBracket:
    """Toeplitz-surrogate bracket for the number of eigenvalues in (E_q + E, E')."""
    if not E > 0:
        raise DomainError("E must be positive")
    if upper.is_nonnegative() and E >= (1.0 + epsilon) * upper.sup():
        return CountBracket(0, 0, epsilon, True, 0)
    return LevelCounter(q, lower, upper, config, tol, k_budget, threads=threads).count(E, epsilon)


@dataclass(frozen=True)
class RatioRow:
    E: float
    abs_log_E: float
    lower: int
    upper: int
    coefficient_value: float
    ratio_lower: float
    ratio_upper: float
    epsilon: float
    tail_certified: bool


def check_e_grid(E_grid: Sequence[float], min_abs_log: float) -> list[float]:
    grid = [float(e) for e in E_grid]
    if not grid:
        raise DomainError("empty E grid")
    if any(not e > 0 for e in grid):
        raise DomainError("E grid must be positive")
    if any(b >= a for a, b in zip(grid[:-1], grid[1:])):
        raise DomainError("E grid must be strictly decreasing")
    if any(abs(math.log(e)) <= min_abs_log for e in grid):
        raise DomainError(f"every |ln E| on the grid must exceed {min_abs_log:g}")
    return grid


def theorem_ratio_2d(q: int, profile: DecayProfile | tuple[DecayProfile, DecayProfile],
                     config: FieldConfig, E_grid: Sequence[float], epsilon: float = DEFAULT_EPSILON,
                     law: AsymptoticLaw | None = None, tol: float = DEFAULT_TOL,
                     threads: int = 1) -> list[RatioRow]:
    """Counts divided by a(|ln E|) along a decreasing E grid."""
    grid = check_e_grid(E_grid, math.e)
    lower, upper = profile if isinstance(profile, tuple) else (profile, profile)
    if law is None:
        law = AsymptoticLaw.for_profile(upper, config)
    counter = LevelCounter(q, lower, upper, config, tol, threads=threads)
    rows = []
    for E in grid:
        br = counter.count(E, epsilon)
        L = abs(math.log(E))
        a = coefficient(law, L)
        rows.append(RatioRow(E, L, br.lower, br.upper, a, br.lower / a, br.upper / a,
                             epsilon, br.tail_certified))
    return rows
