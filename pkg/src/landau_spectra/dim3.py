"""3D counting below the first Landau level for separable V = U(X_perp) v(z).

Projected onto the lowest Landau level, H(-V) splits into angular-momentum
channels k, each carrying the 1D operator h(kappa_k v) with coupling
kappa_k = lambda_{0,k}(U). The count below E_0 - E is bracketed (up to O(1))
by sums of 1D counts over channels for the lower and (1+eps)-scaled upper
envelopes.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Sequence

from . import defaults
from .asymptotics import AsymptoticLaw, coefficient
from .counting2d import CERT_MARGIN, CERT_WINDOW, DEFAULT_EPSILON, CountBracket, _is_monotone_q0, check_e_grid
from .errors import DomainError
from .landau import FieldConfig
from .potentials import Potential1D
from .profiles import DecayProfile
from .schrodinger1d import DEFAULT_N_GRID, BirmanSchwinger
from .special_fns import LogValue
from .toeplitz import DEFAULT_TOL, toeplitz_eigenvalue

DEFAULT_CHANNEL_BUDGET = defaults.CHANNEL_BUDGET
O1_CAVEAT_3D = "counts exclude the O(1) contribution of the higher Landau levels"


@dataclass(frozen=True)
class SeparableBracket3D:
    """Caller-certified envelopes U_lower v_lower <= V <= U_upper v_upper."""

    U_lower: DecayProfile
    U_upper: DecayProfile
    v_lower: Potential1D
    v_upper: Potential1D
    config: FieldConfig

    @classmethod
    def exact(cls, U: DecayProfile, v: Potential1D, config: FieldConfig) -> "SeparableBracket3D":
        return cls(U, U, v, v, config)


class _Channels:
    """Lazily computed lowest-level eigenvalues of a transverse profile."""

    def __init__(self, U: DecayProfile, config: FieldConfig, tol: float, block: int = 16):
        self.U, self.config, self.tol, self.block = U, config, tol, block
        self.values: list[LogValue] = []
        self._lock = threading.Lock()

    def get(self, k: int) -> LogValue:
        with self._lock:
            while k >= len(self.values):
                start = len(self.values)
                self.values.extend(toeplitz_eigenvalue(0, j, self.U, self.config, self.tol)
                                   for j in range(start, start + self.block))
            return self.values[k]


@dataclass(frozen=True)
class Count3D:
    bracket: CountBracket
    channels_used: int


class ChannelCounter:
    """Reusable channel sums for one separable bracket across many energies."""

    def __init__(self, bracket: SeparableBracket3D, tol: float = DEFAULT_TOL,
                 channel_budget: int = DEFAULT_CHANNEL_BUDGET, n_grid: int = DEFAULT_N_GRID):
        self.br = bracket
        self.tol, self.budget, self.n_grid = tol, channel_budget, n_grid
        self.lo = _Channels(bracket.U_lower, bracket.config, tol)
        self.hi = self.lo if bracket.U_lower == bracket.U_upper else _Channels(bracket.U_upper, bracket.config, tol)
        self.monotone = _is_monotone_q0(bracket.U_upper)

    def _certified(self, k: int, g_hi: list[float], mu_max: float) -> bool:
        # channel k and all later ones cannot bind below -E
        if g_hi[k] * mu_max > 1.0:
            return False
        if self.monotone:
            return True
        if k < CERT_WINDOW:
            return False
        tail = g_hi[k - CERT_WINDOW:k + 1]
        if any(t <= 0 for t in tail):
            return all(t <= 0 for t in tail[1:])
        if any(b >= a for a, b in zip(tail[:-1], tail[1:])):
            return False
        return g_hi[k] * mu_max <= CERT_MARGIN

    def count(self, E: float, epsilon: float = DEFAULT_EPSILON) -> Count3D:
        if not E > 0:
            raise DomainError("E must be positive")
        if not epsilon >= 0:
            raise DomainError("epsilon must be non-negative")
        br = self.br
        sup_u = max(br.U_upper.sup(), 1e-300)
        g_top = (1.0 + epsilon) * sup_u
        if E >= g_top * br.v_upper.sup:
            return Count3D(CountBracket(0, 0, epsilon, True, 0, O1_CAVEAT_3D), 0)
        bs_hi = BirmanSchwinger(br.v_upper, E, g_top, self.n_grid)
        bs_lo = BirmanSchwinger(br.v_lower, E, max(br.U_lower.sup(), sup_u), self.n_grid)
        mu_max = bs_hi.largest(2 * self.n_grid)
        lower = upper = 0
        g_hi: list[float] = []
        k = 0
        certified = False
        while k < self.budget:
            g_hi.append((1.0 + epsilon) * self.hi.get(k).to_real())
            g_lo = self.lo.get(k).to_real()
            if g_hi[k] > 0:
                upper += bs_hi.count(g_hi[k])
            if g_lo > 0:
                lower += bs_lo.count(g_lo)
            if self._certified(k, g_hi, mu_max):
                certified = True
                break
            k += 1
        return Count3D(CountBracket(lower, upper, epsilon, certified, k + 1, O1_CAVEAT_3D),
                       k + 1)


def count_3d_bracket(bracket: SeparableBracket3D, E: float, epsilon: float = DEFAULT_EPSILON,
                     tol: float = DEFAULT_TOL, channel_budget: int = DEFAULT_CHANNEL_BUDGET,
                     n_grid: int = DEFAULT_N_GRID) -> CountBracket:
    """Channel-sum bracket for the number of eigenvalues below E_0 - E."""
    return ChannelCounter(bracket, tol, channel_budget, n_grid).count(E, epsilon).bracket


def weak_coupling_channel_count(bracket: SeparableBracket3D, E: float, tol: float = DEFAULT_TOL,
                                channel_budget: int = DEFAULT_CHANNEL_BUDGET) -> int:
    """#{k : (1/2) kappa_k int v > sqrt(E)}, the channelwise weak-coupling shortcut."""
    ch = _Channels(bracket.U_upper, bracket.config, tol)
    cut = 2.0 * math.sqrt(E) / bracket.v_upper.moment0
    n = 0
    for k in range(channel_budget):
        g = ch.get(k).to_real()
        if g > cut:
            n += 1
        elif _is_monotone_q0(bracket.U_upper):
            break
    return n


@dataclass(frozen=True)
class RatioRow3D:
    E: float
    abs_log_sqrtE: float
    lower: int
    upper: int
    coefficient_value: float
    ratio_lower: float
    ratio_upper: float
    channels_used: int
    epsilon: float
    tail_certified: bool


def theorem_ratio_3d(bracket: SeparableBracket3D, E_grid: Sequence[float],
                     epsilon: float = DEFAULT_EPSILON, law: AsymptoticLaw | None = None,
                     tol: float = DEFAULT_TOL, n_grid: int = DEFAULT_N_GRID) -> list[RatioRow3D]:
    """Channel-sum counts divided by a(|ln sqrt(E)|) along a decreasing grid."""
    grid = check_e_grid(E_grid, 2.0 * math.e)  # |ln sqrt E| > e
    if law is None:
        law = AsymptoticLaw.for_profile(bracket.U_upper, bracket.config)
    counter = ChannelCounter(bracket, tol, n_grid=n_grid)
    rows = []
    for E in grid:
        res = counter.count(E, epsilon)
        L = 0.5 * abs(math.log(E))
        a = coefficient(law, L)
        b = res.bracket
        rows.append(RatioRow3D(E, L, b.lower, b.upper, a, b.lower / a, b.upper / a,
                               res.channels_used, epsilon, b.tail_certified))
    return rows
