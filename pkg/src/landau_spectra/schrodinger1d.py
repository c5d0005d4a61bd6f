"""Negative spectrum of h(gv) = -d^2/dz^2 - g v on the line.

Counts and the ground state go through the Birman-Schwinger operator
(g / 2 kappa) sqrt(v(z)) exp(-kappa |z - z'|) sqrt(v(z')), kappa = sqrt(E):
h(gv) has exactly as many eigenvalues below -E as this operator has
eigenvalues above 1. The operator is discretized by symmetric Nystrom on
composite Gauss-Legendre panels. The kink of the kernel on the diagonal is
handled by singularity subtraction against the exact integral of
exp(-kappa |z_i - z'|) over the truncated domain.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import brentq

from . import defaults
from .errors import ConvergenceError, DomainError
from .potentials import Potential1D

DEFAULT_N_GRID = defaults.N_GRID
PANEL_ORDER = 16
MAX_DOUBLINGS = defaults.MAX_DOUBLINGS
UNIFORM_SHARE = 0.25  # share of nodes placed uniformly; the rest follow sqrt(v) mass


@functools.lru_cache(maxsize=4)
def _gl(n):
    return np.polynomial.legendre.leggauss(n)


def nystrom_grid(v: Potential1D, L: float, n_grid: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes/weights on [-L, L], denser where sqrt(v) has mass."""
    cuts = sorted({-L, L, *(p for p in v.breakpoints() if -L < p < L)})
    n_panels = max(n_grid // PANEL_ORDER, len(cuts) - 1)
    fine = np.unique(np.concatenate([np.linspace(-L, L, 8001), cuts]))
    dens = np.sqrt(v.value(fine))
    dens = (1 - UNIFORM_SHARE) * dens / max(trapezoid(dens, fine), 1e-300) + UNIFORM_SHARE / (2 * L)
    cdf = np.concatenate([[0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * np.diff(fine))])
    cdf /= cdf[-1]
    # whole panels per segment, at least one each
    seg_mass = np.diff(np.interp(cuts, fine, cdf))
    counts = np.maximum(1, np.round(seg_mass * n_panels).astype(int))
    edges = []
    for (a, b), m in zip(zip(cuts[:-1], cuts[1:]), counts):
        ca, cb = np.interp([a, b], fine, cdf)
        qs = np.linspace(ca, cb, m + 1)
        e = np.interp(qs, cdf, fine)
        e[0], e[-1] = a, b
        edges.append(e[:-1])
    edges = np.concatenate(edges + [[L]])
    x, w = _gl(PANEL_ORDER)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def bs_matrix(v: Potential1D, kappa: float, nodes: np.ndarray, weights: np.ndarray, L: float) -> np.ndarray:
    """Symmetric Nystrom matrix of sqrt(v) R_kappa sqrt(v) (coupling g = 1)."""
    vals = v.value(nodes)
    s = np.sqrt(weights * vals)
    K = np.exp(-kappa * np.abs(nodes[:, None] - nodes[None, :]))
    # exact int_{-L}^{L} exp(-kappa|z_i - z'|) dz'
    exact = -(np.expm1(-kappa * (nodes + L)) + np.expm1(-kappa * (L - nodes))) / kappa
    off = K @ weights - weights  # sum over j != i (K_ii = 1)
    B = s[:, None] * K * s[None, :]
    B[np.diag_indices_from(B)] = vals * (exact - off)
    return B / (2.0 * kappa)


def _power_max(B: np.ndarray, tol: float = 1e-15, max_iter: int = 100_000) -> float:
    x = np.ones(B.shape[0]) / math.sqrt(B.shape[0])
    lam = 0.0
    for _ in range(max_iter):
        y = B @ x
        new = float(x @ y)
        nrm = float(np.linalg.norm(y))
        if nrm == 0.0:
            return 0.0
        x = y / nrm
        if abs(new - lam) <= tol * abs(new):
            return new
        lam = new
    raise ConvergenceError("power iteration did not converge")


class BirmanSchwinger:
    """Discretized Birman-Schwinger operator at fixed (v, E), reusable across couplings.

    ``g_max`` fixes the truncation of infinite-support v; counts are only
    requested for g <= g_max.
    """

    def __init__(self, v: Potential1D, E: float, g_max: float, n_grid: int = DEFAULT_N_GRID):
        if not E > 0:
            raise DomainError("E must be positive")
        if not g_max > 0:
            raise DomainError("coupling must be positive")
        self.v, self.E, self.g_max, self.n_grid = v, E, g_max, n_grid
        self.kappa = math.sqrt(E)
        self.L = v.truncation_radius(g_max, self.kappa)

    @functools.lru_cache(maxsize=8)
    def eigenvalues(self, n: int) -> np.ndarray:
        nodes, weights = nystrom_grid(self.v, self.L, n)
        return np.linalg.eigvalsh(bs_matrix(self.v, self.kappa, nodes, weights, self.L))

    def _count_at(self, g: float, n: int) -> int:
        ev = self.eigenvalues(n)
        return int(len(ev) - np.searchsorted(ev, 1.0 / g, side="right"))

    def count(self, g: float) -> int:
        """N(-E; h(gv)), stable under one doubling of the grid."""
        if not g > 0:
            raise DomainError("coupling must be positive")
        if g > self.g_max * (1 + 1e-12):
            raise DomainError("coupling exceeds the truncation reference g_max")
        if self.E >= g * self.v.sup:
            return 0
        n = self.n_grid
        prev = self._count_at(g, n)
        for _ in range(MAX_DOUBLINGS):
            n *= 2
            cur = self._count_at(g, n)
            if cur == prev:
                return cur
            prev = cur
        raise ConvergenceError(f"count not grid-stable after {MAX_DOUBLINGS} doublings")

    def largest(self, n: int | None = None) -> float:
        return float(self.eigenvalues(n or self.n_grid)[-1])


def bs_count(E: float, g: float, v: Potential1D, n_grid: int = DEFAULT_N_GRID) -> int:
    """Number of eigenvalues of h(gv) below -E."""
    if not E > 0 or not g > 0:
        raise DomainError("E and g must be positive")
    if E >= g * v.sup:
        return 0
    return BirmanSchwinger(v, E, g, n_grid).count(g)


def _largest_bs(v, g, kappa, n, L):
    nodes, weights = nystrom_grid(v, L, n)
    return _power_max(bs_matrix(v, kappa, nodes, weights, L))


def _ground_state_at(g: float, v: Potential1D, n: int) -> float:
    k_hi = math.sqrt(g * v.sup)
    k_lo = min(0.25 * g * v.moment0, 0.5 * k_hi)
    L = v.truncation_radius(g, k_lo)
    f = lambda k: g * _largest_bs(v, g, k, n, L) - 1.0
    while f(k_lo) <= 0:
        k_lo *= 0.5
        L = v.truncation_radius(g, k_lo)
        if k_lo < 1e-300:
            raise ConvergenceError("could not bracket the ground state")
    if f(k_hi) > 0:
        raise ConvergenceError("ground state bracket failed at sqrt(g sup v)")
    kappa = brentq(f, k_lo, k_hi, xtol=1e-300, rtol=1e-13, maxiter=500)
    return kappa * kappa


def ground_state_energy(g: float, v: Potential1D, n_grid: int = DEFAULT_N_GRID,
                        rtol: float = defaults.GROUND_STATE_RTOL) -> float:
    """The binding energy script-E(gv) > 0 of the unique bound state.

    Only defined in the regime g * int |z| v < 1, where uniqueness is guaranteed.
    """
    if not g > 0:
        raise DomainError("coupling must be positive")
    if not g * v.moment1_abs < 1:
        raise DomainError("need g * int|z| v < 1 for a unique bound state")
    n = n_grid
    prev = _ground_state_at(g, v, n)
    for _ in range(MAX_DOUBLINGS + 2):
        n *= 2
        cur = _ground_state_at(g, v, n)
        if abs(cur - prev) <= rtol * cur:
            return cur
        prev = cur
    raise ConvergenceError("ground state energy not grid-stable")


@dataclass(frozen=True)
class WeakCouplingRow:
    g: float
    sqrt_energy: float
    ratio: float


def weak_coupling_ratio(g_grid, v: Potential1D, n_grid: int = DEFAULT_N_GRID) -> list[WeakCouplingRow]:
    """sqrt(script-E(gv)) / ((g/2) int v) along a decreasing g grid."""
    grid = [float(g) for g in g_grid]
    if any(b >= a for a, b in zip(grid[:-1], grid[1:])):
        raise DomainError("g grid must be strictly decreasing")
    rows = []
    for g in grid:
        if not g * v.moment1_abs < 1:
            raise DomainError(f"g = {g} lies outside the uniqueness regime")
    for g in grid:
        s = math.sqrt(ground_state_energy(g, v, n_grid))
        rows.append(WeakCouplingRow(g, s, s / (0.5 * g * v.moment0)))
    return rows
