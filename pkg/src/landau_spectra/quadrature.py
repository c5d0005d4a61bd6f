"""Peak-shifted log-domain quadrature for positive integrands.

The integrands met here look like xi^k e^{-xi} with k up to ~10^6, so any
scheme that works in linear space overflows. Every panel integral is kept as a
log via log-sum-exp over Gauss-Legendre nodes, panels grow geometrically away
from the peak of the integrand, and each panel is bisected until the one-panel
and two-half-panel rules agree.
"""
from __future__ import annotations

import functools
import math
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import QuadratureError

LogFn = Callable[[np.ndarray], np.ndarray]

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@functools.lru_cache(maxsize=16)
def _gauss_legendre(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, np.log(w)


def logsumexp(values: np.ndarray) -> float:
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return -math.inf
    top = float(np.max(values))
    if top == -math.inf:
        return -math.inf
    if top == math.inf:
        return math.inf
    return top + math.log(float(np.sum(np.exp(values - top))))


def logaddexp(a: float, b: float) -> float:
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    if a < b:
        a, b = b, a
    return a + math.log1p(math.exp(b - a))


def _scalar(logf: LogFn, x: float) -> float:
    return float(logf(np.array([x]))[0])


def _golden_max(logf: LogFn, a: float, c: float, rtol: float) -> float:
    fa_x = a + (1 - GOLDEN) * (c - a)
    fb_x = a + GOLDEN * (c - a)
    fa, fb = _scalar(logf, fa_x), _scalar(logf, fb_x)
    scale = max(abs(a), abs(c), 1e-300)
    while (c - a) > rtol * scale:
        if fa >= fb:
            c, fb_x, fb = fb_x, fa_x, fa
            fa_x = a + (1 - GOLDEN) * (c - a)
            fa = _scalar(logf, fa_x)
        else:
            a, fa_x, fa = fa_x, fb_x, fb
            fb_x = a + GOLDEN * (c - a)
            fb = _scalar(logf, fb_x)
    return fa_x if fa >= fb else fb_x


def scan_grid(lo: float, hi: float, n: int = 128) -> np.ndarray:
    """Mixed linear/geometric grid on [lo, hi] that resolves both ends."""
    lin = np.linspace(lo, hi, n)
    start = max(lo, hi * 1e-10, 1e-300)
    geo = np.geomspace(start, hi, n) if hi > start else np.array([])
    return np.unique(np.concatenate([lin, geo, [lo, hi]]))


def locate_peak(logf: LogFn, lo: float, hi: float, *, n_scan: int = 128,
                polish: bool = True, rtol: float = 1e-6) -> float:
    """Maximizer of a (quasi-)unimodal log-integrand on [lo, hi].

    A coarse scan picks the bracket, golden-section search narrows it and,
    with ``polish``, a root-find on the central-difference derivative pins the
    maximizer to near machine precision.
    """
    grid = scan_grid(lo, hi, n_scan)
    vals = logf(grid)
    if not np.any(np.isfinite(vals)):
        raise QuadratureError("integrand vanishes on the whole scan grid")
    i = int(np.argmax(vals))
    a = grid[max(i - 1, 0)]
    c = grid[min(i + 1, len(grid) - 1)]
    x = _golden_max(logf, a, c, rtol)
    if not polish:
        return x
    h = 1e-4 * (c - a)

    def slope(t):
        return (_scalar(logf, t + h) - _scalar(logf, t - h)) / (2 * h)

    left, right = max(a, lo + h), min(c, hi - h)
    if right > left:
        sl, sr = slope(left), slope(right)
        if np.isfinite(sl) and np.isfinite(sr) and sl > 0 > sr:
            x = brentq(slope, left, right, xtol=1e-15 * max(abs(x), 1.0), rtol=1e-15)
    return x


def peak_width(logf: LogFn, x: float, lo: float, hi: float) -> float:
    """Length scale of the integrand around its peak, from local curvature or slope."""
    span = hi - lo if math.isfinite(hi) else max(abs(x), 1.0) * 10.0
    h = 1e-3 * max(abs(x), 1.0)
    h = min(h, 0.25 * span)
    left, right = max(lo, x - h), min(hi, x + h) if math.isfinite(hi) else x + h
    f0 = _scalar(logf, x)
    fl, fr = _scalar(logf, left), _scalar(logf, right)
    if left < x < right and np.isfinite(fl) and np.isfinite(fr):
        hl, hr = x - left, right - x
        curv = 2.0 * (hl * (fr - f0) + hr * (fl - f0)) / (hl * hr * (hl + hr))
        if curv < 0:
            sigma = 1.0 / math.sqrt(-curv)
            return float(np.clip(sigma, 1e-14 * (1 + abs(x)), span))
    # boundary peak: use the slope
    if np.isfinite(fl) and left < x:
        g = (f0 - fl) / (x - left)
    elif np.isfinite(fr) and right > x:
        g = (fr - f0) / (right - x)
    else:
        g = 0.0
    sigma = 1.0 / abs(g) if g != 0 else span
    return float(np.clip(sigma, 1e-14 * (1 + abs(x)), span))


class _PanelIntegrator:
    def __init__(self, logf: LogFn, tol: float, n_nodes: int, max_depth: int,
                 split_fn: Callable[[float, float], Sequence[float]] | None):
        self.logf = logf
        self.tol = tol
        self.nodes, self.logw = _gauss_legendre(n_nodes)
        self.max_depth = max_depth
        self.split_fn = split_fn
        self.evaluations = 0

    def gl(self, a: float, b: float) -> float:
        half = 0.5 * (b - a)
        if half <= 0:
            return -math.inf
        x = half * self.nodes + 0.5 * (a + b)
        self.evaluations += 1
        return logsumexp(self.logf(x) + self.logw) + math.log(half)

    def integrate(self, a: float, b: float, ref: float) -> float:
        pieces = [a, *(self.split_fn(a, b) if self.split_fn else ()), b]
        total = -math.inf
        for lo, hi in zip(pieces[:-1], pieces[1:]):
            total = logaddexp(total, self._adaptive(lo, hi, self.gl(lo, hi), ref))
        return total

    def _adaptive(self, a: float, b: float, whole: float, ref: float) -> float:
        stack = [(a, b, whole, 0)]
        total = -math.inf
        while stack:
            lo, hi, val, depth = stack.pop()
            mid = 0.5 * (lo + hi)
            left, right = self.gl(lo, mid), self.gl(mid, hi)
            halves = logaddexp(left, right)
            if halves == -math.inf and val == -math.inf:
                continue
            scale = max(ref, whole, halves, total)
            err = abs(math.exp(val - scale) - math.exp(halves - scale)) if np.isfinite(val) else math.inf
            unresolved = (hi - lo) <= 1e-13 * max(abs(lo), abs(hi), 1e-300)
            if err <= self.tol or depth >= self.max_depth or unresolved:
                total = logaddexp(total, halves)
            else:
                stack.append((lo, mid, left, depth + 1))
                stack.append((mid, hi, right, depth + 1))
        return total


def log_integrate(logf: LogFn, lo: float, hi: float, *, peak: float, width: float,
                  breakpoints: Iterable[float] = (), tol: float = 1e-12,
                  n_nodes: int = 20, max_panels: int = 4000, max_depth: int = 40,
                  split_fn: Callable[[float, float], Sequence[float]] | None = None) -> float:
    """ln of the integral of exp(logf) over [lo, hi] (hi may be +inf).

    Panels start at ``peak`` with length ``width`` and double in length while
    walking outward. A side stops once two consecutive panels each contribute
    less than tol/100 of the running total. ``breakpoints`` are never straddled;
    ``split_fn(a, b)`` may supply extra interior cut points per panel.
    """
    if not lo <= peak <= hi:
        raise ValueError("peak must lie in [lo, hi]")
    cuts = sorted(p for p in breakpoints if lo < p < hi)
    integ = _PanelIntegrator(logf, tol, n_nodes, max_depth, split_fn)
    stop_gap = math.log(tol) - math.log(100.0)
    total = -math.inf
    panels = 0

    for direction in (1, -1):
        x, w = peak, width
        quiet = 0
        end = hi if direction == 1 else lo
        while (x < end) if direction == 1 else (x > end):
            if direction == 1:
                nxt = min([x + w, end] + [c for c in cuts if c > x])
                a, b = x, nxt
            else:
                nxt = max([x - w, end] + [c for c in cuts if c < x])
                a, b = nxt, x
            val = integ.integrate(a, b, total)
            total = logaddexp(total, val)
            panels += 1
            if panels > max_panels:
                raise QuadratureError(
                    f"panel budget {max_panels} exhausted", bracket=(total, math.inf))
            if val == -math.inf or val < total + stop_gap:
                quiet += 1
                if quiet >= 2 and total > -math.inf:
                    break
            else:
                quiet = 0
            x = nxt
            w *= 2.0
    return total
