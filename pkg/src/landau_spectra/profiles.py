"""Radial multiplier profiles F(|x|) on the plane.

Primitive profiles (SuperGaussian, Disk, PowerLaw, Tabulated) are integrated
directly; Scaled and Sum are resolved by linearity of the Toeplitz diagonal.
All profiles are radial. A Disk keeps its centre offset for reporting only;
magnetic translations make the off-centre compression unitarily equivalent to
the centred one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError, UnsupportedError


def _xi_to_r(xi, b):
    return np.sqrt(2.0 * np.asarray(xi, dtype=float) / b)


class DecayProfile:
    """Base class. Subclasses provide ``value`` (in |x|) and the xi-space hooks."""

    primitive = True

    def value(self, r):
        raise NotImplementedError

    def log_value_xi(self, xi, b: float) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.value(_xi_to_r(xi, b)))

    def breakpoints_xi(self, b: float) -> list[float]:
        return []

    def support_xi(self, b: float) -> float:
        return math.inf

    def sup(self) -> float:
        raise NotImplementedError

    def is_nonnegative(self) -> bool:
        return True

    def radius_at_level(self, level: float) -> float:
        """sup{r : F(r) > level}, assuming F is non-increasing in r."""
        return _bisect_level_radius(self, level)

    def to_dict(self) -> dict:
        raise NotImplementedError


def _bisect_level_radius(profile: DecayProfile, level: float) -> float:
    grid = np.concatenate([[0.0], np.geomspace(1e-6, 1e6, 400)])
    vals = np.asarray(profile.value(grid), dtype=float)
    if np.any(np.diff(vals) > 1e-12 * max(1.0, float(np.max(np.abs(vals))))):
        raise UnsupportedError("super-level sets need a non-increasing radial profile")
    above = vals > level
    if not above.any():
        return 0.0
    if above.all():
        raise UnsupportedError("super-level set is unbounded on the sampled range")
    j = int(np.argmin(above))  # first index not above
    lo, hi = grid[j - 1], grid[j]
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if float(profile.value(np.array([mid]))[0]) > level:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class SuperGaussian(DecayProfile):
    """G(x) = exp(-mu |x|^(2 beta))."""

    mu: float
    beta: float

    def __post_init__(self):
        if not (self.mu > 0 and self.beta > 0):
            raise DomainError("SuperGaussian needs mu > 0 and beta > 0")

    def value(self, r):
        return np.exp(-self.mu * np.abs(np.asarray(r, dtype=float)) ** (2 * self.beta))

    def log_value_xi(self, xi, b):
        return -self.mu * (2.0 * np.asarray(xi, dtype=float) / b) ** self.beta

    def sup(self):
        return 1.0

    def radius_at_level(self, level):
        if level >= 1.0:
            return 0.0
        if level <= 0.0:
            return math.inf
        return (math.log(1.0 / level) / self.mu) ** (1.0 / (2 * self.beta))

    def to_dict(self):
        return {"kind": "supergaussian", "mu": self.mu, "beta": self.beta}


@dataclass(frozen=True)
class Disk(DecayProfile):
    """Indicator of the open disk of radius r (evaluated centred)."""

    r: float
    center_offset: float = 0.0

    def __post_init__(self):
        if not self.r > 0 or self.center_offset < 0:
            raise DomainError("Disk needs r > 0 and center_offset >= 0")

    def value(self, r):
        return (np.abs(np.asarray(r, dtype=float)) < self.r).astype(float)

    def log_value_xi(self, xi, b):
        xi = np.asarray(xi, dtype=float)
        return np.where(xi < b * self.r ** 2 / 2.0, 0.0, -np.inf)

    def support_xi(self, b):
        return b * self.r ** 2 / 2.0

    def sup(self):
        return 1.0

    def radius_at_level(self, level):
        return self.r if level < 1.0 else 0.0

    def to_dict(self):
        return {"kind": "disk", "r": self.r, "center_offset": self.center_offset}


@dataclass(frozen=True)
class PowerLaw(DecayProfile):
    """|x|^(-alpha) outside |x| = inner_cutoff, constant inside."""

    alpha: float
    inner_cutoff: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.inner_cutoff > 0):
            raise DomainError("PowerLaw needs alpha > 0 and inner_cutoff > 0")

    def value(self, r):
        r = np.maximum(np.abs(np.asarray(r, dtype=float)), self.inner_cutoff)
        return r ** (-self.alpha)

    def log_value_xi(self, xi, b):
        r = np.maximum(_xi_to_r(xi, b), self.inner_cutoff)
        return -self.alpha * np.log(r)

    def breakpoints_xi(self, b):
        return [b * self.inner_cutoff ** 2 / 2.0]

    def sup(self):
        return self.inner_cutoff ** (-self.alpha)

    def radius_at_level(self, level):
        if level >= self.sup():
            return 0.0
        return level ** (-1.0 / self.alpha)

    def to_dict(self):
        return {"kind": "powerlaw", "alpha": self.alpha, "inner_cutoff": self.inner_cutoff}


@dataclass(frozen=True)
class Tabulated(DecayProfile):
    """Monotone (PCHIP) interpolation of radial samples; zero beyond the last radius."""

    radii: tuple
    values: tuple
    _interp: PchipInterpolator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if r.ndim != 1 or r.shape != v.shape or len(r) < 2:
            raise DomainError("Tabulated needs matching 1-D radii/values with >= 2 samples")
        if np.any(np.diff(r) <= 0) or r[0] < 0:
            raise DomainError("radii must be non-negative and strictly increasing")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise DomainError("tabulated values must be finite and non-negative")
        object.__setattr__(self, "radii", tuple(float(x) for x in r))
        object.__setattr__(self, "values", tuple(float(x) for x in v))
        object.__setattr__(self, "_interp", PchipInterpolator(r, v, extrapolate=False))

    def value(self, r):
        r = np.abs(np.asarray(r, dtype=float))
        inner = np.where(r <= self.radii[0], self.values[0], 0.0)
        with np.errstate(invalid="ignore"):
            mid = np.nan_to_num(self._interp(r), nan=0.0)
        out = np.where(r <= self.radii[0], inner, mid)
        return np.maximum(np.where(r > self.radii[-1], 0.0, out), 0.0)

    def breakpoints_xi(self, b):
        return [b * x ** 2 / 2.0 for x in self.radii]

    def support_xi(self, b):
        return b * self.radii[-1] ** 2 / 2.0

    def sup(self):
        grid = np.linspace(0.0, self.radii[-1], 2001)
        return float(np.max(self.value(grid)))

    def to_dict(self):
        return {"kind": "tabulated", "radii": list(self.radii), "values": list(self.values)}


@dataclass(frozen=True)
class Scaled(DecayProfile):
    """c * inner. A negative c is allowed for signed lower envelopes."""

    c: float
    inner: DecayProfile

    primitive = False

    def __post_init__(self):
        if self.c == 0 or not math.isfinite(self.c):
            raise DomainError("Scaled needs a finite non-zero factor")

    def value(self, r):
        return self.c * self.inner.value(r)

    def sup(self):
        return self.c * self.inner.sup() if self.c > 0 else 0.0

    def is_nonnegative(self):
        return self.c > 0 and self.inner.is_nonnegative()

    def radius_at_level(self, level):
        if self.c < 0:
            raise UnsupportedError("super-level sets of a negative profile")
        return self.inner.radius_at_level(level / self.c)

    def to_dict(self):
        return {"kind": "scaled", "c": self.c, "inner": self.inner.to_dict()}


@dataclass(frozen=True)
class Sum(DecayProfile):
    parts: tuple

    primitive = False

    def __post_init__(self):
        if len(self.parts) == 0:
            raise DomainError("Sum needs at least one part")
        object.__setattr__(self, "parts", tuple(self.parts))

    def value(self, r):
        return sum(p.value(r) for p in self.parts)

    def sup(self):
        # sup of the parts' sups bounds the sum from above
        return float(sum(max(p.sup(), 0.0) for p in self.parts))

    def is_nonnegative(self):
        return all(p.is_nonnegative() for p in self.parts)

    def to_dict(self):
        return {"kind": "sum", "parts": [p.to_dict() for p in self.parts]}


def profile_from_dict(d: dict) -> DecayProfile:
    kind = d.get("kind")
    if kind == "supergaussian":
        return SuperGaussian(float(d["mu"]), float(d["beta"]))
    if kind == "disk":
        return Disk(float(d["r"]), float(d.get("center_offset", 0.0)))
    if kind == "powerlaw":
        return PowerLaw(float(d["alpha"]), float(d["inner_cutoff"]))
    if kind == "tabulated":
        return Tabulated(tuple(d["radii"]), tuple(d["values"]))
    if kind == "scaled":
        return Scaled(float(d["c"]), profile_from_dict(d["inner"]))
    if kind == "sum":
        return Sum(tuple(profile_from_dict(p) for p in d["parts"]))
    raise UnsupportedError(f"unknown profile kind {kind!r}")


def super_gaussian_envelopes(mu: float, beta: float, delta: float, r_delta: float,
                             m_const: float) -> tuple[DecayProfile, DecayProfile]:
    """(G_{mu+delta} - M chi_r, G_{mu-delta} + M chi_r), the usual two-sided envelope.

    Any radial V with G_{mu+delta} <= V <= G_{mu-delta} outside r_delta and
    0 <= V <= M everywhere lies between the two.
    """
    if not 0 < delta < mu:
        raise DomainError("need 0 < delta < mu")
    disk = Disk(r_delta)
    lower = Sum((SuperGaussian(mu + delta, beta), Scaled(-m_const, disk)))
    upper = Sum((SuperGaussian(mu - delta, beta), Scaled(m_const, disk)))
    return lower, upper


def flatten(profile: DecayProfile, factor: float = 1.0) -> list[tuple[float, DecayProfile]]:
    """Expand Scaled/Sum into a list of (coefficient, primitive)."""
    if isinstance(profile, Scaled):
        return flatten(profile.inner, factor * profile.c)
    if isinstance(profile, Sum):
        out: list[tuple[float, DecayProfile]] = []
        for p in profile.parts:
            out.extend(flatten(p, factor))
        return out
    return [(factor, profile)]


def radial_profile_names() -> Sequence[str]:
    return ("supergaussian", "disk", "powerlaw", "tabulated", "scaled", "sum")
