"""Non-negative longitudinal potentials v(z) for the 1D operator -d^2/dz^2 - g v."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special
from scipy.interpolate import PchipInterpolator

from .errors import DomainError

TAIL_FRACTION = 1e-14


class Potential1D:
    amplitude: float

    def value(self, z):
        raise NotImplementedError

    @property
    def moment0(self) -> float:
        """int v dz."""
        raise NotImplementedError

    @property
    def moment1_abs(self) -> float:
        """int |z| v dz."""
        raise NotImplementedError

    @property
    def support_radius(self) -> float:
        """Radius beyond which v < 1e-14 * sup v."""
        raise NotImplementedError

    @property
    def sup(self) -> float:
        return self.amplitude

    def tail_mass(self, L: float) -> float:
        """int_{|z| > L} v dz."""
        raise NotImplementedError

    def breakpoints(self) -> list[float]:
        return []

    def finite_support(self) -> bool:
        return False

    def truncation_radius(self, g: float, kappa: float, target: float = 1e-12) -> float:
        """Smallest L (to bisection accuracy) with g * tail_mass(L) / (2 kappa) < target."""
        if self.finite_support():
            return self.support_radius
        need = lambda L: g * self.tail_mass(L) / (2.0 * kappa) < target
        hi = self.support_radius
        while not need(hi):
            hi *= 2.0
        lo = 0.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if need(mid):
                hi = mid
            else:
                lo = mid
        return max(hi, 1e-300)

    def scaled(self, c: float) -> "Potential1D":
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


def _check_amp(amplitude):
    if not (amplitude > 0 and math.isfinite(amplitude)):
        raise DomainError("v must be non-negative and not identically zero (amplitude > 0)")


@dataclass(frozen=True)
class SquareWell(Potential1D):
    """amplitude on |z| < a, zero outside."""

    a: float
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError("half width must be positive")
        _check_amp(self.amplitude)

    def value(self, z):
        return np.where(np.abs(np.asarray(z, dtype=float)) < self.a, self.amplitude, 0.0)

    @property
    def moment0(self):
        return 2.0 * self.a * self.amplitude

    @property
    def moment1_abs(self):
        return self.a ** 2 * self.amplitude

    @property
    def support_radius(self):
        return self.a

    def tail_mass(self, L):
        return max(0.0, 2.0 * (self.a - L)) * self.amplitude

    def finite_support(self):
        return True

    def scaled(self, c):
        return SquareWell(self.a, self.amplitude * c)

    def to_dict(self):
        return {"kind": "square", "a": self.a, "amplitude": self.amplitude}


@dataclass(frozen=True)
class Gaussian1D(Potential1D):
    """amplitude * exp(-z^2 / (2 sigma^2))."""

    sigma: float
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError("sigma must be positive")
        _check_amp(self.amplitude)

    def value(self, z):
        z = np.asarray(z, dtype=float)
        return self.amplitude * np.exp(-z * z / (2.0 * self.sigma ** 2))

    @property
    def moment0(self):
        return self.amplitude * self.sigma * math.sqrt(2.0 * math.pi)

    @property
    def moment1_abs(self):
        return 2.0 * self.amplitude * self.sigma ** 2

    @property
    def support_radius(self):
        return self.sigma * math.sqrt(2.0 * math.log(1.0 / TAIL_FRACTION))

    def tail_mass(self, L):
        return self.moment0 * special.erfc(L / (self.sigma * math.sqrt(2.0)))

    def scaled(self, c):
        return Gaussian1D(self.sigma, self.amplitude * c)

    def to_dict(self):
        return {"kind": "gaussian", "sigma": self.sigma, "amplitude": self.amplitude}


@dataclass(frozen=True)
class Exponential1D(Potential1D):
    """amplitude * exp(-rate |z|)."""

    rate: float
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.rate > 0:
            raise DomainError("rate must be positive")
        _check_amp(self.amplitude)

    def value(self, z):
        return self.amplitude * np.exp(-self.rate * np.abs(np.asarray(z, dtype=float)))

    @property
    def moment0(self):
        return 2.0 * self.amplitude / self.rate

    @property
    def moment1_abs(self):
        return 2.0 * self.amplitude / self.rate ** 2

    @property
    def support_radius(self):
        return math.log(1.0 / TAIL_FRACTION) / self.rate

    def tail_mass(self, L):
        return self.moment0 * math.exp(-self.rate * L)

    def breakpoints(self):
        return [0.0]

    def scaled(self, c):
        return Exponential1D(self.rate, self.amplitude * c)

    def to_dict(self):
        return {"kind": "exponential", "rate": self.rate, "amplitude": self.amplitude}


@dataclass(frozen=True)
class TabulatedWell(Potential1D):
    """Monotone interpolation of samples (z_i, v_i); zero outside [z_0, z_n]."""

    z: tuple
    v: tuple
    amplitude: float = field(init=False)
    _interp: PchipInterpolator = field(init=False, repr=False, compare=False)
    _m0: float = field(init=False, repr=False, compare=False)
    _m1: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if z.ndim != 1 or z.shape != v.shape or len(z) < 2 or np.any(np.diff(z) <= 0):
            raise DomainError("need >= 2 strictly increasing z samples matching v")
        if np.any(v < 0) or not np.any(v > 0):
            raise DomainError("v must be non-negative and not identically zero")
        object.__setattr__(self, "z", tuple(map(float, z)))
        object.__setattr__(self, "v", tuple(map(float, v)))
        object.__setattr__(self, "amplitude", float(v.max()))
        interp = PchipInterpolator(z, v, extrapolate=False)
        object.__setattr__(self, "_interp", interp)
        pts = list(z)
        m0 = sum(integrate.quad(lambda t: float(self.value(t)), a, b, limit=200)[0]
                 for a, b in zip(pts[:-1], pts[1:]))
        m1 = sum(integrate.quad(lambda t: abs(t) * float(self.value(t)), a, b, limit=200)[0]
                 for a, b in zip(pts[:-1], pts[1:]))
        object.__setattr__(self, "_m0", m0)
        object.__setattr__(self, "_m1", m1)

    def value(self, z):
        with np.errstate(invalid="ignore"):
            out = np.nan_to_num(self._interp(np.asarray(z, dtype=float)), nan=0.0)
        return np.maximum(out, 0.0)

    @property
    def moment0(self):
        return self._m0

    @property
    def moment1_abs(self):
        return self._m1

    @property
    def support_radius(self):
        return max(abs(self.z[0]), abs(self.z[-1]))

    def tail_mass(self, L):
        return 0.0 if L >= self.support_radius else self._m0

    def breakpoints(self):
        return list(self.z)

    def finite_support(self):
        return True

    def scaled(self, c):
        return TabulatedWell(self.z, tuple(c * x for x in self.v))

    def to_dict(self):
        return {"kind": "tabulated", "z": list(self.z), "v": list(self.v)}


def potential_from_dict(d: dict) -> Potential1D:
    kind = d.get("kind")
    amp = float(d.get("amplitude", 1.0))
    if kind == "square":
        return SquareWell(float(d["a"]), amp)
    if kind == "gaussian":
        return Gaussian1D(float(d["sigma"]), amp)
    if kind == "exponential":
        return Exponential1D(float(d["rate"]), amp)
    if kind == "tabulated":
        return TabulatedWell(tuple(d["z"]), tuple(d["v"]))
    raise DomainError(f"unknown potential kind {kind!r}")
