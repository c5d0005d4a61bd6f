"""Eigenvalues of P_q F P_q for radial multipliers F.

For radial F the compression is diagonal in the angular-momentum basis and
its (q, k) eigenvalue is the average of F(sqrt(2 xi / b)) against the weight
w_{q,k}(xi). That average is computed in log space by
:func:`quadrature.log_integrate`; composite profiles are reduced to primitives
by linearity.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import brentq

from . import defaults
from .errors import DomainError, UnsupportedError
from .landau import FieldConfig, log_weight
from .profiles import DecayProfile, Disk, SuperGaussian, flatten
from .quadrature import locate_peak, log_integrate, peak_width
from .special_fns import LogValue, log_abs_laguerre, log_laguerre_envelope, log_reg_inc_gamma_lower

DEFAULT_TOL = defaults.QUAD_TOL


def _envelope_log(q: int, k: int, xi: np.ndarray) -> np.ndarray:
    # zero-free majorant of the weight, used only to find the bulk
    lognorm = math.lgamma(q + 1) - math.lgamma(k + q + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        kterm = np.where(xi > 0, k * np.log(np.where(xi > 0, xi, 1.0)),
                         0.0 if k == 0 else (-np.inf if k > 0 else np.inf))
        out = lognorm - xi + kterm + 2.0 * log_laguerre_envelope(q, k, xi)
    return np.where(np.isnan(out), -np.inf, out)


def _laguerre_zero_splitter(q: int, k: int):
    if q == 0:
        return None

    def split(a: float, b: float) -> list[float]:
        xs = np.linspace(a, b, 4 * q + 9)
        s, _ = log_abs_laguerre(q, k, xs)
        out = []
        for i in range(len(xs) - 1):
            if s[i] * s[i + 1] < 0:
                # signed value rescaled by its size at the left end so nothing overflows
                ref = float(log_abs_laguerre(q, k, xs[i:i + 1])[1][0])

                def f(t):
                    st, lt = log_abs_laguerre(q, k, np.array([t]))
                    return float(st[0]) * math.exp(float(lt[0]) - ref)

                out.append(brentq(f, xs[i], xs[i + 1], xtol=4e-16 * max(1.0, xs[i + 1]), rtol=1e-15))
            elif s[i + 1] == 0 and 0 < i + 1 < len(xs) - 1:
                out.append(float(xs[i + 1]))
        return out

    return split


def _log_eigenvalue_primitive(q: int, k: int, profile: DecayProfile, b: float, tol: float) -> float:
    hi = profile.support_xi(b)

    def logf(xi):
        return profile.log_value_xi(xi, b) + log_weight(q, k, xi)

    def env(xi):
        return profile.log_value_xi(xi, b) + _envelope_log(q, k, xi)

    n = k + 2 * q + 1
    scan_hi = min(hi, n + 40.0 * math.sqrt(n) + 100.0)
    peak = locate_peak(env, 0.0, scan_hi, polish=False, rtol=1e-4)
    width = peak_width(env, peak, 0.0, hi)
    width = min(width, max(math.sqrt(n), 1.0))
    return log_integrate(logf, 0.0, hi, peak=peak, width=width,
                         breakpoints=profile.breakpoints_xi(b), tol=tol,
                         split_fn=_laguerre_zero_splitter(q, k))


def _check_qk(q, k):
    if q < 0 or int(q) != q:
        raise DomainError("q must be a non-negative integer")
    if int(k) != k or k < -q:
        raise DomainError(f"k must be an integer >= -q, got k={k!r}, q={q}")


def toeplitz_eigenvalue(q: int, k: int, profile: DecayProfile, config: FieldConfig,
                        tol: float = DEFAULT_TOL) -> LogValue:
    """lambda_{q,k}(F) = int_0^inf F(sqrt(2 xi/b)) w_{q,k}(xi) d xi, as a LogValue."""
    _check_qk(q, k)
    if not tol > 0:
        raise DomainError("tol must be positive")
    total = LogValue.zero()
    for coef, prim in flatten(profile):
        if not prim.primitive:
            raise UnsupportedError(f"cannot integrate profile {prim!r}")
        part = LogValue.from_log(_log_eigenvalue_primitive(int(q), int(k), prim, config.b, tol))
        total = total + part * coef
    return total


@dataclass
class ToeplitzSpectrum:
    q: int
    config: FieldConfig
    entries: list = field(default_factory=list)  # (k, LogValue), contiguous from k = -q
    quad_tolerance: float = DEFAULT_TOL

    def __post_init__(self):
        ks = [k for k, _ in self.entries]
        if ks and ks != list(range(-self.q, -self.q + len(ks))):
            raise DomainError("entries must be indexed contiguously from k = -q")

    @property
    def ks(self) -> np.ndarray:
        return np.array([k for k, _ in self.entries], dtype=int)

    def log_values(self) -> np.ndarray:
        return np.array([v.log for _, v in self.entries])

    def values(self) -> np.ndarray:
        return np.array([v.to_real() for _, v in self.entries])

    def __getitem__(self, k: int) -> LogValue:
        return self.entries[k + self.q][1]

    def __len__(self):
        return len(self.entries)

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "b", "k", "sign", "log_eig", "tol"])
        for k, v in self.entries:
            w.writerow([self.q, repr(self.config.b), k, v.sign, repr(v.log), repr(self.quad_tolerance)])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text

    @classmethod
    def from_csv(cls, source) -> "ToeplitzSpectrum":
        text = Path(source).read_text() if isinstance(source, Path) or (
            isinstance(source, str) and "\n" not in source) else source
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            raise DomainError("empty spectrum CSV")
        q = int(rows[0]["q"])
        entries = [(int(r["k"]), LogValue.from_log(float(r["log_eig"]), int(r["sign"]))) for r in rows]
        return cls(q, FieldConfig(float(rows[0]["b"])), entries, float(rows[0]["tol"]))

    def to_json(self) -> str:
        return json.dumps({
            "q": self.q, "b": self.config.b, "tol": self.quad_tolerance,
            "entries": [{"k": k, "sign": v.sign, "log_eig": v.log if v.sign else None}
                        for k, v in self.entries],
        })

    @classmethod
    def from_json(cls, text: str) -> "ToeplitzSpectrum":
        d = json.loads(text)
        entries = [(e["k"], LogValue.from_log(e["log_eig"], e["sign"]) if e["sign"] else LogValue.zero())
                   for e in d["entries"]]
        return cls(int(d["q"]), FieldConfig(float(d["b"])), entries, float(d["tol"]))


def _build(q: int, ks: Sequence[int], fn, threads: int) -> list:
    if threads <= 1:
        return [(k, fn(k)) for k in ks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        vals = list(pool.map(fn, ks))  # map preserves order
    return list(zip(ks, vals))


def spectrum(q: int, profile: DecayProfile, config: FieldConfig, k_max: int,
             tol: float = DEFAULT_TOL, threads: int = 1) -> ToeplitzSpectrum:
    """Eigenvalues for k = -q .. k_max of an arbitrary radial profile."""
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    ks = list(range(-q, k_max + 1))
    entries = _build(q, ks, lambda k: toeplitz_eigenvalue(q, k, profile, config, tol), threads)
    return ToeplitzSpectrum(q, config, entries, tol)


def gamma_sequence(q: int, profile: SuperGaussian, config: FieldConfig, k_max: int,
                   tol: float = DEFAULT_TOL, threads: int = 1) -> ToeplitzSpectrum:
    """gamma_{q,k}(mu) for k = -q .. k_max."""
    if not isinstance(profile, SuperGaussian):
        raise UnsupportedError("gamma_sequence needs a SuperGaussian profile")
    return spectrum(q, profile, config, k_max, tol, threads)


def nu_value(q: int, k: int, r: float, config: FieldConfig, tol: float = DEFAULT_TOL,
             method: str = "auto") -> LogValue:
    """nu_{q,k}(r), the (q, k) eigenvalue of the disk indicator."""
    _check_qk(q, k)
    if not r > 0:
        raise DomainError("r must be positive")
    if method not in ("auto", "quadrature"):
        raise DomainError(f"unknown method {method!r}")
    if q == 0 and method == "auto":
        return log_reg_inc_gamma_lower(k + 1.0, config.b * r * r / 2.0)
    return toeplitz_eigenvalue(q, k, Disk(r), config, tol)


def nu_sequence(q: int, r: float, config: FieldConfig, k_max: int, tol: float = DEFAULT_TOL,
                threads: int = 1, method: str = "auto") -> ToeplitzSpectrum:
    """nu_{q,k}(r) for k = -q .. k_max; closed form (incomplete gamma) when q = 0."""
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    ks = list(range(-q, k_max + 1))
    entries = _build(q, ks, lambda k: nu_value(q, k, r, config, tol, method), threads)
    return ToeplitzSpectrum(q, config, entries, tol)


def dominating_bracket(q: int, profile_lower: DecayProfile, profile_upper: DecayProfile,
                       config: FieldConfig, k: int, tol: float = DEFAULT_TOL) -> tuple[LogValue, LogValue]:
    """(lambda_{q,k}(lower), lambda_{q,k}(upper)).

    For any radial V with lower <= V <= upper these bracket lambda_{q,k}(V).
    """
    lo = toeplitz_eigenvalue(q, k, profile_lower, config, tol)
    hi = lo if profile_upper == profile_lower else toeplitz_eigenvalue(q, k, profile_upper, config, tol)
    return lo, hi


__all__: Iterable[str] = (
    "ToeplitzSpectrum", "toeplitz_eigenvalue", "gamma_sequence", "nu_sequence", "nu_value",
    "dominating_bracket", "spectrum", "DEFAULT_TOL",
)
