"""Declarative experiments: each built-in reproduces one verification target and
writes a deterministic CSV plus a JSON provenance sidecar."""
from __future__ import annotations

import csv
import io
import json
import math
import subprocess
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import defaults
from .asymptotics import AsymptoticLaw, coefficient_inverse
from .counting2d import theorem_ratio_2d
from .dim3 import SeparableBracket3D, theorem_ratio_3d, weak_coupling_channel_count
from .errors import DomainError
from .landau import FieldConfig
from .potentials import potential_from_dict
from .profiles import Disk, SuperGaussian, super_gaussian_envelopes
from .reference import square_well_count, square_well_ground_energy
from .schrodinger1d import bs_count, ground_state_energy, weak_coupling_ratio
from .special_fns import laguerre, log_abs_laguerre, log_reg_inc_gamma_lower
from .toeplitz import nu_value, spectrum, toeplitz_eigenvalue

THEOREMS = ("T2.1", "T2.3", "T2.5", "T2.6", "P3.1", "P3.2", "L5.2", "L3.1")
SCHEMA = 1


class UsageError(DomainError):
    """Invalid experiment specification (maps to exit code 2)."""


def parse_e_grid(spec) -> list[float]:
    """'start,stop,points,log|lin' or an explicit list -> strictly decreasing list."""
    if isinstance(spec, str):
        parts = [p.strip() for p in spec.split(",")]
        if len(parts) != 4 or parts[3] not in ("log", "lin"):
            raise UsageError("e-grid must read start,stop,points,log|lin")
        try:
            start, stop, n = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise UsageError(f"e-grid: {exc}") from None
        if n < 1 or start <= 0 or stop <= 0:
            raise UsageError("e-grid needs positive endpoints and at least one point")
        grid = (np.geomspace(start, stop, n) if parts[3] == "log" else np.linspace(start, stop, n)).tolist()
        if n > 1:
            grid[-1] = stop
    else:
        grid = [float(x) for x in spec]
    if not grid or any(b >= a for a, b in zip(grid[:-1], grid[1:])):
        raise UsageError("e-grid must be strictly decreasing")
    return grid


def distance_trend(distances) -> float:
    """Least-squares slope of |ratio - 1| against grid index (negative = approaching 1)."""
    d = np.asarray(distances, dtype=float)
    if len(d) < 2:
        return math.nan
    if len(d) == 2:
        return float(d[1] - d[0])
    return float(np.polyfit(np.arange(len(d)), d, 1)[0])


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass
class ExperimentSpec:
    name: str
    theorem: str
    parameters: dict
    output_path: str | None = None
    seed: int = defaults.SEED

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentSpec":
        missing = {"name", "theorem", "parameters"} - set(d)
        if missing:
            raise UsageError(f"spec is missing fields: {sorted(missing)}")
        return cls(d["name"], d["theorem"], dict(d["parameters"]), d.get("output_path"),
                   int(d.get("seed", defaults.SEED)))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentSpec":
        return cls.from_dict(json.loads(text))

    def resolved(self) -> dict:
        """Parameters merged with pipeline defaults; raises UsageError with field diagnostics."""
        if self.theorem not in THEOREMS:
            raise UsageError(f"theorem: {self.theorem!r} not in {THEOREMS}")
        check = self.parameters.get("check")
        if check not in PIPELINES:
            raise UsageError(f"parameters.check: {check!r} not in {sorted(PIPELINES)}")
        pipe = PIPELINES[check]
        unknown = set(self.parameters) - set(pipe.defaults) - {"check"}
        if unknown:
            raise UsageError(f"parameters: unknown fields {sorted(unknown)} for check {check!r}")
        params = {**pipe.defaults, **self.parameters}
        pipe.validate(params)
        return params


@dataclass
class ExperimentReport:
    name: str
    theorem: str
    passed: bool
    certified: bool
    checks: list
    columns: list
    rows: list
    timings: dict = field(default_factory=dict)
    csv_path: str | None = None
    json_path: str | None = None

    def csv_text(self) -> str:
        return rows_to_csv(self.columns, self.rows)

    def exit_code(self) -> int:
        if not self.certified:
            return 3
        return 0 if self.passed else 1


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def rows_to_csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(x) for x in r])
    return buf.getvalue()


def git_revision() -> str:
    try:
        out = subprocess.run(["git", "rev-parse", "HEAD"], capture_output=True, text=True,
                             cwd=Path(__file__).resolve().parent, timeout=5)
        return out.stdout.strip() or "unknown"
    except (OSError, subprocess.SubprocessError):
        return "unknown"


# ---------------------------------------------------------------- pipelines

@dataclass(frozen=True)
class Pipeline:
    fn: Callable
    defaults: dict
    validate: Callable[[dict], None] = lambda p: None


def _positive(p, *keys):
    for k in keys:
        v = p[k]
        vals = v if isinstance(v, (list, tuple)) else [v]
        for x in vals:
            if not (isinstance(x, (int, float)) and x > 0):
                raise UsageError(f"parameters.{k}: must be positive, got {v!r}")


def _beta(x):
    return math.inf if x in ("inf", "infinity", math.inf) else float(x)


def _gamma_exact(p, seed, threads):
    rows, worst = [], 0.0
    for mu, b in p["mu_b_pairs"]:
        cfg = FieldConfig(b)
        sp = spectrum(0, SuperGaussian(mu, 1.0), cfg, p["k_max"], p["quad_tol"], threads)
        for k, v in sp.entries:
            exact = -(k + 1) * math.log1p(2.0 * mu / b)
            d = abs(v.log - exact)
            worst = max(worst, d)
            rows.append((mu, b, k, v.log, exact, d))
    checks = [Check("max |dlog| vs (1+2mu/b)^-(k+1)", worst <= p["tolerance"], f"{worst:.3e} <= {p['tolerance']:g}")]
    return ["mu", "b", "k", "log_quadrature", "log_closed_form", "abs_dlog"], rows, checks, True


def _nu_exact(p, seed, threads):
    from concurrent.futures import ThreadPoolExecutor
    cfg = FieldConfig(p["b"])
    rows, worst = [], 0.0
    for r in p["r_values"]:
        ks = list(range(0, p["k_max"] + 1))
        f = lambda k: nu_value(0, k, r, cfg, p["quad_tol"], method="quadrature")
        if threads > 1:
            with ThreadPoolExecutor(threads) as pool:
                vals = list(pool.map(f, ks))
        else:
            vals = [f(k) for k in ks]
        for k, v in zip(ks, vals):
            ref = log_reg_inc_gamma_lower(k + 1.0, cfg.b * r * r / 2.0).log
            d = abs(v.log - ref)
            worst = max(worst, d)
            rows.append((r, k, v.log, ref, d))
    checks = [Check("max |dlog| vs P(k+1, b r^2/2)", worst <= p["tolerance"], f"{worst:.3e} <= {p['tolerance']:g}")]
    return ["r", "k", "log_quadrature", "log_incomplete_gamma", "abs_dlog"], rows, checks, True


def _gamma_asymptotics(p, seed, threads):
    cfg = FieldConfig(p["b"])
    rows, checks = [], []
    for q in p["q_values"]:
        for beta in map(_beta, p["beta_values"]):
            law = AsymptoticLaw(beta, p["mu"], cfg)
            use_exact = beta <= 1 or p["inverse"] == "exact"
            dists = []
            for k in p["k_values"]:
                g = toeplitz_eigenvalue(q, k, SuperGaussian(p["mu"], beta), cfg, p["quad_tol"])
                inv = coefficient_inverse(law, k)
                denom = inv.exact if use_exact else inv.surrogate
                ratio = g.log / denom
                dists.append(abs(ratio + 1.0))
                rows.append((q, beta, k, g.log, denom, "exact" if use_exact else "surrogate", ratio))
            window = p["window_le1"] if beta <= 1 else p["window_gt1"]
            checks.append(Check(f"q={q} beta={beta:g} |ratio+1| at k={p['k_values'][-1]}",
                                dists[-1] <= window, f"{dists[-1]:.4f} <= {window}"))
            checks.append(Check(f"q={q} beta={beta:g} improves", dists[-1] < dists[0],
                                f"{dists[0]:.4f} -> {dists[-1]:.4f}"))
    return ["q", "beta", "k", "log_gamma", "inverse_value", "inverse_kind", "ratio"], rows, checks, True


def _nu_asymptotics(p, seed, threads):
    cfg = FieldConfig(p["b"])
    rows, checks = [], []
    lo, hi = p["window"]
    for q in p["q_values"]:
        for r in p["r_values"]:
            dists, last = [], None
            for k in p["k_values"]:
                v = nu_value(q, k, r, cfg, p["quad_tol"])
                ratio = v.log / (k * math.log(k))
                dists.append(abs(ratio + 1.0))
                last = ratio
                rows.append((q, r, k, v.log, ratio))
            checks.append(Check(f"q={q} r={r:g} ratio in [{lo}, {hi}]", lo <= last <= hi, f"{last:.4f}"))
            checks.append(Check(f"q={q} r={r:g} improves", dists[-1] < dists[0], f"{dists[0]:.4f} -> {dists[-1]:.4f}"))
    return ["q", "r", "k", "log_nu", "ratio"], rows, checks, True


def _laguerre_lemma(p, seed, threads):
    rng = np.random.default_rng(seed)
    rows, checks = [], []
    worst = -math.inf
    n = p["n_samples"]
    qs = rng.integers(0, p["bound_q_max"] + 1, n)
    for q in range(p["bound_q_max"] + 1):
        sel = qs == q
        m = int(sel.sum())
        if m == 0:
            continue
        ks = rng.integers(max(1 - q, -q), p["bound_k_max"] + 1, m)
        xis = rng.uniform(0.0, 1.0, m) * 50.0 * (ks + q)
        excess = -math.inf
        for k in np.unique(ks):
            xs = xis[ks == k]
            _, lg = log_abs_laguerre(q, int(k), xs)
            bound = q * math.log(k + q) + xs / (k + q)
            excess = max(excess, float(np.max(lg - bound)))
        worst = max(worst, excess)
        rows.append(("bound", q, m, excess, 0.0))
    checks.append(Check("|L| <= (k+q)^q e^{xi/(k+q)} on random samples", worst <= 1e-12,
                        f"max log excess {worst:.3e}"))
    xi = np.linspace(0.0, 1.0, 2001)
    for q in range(p["limit_q_max"] + 1):
        devs = []
        for k in p["limit_k_values"]:
            vals = laguerre(q, k, k * xi) / float(k) ** q
            dev = float(np.max(np.abs(vals - (1 - xi) ** q / math.factorial(q))))
            devs.append(dev)
            rows.append(("uniform_limit", q, k, dev, p["limit_tolerance"]))
        checks.append(Check(f"q={q} uniform deviation at k={p['limit_k_values'][0]:g}",
                            devs[0] <= p["limit_tolerance"], f"{devs[0]:.3e}"))
        if len(devs) > 1:
            checks.append(Check(f"q={q} deviation shrinks with k", all(b < a or a == 0.0 for a, b in zip(devs[:-1], devs[1:])),
                                " -> ".join(f"{d:.2e}" for d in devs)))
    return ["kind", "q", "k_or_samples", "value", "limit"], rows, checks, True


def _profile(p):
    if p.get("r") is not None:
        return Disk(float(p["r"]))
    return SuperGaussian(float(p["mu"]), _beta(p["beta"]))


def _bracket(p, cfg):
    """(lower, upper, law): the exact profile, or G_{mu+-delta} -+ M chi_r when an envelope is given."""
    prof = _profile(p)
    env = p.get("envelope")
    if not env:
        return prof, prof, AsymptoticLaw.for_profile(prof, cfg)
    if p.get("r") is not None:
        raise UsageError("parameters.envelope: needs a super-Gaussian profile, not a disk")
    lower, upper = super_gaussian_envelopes(prof.mu, prof.beta, float(env["delta"]),
                                            float(env["r_delta"]), float(env["m_const"]))
    return lower, upper, AsymptoticLaw(prof.beta, prof.mu, cfg)


def _count2d(p, seed, threads):
    cfg = FieldConfig(p["b"])
    grid = parse_e_grid(p["e_grid"])
    prof = _profile(p)
    lower, upper, law = _bracket(p, cfg)
    lo, hi = p["window"]
    rows, checks, certified = [], [], True
    for q in p["q_values"]:
        table = theorem_ratio_2d(q, (lower, upper), cfg, grid, p["epsilon"], law=law, tol=p["quad_tol"],
                                 threads=threads)
        dists = []
        for t in table:
            certified &= t.tail_certified
            dists.append(max(abs(t.ratio_lower - 1), abs(t.ratio_upper - 1)))
            rows.append((t.E, t.abs_log_E, t.lower, t.upper, t.coefficient_value, t.ratio_lower,
                         t.ratio_upper, t.epsilon, t.tail_certified, q, _beta(p["beta"]) if p.get("r") is None else math.inf,
                         float(p["mu"]) if p.get("r") is None else math.nan, cfg.b))
        last = table[-1]
        checks.append(Check(f"q={q} ratio window at E={last.E:g}",
                            lo <= last.ratio_lower and last.ratio_upper <= hi,
                            f"[{last.ratio_lower:.4f}, {last.ratio_upper:.4f}] in [{lo}, {hi}]"))
        slope = distance_trend(dists)
        checks.append(Check(f"q={q} distance to 1 shrinks", slope < 0,
                            f"slope {slope:+.4f}; distances " + ", ".join(f"{d:.4f}" for d in dists)))
        if p["closed_form"] and q == 0 and lower is upper and isinstance(prof, SuperGaussian) and prof.beta == 1:
            exact_tab = theorem_ratio_2d(0, prof, cfg, grid, 0.0, tol=p["quad_tol"])
            lam = 2.0 * prof.mu / cfg.b
            ok = all(t.lower == t.upper == _geometric_count(lam, t.E) for t in exact_tab)
            checks.append(Check("q=0 eps=0 counts equal the geometric closed form", ok,
                                ", ".join(f"{t.lower}" for t in exact_tab)))
    cols = ["E", "abs_log_E", "lower", "upper", "coefficient_value", "ratio_lower", "ratio_upper",
            "epsilon", "tail_certified", "q", "beta", "mu", "b"]
    return cols, rows, checks, certified


def _geometric_count(lam: float, E: float) -> int:
    # #{k >= 0 : (1 + lam)^-(k+1) > E}
    n = 0
    while -(n + 1) * math.log1p(lam) > math.log(E):
        n += 1
    return n


def _mu_independence(p, seed, threads):
    cfg = FieldConfig(p["b"])
    E = float(p["E"])
    rows, ratios = [], []
    for mu in p["mu_values"]:
        t = theorem_ratio_2d(p["q"], SuperGaussian(mu, _beta(p["beta"])), cfg, [E], p["epsilon"], tol=p["quad_tol"])[0]
        ratios.append((t.ratio_lower, t.ratio_upper))
        rows.append((mu, t.E, t.lower, t.upper, t.coefficient_value, t.ratio_lower, t.ratio_upper, t.tail_certified))
    diff = max(abs(a[i] - b[i]) for a in ratios for b in ratios for i in (0, 1))
    checks = [Check(f"ratio spread over mu at E={E:g}", diff <= p["max_spread"], f"{diff:.4f} <= {p['max_spread']}")]
    certified = all(r[-1] for r in rows)
    return ["mu", "E", "lower", "upper", "coefficient_value", "ratio_lower", "ratio_upper", "tail_certified"], rows, checks, certified


def _schrodinger(p, seed, threads):
    a = p["well_half_width"]
    from .potentials import SquareWell
    well = SquareWell(a)
    rows, checks = [], []
    mism = 0
    for g in p["count_g_values"]:
        for E in p["count_E_values"]:
            c = bs_count(E, g, well)
            o = square_well_count(g, a, E)
            mism += c != o
            rows.append(("count", "square", g, E, float(c), float(o)))
    n_pts = len(p["count_g_values"]) * len(p["count_E_values"])
    checks.append(Check(f"square-well counts on {n_pts} points", mism == 0, f"{mism} mismatches"))
    worst = 0.0
    for g in p["energy_g_values"]:
        e = ground_state_energy(g, well)
        o = square_well_ground_energy(g, a)
        worst = max(worst, abs(e / o - 1))
        rows.append(("energy", "square", g, math.nan, e, o))
    checks.append(Check("square-well ground energies", worst <= p["energy_rtol"], f"max rel {worst:.2e}"))
    for vd in p["weak_potentials"]:
        v = potential_from_dict(vd)
        g_min = p["weak_g_m0_min"] / v.moment0
        g_grid = np.geomspace(p["weak_g_max"], g_min, p["weak_points"]).tolist()
        table = weak_coupling_ratio(g_grid, v)
        for t in table:
            rows.append(("weak_coupling", vd["kind"], t.g, math.nan, t.sqrt_energy, t.ratio))
        last = table[-1].ratio
        checks.append(Check(f"{vd['kind']} weak-coupling ratio at g*int v={p['weak_g_m0_min']:g}",
                            abs(last - 1) <= p["weak_tolerance"], f"{last:.5f}"))
    return ["kind", "potential", "g", "E", "computed", "reference"], rows, checks, True


def _count3d(p, seed, threads):
    cfg = FieldConfig(p["b"])
    grid = parse_e_grid(p["e_grid"])
    U_lower, U_upper, law = _bracket(p, cfg)
    v = potential_from_dict(p["potential"])
    br = SeparableBracket3D(U_lower, U_upper, v, v, cfg)
    table = theorem_ratio_3d(br, grid, p["epsilon"], law=law, tol=p["quad_tol"])
    rows, dists = [], []
    for t in table:
        dists.append(max(abs(t.ratio_lower - 1), abs(t.ratio_upper - 1)))
        rows.append((t.E, t.abs_log_sqrtE, t.lower, t.upper, t.coefficient_value, t.ratio_lower,
                     t.ratio_upper, t.channels_used, t.epsilon, t.tail_certified))
    lo, hi = p["window"]
    last = table[-1]
    checks = [
        Check(f"ratio window at E={last.E:g}", lo <= last.ratio_lower and last.ratio_upper <= hi,
              f"[{last.ratio_lower:.4f}, {last.ratio_upper:.4f}] in [{lo}, {hi}]"),
        Check("distance to 1 shrinks", distance_trend(dists) < 0,
              f"slope {distance_trend(dists):+.4f}; distances " + ", ".join(f"{d:.4f}" for d in dists)),
    ]
    if p["shortcut_E"] is not None:
        Es = float(p["shortcut_E"])
        row = min(table, key=lambda t: abs(math.log(t.E / Es)))
        short = weak_coupling_channel_count(br, row.E, p["quad_tol"])
        gap = max(abs(row.lower - short), abs(row.upper - short))
        checks.append(Check(f"channel sum vs weak-coupling shortcut at E={row.E:g}",
                            gap <= p["shortcut_band"], f"{row.lower}/{row.upper} vs {short}"))
    certified = all(t.tail_certified for t in table)
    cols = ["E", "abs_log_sqrtE", "lower", "upper", "coefficient_value", "ratio_lower", "ratio_upper",
            "channels_used", "epsilon", "tail_certified"]
    return cols, rows, checks, certified


def _v_count2d(p):
    _positive(p, "b", "epsilon", "quad_tol")
    env = p.get("envelope")
    if env:
        missing = {"delta", "r_delta", "m_const"} - set(env)
        if missing:
            raise UsageError(f"parameters.envelope: missing {sorted(missing)}")
        if not 0 < float(env["delta"]) < float(p["mu"]):
            raise UsageError("parameters.envelope.delta: must lie in (0, mu)")
    if not p["epsilon"] < 1:
        raise UsageError("parameters.epsilon: must lie in (0, 1)")
    parse_e_grid(p["e_grid"])


PIPELINES: dict[str, Pipeline] = {
    "gamma_exact": Pipeline(_gamma_exact, {
        "mu_b_pairs": [[0.5, 1.0], [1.0, 2.0], [3.0, 1.0]], "k_max": 500,
        "tolerance": 1e-10, "quad_tol": defaults.QUAD_TOL}),
    "nu_exact": Pipeline(_nu_exact, {
        "r_values": [0.5, 1.0, 2.0], "b": 1.0, "k_max": 500,
        "tolerance": 1e-10, "quad_tol": defaults.QUAD_TOL}),
    "gamma_asymptotics": Pipeline(_gamma_asymptotics, {
        "q_values": [0, 1, 2], "beta_values": [0.5, 1.0, 2.0], "mu": 1.0, "b": 1.0,
        "k_values": [256, 4096], "window_le1": 0.05, "window_gt1": 0.2,
        "inverse": "surrogate", "quad_tol": defaults.QUAD_TOL},
        lambda p: _positive(p, "mu", "b", "k_values")),
    "nu_asymptotics": Pipeline(_nu_asymptotics, {
        "q_values": [0, 1, 2], "r_values": [0.5, 2.0], "b": 1.0, "k_values": [256, 4096],
        "window": [-1.15, -0.85], "quad_tol": defaults.QUAD_TOL},
        lambda p: _positive(p, "r_values", "b", "k_values")),
    "laguerre_lemma": Pipeline(_laguerre_lemma, {
        "n_samples": 10_000, "bound_q_max": 5, "bound_k_max": 200,
        "limit_q_max": 4, "limit_k_values": [1e5, 1e6], "limit_tolerance": 0.01}),
    "count2d": Pipeline(_count2d, {
        "q_values": [0], "mu": 0.5, "beta": 1.0, "r": None, "b": 1.0,
        "e_grid": [1e-4, 1e-6, 1e-8, 1e-10, 1e-12], "epsilon": defaults.EPSILON,
        "window": [0.85, 1.15], "closed_form": False, "envelope": None,
        "quad_tol": defaults.QUAD_TOL}, _v_count2d),
    "mu_independence": Pipeline(_mu_independence, {
        "q": 0, "beta": 2.0, "mu_values": [0.5, 2.0], "b": 1.0, "E": 1e-12,
        "epsilon": defaults.EPSILON, "max_spread": 0.05, "quad_tol": defaults.QUAD_TOL},
        lambda p: _positive(p, "mu_values", "b", "E")),
    "schrodinger": Pipeline(_schrodinger, {
        "well_half_width": 1.0,
        "count_g_values": [0.1, 0.9, 3.0, 20.0, 60.0],
        "count_E_values": [1e-10, 1e-3, 0.05, 2.5],
        "energy_g_values": [0.05, 0.1, 0.3, 0.6, 0.9],
        "energy_rtol": 1e-6,
        "weak_potentials": [{"kind": "square", "a": 1.0}, {"kind": "gaussian", "sigma": 1.0}],
        "weak_g_max": 0.1, "weak_g_m0_min": 1e-3, "weak_points": 4, "weak_tolerance": 0.02},
        lambda p: _positive(p, "well_half_width", "count_g_values", "count_E_values", "energy_g_values")),
    "count3d": Pipeline(_count3d, {
        "mu": 0.5, "beta": 1.0, "r": None, "b": 1.0,
        "potential": {"kind": "square", "a": 1.0},
        "e_grid": [1e-6, 1e-8, 1e-10, 1e-12, 1e-14, 1e-16], "epsilon": defaults.EPSILON,
        "window": [0.8, 1.2], "shortcut_E": None, "shortcut_band": 3, "envelope": None,
        "quad_tol": defaults.QUAD_TOL},
        _v_count2d),
}


def _builtin_specs() -> list[ExperimentSpec]:
    S = ExperimentSpec
    return [
        S("beta1-exactness", "P3.1", {"check": "gamma_exact"}),
        S("disk-exactness", "P3.2", {"check": "nu_exact"}),
        S("gamma-asymptotics", "P3.1", {"check": "gamma_asymptotics"}),
        S("nu-asymptotics", "P3.2", {"check": "nu_asymptotics"}),
        S("laguerre-bounds", "L3.1", {"check": "laguerre_lemma"}),
        S("gaussian-count-2d", "T2.1", {"check": "count2d", "q_values": [0, 1], "closed_form": True}),
        S("disk-count-2d", "T2.3", {"check": "count2d", "r": 1.0, "window": [0.6, 1.4]}),
        S("mu-independence-2d", "T2.1", {"check": "mu_independence"}),
        S("weak-coupling-1d", "L5.2", {"check": "schrodinger"}),
        S("gaussian-count-3d", "T2.5", {"check": "count3d", "shortcut_E": 1e-12}),
        S("disk-count-3d", "T2.6", {"check": "count3d", "r": 1.0, "window": [0.5, 1.5]}),
    ]


def list_experiments() -> list[ExperimentSpec]:
    return _builtin_specs()


def get_experiment(name: str) -> ExperimentSpec:
    for s in _builtin_specs():
        if s.name == name:
            return s
    raise UsageError(f"unknown experiment {name!r}; try `list`")


def run(spec: ExperimentSpec, threads: int = 1, write: bool = True) -> ExperimentReport:
    """Validate, compute, check tolerances and (optionally) write CSV + JSON sidecar."""
    params = spec.resolved()
    pipe = PIPELINES[params["check"]]
    t0 = time.perf_counter()
    columns, rows, checks, certified = pipe.fn(params, spec.seed, max(1, int(threads)))
    elapsed = time.perf_counter() - t0
    report = ExperimentReport(spec.name, spec.theorem, all(c.passed for c in checks), certified,
                              checks, columns, rows, {"compute_s": elapsed})
    if write and spec.output_path:
        csv_path = Path(spec.output_path)
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        csv_path.write_text(report.csv_text())
        json_path = csv_path.with_suffix(".json")
        json_path.write_text(json.dumps(sidecar(spec, report, params), indent=2, sort_keys=True, default=str))
        report.csv_path, report.json_path = str(csv_path), str(json_path)
    return report


def sidecar(spec: ExperimentSpec, report: ExperimentReport, params: dict) -> dict:
    return {
        "schema": SCHEMA,
        "experiment": spec.to_dict(),
        "resolved_parameters": params,
        "git_revision": git_revision(),
        "defaults": defaults.snapshot(),
        "timings": report.timings,
        "passed": report.passed,
        "tail_certified": report.certified,
        "checks": [asdict(c) for c in report.checks],
        "columns": report.columns,
    }
