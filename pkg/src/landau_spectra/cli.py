"""landau-lab: command-line front end for spectra, counts and verification runs.

Exit codes: 0 all tolerances met, 1 tolerance failed, 2 usage error,
3 numerical non-convergence (including uncertified tails).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import defaults
from .asymptotics import AsymptoticLaw, coefficient, coefficient_inverse
from .counting2d import theorem_ratio_2d
from .dim3 import SeparableBracket3D, theorem_ratio_3d
from .errors import ConvergenceError, QuadratureError
from .harness import (ExperimentSpec, UsageError, get_experiment, list_experiments, parse_e_grid,
                      rows_to_csv, run)
from .landau import FieldConfig
from .potentials import potential_from_dict
from .profiles import Disk, SuperGaussian, super_gaussian_envelopes
from .schrodinger1d import weak_coupling_ratio
from .toeplitz import nu_sequence, spectrum

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONV = 0, 1, 2, 3


def _beta(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid beta {text!r}") from None


def _common(p: argparse.ArgumentParser, *, profile=True, grid=False):
    p.add_argument("--b", type=float, default=1.0, help="field strength")
    if profile:
        p.add_argument("--q", type=int, default=0, help="Landau level index")
        p.add_argument("--mu", type=float, default=0.5)
        p.add_argument("--beta", type=_beta, default=1.0, help="decay exponent (or 'inf')")
        p.add_argument("--r", type=float, default=None, help="use a disk of this radius instead")
    if grid:
        p.add_argument("--e-grid", default="1e-4,1e-12,5,log", help="start,stop,points,log|lin (decreasing)")
        p.add_argument("--epsilon", type=float, default=defaults.EPSILON)
        env = p.add_argument_group("envelope", "bracket V between G_{mu+delta} - M chi_r and G_{mu-delta} + M chi_r")
        env.add_argument("--delta", type=float, default=None)
        env.add_argument("--r-delta", type=float, default=1.0)
        env.add_argument("--m-const", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=defaults.QUAD_TOL)
    p.add_argument("--out", default=None, help="output path (stdout if omitted)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="landau-lab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("toeplitz-eigs", help="eigenvalues of P_q F P_q for k = -q..k_max")
    _common(p)
    p.add_argument("--k-max", type=int, default=64)

    p = sub.add_parser("count2d", help="counts near a Landau level divided by a(|ln E|)")
    _common(p, grid=True)

    p = sub.add_parser("count3d", help="3D channel-sum counts divided by a(|ln sqrt E|)")
    _common(p, grid=True)
    p.add_argument("--potential", default='{"kind": "square", "a": 1.0}', help="JSON longitudinal potential")
    p.set_defaults(q=0)

    p = sub.add_parser("schrodinger1d", help="weak-coupling table for -d2/dz2 - g v")
    _common(p, profile=False)
    p.add_argument("--potential", default='{"kind": "square", "a": 1.0}')
    p.add_argument("--g-grid", default="0.1,0.001,5,log", help="start,stop,points,log|lin (decreasing)")

    p = sub.add_parser("asymptote", help="coefficient a(kappa) and its inverse")
    _common(p, profile=False)
    p.add_argument("--mu", type=float, default=0.5)
    p.add_argument("--beta", type=_beta, default=1.0)
    p.add_argument("--kappa", default="10,100,1000", help="comma-separated kappa values (> e)")
    p.add_argument("--k", default="10,100,1000", help="comma-separated k values for the inverse")

    p = sub.add_parser("verify", help="run a built-in experiment and check its tolerances")
    p.add_argument("name")
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=defaults.SEED)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--spec", default=None, help="JSON file overriding the built-in spec")

    sub.add_parser("list", help="list built-in experiments")
    return ap


def _profile(a):
    return Disk(a.r) if a.r is not None else SuperGaussian(a.mu, a.beta)


def _bracket(a, cfg):
    """(lower, upper, law) from the profile flags, widened to envelopes when --delta is set."""
    prof = _profile(a)
    if a.delta is None:
        return prof, prof, AsymptoticLaw.for_profile(prof, cfg)
    if a.r is not None:
        raise UsageError("--delta builds super-Gaussian envelopes and cannot be combined with --r")
    lower, upper = super_gaussian_envelopes(a.mu, a.beta, a.delta, a.r_delta, a.m_const)
    return lower, upper, AsymptoticLaw(a.beta, a.mu, cfg)


def _emit(a, columns, rows, meta: dict) -> None:
    if a.format == "json":
        text = json.dumps({"schema": 1, **meta, "columns": columns,
                           "rows": [list(r) for r in rows]}, default=str, indent=1)
    else:
        text = rows_to_csv(columns, rows)
    if a.out:
        Path(a.out).write_text(text)
        if a.format == "csv":
            Path(a.out).with_suffix(".json").write_text(
                json.dumps({"schema": 1, **meta, "defaults": defaults.snapshot(), "columns": columns},
                           default=str, indent=1, sort_keys=True))
    else:
        sys.stdout.write(text)


def _grid_of(text):
    return parse_e_grid(text)


def cmd_toeplitz(a) -> int:
    cfg = FieldConfig(a.b)
    if a.r is not None:
        sp = nu_sequence(a.q, a.r, cfg, a.k_max, a.tol, threads=a.threads)
    else:
        sp = spectrum(a.q, SuperGaussian(a.mu, a.beta), cfg, a.k_max, a.tol, threads=a.threads)
    if a.format == "json":
        text = sp.to_json()
        if a.out:
            Path(a.out).write_text(text)
        else:
            sys.stdout.write(text + "\n")
    else:
        text = sp.to_csv(a.out)
        if not a.out:
            sys.stdout.write(text)
    return EXIT_OK


def cmd_count2d(a) -> int:
    cfg = FieldConfig(a.b)
    lower, upper, law = _bracket(a, cfg)
    rows = theorem_ratio_2d(a.q, (lower, upper), cfg, _grid_of(a.e_grid), a.epsilon, law=law,
                            tol=a.tol, threads=a.threads)
    cols = ["E", "abs_log_E", "lower", "upper", "coefficient_value", "ratio_lower", "ratio_upper",
            "epsilon", "tail_certified", "q", "beta", "mu", "b"]
    beta = math.inf if a.r is not None else a.beta
    mu = math.nan if a.r is not None else a.mu
    out = [(t.E, t.abs_log_E, t.lower, t.upper, t.coefficient_value, t.ratio_lower, t.ratio_upper,
            t.epsilon, t.tail_certified, a.q, beta, mu, a.b) for t in rows]
    _emit(a, cols, out, {"command": "count2d"})
    return EXIT_OK if all(t.tail_certified for t in rows) else EXIT_NONCONV


def cmd_count3d(a) -> int:
    v = potential_from_dict(json.loads(a.potential))
    cfg = FieldConfig(a.b)
    lower, upper, law = _bracket(a, cfg)
    br = SeparableBracket3D(lower, upper, v, v, cfg)
    rows = theorem_ratio_3d(br, _grid_of(a.e_grid), a.epsilon, law=law, tol=a.tol)
    cols = ["E", "abs_log_sqrtE", "lower", "upper", "coefficient_value", "ratio_lower", "ratio_upper",
            "channels_used", "epsilon", "tail_certified"]
    out = [(t.E, t.abs_log_sqrtE, t.lower, t.upper, t.coefficient_value, t.ratio_lower, t.ratio_upper,
            t.channels_used, t.epsilon, t.tail_certified) for t in rows]
    _emit(a, cols, out, {"command": "count3d"})
    return EXIT_OK if all(t.tail_certified for t in rows) else EXIT_NONCONV


def cmd_schrodinger(a) -> int:
    v = potential_from_dict(json.loads(a.potential))
    rows = weak_coupling_ratio(parse_e_grid(a.g_grid), v)
    _emit(a, ["g", "sqrt_energy", "ratio"], [(t.g, t.sqrt_energy, t.ratio) for t in rows],
          {"command": "schrodinger1d"})
    return EXIT_OK


def cmd_asymptote(a) -> int:
    law = AsymptoticLaw(a.beta, a.mu, FieldConfig(a.b))
    rows = []
    for kap in (float(x) for x in a.kappa.split(",") if x):
        rows.append(("coefficient", kap, coefficient(law, kap), math.nan))
    for k in (float(x) for x in a.k.split(",") if x):
        inv = coefficient_inverse(law, k)
        rows.append(("inverse", k, inv.exact, inv.surrogate))
    _emit(a, ["kind", "argument", "value", "surrogate"], rows, {"command": "asymptote"})
    return EXIT_OK


def cmd_verify(a) -> int:
    spec = get_experiment(a.name)
    if a.spec:
        spec = ExperimentSpec.from_json(Path(a.spec).read_text())
    spec.seed = a.seed
    if a.out:
        spec.output_path = a.out
    report = run(spec, threads=a.threads)
    if not spec.output_path:
        sys.stdout.write(report.csv_text())
    for c in report.checks:
        print(f"[{'PASS' if c.passed else 'FAIL'}] {spec.name}: {c.name} ({c.detail})", file=sys.stderr)
    if not report.certified:
        print(f"[NONCONV] {spec.name}: tail certification failed", file=sys.stderr)
    return report.exit_code()


def cmd_list(a) -> int:
    for s in list_experiments():
        print(f"{s.name}\t{s.theorem}\t{s.parameters['check']}")
    return EXIT_OK


COMMANDS = {
    "toeplitz-eigs": cmd_toeplitz, "count2d": cmd_count2d, "count3d": cmd_count3d,
    "schrodinger1d": cmd_schrodinger, "asymptote": cmd_asymptote, "verify": cmd_verify,
    "list": cmd_list,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return COMMANDS[a.cmd](a)
    except (ValueError, json.JSONDecodeError) as exc:  # DomainError, UsageError, bad numbers
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, QuadratureError) as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONV


if __name__ == "__main__":
    sys.exit(main())
