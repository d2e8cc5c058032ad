"""Command-line surface: every operation, machine-readable output.

Grammar (long flags only, no positionals)::

    energy-bounds bound {emin-tn|emin-power|emax-power|reverse-amgm|
                         sr-upper|disc-lower|potential-lower} ...
    energy-bounds oracle {power|trace-norm} ...
    energy-bounds poly {verify|diffsq|hermite} ...
    energy-bounds corpus enumerate ...
    energy-bounds constants siegel

Exit codes: 0 success, 1 usage error, 2 infeasible or hypothesis-violated
input (a report naming the violated condition is still printed).

``--json`` prints one object {op, inputs, result, diagnostics} with floats
at 17 significant digits, so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .bounds import (
    BoundReport,
    HypothesisViolationError,
    PotentialSpec,
    energy_lower_from_disc,
    energy_max_power,
    energy_min_power,
    energy_min_trace_norm,
    potential_lower_from_disc,
    power_sum_upper,
    reverse_amgm,
    siegel_constants,
)
from .core import REL_TOL, FeasibilityError, PowerSumConstraints, TraceNormConstraints
from .oracle import CriticalConfig, extrema_search, extrema_trace_norm, extrema_two_value
from .polylab import (
    corpus_to_csv,
    diffsq_poly,
    enumerate_corpus,
    hermite_family,
    parse_poly_line,
    verify_theorem2,
)
from .rootfind import RESIDUAL_TOL, BranchMissingError

_INFEASIBLE = (FeasibilityError, HypothesisViolationError, BranchMissingError)


class _Parser(argparse.ArgumentParser):
    """argparse, but usage problems exit 1 (2 is reserved for bad data)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(_usage_error(f"{self.prog}: {message}"))


def _usage_error(message: str) -> int:
    print(f"error: usage: {message}", file=sys.stderr)
    return 1


# ---------------------------------------------------------------------------
# output formatting


def _fmt_float(x: float) -> str:
    if x != x:
        return "NaN"
    if x == float("inf"):
        return "Infinity"
    if x == float("-inf"):
        return "-Infinity"
    return format(x, ".17g")


def _to_json(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _fmt_float(value)
    if isinstance(value, str):
        out = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{out}"'
    if isinstance(value, dict):
        items = ", ".join(f"{_to_json(str(k))}: {_to_json(v)}" for k, v in value.items())
        return "{" + items + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_to_json(v) for v in value) + "]"
    return _to_json(str(value))


def _emit(args, op: str, inputs: dict, result, diagnostics: dict) -> None:
    if getattr(args, "json", False):
        payload = {"op": op, "inputs": inputs, "result": result, "diagnostics": diagnostics}
        print(_to_json(payload))
    else:
        print(f"op: {op}")
        for key, val in inputs.items():
            _emit_human(val, prefix=f"inputs.{key}")
        _emit_human(result, prefix="")
        for key, val in diagnostics.items():
            _emit_human(val, prefix=f"diagnostics.{key}")


def _emit_human(value, prefix: str) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _emit_human(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(value, (list, tuple)):
        rendered = " ".join(
            _fmt_float(v) if isinstance(v, float) else str(v) for v in value
        )
        print(f"{prefix}: {rendered}")
    elif isinstance(value, float):
        print(f"{prefix}: {_fmt_float(value)}")
    else:
        print(f"{prefix}: {value}")


def _alpha_dict(root) -> dict | None:
    if root is None:
        return None
    return {
        "alpha": root.alpha,
        "branch": root.branch.value,
        "k": root.k,
        "residual": root.residual,
        "iterations": root.iterations,
        "at_boundary": root.at_boundary,
    }


def _bound_result(report: BoundReport) -> dict:
    return {
        "value": report.value,
        "formula": report.formula.value,
        "alpha": _alpha_dict(report.alpha),
    }


def _config_dict(c: CriticalConfig) -> dict:
    return {"k": c.k, "x": c.x, "y": c.y, "zeros": c.zeros, "E": c.E, "kind": c.kind.value}


# ---------------------------------------------------------------------------
# parser construction


def _build_parser() -> _Parser:
    top = _Parser(prog="energy-bounds", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    def with_common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--tol",
            type=float,
            default=RESIDUAL_TOL,
            help="solver residual tolerance (echoed in diagnostics)",
        )
        return p

    bound = sub.add_parser("bound", help="closed-form bounds").add_subparsers(
        dest="which", required=True
    )

    p = with_common(bound.add_parser("emin-tn", help="minimal energy, fixed trace+product"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=float, required=True, help="mean: trace is n*s")
    p.add_argument("--p", type=float, required=True, help="product of the n values")

    p = with_common(bound.add_parser("emin-power", help="minimal energy, fixed S1 and Sr"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s1", type=float, required=True)
    p.add_argument("--sr", type=float, required=True)

    p = with_common(bound.add_parser("emax-power", help="maximal energy, fixed S1 and Sr"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s1", type=float, required=True)
    p.add_argument("--sr", type=float, required=True)

    p = with_common(
        bound.add_parser("reverse-amgm", help="upper bound on s^n/p from the energy")
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--energy", type=float, required=True)

    p = with_common(bound.add_parser("sr-upper", help="upper bound on S_r from the energy"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s1", type=float, required=True)
    p.add_argument("--energy", type=float, required=True)

    p = with_common(
        bound.add_parser("disc-lower", help="lower bound on E from the discriminant")
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--s1", type=float, default=None)
    p.add_argument("--s2", type=float, default=None)

    p = with_common(
        bound.add_parser(
            "potential-lower", help="lower bound for (a/n)*sum x^2 + b*mean^2 + c*mean + d"
        )
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s1", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--d", type=float, default=0.0)

    oracle = sub.add_parser("oracle", help="brute-force extremes").add_subparsers(
        dest="which", required=True
    )

    p = with_common(oracle.add_parser("power", help="extremes of E at fixed S1, Sr"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s1", type=float, required=True)
    p.add_argument("--sr", type=float, required=True)
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=200)
    p.add_argument("--threads", type=int, default=None)

    p = with_common(oracle.add_parser("trace-norm", help="extremes of E at fixed trace, product"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=200)
    p.add_argument("--threads", type=int, default=None)

    poly = sub.add_parser("poly", help="exact polynomial reports").add_subparsers(
        dest="which", required=True
    )

    p = with_common(poly.add_parser("verify", help="full report for one polynomial"))
    p.add_argument("--coeffs", required=True, help='e.g. "1 -6 11 -6", leading first')

    p = with_common(poly.add_parser("diffsq", help="polynomial with roots (x_i-x_j)^2"))
    p.add_argument("--coeffs", required=True, help='e.g. "1 -6 11 -6", leading first')

    p = with_common(poly.add_parser("hermite", help="ODE family member and identities"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lam", required=True, help="positive rational, e.g. 2 or 3/4")
    p.add_argument("--mu", required=True, help="rational, e.g. 0 or -1/3")

    corpus = sub.add_parser("corpus", help="corpus enumeration").add_subparsers(
        dest="which", required=True
    )
    p = with_common(corpus.add_parser("enumerate", help="all members up to a degree"))
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--no-prune-maclaurin", action="store_true")
    p.add_argument("--no-prune-newton", action="store_true")
    p.add_argument("--no-prune-sturm", action="store_true")

    constants = sub.add_parser("constants", help="named constants").add_subparsers(
        dest="which", required=True
    )
    with_common(constants.add_parser("siegel", help="theta, lambda0 and friends"))

    return top


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return max(1, args.threads)
    env = os.environ.get("ENERGY_BOUNDS_THREADS", "")
    if env.strip():
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise FeasibilityError(
                "ENERGY_BOUNDS_THREADS", f"not an integer: {env!r}"
            ) from exc
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# command bodies


def _run_bound(args) -> int:
    which = args.which
    inputs = {"tol": args.tol}
    if which == "emin-tn":
        inputs.update(n=args.n, s=args.s, p=args.p)
        report = energy_min_trace_norm(TraceNormConstraints(args.n, args.s, args.p), args.tol)
    elif which == "emin-power":
        inputs.update(n=args.n, r=args.r, s1=args.s1, sr=args.sr)
        if args.r == 2:
            return _identity_energy(args, inputs)
        report = energy_min_power(
            PowerSumConstraints(args.n, args.r, args.s1, args.sr), args.tol
        )
    elif which == "emax-power":
        inputs.update(n=args.n, r=args.r, s1=args.s1, sr=args.sr)
        if args.r == 2:
            return _identity_energy(args, inputs)
        report = energy_max_power(
            PowerSumConstraints(args.n, args.r, args.s1, args.sr), args.tol
        )
    elif which == "reverse-amgm":
        inputs.update(n=args.n, s=args.s, energy=args.energy)
        report = reverse_amgm(args.n, args.s, args.energy)
    elif which == "sr-upper":
        inputs.update(n=args.n, r=args.r, s1=args.s1, energy=args.energy)
        report = power_sum_upper(args.n, args.r, args.s1, args.energy)
    elif which == "disc-lower":
        inputs.update(n=args.n, delta=args.delta, s1=args.s1, s2=args.s2)
        report = energy_lower_from_disc(args.n, args.delta, s1=args.s1, s2=args.s2)
    else:
        inputs.update(
            n=args.n, s1=args.s1, delta=args.delta, a=args.a, b=args.b, c=args.c, d=args.d
        )
        spec = PotentialSpec(args.a, args.b, args.c, args.d)
        report = potential_lower_from_disc(spec, args.n, args.s1, args.delta)
    diagnostics = dict(report.diagnostics)
    diagnostics["tol"] = args.tol
    _emit(args, f"bound.{which}", inputs, _bound_result(report), diagnostics)
    return 0


def _identity_energy(args, inputs: dict) -> int:
    """r = 2 fixes the energy outright: E = n*S2 - S1^2, no bound needed."""
    n, s1, s2 = args.n, args.s1, args.sr
    if s1 * s1 > n * s2 * (1.0 + REL_TOL):
        raise FeasibilityError("S1^2 <= n*S2", f"S1^2 = {s1 * s1} exceeds n*S2 = {n * s2}")
    if s2 > s1 * s1 * (1.0 + REL_TOL):
        raise FeasibilityError("S2 <= S1^2", f"S2 = {s2} exceeds S1^2 = {s1 * s1}")
    value = max(n * s2 - s1 * s1, 0.0)
    result = {"value": value, "formula": "EnergyIdentity", "alpha": None}
    _emit(args, f"bound.{args.which}", inputs, result, {"tol": args.tol})
    return 0


def _run_oracle(args) -> int:
    threads = _threads(args)
    inputs = {
        "restarts": args.restarts,
        "seed": args.seed,
        "max_iters": args.max_iters,
        "tol": args.tol,
        "threads": threads,
    }
    if args.which == "power":
        inputs.update(n=args.n, r=args.r, s1=args.s1, sr=args.sr)
        if args.r == 2:
            if args.s1 * args.s1 > args.n * args.sr * (1.0 + REL_TOL):
                raise FeasibilityError("S1^2 <= n*S2", "trace too large for this S2")
            if args.sr > args.s1 * args.s1 * (1.0 + REL_TOL):
                raise FeasibilityError("S2 <= S1^2", "S2 too large for nonnegative reals")
            e = max(args.n * args.sr - args.s1 * args.s1, 0.0)
            result = {"min": e, "max": e, "candidates": [], "search": None}
            _emit(args, "oracle.power", inputs, result, {"note": "energy fixed when r=2"})
            return 0
        ps = PowerSumConstraints(args.n, args.r, args.s1, args.sr)
        two = extrema_two_value(ps)
        search = extrema_search(ps, restarts=args.restarts, seed=args.seed, max_iters=args.max_iters)
        result = {
            "min": float(min(two.min, search.min)),
            "max": float(max(two.max, search.max)),
            "two_value": {"min": two.min, "max": two.max},
            "search": {
                "min": float(search.min),
                "max": float(search.max),
                "failed": [int(i) for i in search.failed],
            },
            "candidates": [_config_dict(c) for c in two.candidates],
        }
        diagnostics = {
            "ntilde": ps.ntilde,
            "ntilde_ceil": ps.ntilde_ceil,
            "k_star": ps.k_star,
            "tol": args.tol,
        }
        _emit(args, "oracle.power", inputs, result, diagnostics)
        return 0

    inputs.update(n=args.n, s=args.s, p=args.p)
    tn = TraceNormConstraints(args.n, args.s, args.p)
    ext = extrema_trace_norm(tn, restarts=args.restarts, seed=args.seed, max_iters=args.max_iters)
    result = {
        "min": float(ext.min),
        "max": float(ext.max),
        "search": {
            "min": float(ext.search_min),
            "max": float(ext.search_max),
            "failed": [int(i) for i in ext.failed],
        },
        "candidates": [_config_dict(c) for c in ext.candidates],
    }
    _emit(args, "oracle.trace-norm", inputs, result, {"tol": args.tol})
    return 0


def _run_poly(args) -> int:
    if args.which == "hermite":
        inputs = {"n": args.n, "lam": args.lam, "mu": args.mu}
        try:
            lam = Fraction(args.lam)
            mu = Fraction(args.mu)
        except (ValueError, ZeroDivisionError) as exc:
            return _usage_error(f"poly hermite: bad rational: {exc}")
        fam = hermite_family(args.n, lam, mu)
        result = {
            "n": fam.n,
            "lam": str(fam.lam),
            "mu": str(fam.mu),
            "coeffs_ascending": [str(c) for c in fam.coeffs],
            "energy": str(fam.energy),
            "delta": str(fam.delta),
            "energy_identity": fam.energy_identity,
            "delta_identity": fam.delta_identity,
        }
        _emit(args, "poly.hermite", inputs, result, {"tol": args.tol})
        return 0

    inputs = {"coeffs": args.coeffs}
    try:
        poly = parse_poly_line(args.coeffs)
    except ValueError as exc:
        return _usage_error(f"poly {args.which}: {exc}")

    if args.which == "diffsq":
        dpoly, squarefree = diffsq_poly(poly)
        result = {
            "coeffs": list(poly.coeffs),
            "diffsq_coeffs": list(dpoly.coeffs),
            "squarefree": squarefree,
        }
        _emit(args, "poly.diffsq", inputs, result, {"tol": args.tol})
        return 0

    report = verify_theorem2(poly)
    result = {
        "coeffs": list(poly.coeffs),
        "degree": poly.degree,
        "all_real": report.all_real,
        "totally_positive": report.totally_positive,
        "irreducible": report.irreducible,
        "S1": report.S1,
        "S2": report.S2,
        "E": report.E,
        "Delta": report.Delta,
        "diffsq_squarefree": report.diffsq_squarefree,
        "hypothesis_holds": report.hypothesis_holds,
        "thm2_holds": report.thm2_holds,
        "thm2_lhs_log": report.thm2_lhs_log,
        "thm2_rhs_log": report.thm2_rhs_log,
        "thm2_margin_log": report.thm2_margin_log,
        "edelta_margin_log": report.edelta_margin_log,
    }
    _emit(args, "poly.verify", inputs, result, {"tol": args.tol})
    return 0


def _run_corpus(args) -> int:
    threads = _threads(args)
    inputs = {
        "max_degree": args.max_degree,
        "threads": threads,
        "prune_maclaurin": not args.no_prune_maclaurin,
        "prune_newton": not args.no_prune_newton,
        "prune_sturm": not args.no_prune_sturm,
    }
    try:
        reports = enumerate_corpus(
            args.max_degree,
            prune_maclaurin=not args.no_prune_maclaurin,
            prune_newton=not args.no_prune_newton,
            prune_sturm=not args.no_prune_sturm,
            workers=threads,
        )
    except ValueError as exc:
        return _usage_error(f"corpus enumerate: {exc}")
    if args.json:
        per_degree: dict = {}
        for r in reports:
            key = str(r.poly.degree)
            per_degree[key] = per_degree.get(key, 0) + 1
        rows = [
            {
                "degree": r.poly.degree,
                "coeffs": list(r.poly.coeffs),
                "trace": r.trace,
                "E": r.E,
                "Delta": r.Delta,
                "diffsq_squarefree": r.diffsq_squarefree,
                "thm2_margin_log": r.thm2_margin_log,
            }
            for r in reports
        ]
        result = {"count": len(reports), "per_degree": per_degree, "members": rows}
        _emit(args, "corpus.enumerate", inputs, result, {"tol": args.tol})
    else:
        sys.stdout.write(corpus_to_csv(reports))
    return 0


def _run_constants(args) -> int:
    sc = siegel_constants()
    result = {
        "theta": sc.theta,
        "lambda0": sc.lambda0,
        "lambda_www": sc.lambda_www,
        "two_over_sqrt_e": sc.two_over_sqrt_e,
        "residual": sc.residual,
    }
    _emit(args, "constants.siegel", {}, result, {"tol": args.tol})
    return 0


def run(argv: list[str]) -> int:
    """Parse and execute; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    handlers = {
        "bound": _run_bound,
        "oracle": _run_oracle,
        "poly": _run_poly,
        "corpus": _run_corpus,
        "constants": _run_constants,
    }
    try:
        return handlers[args.command](args)
    except _INFEASIBLE as exc:
        condition = getattr(exc, "condition", "infeasible")
        echoed = {
            k: v for k, v in vars(args).items() if k not in ("command", "which", "json")
        }
        payload = {
            "op": f"{args.command}.{getattr(args, 'which', '')}".rstrip("."),
            "inputs": echoed,
            "result": None,
            "diagnostics": {"error": condition, "message": str(exc)},
        }
        if getattr(args, "json", False):
            print(_to_json(payload))
        else:
            print(f"error: {condition}: {exc}")
        return 2
    except ValueError as exc:
        return _usage_error(str(exc))


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
