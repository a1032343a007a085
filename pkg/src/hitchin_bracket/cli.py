"""Command-line front end.

    hitchin-bracket decompose MATRIX.json
    hitchin-bracket crossratio A.json B.json --i 1 --j 1
    hitchin-bracket bracket DIAGRAM.json [--i 1 --j 1 | --invariants trace,trace]
    hitchin-bracket fuchsian {genus2,holed-torus,intersections,twist-check} ...
    hitchin-bracket selfcheck [--seed 0] [--trials 20] [--inject-fault]

Reports go to stdout as JSON (``--pretty`` for an aligned table).
Exit codes: 0 ok, 1 parse error, 2 not hyperbolic, 3 degenerate position,
4 unstable intersection count, 5 property failure. The default tolerance
for eigenvalue separation can be overridden with ``HITCHIN_BRACKET_TOL``.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import formats
from .bracket import (
    InvariantFunction,
    bracket_goldman,
    bracket_labourie,
    to_weil_petersson,
    wolpert_cosine_sum,
)
from .checks import run_all
from .errors import DegeneratePosition, DepthTooSmall, NotHyperbolic, NotTransverse, Singular
from .fuchsian import (
    Word,
    axes_crossing,
    enumerate_intersections,
    genus2_rep,
    holed_torus_rep,
    translation_length,
    twist_deform,
)
from .linalg import DEFAULT_TOL, hyp_decompose, relative_gaps
from .spectral import cross_ratio_pair, cross_ratio_via_trace, eigen_lengths

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_NOT_HYPERBOLIC = 2
EXIT_DEGENERATE = 3
EXIT_UNSTABLE = 4
EXIT_PROPERTY = 5

TWIST_STEP = 1e-4
TWIST_TOL = 1e-4


class CommandError(Exception):
    def __init__(self, code: int, message: str, report: dict | None = None):
        super().__init__(message)
        self.code = code
        self.report = report


def default_tol() -> float:
    raw = os.environ.get("HITCHIN_BRACKET_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise CommandError(EXIT_PARSE, f"HITCHIN_BRACKET_TOL={raw!r} is not a number")
    if not tol > 0:
        raise CommandError(EXIT_PARSE, "HITCHIN_BRACKET_TOL must be positive")
    return tol


def _tol(args) -> float:
    tol = args.tol if getattr(args, "tol", None) is not None else default_tol()
    if not tol > 0:
        raise CommandError(EXIT_PARSE, "--tol must be positive")
    return tol


def _decompose(M, tol, what="matrix"):
    try:
        return hyp_decompose(M, tol)
    except (NotHyperbolic, Singular) as exc:
        raise CommandError(EXIT_NOT_HYPERBOLIC, f"{what}: {type(exc).__name__}: {exc}")


def cmd_decompose(args) -> dict:
    M = formats.matrix_from_json(formats.read_json(args.matrix))
    D = _decompose(M, _tol(args))
    return {
        "command": "decompose",
        "n": D.n,
        "eigenvalues": D.eigenvalues.tolist(),
        "eigen_lengths": eigen_lengths(D).tolist(),
        "relative_gaps": relative_gaps(D).tolist(),
        "lines": D.right.T.tolist(),
        "planes": D.left.tolist(),
    }


def cmd_crossratio(args) -> dict:
    tol = _tol(args)
    A = formats.matrix_from_json(formats.read_json(args.matrix_a))
    B = formats.matrix_from_json(formats.read_json(args.matrix_b))
    if A.shape != B.shape:
        raise CommandError(EXIT_PARSE, f"dimension mismatch: {A.shape} vs {B.shape}")
    DA, DB = _decompose(A, tol, "A"), _decompose(B, tol, "B")
    n = DA.n
    for name, idx in (("i", args.i), ("j", args.j)):
        if not 1 <= idx <= n:
            raise CommandError(EXIT_PARSE, f"--{name} must lie in 1..{n}")
    trace_route = cross_ratio_via_trace(DA, DB, args.i, args.j)
    report = {"command": "crossratio", "i": args.i, "j": args.j, "trace_route": trace_route}
    try:
        quotient = cross_ratio_pair(DA, DB, args.i, args.j)
    except DegeneratePosition as exc:
        report.update(quotient_route=None, difference=None, error=str(exc))
        raise CommandError(EXIT_DEGENERATE, f"DegeneratePosition: {exc}", report)
    report.update(quotient_route=quotient, difference=trace_route - quotient)
    return report


def cmd_bracket(args) -> dict:
    tol = _tol(args)
    diagram = formats.diagram_from_json(formats.read_json(args.diagram))
    n = diagram.n
    try:
        if args.invariants:
            parts = args.invariants.split(",")
            if len(parts) != 2:
                raise CommandError(EXIT_PARSE, "--invariants expects two comma-separated names")
            try:
                f, f2 = (InvariantFunction.parse(p) for p in parts)
            except ValueError as exc:
                raise CommandError(EXIT_PARSE, str(exc))
            report = bracket_goldman(diagram, f, f2, tol)
        else:
            for name, idx in (("i", args.i), ("j", args.j)):
                if not 1 <= idx <= n:
                    raise CommandError(EXIT_PARSE, f"--{name} must lie in 1..{n}")
            report = bracket_labourie(diagram, args.i, args.j, tol)
    except (NotHyperbolic, Singular) as exc:
        raise CommandError(EXIT_NOT_HYPERBOLIC, f"{type(exc).__name__}: {exc}")
    out = {"command": "bracket", "n": n, "points": len(diagram), **report.as_dict()}
    if n == 2 and all(p.phi is not None for p in diagram.points):
        out["wolpert_cosine_sum"] = wolpert_cosine_sum(diagram)
    return out


def cmd_fuchsian(args) -> dict:
    if args.fuchsian_cmd == "genus2":
        rep = genus2_rep()
        return _emit_rep("genus2", rep, args.output)
    if args.fuchsian_cmd == "holed-torus":
        try:
            rep = holed_torus_rep(args.t, args.angle)
        except ValueError as exc:
            raise CommandError(EXIT_PARSE, str(exc))
        return _emit_rep("holed-torus", rep, args.output)
    if args.fuchsian_cmd == "intersections":
        return _intersections(args)
    return _twist_check(args)


def _emit_rep(name, rep, output) -> dict:
    data = formats.rep_to_json(rep)
    if output:
        formats.write_json(output, data)
    report = {
        "command": f"fuchsian {name}",
        "relation_residual": rep.relation_residual,
        "translation_lengths": [translation_length(g) for g in rep.generators],
    }
    if output:
        report["output"] = str(output)
    else:
        report["representation"] = data
    return report


def _intersections(args) -> dict:
    rep = formats.rep_from_json(formats.read_json(args.rep))
    try:
        alpha, beta = Word.parse(args.alpha), Word.parse(args.beta)
    except ValueError as exc:
        raise CommandError(EXIT_PARSE, str(exc))
    try:
        diagram = enumerate_intersections(rep, alpha, beta, args.depth)
    except DepthTooSmall as exc:
        raise CommandError(EXIT_UNSTABLE, str(exc), {"counts_by_depth": exc.counts})
    except NotTransverse as exc:
        raise CommandError(EXIT_DEGENERATE, f"NotTransverse: {exc}")
    data = formats.diagram_to_json(diagram)
    if args.output:
        formats.write_json(args.output, data)
    report = {
        "command": "fuchsian intersections",
        "alpha": str(alpha),
        "beta": str(beta),
        "depth": args.depth,
        "count": len(diagram),
        "epsilons": [p.epsilon for p in diagram.points],
        "angles": [p.phi for p in diagram.points],
        "wolpert_cosine_sum": wolpert_cosine_sum(diagram),
    }
    if args.output:
        report["output"] = str(args.output)
    else:
        report["diagram"] = data
    return report


def twist_derivative(rep, h: float = TWIST_STEP) -> float:
    """Central difference of the length of ``b`` along the twist about ``a``."""
    plus = translation_length(twist_deform(rep, h).generators[1])
    minus = translation_length(twist_deform(rep, -h).generators[1])
    return (plus - minus) / (2 * h)


def _twist_check(args) -> dict:
    if args.rep:
        rep = formats.rep_from_json(formats.read_json(args.rep))
    else:
        try:
            rep = holed_torus_rep(args.t, args.angle)
        except ValueError as exc:
            raise CommandError(EXIT_PARSE, str(exc))
    A, B = rep.generators
    crossing = axes_crossing(A, B)
    if crossing is None:
        raise CommandError(EXIT_DEGENERATE, "axes of a and b do not cross")
    derivative = twist_derivative(rep, args.h)
    cosine = math.cos(crossing.theta)
    delta = abs(derivative) - abs(cosine)
    report = {
        "command": "fuchsian twist-check",
        "convention": "twist moves b toward the attracting end of a; lengths are full translation lengths",
        "h": args.h,
        "phi": crossing.phi,
        "theta": crossing.theta,
        "epsilon": crossing.epsilon,
        "twist_derivative": derivative,
        "cosine_sum": cosine,
        "bracket_as_weil_petersson": to_weil_petersson(0.5 * cosine),
        "abs_difference": abs(delta),
        "tol": TWIST_TOL,
        "passed": abs(delta) <= TWIST_TOL,
    }
    if not report["passed"]:
        raise CommandError(EXIT_PROPERTY, "twist derivative does not match the cosine sum", report)
    return report


def cmd_selfcheck(args) -> dict:
    if args.trials < 0:
        raise CommandError(EXIT_PARSE, "--trials must be >= 0")
    if args.trials == 0:
        return {"command": "selfcheck", "seed": args.seed, "trials": 0,
                "note": "no trials", "results": [], "passed": True}
    results = run_all(args.seed, args.trials, inject_fault=args.inject_fault)
    report = {
        "command": "selfcheck",
        "seed": args.seed,
        "trials": args.trials,
        "results": [r.as_dict() for r in results],
        "passed": all(r.passed for r in results),
    }
    failed = [r.name for r in results if not r.passed]
    if failed:
        report["first_failure"] = failed[0]
        raise CommandError(EXIT_PROPERTY, f"property violated: {failed[0]}", report)
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hitchin-bracket",
        description="Length functions, cross-ratios and Goldman brackets on Hitchin representations.",
    )
    parser.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="eigen-decomposition, eigen lengths and flags of a matrix")
    p.add_argument("matrix")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("crossratio", help="b^{ij}(A, B) by the quotient and trace routes")
    p.add_argument("matrix_a")
    p.add_argument("matrix_b")
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_crossratio)

    p = sub.add_parser("bracket", help="bracket of length (or trace) functions over a diagram")
    p.add_argument("diagram")
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--invariants", help="pair such as 'trace,trace' or 'l1,l2'")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("fuchsian", help="Fuchsian test groups, intersections and the twist check")
    fsub = p.add_subparsers(dest="fuchsian_cmd", required=True)
    q = fsub.add_parser("genus2")
    q.add_argument("-o", "--output")
    q = fsub.add_parser("holed-torus")
    q.add_argument("--t", type=float, default=2.5, help="translation length of a and b")
    q.add_argument("--angle", type=float, default=math.pi / 3, help="crossing angle of the axes")
    q.add_argument("-o", "--output")
    q = fsub.add_parser("intersections")
    q.add_argument("rep")
    q.add_argument("alpha", help="word such as 'a' or 'aB' (uppercase = inverse)")
    q.add_argument("beta")
    q.add_argument("--depth", type=int, default=4)
    q.add_argument("-o", "--output")
    q = fsub.add_parser("twist-check")
    q.add_argument("--rep", help="holed-torus representation file (default: built-in)")
    q.add_argument("--t", type=float, default=2.5)
    q.add_argument("--angle", type=float, default=math.pi / 3)
    q.add_argument("--h", type=float, default=TWIST_STEP)
    p.set_defaults(func=cmd_fuchsian)

    p = sub.add_parser("selfcheck", help="run the randomized property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--inject-fault", action="store_true",
                   help="corrupt the matrix fed to the gradient check (negative control)")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def _format_table(report: dict) -> str:
    lines = []
    width = max((len(k) for k in report), default=0)
    for key, value in report.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            for item in value:
                lines.append("  " + "  ".join(f"{k}={_fmt(v)}" for k, v in item.items()))
        else:
            lines.append(f"{key.ljust(width)}  {_fmt(value)}")
    return "\n".join(lines)


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    if isinstance(value, dict):
        return formats.dumps(value)
    return str(value)


def _emit(report: dict, pretty: bool, stream) -> None:
    print(_format_table(report) if pretty else formats.dumps(report), file=stream)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "depth", 1) < 1:
            parser.error("--depth must be >= 1")
    except SystemExit as exc:
        # argparse exits with 2, which is reserved for NotHyperbolic here
        return EXIT_OK if exc.code in (0, None) else EXIT_PARSE
    try:
        report = args.func(args)
    except CommandError as exc:
        if exc.report is not None:
            _emit(exc.report, args.pretty, sys.stdout)
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except formats.FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    _emit(report, args.pretty, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
