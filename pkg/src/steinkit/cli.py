"""Command line front end: ``steinkit analyze|solve|bench <file>``.

Reports go to stdout as JSON, diagnostics to stderr.  Exit codes:

    0  success
    2  parse or usage error
    3  dimension error
    4  equation has no solution
    5  solution not unique (and --general not given)
    6  iteration did not converge
"""

import argparse
import os
import sys

import numpy as np

from . import analysis, closedform, iterative
from .errors import DimensionError, IterationFailure, NotSolvable, NotUnique, PrecheckFailed
from .io import ParseError, dumps, load_spec, matrix_to_json

EXIT_OK, EXIT_PARSE, EXIT_DIM, EXIT_UNSOLVABLE, EXIT_NOT_UNIQUE, EXIT_NO_CONVERGENCE = 0, 2, 3, 4, 5, 6

METHODS = ("closed", "lifted", "smith", "smith-l", "r-smith")


def default_tol():
    raw = os.environ.get("STEINKIT_TOL")
    if raw is None:
        return analysis.DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise ParseError(f"STEINKIT_TOL={raw!r} is not a number")
    if not tol > 0:
        raise ParseError("STEINKIT_TOL must be positive")
    return tol


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def cmd_analyze(args):
    spec = load_spec(args.file)
    report = analysis.analyze(spec, args.tol)
    return report.as_dict()


def _iterate(spec, method, args, max_iter=None):
    opts = iterative.SolveOptions(
        tol=args.tol, max_iter=max_iter or args.max_iter, l=args.l, r=args.r
    )
    fn = {"smith": iterative.smith, "smith-l": iterative.smith_l, "r-smith": iterative.r_smith}[method]
    return fn(spec, opts)


def cmd_solve(args):
    spec = load_spec(args.file)
    if args.general:
        try:
            sol = closedform.general_solution(spec, args.tol)
        except NotSolvable as exc:
            raise _Fail(EXIT_UNSOLVABLE, str(exc))
        return {
            "kind": spec.kind,
            "particular": matrix_to_json(sol.particular),
            "basis": [matrix_to_json(E) for E in sol.basis],
            "parameter_field": sol.parameter_field,
            "dof_real": sol.dof_real,
            "residual": iterative.residual(spec, sol.particular),
        }
    method = args.method
    out = {"kind": spec.kind, "method": method}
    if method in ("closed", "lifted"):
        try:
            X = closedform.solve_unique(spec, method=method, tol=args.tol)
        except NotUnique as exc:
            if isinstance(exc, closedform.SingularDenominator):
                raise _Fail(EXIT_NOT_UNIQUE, f"{exc}; try --method lifted")
            raise _Fail(EXIT_NOT_UNIQUE, f"{exc}; use --general for the full family")
        except NotSolvable as exc:
            raise _Fail(EXIT_UNSOLVABLE, str(exc))
        except ValueError as exc:
            raise _Fail(EXIT_PARSE, str(exc))
    else:
        if spec.kind == "general":
            raise _Fail(EXIT_PARSE, f"method {method!r} is not available for general equations")
        try:
            tr = _iterate(spec, method, args)
        except (IterationFailure, PrecheckFailed) as exc:
            raise _Fail(EXIT_NO_CONVERGENCE, str(exc))
        X = tr.iterate
        out.update(steps=tr.steps, empirical_rate=tr.empirical_rate, predicted_rate=tr.predicted_rate)
    out["X"] = matrix_to_json(X)
    out["residual"] = iterative.residual(spec, X)
    return out


def _parse_method_token(token, args):
    name, _, param = token.strip().partition(":")
    if name not in ("smith", "smith-l", "r-smith"):
        raise ParseError(f"unknown bench method {name!r}")
    l, r = args.l, args.r
    if param:
        try:
            value = int(param)
        except ValueError:
            raise ParseError(f"bad parameter in {token!r}")
        if name == "smith-l":
            l = value
        elif name == "r-smith":
            r = value
    return name, l, r


def cmd_bench(args):
    spec = load_spec(args.file)
    if spec.kind == "general":
        raise _Fail(EXIT_PARSE, "bench needs a single-term equation")
    rows = []
    for token in args.methods.split(","):
        name, l, r = _parse_method_token(token, args)
        label = {"smith": "smith", "smith-l": f"smith-l({l})", "r-smith": f"r-smith({r})"}[name]
        sub = argparse.Namespace(tol=args.tol, max_iter=args.steps, l=l, r=r)
        try:
            tr = _iterate(spec, name, sub)
        except (IterationFailure, PrecheckFailed) as exc:
            tr = getattr(exc, "trace", None)
            rows.append({
                "method": label,
                "converged": False,
                "steps": tr.steps if tr else 0,
                "empirical_rate": tr.empirical_rate if tr else None,
                "predicted_rate": tr.predicted_rate if tr else None,
                "error": str(exc),
            })
            continue
        rows.append({
            "method": label,
            "converged": True,
            "steps": tr.steps,
            "empirical_rate": tr.empirical_rate,
            "predicted_rate": tr.predicted_rate,
            "residual": tr.residuals[-1],
        })
    report = {"kind": spec.kind, "rho_product": analysis.rho_product(spec), "rows": rows}
    if not any(row["converged"] for row in rows):
        raise _Fail(EXIT_NO_CONVERGENCE, dumps(report))
    return report


def build_parser(tol):
    parser = argparse.ArgumentParser(prog="steinkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="solvability, uniqueness and convergence report")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=tol)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("solve", help="solve an equation")
    p.add_argument("file")
    p.add_argument("--method", choices=METHODS, default="closed")
    p.add_argument("--tol", type=float, default=tol)
    p.add_argument("--max-iter", type=int, default=10000)
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--general", action="store_true", help="print particular solution and basis")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="compare iteration rates")
    p.add_argument("file")
    p.add_argument("--methods", default="smith,smith-l,r-smith",
                   help="comma list; smith-l:3 and r-smith:4 set l and r")
    p.add_argument("--steps", type=int, default=10000, help="iteration cap per method")
    p.add_argument("--tol", type=float, default=tol)
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--r", type=int, default=2)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    try:
        tol = default_tol()
    except ParseError as exc:
        print(f"steinkit: {exc}", file=sys.stderr)
        return EXIT_PARSE
    args = build_parser(tol).parse_args(argv)
    try:
        result = args.func(args)
    except _Fail as exc:
        print(f"steinkit: {exc}", file=sys.stderr)
        return exc.code
    except (ParseError, OSError) as exc:
        print(f"steinkit: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionError as exc:
        print(f"steinkit: dimension error: {exc}", file=sys.stderr)
        return EXIT_DIM
    except ValueError as exc:
        print(f"steinkit: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(dumps(result))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
