"""Command line front end.

Commands: check-pf, check-evpos, apply, verify, synthesize. Exit code 0
means success / property holds, 1 means the checked property fails, 2 means
the input could not be used (parse error, domain violation, defective
matrix, ill-conditioned transform).

Reports go to stdout. When a command's primary output is a document and no
--out path is given, the document goes to stdout and secondary report lines
to stderr, so stdout always re-parses as a document.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .core import DEFAULT_TOL, MatFrobError, Tolerance, condition_estimate
from .documents import (
    dump_document,
    is_matrix_document,
    is_spec_document,
    load_document,
    matrix_document,
    parse_function_expression,
    parse_matrix_document,
    parse_spec_document,
)
from .funcalc import defined_on_spectrum, matrix_function, taylor_oracle
from .jordan import extract_diagonalizable_structure, synthesize_matrix
from .perron import (
    eventually_positive_check,
    power_threshold,
    strong_pf_check,
    verify_preservation_theorem,
)
from .sampling import random_orthogonal

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_ERROR = 2

ORACLE_TERMS = 80
ORACLE_LIMIT = 1e-6


def _tolerance(args) -> Tolerance:
    if args.tol is None:
        return DEFAULT_TOL
    if args.tol < 0:
        raise MatFrobError(f"--tol must be nonnegative, got {args.tol}")
    return Tolerance(abs_eps=args.tol, rel_eps=args.tol)


def _write_report(args, payload: dict) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")


def _emit_document(args, doc: dict) -> None:
    """Document to --out when given, else stdout; see module docstring."""
    if args.out:
        dump_document(doc, args.out)
    else:
        print(dump_document(doc))


def _report_line(args, text: str) -> None:
    """Secondary report line; stderr when stdout carries a document."""
    if args.out:
        print(text)
    else:
        print(text, file=sys.stderr)


def _require_fn(args):
    if not args.fn:
        raise MatFrobError("this command needs --fn with a function expression")
    return parse_function_expression(args.fn)


def _load_as_factors(args, tol):
    """Either document kind to factored form: (name, matrix, factors)."""
    doc = load_document(args.input)
    if is_matrix_document(doc):
        name, a = parse_matrix_document(doc)
        factors = extract_diagonalizable_structure(a, tol)
        return name, a, factors
    if is_spec_document(doc):
        name, spec, transform = parse_spec_document(doc)
        if transform is None:
            rng = np.random.default_rng(args.seed)
            transform = random_orthogonal(rng, spec.total_dimension)
        a, factors = synthesize_matrix(spec, transform, tol)
        return name, a, factors
    raise MatFrobError(
        f"{args.input}: document is neither a matrix (rows) nor a factored "
        "form (real_blocks / complex_blocks)"
    )


def cmd_check_pf(args) -> int:
    tol = _tolerance(args)
    name, a = parse_matrix_document(load_document(args.input))
    report = strong_pf_check(a, tol)
    print(f"matrix: {name}")
    print(report.format_text())
    _write_report(args, {"name": name, "report": report.to_dict()})
    return EXIT_HOLDS if report.overall else EXIT_FAILS


def cmd_check_evpos(args) -> int:
    tol = _tolerance(args)
    name, a = parse_matrix_document(load_document(args.input))
    report = eventually_positive_check(a, tol)
    threshold = power_threshold(a, args.kmax, tol)
    print(f"matrix: {name}")
    print(report.format_text())
    if threshold is None:
        print(f"power threshold: none up to k_max = {args.kmax}")
    else:
        print(f"power threshold: {threshold} (k_max = {args.kmax})")
    brute = threshold is not None
    if brute != report.overall:
        print(
            "DEFECT: eigenvalue-based verdict and brute-force powers disagree; "
            "this indicates a bug or a borderline spectrum"
        )
    _write_report(
        args,
        {"name": name, "report": report.to_dict(), "power_threshold": threshold},
    )
    return EXIT_HOLDS if report.overall else EXIT_FAILS


def cmd_apply(args) -> int:
    tol = _tolerance(args)
    f = _require_fn(args)
    name, a, factors = _load_as_factors(args, tol)
    fa = matrix_function(factors, f, tol)
    _emit_document(args, matrix_document(f"{args.fn}({name})", fa))
    if args.oracle:
        oracle = taylor_oracle(a, f, ORACLE_TERMS)
        deviation = float(np.max(np.abs(fa - oracle)))
        _report_line(args, f"oracle deviation: {deviation:.3e}")
        if deviation > ORACLE_LIMIT:
            return EXIT_FAILS
    return EXIT_HOLDS


def cmd_verify(args) -> int:
    tol = _tolerance(args)
    f = _require_fn(args)
    doc = load_document(args.input)
    if not is_spec_document(doc):
        raise MatFrobError(
            f"{args.input}: verify needs a factored-form document "
            "(real_blocks / complex_blocks)"
        )
    name, spec, transform = parse_spec_document(doc)
    if transform is None:
        rng = np.random.default_rng(args.seed)
        transform = random_orthogonal(rng, spec.total_dimension)
    a, factors = synthesize_matrix(spec, transform, tol)
    check = defined_on_spectrum(f, spec, tol)
    if not check:
        raise MatFrobError(
            f"{args.fn} is not usable on this spectrum: {check.reason}. "
            "Choose a function defined (with enough derivatives) at every "
            "eigenvalue."
        )
    a_report = strong_pf_check(a, tol)
    if not a_report.overall:
        raise MatFrobError(
            "the synthesized matrix lacks the strong Perron-Frobenius property "
            f"(failed: {', '.join(a_report.failed_conditions())}); the "
            "preservation comparison needs it as a baseline"
        )
    result = verify_preservation_theorem(factors, f, tol)
    print(f"matrix: {name}   function: {args.fn}")
    print(result.format_text())
    _write_report(args, {"name": name, "fn": args.fn, "result": result.to_dict()})
    return EXIT_HOLDS if result.theorem_consistent else EXIT_FAILS


def cmd_synthesize(args) -> int:
    tol = _tolerance(args)
    doc = load_document(args.input)
    if not is_spec_document(doc):
        raise MatFrobError(
            f"{args.input}: synthesize needs a factored-form document "
            "(real_blocks / complex_blocks)"
        )
    name, spec, transform = parse_spec_document(doc)
    if transform is None:
        rng = np.random.default_rng(args.seed)
        transform = random_orthogonal(rng, spec.total_dimension)
    a, factors = synthesize_matrix(spec, transform, tol)
    _emit_document(args, matrix_document(name, a))
    _report_line(
        args,
        f"transform condition estimate: {condition_estimate(factors.transform):.6e}",
    )
    return EXIT_HOLDS


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="absolute and relative tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for generated transforms (default 0)")
    common.add_argument("--out", type=str, default=None,
                        help="write the machine-readable result to this path")
    common.add_argument("--oracle", action="store_true",
                        help="cross-check entire functions against a power series")
    common.add_argument("--kmax", type=int, default=64,
                        help="largest power examined by brute force (default 64)")
    common.add_argument("--fn", type=str, default=None,
                        help="function expression, e.g. 'exp' or '0.5*exp + poly:1,2'")

    parser = argparse.ArgumentParser(
        prog="matfrob",
        description="Matrix functions on real Jordan structure and strong "
        "Perron-Frobenius checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-pf", parents=[common],
                       help="strong Perron-Frobenius check on a matrix document")
    p.add_argument("input", help="path to a matrix document")
    p.set_defaults(handler=cmd_check_pf)

    p = sub.add_parser("check-evpos", parents=[common],
                       help="eventual positivity check plus brute-force threshold")
    p.add_argument("input", help="path to a matrix document")
    p.set_defaults(handler=cmd_check_evpos)

    p = sub.add_parser("apply", parents=[common],
                       help="apply --fn to a matrix or factored-form document")
    p.add_argument("input", help="path to a matrix or factored-form document")
    p.set_defaults(handler=cmd_apply)

    p = sub.add_parser("verify", parents=[common],
                       help="compare scalar and matrix preservation verdicts")
    p.add_argument("input", help="path to a factored-form document")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("synthesize", parents=[common],
                       help="build a matrix from a factored-form document")
    p.add_argument("input", help="path to a factored-form document")
    p.set_defaults(handler=cmd_synthesize)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except MatFrobError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
