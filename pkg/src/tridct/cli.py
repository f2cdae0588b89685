"""Command line interface: ``tridct <command> [options]``.

Exit codes: 0 success, 1 validation failure (bad data file, failed check),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from contextlib import contextmanager
from typing import List, Optional

import numpy as np

from tridct import formats
from tridct.aspmodel import FilterSpec, apply_filter, export_graph
from tridct.checks import run_all
from tridct.nodegrid import build_nodes
from tridct.xform import analyze, build_plan, synthesize, truncate_spectrum

TOL_ENV = "TRIDCT_VERIFY_TOL"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


class ValidationError(Exception):
    pass


@contextmanager
def _output(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _fraction(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"must satisfy 0 < keep <= 1, got {value}")
    return value


def _load_vector(path: str, kind: str, n: Optional[int]) -> formats.VectorFile:
    try:
        vec = formats.read_vector(_read_text(path), expect_kind=kind)
    except formats.FormatError as exc:
        raise ValidationError(f"{path}: {exc}") from None
    if n is not None and vec.n != n:
        raise ValidationError(f"{path}: file is for n={vec.n}, but --n {n} was given")
    if not np.isfinite(vec.values).all():
        raise ValidationError(f"{path}: non-finite values")
    return vec


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


# -- commands ---------------------------------------------------------------

def cmd_nodes(args) -> int:
    with _output(args.output) as out:
        formats.write_nodes(out, build_nodes(args.n))
    return EXIT_OK


def cmd_matrix(args) -> int:
    plan = build_plan(args.n)
    with _output(args.output) as out:
        if args.format == "json":
            formats.write_matrix_json(out, plan, args.which)
        else:
            formats.write_matrix_csv(out, plan, args.which)
    return EXIT_OK


def cmd_plan(args) -> int:
    plan = build_plan(args.n)
    meta = plan.metadata()
    meta["gram_offdiag_ratio"] = plan.gram_offdiag
    with _output(args.output) as out:
        out.write(json.dumps(meta, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_forward(args) -> int:
    vec = _load_vector(args.input, formats.SIGNAL, args.n)
    plan = build_plan(vec.n)
    coeffs = analyze(plan, vec.values)
    err = float(np.abs(synthesize(plan, coeffs) - vec.values).max())
    with _output(args.output) as out:
        formats.write_vector(out, formats.SPECTRUM, vec.n, coeffs)
    _note(f"round-trip max abs error: {err:.3e}")
    return EXIT_OK


def cmd_inverse(args) -> int:
    vec = _load_vector(args.input, formats.SPECTRUM, args.n)
    plan = build_plan(vec.n)
    signal = synthesize(plan, vec.values)
    err = float(np.abs(analyze(plan, signal) - vec.values).max())
    with _output(args.output) as out:
        formats.write_vector(out, formats.SIGNAL, vec.n, signal)
    _note(f"round-trip max abs error: {err:.3e}")
    return EXIT_OK


def cmd_compress(args) -> int:
    vec = _load_vector(args.input, formats.SIGNAL, args.n)
    plan = build_plan(vec.n)
    # Small slack so that e.g. keep=0.25 with N=4 does not round up to 2.
    keep = min(plan.N, max(1, math.ceil(args.keep * plan.N - 1e-9)))
    coeffs = truncate_spectrum(analyze(plan, vec.values), keep)
    recon = synthesize(plan, coeffs)
    norm = np.linalg.norm(vec.values)
    rel = float(np.linalg.norm(recon - vec.values) / norm) if norm > 0 else float(np.linalg.norm(recon))
    with _output(args.output) as out:
        formats.write_vector(out, formats.SIGNAL, vec.n, recon)
    _note(f"kept {keep} of {plan.N} coefficients; relative l2 error: {rel:.3e}")
    return EXIT_OK


def cmd_filter(args) -> int:
    vec = _load_vector(args.input, formats.SIGNAL, args.n)
    plan = build_plan(vec.n)
    taps = {}
    for k, l, value in args.tap or []:
        key = (int(k), int(l))
        taps[key] = taps.get(key, 0.0) + float(value)
    if not taps:
        taps = {(0, 0): 1.0}
    try:
        out_signal = apply_filter(plan, FilterSpec(taps), vec.values)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    with _output(args.output) as out:
        formats.write_vector(out, formats.SIGNAL, vec.n, out_signal)
    return EXIT_OK


def cmd_verify(args) -> int:
    raw = os.environ.get(TOL_ENV)
    try:
        tol = float(raw) if raw else 1e-9
    except ValueError:
        _note(f"error: {TOL_ENV}={raw!r} is not a number")
        return EXIT_USAGE
    results = run_all(args.n_max, tol=tol)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed (n_max={args.n_max}, tol={tol:g})")
    return EXIT_INVALID if failed else EXIT_OK


def cmd_graph(args) -> int:
    graph = export_graph(args.n)
    with _output(args.output) as out:
        out.write(graph.to_dot() if args.format == "dot" else graph.to_json())
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tridct", description="Cosine transform on triangles built from B2 Chebyshev polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("nodes", cmd_nodes, "dump the sampling nodes as CSV")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--output")

    p = add("matrix", cmd_matrix, "dump one of the transform matrices")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--which", choices=formats.MATRICES, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output")

    p = add("plan", cmd_plan, "dump plan metadata (sizes and orderings) as JSON")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--output")

    for name, func, help_text in (
        ("forward", cmd_forward, "analyze a node signal into a spectrum"),
        ("inverse", cmd_inverse, "synthesize a node signal from a spectrum"),
    ):
        p = add(name, func, help_text)
        p.add_argument("--input", required=True)
        p.add_argument("--n", type=_positive_int, help="expected size; must match the file")
        p.add_argument("--output")

    p = add("compress", cmd_compress, "keep the largest spectrum coefficients and reconstruct")
    p.add_argument("--input", required=True)
    p.add_argument("--keep", type=_fraction, required=True, help="fraction of coefficients, 0 < keep <= 1")
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--output")

    p = add("filter", cmd_filter, "apply a polynomial filter sum h_kl T_kl to a node signal")
    p.add_argument("--input", required=True)
    p.add_argument("--tap", nargs=3, action="append", metavar=("K", "L", "VALUE"),
                   help="filter coefficient of T_{K,L}; repeatable")
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--output")

    p = add("verify", cmd_verify, f"run the numerical self-checks (tolerance from ${TOL_ENV})")
    p.add_argument("--n-max", type=_positive_int, required=True)

    p = add("graph", cmd_graph, "export the signal-model graph")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--output")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        _note(f"error: {exc}")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
