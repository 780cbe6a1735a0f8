"""``bezred`` command line: reduce, verify, probe and witness.

Exit codes: 0 success, 1 parse error, 2 precondition violation, 3 witness not
found, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import stability as st
from .errors import (
    InfiniteRingError,
    NotAdequateError,
    ParseError,
    PreconditionError,
    RingMismatchError,
    RingTooLargeError,
    UnsupportedRingError,
    WitnessNotFoundError,
)
from .matrix import Matrix, determinant
from .oracle import DEFAULT_MAX_ELEMENTS, cross_validate_reduction, ring_property_report
from .parsing import parse_element, parse_ring
from .reduction import diagonal_reduce, ge2_reduce, verify_certificate
from .rings import Integers, Ring
from .serialize import certificate_from_json, certificate_to_json, dumps, matrix_from_json, matrix_to_json

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_NOT_FOUND, EXIT_VERIFY = 0, 1, 2, 3, 4

STRATEGY_ALIASES = {
    "finitebruteforce": "finite",
    "integeralmostsr1": "integer",
    "polynomialadequate": "polynomial",
    "productcomponentwise": "product",
    "boundedsearch": "bounded",
}


class _Failure(Exception):
    def __init__(self, code: int, message: str, document=None):
        super().__init__(message)
        self.code, self.document = code, document


# ---------------------------------------------------------------------------
# input handling


def _read_input(args) -> str:
    if args.matrix is not None:
        return args.matrix
    if args.input in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(args.input).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {args.input}: {exc}") from exc


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def read_matrix(ring: Ring, text: str) -> Matrix:
    """JSON rows of element literals, or whitespace-separated rows over Z."""
    text = text.strip()
    if text.startswith("[") or not isinstance(ring, Integers):
        return matrix_from_json(ring, _load_json(text))
    try:
        rows = [[int(t) for t in line.split()] for line in text.splitlines() if line.strip()]
    except ValueError as exc:
        raise ParseError(f"bad integer row: {exc}") from exc
    return matrix_from_json(ring, rows)


def _strategy(args, ring: Ring):
    if args.strategy is None and args.limit is None:
        return None
    if args.strategy is None:
        kind = st.default_strategy(ring).kind
    else:
        kind = STRATEGY_ALIASES.get(args.strategy.lower(), args.strategy.lower())
    try:
        s = st.WitnessStrategy(kind, args.limit)
        return st.resolve_strategy(ring, s)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc


# ---------------------------------------------------------------------------
# commands


def cmd_reduce(args, ring: Ring) -> dict:
    A = read_matrix(ring, _read_input(args))
    strategy = _strategy(args, ring)
    if args.ge_only and A.shape == (2, 2):
        cert = ge2_reduce(A, strategy)
    else:
        cert = diagonal_reduce(A, strategy)
    verdict = verify_certificate(A, cert)
    if not verdict.passed:
        # never print an unverified certificate
        raise _Failure(EXIT_VERIFY, f"internal certificate failed: {verdict.failures}")
    doc = {
        "input": matrix_to_json(A),
        "certificate": certificate_to_json(cert),
        "verified": True,
    }
    if args.ge_only:
        doc["ge_check"] = {
            "transvections_only": all(op.kind == "transvection" for op in cert.left_ops),
            "det_P": ring.to_json(determinant(cert.P())),
        }
    return doc


def cmd_verify(args, ring: Ring) -> dict:
    doc = _load_json(_read_input(args))
    if not isinstance(doc, dict) or "input" not in doc or "certificate" not in doc:
        raise ParseError("verify expects a document with 'input' and 'certificate'")
    A = matrix_from_json(ring, doc["input"])
    cert = certificate_from_json(doc["certificate"], A.nrows)
    verdict = verify_certificate(A, cert)
    out = {"passed": verdict.passed, "clauses": verdict.clauses, "failures": verdict.failures}
    if not verdict.passed:
        raise _Failure(EXIT_VERIFY, "certificate rejected", out)
    return out


def cmd_probe(args, ring: Ring) -> dict:
    if ring.is_finite:
        return ring_property_report(ring, args.max_elements).to_json()
    cv = cross_validate_reduction(ring, samples=args.samples, seed=args.seed)
    return {"ring": cv.ring, "seed": args.seed, "checked": cv.checked, "failures": cv.failures}


def _elements(ring, texts, names):
    if len(texts) != len(names):
        raise ParseError(f"expected {len(names)} elements ({', '.join(names)}), got {len(texts)}")
    return [parse_element(ring, t) for t in texts]


def cmd_witness(args, ring: Ring) -> dict:
    R = ring
    f, j = R.format, R.to_json
    strategy = _strategy(args, ring)
    kind = args.kind
    if kind == "sr1":
        a, b = _elements(R, args.elements, ("a", "b"))
        y = st.sr1_witness(R, a, b, strategy)
        if y is None:
            raise WitnessNotFoundError(f"no y within the search bound for a={f(a)}, b={f(b)}")
        v = R.add(a, R.mul(b, y))
        result = {"y": j(y)}
        identity = f"a + b*y = {f(v)}, unit: {R.is_unit(v)}"
    elif kind == "sr2":
        a, b, c = _elements(R, args.elements, ("a", "b", "c"))
        y, z = st.sr2_witness(R, a, b, c, strategy)
        u, v = R.add(a, R.mul(c, y)), R.add(b, R.mul(c, z))
        g = R.gcdex(u, v).g
        result = {"y": j(y), "z": j(z)}
        identity = f"gcd(a + c*y, b + c*z) = gcd({f(u)}, {f(v)}) = {f(g)}, unit: {R.is_unit(g)}"
    elif kind == "locally-stable":
        a, b = _elements(R, args.elements, ("a", "b"))
        y = st.locally_stable_witness(R, a, b, strategy)
        v = R.add(a, R.mul(b, y))
        result = {"y": j(y)}
        identity = f"a + b*y = {f(v)}, quotient has stable range 1: {st.in_T(R, v)}"
    elif kind == "adequate":
        c, a = _elements(R, args.elements, ("c", "a"))
        pair = st.adequate_decompose(R, c, a)
        g = R.gcdex(pair.r, a).g
        result = {"r": j(pair.r), "s": j(pair.s)}
        identity = (
            f"r*s = {f(R.mul(pair.r, pair.s))}, gcd(r, a) = {f(g)}, "
            f"condition holds: {st.adequate_pair_ok(R, c, a, pair.r, pair.s)}"
        )
    else:  # gh
        a1, a2, a3 = _elements(R, args.elements, ("a1", "a2", "a3"))
        p, q = st.gh_witness(R, a1, a2, a3, strategy)
        u, v = R.add(R.mul(p, a1), R.mul(q, a2)), R.mul(q, a3)
        g = R.gcdex(u, v).g
        result = {"p": j(p), "q": j(q)}
        identity = f"gcd(p*a1 + q*a2, q*a3) = gcd({f(u)}, {f(v)}) = {f(g)}, unit: {R.is_unit(g)}"
    return {
        "witness": kind,
        "ring": str(R),
        "inputs": [j(parse_element(R, t)) for t in args.elements],
        "result": result,
        "identity": identity,
    }


COMMANDS = {"reduce": cmd_reduce, "verify": cmd_verify, "probe": cmd_probe, "witness": cmd_witness}


# ---------------------------------------------------------------------------
# argument parsing and output


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", required=True, help="ring string, e.g. Z, Zmod(6), GF(2)[x], Prod(Z,Zmod(4))")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--strategy", help="witness strategy: finite, integer, polynomial, product or bounded")
    common.add_argument("--limit", type=int, help="search bound (default $BEZRED_LIMIT or 1000)")
    common.add_argument("--seed", type=int, default=0)

    def with_input(p):
        p.add_argument("--input", help="input file ('-' or omitted reads stdin)")
        p.add_argument("--matrix", help="inline input instead of --input")

    parser = argparse.ArgumentParser(prog="bezred", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("reduce", parents=[common], help="diagonal reduction with a certificate")
    with_input(p)
    p.add_argument("--ge-only", action="store_true", help="2x2: use the transvection-only procedure and report det P")
    p = sub.add_parser("verify", parents=[common], help="check a certificate document")
    with_input(p)
    p = sub.add_parser("probe", parents=[common], help="brute-force property report")
    p.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    p.add_argument("--samples", type=int, default=100, help="infinite rings: random matrices to cross-check")
    p = sub.add_parser("witness", parents=[common], help="stability witnesses")
    p.add_argument("kind", choices=("sr1", "sr2", "locally-stable", "adequate", "gh"))
    p.add_argument("elements", nargs="*", help="element literals")
    return parser


def _text(doc, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in doc.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {json.dumps(v, separators=(',', ':'))}")
    return "\n".join(lines)


def _emit(doc, fmt: str, stream):
    stream.write((dumps(doc) if fmt == "json" else _text(doc)) + "\n")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        ring = parse_ring(args.ring)
        doc = COMMANDS[args.command](args, ring)
    except _Failure as exc:
        if exc.document is not None:
            _emit(exc.document, args.format, stdout)
        stderr.write(f"error: {exc}\n")
        return exc.code
    except (ParseError, RingMismatchError) as exc:
        stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except WitnessNotFoundError as exc:
        stderr.write(f"witness not found: {exc}\n")
        return EXIT_NOT_FOUND
    except (
        PreconditionError,
        NotAdequateError,
        RingTooLargeError,
        InfiniteRingError,
        UnsupportedRingError,
    ) as exc:
        stderr.write(f"precondition violated: {exc}\n")
        return EXIT_PRECONDITION
    _emit(doc, args.format, stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
