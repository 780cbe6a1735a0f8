"""JSON encoding of matrices and certificates.

Certificate documents always have the keys ``ring, left_ops, Q, Q_inv, diag``
in that order, so dumps are byte-stable.
"""

from __future__ import annotations

import json

from .errors import ParseError
from .matrix import Certificate, ElementaryOp, Matrix
from .parsing import decode_element, parse_ring
from .rings import Ring


def matrix_to_json(M: Matrix) -> list:
    return [[M.ring.to_json(a) for a in r] for r in M.rows]


def matrix_from_json(ring: Ring, rows) -> Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("a matrix must be a list of rows")
    if not rows or not rows[0]:
        raise ParseError("empty matrix")
    try:
        return Matrix(ring, [[decode_element(ring, a) for a in r] for r in rows])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def certificate_to_json(cert: Certificate) -> dict:
    R = cert.ring
    return {
        "ring": str(R),
        "left_ops": [{"i": op.i, "j": op.j, "scalar": R.to_json(op.scalar)} for op in cert.left_ops],
        "Q": matrix_to_json(cert.Q),
        "Q_inv": matrix_to_json(cert.Q_inv),
        "diag": [R.to_json(e) for e in cert.diag],
    }


def certificate_from_json(doc: dict, nrows: int) -> Certificate:
    """Decode a certificate; ``nrows`` is the row count of the reduced matrix."""
    try:
        ring = parse_ring(doc["ring"])
        ops = tuple(
            ElementaryOp(int(o["i"]), int(o["j"]), decode_element(ring, o["scalar"]))
            for o in doc["left_ops"]
        )
        Q = matrix_from_json(ring, doc["Q"])
        Qinv = matrix_from_json(ring, doc["Q_inv"])
        diag = tuple(decode_element(ring, e) for e in doc["diag"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed certificate: {exc}") from exc
    return Certificate(ring, ops, Q, Qinv, diag, (nrows, Q.ncols))


def dumps(doc) -> str:
    return json.dumps(doc, separators=(", ", ": "))
