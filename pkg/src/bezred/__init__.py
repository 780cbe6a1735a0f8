"""Exact diagonal reduction over commutative Bezout rings, with certificates."""

from .errors import (
    BezredError,
    InfiniteRingError,
    NotAdequateError,
    NotUnimodularError,
    ParseError,
    PreconditionError,
    RingMismatchError,
    RingTooLargeError,
    UnsupportedRingError,
    WitnessNotFoundError,
)
from .matrix import Certificate, ElementaryOp, Matrix, apply_op, determinant, replay
from .parsing import parse_element, parse_ring
from .reduction import (
    Verdict,
    content_extract,
    diagonal_reduce,
    ge2_reduce,
    hermite_pair,
    reduce_2x2_triangular,
    swap_as_transvections,
    verify_certificate,
)
from .rings import BezoutData, Integers, PolyRing, Product, ResidueRing, Ring, Zmod, enumerate_ring, quotient_ring

__all__ = [name for name in dir() if not name.startswith("_")]
