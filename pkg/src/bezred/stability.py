"""Witness procedures: stable range, local stability, adequacy, Gillman-Henriksen.

Every procedure takes a ``WitnessStrategy`` that fixes where witnesses come
from.  ``default_strategy(ring)`` picks the natural one:

* ``finite``      exhaustive search in enumeration order (finite rings);
* ``integer``     Z, which has almost stable range 1: any nonzero element has
                  a quotient of stable range 1;
* ``polynomial``  F_p[x], a PID, so every nonzero element is adequate;
* ``product``     componentwise, each side with its own default;
* ``bounded``     generic search over the first ``limit`` candidates.

Returned witnesses are always re-checked against their defining identity.
"""

from __future__ import annotations

import functools
import itertools
import math
import os
from dataclasses import dataclass
from typing import Optional

from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

from .errors import (
    InfiniteRingError,
    NotAdequateError,
    PreconditionError,
    WitnessNotFoundError,
)
from .rings import (
    Integers,
    PolyRing,
    Product,
    ResidueRing,
    Ring,
    _EuclideanDomain,
    quotient_ring,
)

KINDS = ("finite", "integer", "polynomial", "product", "bounded")


def default_limit() -> int:
    return int(os.environ.get("BEZRED_LIMIT", "1000"))


@dataclass(frozen=True)
class WitnessStrategy:
    kind: str
    limit: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown strategy {self.kind!r}; expected one of {KINDS}")
        if self.kind == "bounded" and (self.limit is None or self.limit < 1):
            raise ValueError("bounded search needs limit >= 1")

    def search_limit(self) -> int:
        return self.limit if self.limit is not None else default_limit()


def FiniteBruteForce() -> WitnessStrategy:
    return WitnessStrategy("finite")


def IntegerAlmostSR1() -> WitnessStrategy:
    return WitnessStrategy("integer")


def PolynomialAdequate() -> WitnessStrategy:
    return WitnessStrategy("polynomial")


def ProductComponentwise() -> WitnessStrategy:
    return WitnessStrategy("product")


def BoundedSearch(limit: int) -> WitnessStrategy:
    return WitnessStrategy("bounded", limit)


def default_strategy(ring: Ring) -> WitnessStrategy:
    if isinstance(ring, Product):
        return ProductComponentwise()
    if ring.is_finite:
        return FiniteBruteForce()
    if isinstance(ring, Integers):
        return IntegerAlmostSR1()
    if isinstance(ring, PolyRing):
        return PolynomialAdequate()
    raise ValueError(f"no default strategy for {ring}")


def resolve_strategy(ring: Ring, strategy: Optional[WitnessStrategy]) -> WitnessStrategy:
    """The given strategy (or the ring's default), checked to apply to ``ring``."""
    s = strategy or default_strategy(ring)
    ok = {
        "finite": ring.is_finite,
        "integer": isinstance(ring, Integers),
        "polynomial": isinstance(ring, PolyRing),
        "product": isinstance(ring, Product),
        "bounded": True,
    }[s.kind]
    if not ok:
        raise ValueError(f"strategy {s.kind!r} does not apply to {ring}")
    return s


def _split(ring: Product, strategy: WitnessStrategy):
    """Component strategies for a product (bounded search is passed through)."""
    if strategy.kind == "bounded":
        return strategy, strategy
    return default_strategy(ring.left), default_strategy(ring.right)


# ---------------------------------------------------------------------------
# ideal helpers


def comaximal(ring: Ring, *xs) -> bool:
    """True when ``xs`` generate the unit ideal."""
    g = ring.zero
    for x in xs:
        g = ring.gcdex(g, x).g
    return ring.is_unit(g)


def unimodular_coefficients(ring: Ring, xs):
    """Coefficients ``cs`` with ``sum(x*c) == 1``, or None if not comaximal."""
    g, coeffs = ring.zero, []
    for x in xs:
        d = ring.gcdex(g, x)
        coeffs = [ring.mul(c, d.x) for c in coeffs] + [d.y]
        g = d.g
    inv = ring.unit_inverse(g)
    if inv is None:
        return None
    return [ring.mul(c, inv) for c in coeffs]


def _require_comaximal(ring, *xs):
    if not comaximal(ring, *xs):
        shown = ", ".join(ring.format(x) for x in xs)
        raise PreconditionError(f"({shown}) do not generate the unit ideal of {ring}")


# ---------------------------------------------------------------------------
# stable range 1


def sr1_witness(ring: Ring, a, b, strategy: Optional[WitnessStrategy] = None):
    """Some ``y`` with ``a + b*y`` a unit, or None.

    Absence is definitive on finite rings and for the exact solvers used on
    Z and F_p[x]; under ``bounded`` it only means the search ran out.
    """
    _require_comaximal(ring, a, b)
    s = resolve_strategy(ring, strategy)
    if s.kind == "product":
        sl, sr = _split(ring, s)
        yl = sr1_witness(ring.left, a[0], b[0], sl)
        yr = sr1_witness(ring.right, a[1], b[1], sr)
        y = None if yl is None or yr is None else (yl, yr)
    elif s.kind in ("integer", "polynomial"):
        y = _domain_sr1(ring, a, b)
    else:
        pool = ring.elements() if s.kind == "finite" else itertools.islice(ring.candidates(), s.limit)
        y = next((y for y in pool if ring.is_unit(ring.add(a, ring.mul(b, y)))), None)
    if y is not None:
        assert ring.is_unit(ring.add(a, ring.mul(b, y)))
    return y


def _domain_sr1(ring: _EuclideanDomain, a, b):
    # a + b*y = u for a unit u  <=>  y = (u - a)/b exactly
    if b == ring.zero:
        return ring.zero if ring.is_unit(a) else None
    if isinstance(ring, Integers):
        units = (1, -1)
    else:
        units = tuple((k,) for k in range(1, ring.p))
    sols = [q for u in units if (q := ring.divide_exact(ring.sub(u, a), b)) is not None]
    return min(sols, key=ring.index_of) if sols else None


def sr1_modulo(ring: Ring, a, b, c, strategy: Optional[WitnessStrategy] = None):
    """Some ``y`` with ``a + b*y`` a unit modulo ``c``.

    This is a stable-range-1 witness in ``R/cR``; it needs ``(a, b, c)`` to be
    comaximal and raises ``WitnessNotFoundError`` if none is found.
    """
    _require_comaximal(ring, a, b, c)
    s = resolve_strategy(ring, strategy)
    if s.kind == "product":
        sl, sr = _split(ring, s)
        y = (
            sr1_modulo(ring.left, a[0], b[0], c[0], sl),
            sr1_modulo(ring.right, a[1], b[1], c[1], sr),
        )
    elif s.kind in ("integer", "polynomial"):
        if c == ring.zero:
            y = _domain_sr1(ring, a, b)
        elif ring.is_unit(c):
            y = ring.zero
        else:
            y = ring.coprime_shift(a, b, c)
    elif s.kind == "finite":
        Q = quotient_ring(ring, c)
        y = sr1_witness(Q, Q.project(a), Q.project(b), FiniteBruteForce())
    else:
        pool = itertools.islice(ring.candidates(), s.limit)
        y = next((y for y in pool if comaximal(ring, ring.add(a, ring.mul(b, y)), c)), None)
    if y is None:
        raise WitnessNotFoundError(f"no stable-range witness modulo {ring.format(c)} in {ring}")
    assert comaximal(ring, ring.add(a, ring.mul(b, y)), c)
    return y


def quotient_has_sr1(ring: Ring, a) -> bool:
    """Decide exhaustively whether ``R/aR`` has stable range 1."""
    return has_sr1_exhaustive(quotient_ring(ring, a))


@functools.lru_cache(maxsize=4096)
def has_sr1_exhaustive(Q: Ring) -> bool:
    if not Q.is_finite:
        raise InfiniteRingError(f"{Q} is infinite")
    if isinstance(Q, Product):
        # a product has stable range 1 iff both factors do
        return has_sr1_exhaustive(Q.left) and has_sr1_exhaustive(Q.right)
    if isinstance(Q, ResidueRing):
        return _residue_sr1(Q)
    els = Q.elements()
    for b in els:
        for c in els:
            if comaximal(Q, b, c) and not any(Q.is_unit(Q.add(b, Q.mul(c, y))) for y in els):
                return False
    return True


def _residue_sr1(Q: ResidueRing) -> bool:
    # The pair (b, c) only matters through the coset b + cQ, and cQ = gQ for
    # the canonical associate g of c.  So it suffices to check, for every
    # canonical generator g and every coset representative b modulo g that is
    # comaximal with g, that b + g*y is a unit for some y modulo n/g.
    D, n = Q.base, Q.modulus
    if isinstance(D, Integers):
        for g in range(1, n):
            if n % g:
                continue
            for b in range(g):
                if math.gcd(b, g) == 1 and not any(
                    math.gcd(b + g * y, n) == 1 for y in range(n // g)
                ):
                    return False
        return True
    for g in Q.elements():
        if g == Q.zero or Q.canonical_associate(g)[1] != g:
            continue
        cosets = quotient_ring(Q, g).elements()
        ys = ResidueRing(D, D.canonical_associate(D.divmod(n, g)[0])[1]).elements()
        for b in cosets:
            if not comaximal(Q, b, g):
                continue
            if not any(Q.is_unit(Q.add(b, Q.mul(g, y))) for y in ys):
                return False
    return True


def in_T(ring: Ring, a) -> bool:
    """Membership in the set of elements whose localization has stable range 1."""
    if a == ring.zero:
        if ring.has_sr1 == "unknown":
            raise InfiniteRingError(f"stable range of {ring} is not recorded")
        return ring.has_sr1 == "yes"
    if ring.is_unit(a):
        return True
    return quotient_has_sr1(ring, a)


# ---------------------------------------------------------------------------
# local stability and stable range 2


def locally_stable_witness(ring: Ring, a, b, strategy: Optional[WitnessStrategy] = None):
    """``y`` such that ``R/(a + b*y)R`` has stable range 1."""
    _require_comaximal(ring, a, b)
    s = resolve_strategy(ring, strategy)
    if s.kind == "product":
        sl, sr = _split(ring, s)
        return (
            locally_stable_witness(ring.left, a[0], b[0], sl),
            locally_stable_witness(ring.right, a[1], b[1], sr),
        )
    if s.kind in ("integer", "polynomial"):
        # every nonzero element has a finite quotient; a = 0 forces b to be a unit
        y = ring.zero if a != ring.zero else ring.one
        assert ring.add(a, ring.mul(b, y)) != ring.zero
        return y
    if s.kind == "finite" and ring.has_sr1 == "yes":
        return ring.zero
    pool = ring.elements() if s.kind == "finite" else itertools.islice(ring.candidates(), s.limit)
    for y in pool:
        v = ring.add(a, ring.mul(b, y))
        Q = quotient_ring(ring, v)
        if Q.is_finite and Q.size() <= 10_000 and has_sr1_exhaustive(Q):
            return y
    raise WitnessNotFoundError(f"no locally stable witness for ({ring.format(a)}, {ring.format(b)})")


def sr2_witness(ring: Ring, a, b, c, strategy: Optional[WitnessStrategy] = None):
    """``(y, z)`` with ``(a + c*y)R + (b + c*z)R = R``.

    Built by passing through an element ``w = a + b*y0 + c*z0`` whose quotient
    has stable range 1, making ``b + c*v`` a unit modulo ``w`` and unwinding.
    """
    _require_comaximal(ring, a, b, c)
    add, mul, sub = ring.add, ring.mul, ring.sub
    try:
        k, p, q = unimodular_coefficients(ring, [a, b, c])
        t = locally_stable_witness(ring, a, add(mul(b, p), mul(c, q)), strategy)
        y0, z0 = mul(p, t), mul(q, t)
        w = add(a, add(mul(b, y0), mul(c, z0)))
        if not comaximal(ring, w, b, c):
            raise ArithmeticError("w, b, c not comaximal")
        v = sr1_modulo(ring, b, c, w, strategy)
        bv = add(b, mul(c, v))
        d = ring.gcdex(w, bv)
        inv = ring.unit_inverse(d.g)
        if inv is None:
            raise ArithmeticError("b + c*v is not a unit modulo w")
        s_, t_ = mul(d.x, inv), mul(d.y, inv)
        Y, Z = sub(z0, mul(v, y0)), v
        lhs = add(mul(add(a, mul(c, Y)), s_), mul(add(b, mul(c, Z)), add(t_, mul(y0, s_))))
        if lhs != ring.one:
            raise ArithmeticError("unwound identity failed")
    except (ArithmeticError, WitnessNotFoundError, ValueError):
        Y, Z = _search_pair(
            ring, strategy, lambda y, z: comaximal(ring, add(a, mul(c, y)), add(b, mul(c, z)))
        )
    assert comaximal(ring, add(a, mul(c, Y)), add(b, mul(c, Z)))
    return Y, Z


def _search_pair(ring, strategy, ok):
    if ring.is_finite:
        pool = ring.elements()
    else:
        limit = (strategy.search_limit() if strategy else default_limit())
        pool = list(itertools.islice(ring.candidates(), max(1, int(limit**0.5))))
    for y, z in itertools.product(pool, pool):
        if ok(y, z):
            return y, z
    raise WitnessNotFoundError(f"pair search exhausted in {ring}")


# ---------------------------------------------------------------------------
# adequacy


@dataclass(frozen=True)
class AdequatePair:
    r: object
    s: object


def _prime_factors(ring: _EuclideanDomain, s):
    if isinstance(ring, Integers):
        return list(factorint(abs(s)))
    lc, factors = gf_factor([ZZ(c) for c in reversed(s)], ring.p, ZZ)
    return [tuple(int(c) for c in reversed(f)) for f, _ in factors]


def adequate_pair_ok(ring: Ring, c, a, r, s) -> bool:
    """Check ``c = r*s``, ``rR + aR = R`` and that no non-unit divisor of
    ``s`` is comaximal with ``a``."""
    if ring.mul(r, s) != c or not comaximal(ring, r, a):
        return False
    if isinstance(ring, Product) and not ring.is_finite:
        return adequate_pair_ok(ring.left, c[0], a[0], r[0], s[0]) and adequate_pair_ok(
            ring.right, c[1], a[1], r[1], s[1]
        )
    if ring.is_finite:
        for d in ring.elements():
            if not ring.is_unit(d) and ring.divides(d, s) and comaximal(ring, d, a):
                return False
        return True
    if s == ring.zero:
        return False
    # every non-unit divisor of s has a prime factor of s, so it suffices
    # that each prime of s divides a
    return all(ring.divides(pi, a) for pi in _prime_factors(ring, s))


def adequate_decompose(ring: Ring, c, a) -> AdequatePair:
    """Factor ``c = r*s`` with ``r`` comaximal to ``a`` and ``s`` adequate-tight."""
    if isinstance(ring, _EuclideanDomain):
        if c == ring.zero:
            raise PreconditionError("adequacy of 0 over a domain is not decided here")
        r = ring.strip(c, a)
        pair = AdequatePair(r, ring.divide_exact(c, r))
    elif isinstance(ring, Product) and not ring.is_finite:
        l = adequate_decompose(ring.left, c[0], a[0])
        rr = adequate_decompose(ring.right, c[1], a[1])
        pair = AdequatePair((l.r, rr.r), (l.s, rr.s))
    else:
        pair = _finite_adequate(ring, c, a)
    if not adequate_pair_ok(ring, c, a, pair.r, pair.s):
        raise NotAdequateError(f"{ring.format(c)} has no adequate split against {ring.format(a)}")
    return pair


def _finite_adequate(ring: Ring, c, a) -> AdequatePair:
    if isinstance(ring, ResidueRing):
        # strip the lift of c of every prime shared with gcd(a, n)
        D, n = ring.base, ring.modulus
        lift = c if c != ring.zero else n
        r = D.strip(lift, D.gcd(a, n))
        s = D.divide_exact(lift, r)
        r, s = ring.reduce(r), ring.reduce(s)
        if adequate_pair_ok(ring, c, a, r, s):
            return AdequatePair(r, s)
    els = ring.elements()
    for r in els:
        if not comaximal(ring, r, a):
            continue
        for s in els:
            if ring.mul(r, s) == c and adequate_pair_ok(ring, c, a, r, s):
                return AdequatePair(r, s)
    raise NotAdequateError(f"{ring.format(c)} has no adequate split against {ring.format(a)}")


def is_adequate(ring: Ring, c) -> bool:
    if isinstance(ring, _EuclideanDomain):
        if c == ring.zero:
            raise PreconditionError("adequacy of 0 over a domain is not decided here")
        return True
    if isinstance(ring, Product) and not ring.is_finite:
        return is_adequate(ring.left, c[0]) and is_adequate(ring.right, c[1])
    for a in ring.elements():
        try:
            adequate_decompose(ring, c, a)
        except NotAdequateError:
            return False
    return True


in_S = is_adequate


# ---------------------------------------------------------------------------
# Gillman-Henriksen condition


def gh_witness(ring: Ring, a1, a2, a3, strategy: Optional[WitnessStrategy] = None):
    """``(p, q)`` with ``(p*a1 + q*a2)R + (q*a3)R = R``."""
    _require_comaximal(ring, a1, a2, a3)
    s = resolve_strategy(ring, strategy)
    add, mul = ring.add, ring.mul

    def ok(p, q):
        return comaximal(ring, add(mul(p, a1), mul(q, a2)), mul(q, a3))

    if s.kind == "product":
        sl, sr = _split(ring, s)
        pl, ql = gh_witness(ring.left, a1[0], a2[0], a3[0], sl)
        pr, qr = gh_witness(ring.right, a1[1], a2[1], a3[1], sr)
        p, q = (pl, pr), (ql, qr)
    elif s.kind == "finite":
        p, q = _search_pair(ring, s, ok)
    elif s.kind in ("integer", "polynomial"):
        p, q = _domain_gh(ring, a1, a2, a3, ok, s)
    else:
        pool = list(itertools.islice(ring.candidates(), s.limit))
        found = next(((p, q) for p in pool for q in pool if ok(p, q)), None)
        if found is None:
            raise WitnessNotFoundError("Gillman-Henriksen search exhausted")
        p, q = found
    assert ok(p, q)
    return p, q


def _domain_gh(ring: _EuclideanDomain, a1, a2, a3, ok, strategy):
    zero, one = ring.zero, ring.one
    for p, q in ((one, zero), (zero, one)):
        if ok(p, q):
            return p, q
    if a3 == zero:
        # need p*a1 + q*a2 to be a unit
        d = ring.gcdex(a1, a2)
        inv = ring.unit_inverse(d.g)
        if inv is not None:
            return ring.mul(d.x, inv), ring.mul(d.y, inv)
    else:
        # a3 = r*s with r coprime to a1 and every prime of s dividing a1, so
        # a2 is already coprime to s; shift a2 by a multiple of a1 to avoid r
        r = adequate_decompose(ring, a3, a1).r
        p = zero if ring.is_unit(r) else ring.coprime_shift(a2, a1, r)
        if ok(p, one):
            return p, one
    return _search_pair(ring, strategy, ok)
