import random

import pytest
from hypothesis import given, strategies as hs

from bezred import (
    InfiniteRingError,
    Integers,
    PolyRing,
    Product,
    RingMismatchError,
    Zmod,
    enumerate_ring,
    quotient_ring,
)
from bezred.rings import arith

from conftest import F2, F3, FAMILIES, Z, random_element


# -- arithmetic --------------------------------------------------------------

def test_basic_arithmetic():
    assert Z.add(2, 3) == 5
    assert Zmod(6).mul(2, 3) == 0
    assert F2.add((1, 1), (0, 1)) == (1,)


def test_arith_rejects_mixed_rings():
    assert arith("add", Zmod(6), 2, 3) == 5
    with pytest.raises(RingMismatchError):
        arith("add", Zmod(6), 2, (1, 1))
    with pytest.raises(RingMismatchError):
        arith("mul", Z, 2, (1,))


def test_unit_inverse():
    assert Z.unit_inverse(1) == 1
    assert Z.unit_inverse(-1) == -1
    assert Z.unit_inverse(2) is None
    assert Zmod(6).unit_inverse(5) == 5
    assert Product(Zmod(4), Zmod(9)).unit_inverse((3, 2)) == (3, 5)
    assert F3.unit_inverse((2,)) == (2,)
    assert F3.unit_inverse((0, 1)) is None


@pytest.mark.parametrize("ring", [Zmod(12), Zmod(16), Product(Zmod(2), Zmod(9)), quotient_ring(F3, (1, 0, 1))], ids=str)
def test_unit_inverse_against_table(ring):
    els = ring.elements()
    for a in els:
        brute = [b for b in els if ring.mul(a, b) == ring.one]
        got = ring.unit_inverse(a)
        assert (got is None) == (not brute)
        if brute:
            assert got == brute[0]


# -- Bezout data ------------------------------------------------------------

def test_gcdex_examples():
    d = Z.gcdex(4, 6)
    assert (d.g, d.x, d.y, d.a_bar, d.b_bar) == (2, -1, 1, 2, 3)
    for ring in FAMILIES.values():
        d = ring.gcdex(ring.zero, ring.zero)
        assert (d.g, d.x, d.y, d.a_bar, d.b_bar) == (ring.zero, ring.one, ring.zero, ring.one, ring.zero)


def test_gcdex_zmod6_coprime_pair():
    R = Zmod(6)
    d = R.gcdex(2, 3)
    assert d.g == 1 and (d.a_bar, d.b_bar) == (2, 3)
    assert R.add(R.mul(2, d.x), R.mul(3, d.y)) == 1


def check_bezout(ring, a, b):
    d = ring.gcdex(a, b)
    add, mul = ring.add, ring.mul
    assert add(mul(a, d.x), mul(b, d.y)) == d.g
    assert mul(d.g, d.a_bar) == a
    assert mul(d.g, d.b_bar) == b
    assert add(mul(d.a_bar, d.x), mul(d.b_bar, d.y)) == ring.one
    assert ring.canonical_associate(d.g)[1] == d.g


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_gcdex_random(name):
    ring = FAMILIES[name]
    rnd = random.Random(name)
    for _ in range(400):
        check_bezout(ring, random_element(ring, rnd), random_element(ring, rnd))


@pytest.mark.parametrize("ring", [Zmod(12), Zmod(36), Product(Zmod(4), Zmod(6)), quotient_ring(F2, (0, 0, 1, 1))], ids=str)
def test_gcdex_exhaustive_and_ideal(ring):
    els = ring.elements()
    for a in els:
        for b in els:
            check_bezout(ring, a, b)
            # g generates aR + bR
            d = ring.gcdex(a, b)
            ideal = {ring.add(ring.mul(a, r), ring.mul(b, s)) for r in els for s in els}
            assert ideal == {ring.mul(d.g, r) for r in els}


@given(hs.integers(-10**30, 10**30), hs.integers(-10**30, 10**30))
def test_gcdex_big_integers(a, b):
    check_bezout(Z, a, b)


# -- division and associates ------------------------------------------------

def test_divide_exact():
    assert Z.divide_exact(6, 2) == 3
    assert Z.divide_exact(3, 2) is None
    assert Zmod(6).divide_exact(4, 2) == 2


@pytest.mark.parametrize("ring", [Zmod(12), Product(Zmod(4), Zmod(3)), quotient_ring(F2, (0, 0, 1))], ids=str)
def test_divide_exact_is_enumeration_least(ring):
    els = ring.elements()
    for a in els:
        for b in els:
            sols = [q for q in els if ring.mul(b, q) == a]
            got = ring.divide_exact(a, b)
            assert got == (sols[0] if sols else None)


def test_canonical_associate_examples():
    assert Z.canonical_associate(-6) == (-1, 6)
    assert F3.canonical_associate((1, 2)) == ((2,), (2, 1))
    assert Zmod(6).canonical_associate(4) == (5, 2)


@pytest.mark.parametrize("ring", [Zmod(12), Zmod(36), Product(Zmod(4), Zmod(6)), quotient_ring(F3, (0, 0, 1))], ids=str)
def test_canonical_associate_is_least_unit_multiple(ring):
    els = ring.elements()
    units = [u for u in els if ring.is_unit(u)]
    for a in els:
        u, c = ring.canonical_associate(a)
        assert ring.is_unit(u) and ring.mul(a, u) == c
        assert c == min((ring.mul(a, v) for v in units), key=ring.index_of)


# -- quotients and enumeration ----------------------------------------------

def test_quotients():
    assert quotient_ring(Z, 6) == Zmod(6)
    q = quotient_ring(Zmod(12), 4)
    assert q.size() == 4 and q == Zmod(4)
    q = quotient_ring(F2, (0, 1, 1))
    assert q.size() == 4
    assert not q.is_unit((0, 1)) and not q.is_unit((1, 1))
    assert q.mul((0, 1), (1, 1)) == q.zero
    assert quotient_ring(Z, 0) == Z


def test_enumeration():
    assert list(enumerate_ring(Zmod(4))) == [0, 1, 2, 3]
    assert list(enumerate_ring(Product(Zmod(2), Zmod(2)))) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert list(enumerate_ring(quotient_ring(F2, (0, 0, 1)))) == [(), (1,), (0, 1), (1, 1)]
    with pytest.raises(InfiniteRingError):
        enumerate_ring(Z)


@pytest.mark.parametrize("ring", [Zmod(9), quotient_ring(F3, (2, 0, 1)), Product(Zmod(3), quotient_ring(F2, (1, 1, 1)))], ids=str)
def test_enumeration_is_a_bijection(ring):
    els = enumerate_ring(ring)
    assert len(els) == len(set(els)) == ring.size()
    assert all(ring.index_of(a) == k and ring.element_at(k) == a for k, a in enumerate(els))


def test_flags():
    assert Z.is_domain and F2.is_domain
    assert not Zmod(6).is_domain and not Product(Z, Z).is_domain
    assert not Z.is_finite and Zmod(6).is_finite
    assert Product(Zmod(2), Zmod(3)).is_finite and not Product(Z, Zmod(3)).is_finite


def test_bad_moduli():
    with pytest.raises(ValueError):
        Zmod(1)
    with pytest.raises(ValueError):
        PolyRing(4)
