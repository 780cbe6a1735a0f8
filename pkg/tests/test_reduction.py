import random
from itertools import product as cartesian

import pytest
from hypothesis import given, strategies as hs

from bezred import (
    Matrix,
    NotUnimodularError,
    PolyRing,
    Product,
    Zmod,
    content_extract,
    determinant,
    diagonal_reduce,
    ge2_reduce,
    hermite_pair,
    quotient_ring,
    reduce_2x2_triangular,
    replay,
    swap_as_transvections,
    verify_certificate,
)
from bezred.matrix import Certificate, ElementaryOp
from bezred.oracle import determinantal_divisors, divisors_to_invariants

from conftest import F2, F3, FAMILIES, Z, random_element


def check(A, cert):
    v = verify_certificate(A, cert)
    assert v.passed, v.failures
    assert all(op.side == "left" and op.kind == "transvection" for op in cert.left_ops)
    if A.nrows <= 5:
        assert determinant(cert.P()) == A.ring.one
    return cert


# -- hermite_pair -----------------------------------------------------------

def test_hermite_pair_examples():
    c, Q, Qi = hermite_pair(Z, 4, 6)
    assert c == 2 and Q == Matrix(Z, [[-1, -3], [1, 2]])
    assert Matrix(Z, [[4, 6]]) @ Q == Matrix(Z, [[2, 0]])
    c, Q, _ = hermite_pair(Z, 0, 0)
    assert c == 0 and Q.is_identity()
    c, Q, _ = hermite_pair(Z, 0, 7)
    assert c == 7 and Q == Matrix(Z, [[0, -1], [1, 0]])


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_hermite_pair_invariants(name):
    ring = FAMILIES[name]
    rnd = random.Random(name)
    for _ in range(100):
        a, b = random_element(ring, rnd), random_element(ring, rnd)
        c, Q, Qi = hermite_pair(ring, a, b)
        assert Matrix(ring, [[a, b]]) @ Q == Matrix(ring, [[c, ring.zero]])
        assert (Q @ Qi).is_identity() and determinant(Q) == ring.one


# -- triangular 2x2 ---------------------------------------------------------

def test_triangular_examples():
    A = Matrix(Z, [[3, 0], [4, 5]])
    assert check(A, reduce_2x2_triangular(Z, 3, 4, 5)).diag == (1, 15)
    for ring in FAMILIES.values():
        o, z = ring.one, ring.zero
        A = Matrix(ring, [[o, z], [z, o]])
        assert check(A, reduce_2x2_triangular(ring, o, z, o)).diag == (o, o)
    R = Zmod(6)
    assert check(Matrix(R, [[2, 0], [3, 4]]), reduce_2x2_triangular(R, 2, 3, 4)).diag == (1, 2)


def test_triangular_rejects_non_unimodular():
    with pytest.raises(NotUnimodularError):
        reduce_2x2_triangular(Z, 2, 4, 6)


@pytest.mark.parametrize("ring", [Zmod(8), Zmod(12), Product(Zmod(2), Zmod(4)), quotient_ring(F2, (0, 0, 1, 1))], ids=str)
def test_triangular_exhaustive(ring):
    els = ring.elements()
    for a, b, c in cartesian(els, repeat=3):
        if ring.gcdex(ring.gcdex(a, b).g, c).g != ring.one:
            continue
        A = Matrix(ring, [[a, ring.zero], [b, c]])
        check(A, reduce_2x2_triangular(ring, a, b, c))


@given(hs.integers(-200, 200), hs.integers(-200, 200), hs.integers(-200, 200))
def test_triangular_integers(a, b, c):
    from math import gcd

    if gcd(gcd(a, b), c) != 1:
        return
    A = Matrix(Z, [[a, 0], [b, c]])
    cert = check(A, reduce_2x2_triangular(Z, a, b, c))
    assert cert.diag == (1, abs(a * c))


# -- content extraction -------------------------------------------------------

def test_content_extract_examples():
    h, A1, w = content_extract(Matrix(Z, [[2, 4], [6, 8]]))
    assert (h, A1, w) == (2, Matrix(Z, [[1, 2], [3, 4]]), 0)
    h, A1, w = content_extract(Matrix.zeros(Z, 2, 2))
    assert (h, A1, w) == (0, Matrix.zeros(Z, 2, 2), 0)
    R = Zmod(6)
    h, A1, w = content_extract(Matrix(R, [[2, 4], [2, 0]]))
    assert (h, A1) == (2, Matrix(R, [[1, 2], [1, 0]]))
    assert w == 0  # least of the valid corrections {0, 3}


@pytest.mark.parametrize("ring", [Zmod(12), Product(Zmod(4), Zmod(6)), Product(Z, Zmod(4))], ids=str)
def test_content_extract_invariants(ring):
    rnd = random.Random(3)
    for _ in range(200):
        A = Matrix(ring, [[random_element(ring, rnd, 12) for _ in range(2)] for _ in range(2)])
        h, A1, w = content_extract(A)
        assert Matrix(ring, [[ring.mul(h, e) for e in r] for r in A1.rows]) == A
        assert ring.mul(h, w) == ring.zero
        if h != ring.zero:
            g = ring.zero
            for e in (e for r in A1.rows for e in r):
                g = ring.gcdex(g, e).g
            assert ring.divides(g, ring.add(ring.one, w))


# -- GE 2x2 -----------------------------------------------------------------

def test_ge2_examples():
    A = Matrix(Z, [[2, 4], [6, 8]])
    assert check(A, ge2_reduce(A)).diag == (2, 4)
    for ring in FAMILIES.values():
        cert = ge2_reduce(Matrix.identity(ring, 2))
        assert cert.diag == (ring.one, ring.one) and cert.left_ops == () and cert.Q.is_identity()


def test_ge2_swap_matrix():
    A = Matrix(Z, [[0, -1], [1, 0]])
    cert = check(A, ge2_reduce(A))
    assert cert.diag == (1, 1)
    assert list(cert.left_ops) == swap_as_transvections(Z, 2, 1, 0)
    assert cert.P() == Matrix(Z, [[0, 1], [-1, 0]])


@pytest.mark.parametrize("ring", [Zmod(6), Zmod(8), Product(Zmod(2), Zmod(3)), quotient_ring(F2, (0, 1, 1)), quotient_ring(F2, (0, 0, 1))], ids=str)
def test_ge2_exhaustive(ring):
    for e in cartesian(ring.elements(), repeat=4):
        A = Matrix(ring, [e[:2], e[2:]])
        check(A, ge2_reduce(A))


@given(hs.lists(hs.integers(-10**6, 10**6), min_size=4, max_size=4))
def test_ge2_integers_match_oracle(e):
    A = Matrix(Z, [e[:2], e[2:]])
    cert = check(A, ge2_reduce(A))
    assert cert.diag == divisors_to_invariants(Z, determinantal_divisors(A))


@pytest.mark.parametrize("ring", [Product(Z, Zmod(4)), Product(Z, Z), F2, F3], ids=str)
def test_ge2_random(ring):
    rnd = random.Random(11)
    for _ in range(150):
        A = Matrix(ring, [[random_element(ring, rnd, 30) for _ in range(2)] for _ in range(2)])
        check(A, ge2_reduce(A))


# -- m x n driver -----------------------------------------------------------

def test_driver_examples():
    A = Matrix(Z, [[2, 4, 6], [8, 10, 12]])
    assert check(A, diagonal_reduce(A)).diag == (2, 6)
    A = Matrix.zeros(Z, 3, 2)
    assert check(A, diagonal_reduce(A)).diag == (0, 0)
    A = Matrix(Z, [[-7]])
    cert = check(A, diagonal_reduce(A))
    assert cert.diag == (7,) and cert.Q == Matrix(Z, [[-1]])


@given(
    hs.integers(1, 4).flatmap(
        lambda m: hs.integers(1, 4).flatmap(
            lambda n: hs.lists(hs.lists(hs.integers(-100, 100), min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )
)
def test_driver_integers_match_oracle(rows):
    A = Matrix(Z, rows)
    cert = check(A, diagonal_reduce(A))
    assert cert.diag == divisors_to_invariants(Z, determinantal_divisors(A))


@pytest.mark.parametrize("ring", [F2, F3, PolyRing(5)], ids=str)
def test_driver_polynomials_match_oracle(ring):
    rnd = random.Random(5)
    for _ in range(60):
        m, n = rnd.randint(1, 3), rnd.randint(1, 3)
        A = Matrix(ring, [[ring.element_at(rnd.randrange(ring.p**3)) for _ in range(n)] for _ in range(m)])
        cert = check(A, diagonal_reduce(A))
        assert cert.diag == divisors_to_invariants(ring, determinantal_divisors(A))


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_driver_random_shapes(name):
    ring = FAMILIES[name]
    rnd = random.Random(name)
    for _ in range(40):
        m, n = rnd.randint(1, 4), rnd.randint(1, 4)
        A = Matrix(ring, [[random_element(ring, rnd, 20) for _ in range(n)] for _ in range(m)])
        check(A, diagonal_reduce(A))


# -- verifier ---------------------------------------------------------------

def _tamper(cert, **changes):
    fields = dict(
        ring=cert.ring, left_ops=cert.left_ops, Q=cert.Q, Q_inv=cert.Q_inv, diag=cert.diag, shape=cert.shape
    )
    fields.update(changes)
    return Certificate(**fields)


def test_verifier_rejects_tampering():
    A = Matrix(Z, [[2, 4], [6, 8]])
    cert = ge2_reduce(A)
    assert verify_certificate(A, cert).passed
    v = verify_certificate(A, _tamper(cert, diag=(2, 3)))
    assert set(v.failures) == {"replay", "divisibility"}
    op = cert.left_ops[0]
    ops = (ElementaryOp(op.i, op.j, op.scalar + 1),) + cert.left_ops[1:]
    assert verify_certificate(A, _tamper(cert, left_ops=ops)).failures == ["replay"]
    v = verify_certificate(A, _tamper(cert, diag=(-2, -4)))
    assert "canonical" in v.failures
    v = verify_certificate(A, _tamper(cert, Q_inv=Matrix.identity(Z, 2)))
    assert "q_inverse" in v.failures
    bad_side = (ElementaryOp(0, 1, 0, side="right"),) + cert.left_ops
    assert "ops_valid" in verify_certificate(A, _tamper(cert, left_ops=bad_side)).failures
    v = verify_certificate(Matrix(Z, [[2, 4, 1], [6, 8, 1]]), cert)
    assert v.failures == [k for k in v.clauses]


def test_replay_matches_P():
    A = Matrix(Z, [[3, 5, 7], [11, 13, 17], [19, 23, 29]])
    cert = diagonal_reduce(A)
    assert cert.P() == replay(Z, 3, cert.left_ops)
    assert cert.P() @ A @ cert.Q == cert.D()
