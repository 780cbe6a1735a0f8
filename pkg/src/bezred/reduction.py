"""Diagonal reduction with replayable certificates.

All left-hand factors are recorded as transvections, so the replayed ``P``
always has determinant 1.  Right-hand factors are accumulated directly into
``Q`` together with its inverse.

``reduce_2x2_triangular`` follows the locally-stable 2x2 argument for
``[[a, 0], [b, c]]``; ``ge2_reduce`` is the general 2x2 procedure (content
extraction, the annihilator correction, a second triangularization and the
stable-range-1 corner finish); ``diagonal_reduce`` handles m x n matrices by
recursive pivoting and then repairs the divisibility chain with ``ge2_reduce``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import NotUnimodularError
from .matrix import Certificate, ElementaryOp, Matrix, apply_op, diag_matrix, replay
from .rings import Product, ResidueRing, Ring, _EuclideanDomain
from .stability import (
    WitnessStrategy,
    locally_stable_witness,
    sr1_modulo,
    unimodular_coefficients,
)


def swap_as_transvections(ring: Ring, n: int, i: int, j: int) -> list[ElementaryOp]:
    """Three transvections whose product moves row ``i`` to row ``j``
    and row ``j`` to ``-(row i)``; for ``(0, 1)`` this is ``[[0, -1], [1, 0]]``."""
    if i == j:
        raise ValueError("swap needs two distinct rows")
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"rows ({i}, {j}) out of range for size {n}")
    m1 = ring.neg(ring.one)
    return [ElementaryOp(i, j, m1), ElementaryOp(j, i, ring.one), ElementaryOp(i, j, m1)]


def _sl2_ops(ring: Ring, M) -> list[tuple]:
    """Transvections ``(i, j, s)`` on 2 rows whose replay on ``I_2`` is ``M``.

    ``M`` must have determinant 1.  Euclidean rings use the Euclidean
    algorithm; finite rings use their stable-range-1 shift.
    """
    if isinstance(ring, Product):
        left = _sl2_ops(ring.left, [[e[0] for e in r] for r in M])
        right = _sl2_ops(ring.right, [[e[1] for e in r] for r in M])
        zl, zr = ring.left.zero, ring.right.zero
        return [(i, j, (s, zr)) for i, j, s in left] + [(i, j, (zl, s)) for i, j, s in right]

    W = [list(M[0]), list(M[1])]
    steps = []

    def op(i, j, s):
        if s != ring.zero:
            W[i] = [ring.add(a, ring.mul(s, b)) for a, b in zip(W[i], W[j])]
            steps.append((i, j, s))

    if isinstance(ring, _EuclideanDomain):
        while W[1][0] != ring.zero and W[0][0] != ring.zero and not ring.is_unit(W[0][0]):
            op(0, 1, ring.neg(ring.divmod(W[0][0], W[1][0])[0]))
            if W[0][0] == ring.zero or ring.is_unit(W[0][0]):
                break
            op(1, 0, ring.neg(ring.divmod(W[1][0], W[0][0])[0]))
        if W[0][0] == ring.zero:
            op(0, 1, ring.one)
    elif not ring.is_unit(W[0][0]):
        assert isinstance(ring, ResidueRing)
        op(0, 1, ring.stable_shift(W[0][0], W[1][0]))
    u = W[0][0]
    u_inv = ring.unit_inverse(u)
    assert u_inv is not None, "matrix is not in SL_2"
    op(1, 0, ring.neg(ring.mul(W[1][0], u_inv)))
    if u != ring.one:
        # diag(u, 1/u) as a product of transvections
        op(1, 0, u_inv)
        op(0, 1, ring.sub(ring.one, u))
        op(1, 0, ring.neg(ring.one))
    op(0, 1, ring.neg(W[0][1]))
    assert W == [[ring.one, ring.zero], [ring.zero, ring.one]], "matrix is not in SL_2"
    return [(i, j, ring.neg(s)) for i, j, s in reversed(steps)]


@dataclass
class _Frame:
    """Mutable working state: ``P @ A0 @ Q == A`` throughout."""

    ring: Ring
    A: list
    ops: list = field(default_factory=list)
    Q: list = None
    Qinv: list = None

    ncols: int = -1

    def __post_init__(self):
        if self.ncols < 0:
            self.ncols = len(self.A[0])
        if self.Q is None:
            idn = Matrix.identity(self.ring, self.ncols).to_lists()
            self.Q, self.Qinv = idn, [r[:] for r in idn]

    @classmethod
    def of(cls, A: Matrix) -> "_Frame":
        return cls(A.ring, A.to_lists(), ncols=A.ncols)

    def row_add(self, i, j, s):
        """row i += s * row j (recorded)."""
        if s == self.ring.zero:
            return
        R = self.ring
        self.A[i] = [R.add(a, R.mul(s, b)) for a, b in zip(self.A[i], self.A[j])]
        self.ops.append(ElementaryOp(i, j, s))

    def left(self, ops, r0=0, r1=1):
        idx = (r0, r1)
        for op in ops:
            if isinstance(op, ElementaryOp):
                self.row_add(idx[op.i], idx[op.j], op.scalar)
            else:
                i, j, s = op
                self.row_add(idx[i], idx[j], s)

    def left_sl2(self, r0, r1, M):
        self.left(_sl2_ops(self.ring, M), r0, r1)

    def col_add(self, i, j, s):
        """col i += s * col j, i.e. right multiplication by I + s*E_ji."""
        if s == self.ring.zero:
            return
        R = self.ring
        for M in (self.A, self.Q):
            for r in M:
                r[i] = R.add(r[i], R.mul(s, r[j]))
        self.Qinv[j] = [R.sub(a, R.mul(s, b)) for a, b in zip(self.Qinv[j], self.Qinv[i])]

    def right2(self, c0, c1, M, Minv):
        """Right-multiply columns (c0, c1) by the invertible 2x2 ``M``."""
        R = self.ring
        (m00, m01), (m10, m11) = M
        for X in (self.A, self.Q):
            for r in X:
                a, b = r[c0], r[c1]
                r[c0] = R.add(R.mul(a, m00), R.mul(b, m10))
                r[c1] = R.add(R.mul(a, m01), R.mul(b, m11))
        (n00, n01), (n10, n11) = Minv
        u, v = self.Qinv[c0], self.Qinv[c1]
        self.Qinv[c0] = [R.add(R.mul(n00, a), R.mul(n01, b)) for a, b in zip(u, v)]
        self.Qinv[c1] = [R.add(R.mul(n10, a), R.mul(n11, b)) for a, b in zip(u, v)]

    def scale_col(self, k, u):
        R = self.ring
        for X in (self.A, self.Q):
            for r in X:
                r[k] = R.mul(r[k], u)
        inv = R.unit_inverse(u)
        self.Qinv[k] = [R.mul(inv, a) for a in self.Qinv[k]]

    def normalize(self):
        """Replace each diagonal entry by its canonical associate via Q."""
        for k in range(min(len(self.A), self.ncols)):
            u, c = self.ring.canonical_associate(self.A[k][k])
            if c != self.A[k][k]:
                self.scale_col(k, u)

    def certificate(self) -> Certificate:
        m, n = len(self.A), self.ncols
        r = min(m, n)
        return Certificate(
            self.ring,
            tuple(self.ops),
            Matrix(self.ring, self.Q, n),
            Matrix(self.ring, self.Qinv, n),
            tuple(self.A[k][k] for k in range(r)),
            (m, n),
        )


# ---------------------------------------------------------------------------
# 1x2 and triangular 2x2


def hermite_pair(ring: Ring, a, b):
    """``(c, Q, Q_inv)`` with ``(a, b) @ Q == (c, 0)`` and ``det Q == 1``."""
    d = ring.gcdex(a, b)
    Q = Matrix(ring, [[d.x, ring.neg(d.b_bar)], [d.y, d.a_bar]], 2)
    Qinv = Matrix(ring, [[d.a_bar, d.b_bar], [ring.neg(d.y), d.x]], 2)
    return d.g, Q, Qinv


def _swap_cols(ring):
    z, o = ring.zero, ring.one
    return [[z, o], [o, z]]


def reduce_2x2_triangular(ring: Ring, a, b, c, strategy: Optional[WitnessStrategy] = None):
    """Certificate reducing ``[[a, 0], [b, c]]`` (with ``(a, b, c)`` comaximal)
    to ``diag(1, a'c')``."""
    coeffs = unimodular_coefficients(ring, [a, b, c])
    if coeffs is None:
        raise NotUnimodularError("a, b, c do not generate the unit ideal")
    x, _, z = coeffs
    add, mul, neg = ring.add, ring.mul, ring.neg
    F = _Frame(ring, [[a, ring.zero], [b, c]])
    # pick t so that v = b + (ax + cz)t has a quotient of stable range 1
    t = locally_stable_witness(ring, b, add(mul(a, x), mul(c, z)), strategy)
    F.row_add(1, 0, mul(x, t))
    F.col_add(0, 1, mul(z, t))
    v = F.A[1][0]
    # (v, c) -> (0, c') on the right: Hermite then column swap
    _, H, Hinv = hermite_pair(ring, v, c)
    S = _swap_cols(ring)
    F.right2(0, 1, (H @ Matrix(ring, S)).rows, (Matrix(ring, S) @ Hinv).rows)
    assert F.A[1][0] == ring.zero
    (a1, b1), (_, c1) = F.A
    # b' + a'w is a unit modulo c'
    w = sr1_modulo(ring, b1, a1, c1, strategy)
    s = add(b1, mul(a1, w))
    p, q = unimodular_coefficients(ring, [s, c1])
    F.col_add(1, 0, w)
    F.left_sl2(0, 1, [[c1, neg(s)], [p, q]])
    F.col_add(0, 1, neg(mul(p, a1)))
    # conjugate diag(a'c', 1) by the signed swap
    F.left(swap_as_transvections(ring, 2, 0, 1))
    z0, o = ring.zero, ring.one
    F.right2(0, 1, [[z0, o], [neg(o), z0]], [[z0, neg(o)], [o, z0]])
    F.normalize()
    return F.certificate()


# ---------------------------------------------------------------------------
# content extraction and the general 2x2 procedure


def content_extract(A: Matrix):
    """``(h, A', w)``: ``A == h*A'`` with ``h`` generating the entry ideal,
    ``h*w == 0`` and ``1 + w`` in the ideal of the entries of ``A'``."""
    ring = A.ring
    entries = [e for r in A.rows for e in r]
    g, coeffs = ring.zero, []
    for e in entries:
        d = ring.gcdex(g, e)
        coeffs = [ring.mul(c, d.x) for c in coeffs] + [d.y]
        g = d.g
    h = g
    if h == ring.zero:
        return h, A, ring.zero
    A1 = Matrix(ring, [[ring.divide_exact(e, h) for e in r] for r in A.rows], A.ncols)
    if ring.is_domain:
        return h, A1, ring.zero
    if ring.is_finite:
        ideal = ring.zero
        for e in A1.rows:
            for x in e:
                ideal = ring.gcdex(ideal, x).g
        for w in ring.elements():
            if ring.mul(h, w) == ring.zero and ring.divides(ideal, ring.add(ring.one, w)):
                return h, A1, w
        raise AssertionError("no annihilator correction found")
    # infinite product: the correction from the Bezout combination itself
    total = ring.zero
    for e, c in zip((x for r in A1.rows for x in r), coeffs):
        total = ring.add(total, ring.mul(e, c))
    return h, A1, ring.sub(total, ring.one)


def _is_done_2x2(ring, M):
    return M[0][1] == ring.zero and M[1][0] == ring.zero and ring.divides(M[0][0], M[1][1])


def ge2_reduce(A: Matrix, strategy: Optional[WitnessStrategy] = None) -> Certificate:
    """Reduce a 2x2 matrix with a left factor built from transvections only."""
    if A.shape != (2, 2):
        raise ValueError("ge2_reduce needs a 2x2 matrix")
    ring = A.ring
    add, mul, neg = ring.add, ring.mul, ring.neg
    F = _Frame.of(A)
    M = F.A
    if M[0][0] == ring.zero and M[1][1] == ring.zero and not _is_done_2x2(ring, M):
        F.left(swap_as_transvections(ring, 2, 1, 0))
    if _is_done_2x2(ring, F.A):
        F.normalize()
        return F.certificate()

    # right GL_2 triangularization: A U = [[x, 0], [y, z]]
    _, U, Uinv = hermite_pair(ring, F.A[0][0], F.A[0][1])
    F.right2(0, 1, U.rows, Uinv.rows)
    h, B, w = content_extract(Matrix(ring, F.A, 2))
    # continue on h^-1 A U = [[x', w], [y', z']], which is unimodular
    F.A = [[B[0, 0], w], [B[1, 0], B[1, 1]]]
    _, V, Vinv = hermite_pair(ring, F.A[0][0], F.A[0][1])
    F.right2(0, 1, V.rows, Vinv.rows)
    (a1, _), (c1, d1) = F.A
    X, _, Z = unimodular_coefficients(ring, [a1, c1, d1])
    p = locally_stable_witness(ring, c1, add(mul(a1, X), mul(d1, Z)), strategy)
    F.row_add(1, 0, mul(X, p))
    F.col_add(0, 1, mul(Z, p))
    F.left(swap_as_transvections(ring, 2, 0, 1))
    # now [[q, -d'], [a', 0]] with R/qR of stable range 1
    _, W, Winv = hermite_pair(ring, F.A[0][0], F.A[0][1])
    F.right2(0, 1, W.rows, Winv.rows)
    (alpha, _), (gamma, delta) = F.A
    _finish_corner(F, alpha, gamma, delta, strategy)
    F.A = [[h, ring.zero], [ring.zero, mul(h, F.A[1][1])]]
    F.normalize()
    return F.certificate()


def _finish_corner(F: _Frame, d, e, f, strategy):
    """``[[d, 0], [e, f]]`` with ``R/dR`` of stable range 1 -> ``diag(1, d*f)``."""
    ring = F.ring
    add, mul, neg = ring.add, ring.mul, ring.neg
    w = sr1_modulo(ring, e, f, d, strategy)
    F.col_add(0, 1, w)
    s = add(e, mul(f, w))
    m, n = unimodular_coefficients(ring, [d, s])
    F.left_sl2(0, 1, [[m, n], [neg(s), d]])
    F.col_add(1, 0, neg(mul(n, f)))
    assert F.A[0] == [ring.one, ring.zero] and F.A[1][0] == ring.zero


# ---------------------------------------------------------------------------
# m x n driver


def diagonal_reduce(A: Matrix, strategy: Optional[WitnessStrategy] = None) -> Certificate:
    """``P A Q = diag(e_1, ..., e_r)`` with ``e_i | e_{i+1}``, ``P`` a product
    of transvections."""
    ring = A.ring
    F = _Frame.of(A)
    m, n = A.shape
    r = min(m, n)
    M = F.A
    for k in range(r):
        _pivot(F, k, m, n)
    # repair the divisibility chain pairwise
    for i in range(r):
        for j in range(i + 1, r):
            if ring.divides(M[i][i], M[j][j]):
                continue
            D2 = Matrix(ring, [[M[i][i], ring.zero], [ring.zero, M[j][j]]], 2)
            c = ge2_reduce(D2, strategy)
            F.left(c.left_ops, i, j)
            F.right2(i, j, c.Q.rows, c.Q_inv.rows)
            assert (M[i][i], M[j][j]) == c.diag
    F.normalize()
    return F.certificate()


def _pivot(F: _Frame, k: int, m: int, n: int):
    ring = F.ring
    M = F.A
    while True:
        for j in range(k + 1, n):
            e = M[k][j]
            if e == ring.zero:
                continue
            q = ring.divide_exact(e, M[k][k])
            if q is not None:
                F.col_add(j, k, ring.neg(q))
            else:
                # strictly enlarges the pivot ideal, so the loop terminates
                _, H, Hinv = hermite_pair(ring, M[k][k], e)
                F.right2(k, j, H.rows, Hinv.rows)
        for i in range(k + 1, m):
            e = M[i][k]
            if e == ring.zero:
                continue
            q = ring.divide_exact(e, M[k][k])
            if q is not None:
                F.row_add(i, k, ring.neg(q))
            else:
                d = ring.gcdex(M[k][k], e)
                F.left_sl2(k, i, [[d.x, d.y], [ring.neg(d.b_bar), d.a_bar]])
        if all(M[k][j] == ring.zero for j in range(k + 1, n)):
            return


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Verdict:
    clauses: dict

    @property
    def passed(self) -> bool:
        return all(self.clauses.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.clauses.items() if not v]


CLAUSES = ("shape", "ops_valid", "q_inverse", "replay", "divisibility", "canonical")


def verify_certificate(A: Matrix, cert: Certificate) -> Verdict:
    """Recheck every clause of a certificate from scratch."""
    ring = A.ring
    m, n = A.shape
    r = min(m, n)
    shape = (
        cert.ring == ring
        and tuple(cert.shape) == (m, n)
        and cert.Q.shape == (n, n)
        and cert.Q_inv.shape == (n, n)
        and len(cert.diag) == r
    )
    if not shape:
        return Verdict({k: k != "shape" and False for k in CLAUSES})
    ops_valid = all(
        isinstance(op, ElementaryOp)
        and op.side == "left"
        and op.kind == "transvection"
        and 0 <= op.i < m
        and 0 <= op.j < m
        and op.i != op.j
        and ring.contains(op.scalar)
        for op in cert.left_ops
    )
    q_inverse = (cert.Q @ cert.Q_inv).is_identity() and (cert.Q_inv @ cert.Q).is_identity()
    if ops_valid:
        P = replay(ring, m, cert.left_ops)
        replay_ok = P @ A @ cert.Q == diag_matrix(ring, m, n, cert.diag)
    else:
        replay_ok = False
    divisibility = all(ring.divides(cert.diag[i], cert.diag[i + 1]) for i in range(r - 1))
    canonical = all(ring.canonical_associate(e)[1] == e for e in cert.diag)
    return Verdict(
        {
            "shape": True,
            "ops_valid": ops_valid,
            "q_inverse": q_inverse,
            "replay": replay_ok,
            "divisibility": divisibility,
            "canonical": canonical,
        }
    )
