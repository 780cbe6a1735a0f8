"""Brute-force ground truth for small rings.

Nothing here calls the Bezout, witness or reduction code except
``cross_validate_reduction``, whose whole point is to compare against it.
Finite rings are turned into addition and multiplication tables over element
indices and every property is decided by enumeration on those tables.
Determinantal divisors use a separate Laplace expansion with ``math.gcd`` over
Z and sympy's ``galoistools`` over GF(p)[x].
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import product as cartesian

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_gcd, gf_mul, gf_quo, gf_sub

from .errors import RingTooLargeError, UnsupportedRingError
from .matrix import Matrix
from .rings import Integers, PolyRing, Ring

DEFAULT_MAX_ELEMENTS = 64


class _Tables:
    """Index tables of a finite ring: 0 is the zero element, ``one`` the identity."""

    def __init__(self, ring: Ring, max_elements: int):
        if not ring.is_finite:
            raise RingTooLargeError(f"{ring} is infinite")
        if ring.size() > max_elements:
            raise RingTooLargeError(f"{ring} has {ring.size()} elements (cap {max_elements})")
        self.ring = ring
        self.els = list(ring.elements())
        index = {a: k for k, a in enumerate(self.els)}
        N = self.N = len(self.els)
        self.add = [[index[ring.add(a, b)] for b in self.els] for a in self.els]
        self.mul = [[index[ring.mul(a, b)] for b in self.els] for a in self.els]
        self.zero = index[ring.zero]
        self.one = index[ring.one]
        self.neg = [row.index(self.zero) for row in self.add]
        self.units = [k for k in range(N) if self.one in self.mul[k]]
        self.is_unit = [self.one in self.mul[k] for k in range(N)]
        # principal ideals as bitmasks
        self.principal = [sum(1 << v for v in set(self.mul[a])) for a in range(N)]

    def sub(self, a, b):
        return self.add[a][self.neg[b]]

    def ideal2(self, a, b) -> int:
        """Bitmask of aR + bR."""
        pa = [v for v in range(self.N) if self.principal[a] >> v & 1]
        pb = [v for v in range(self.N) if self.principal[b] >> v & 1]
        return sum(1 << v for v in {self.add[x][y] for x in pa for y in pb})

    def comaximal(self, a, b) -> bool:
        return bool(self.ideal2(a, b) >> self.one & 1)

    def divides(self, a, b) -> bool:
        return bool(self.principal[a] >> b & 1)


@dataclass
class PropertyReport:
    ring: str
    bezout: bool
    hermite: bool
    sr1: bool
    all_adequate: bool
    clean: bool
    edr_2x2: bool
    counterexamples: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "bezout": self.bezout,
            "hermite": self.hermite,
            "sr1": self.sr1,
            "all_adequate": self.all_adequate,
            "clean": self.clean,
            "edr_2x2": self.edr_2x2,
            "counterexamples": self.counterexamples,
        }


def ring_property_report(ring: Ring, max_elements: int = DEFAULT_MAX_ELEMENTS) -> PropertyReport:
    T = _Tables(ring, max_elements)
    N = T.N
    enc = lambda *ks: [ring.to_json(T.els[k]) for k in ks]  # noqa: E731
    cex = {}

    comax = [[T.comaximal(a, b) for b in range(N)] for a in range(N)]

    # Bezout: every two-generated ideal is principal
    principals = set(T.principal)
    bezout = True
    for a, b in cartesian(range(N), repeat=2):
        if T.ideal2(a, b) not in principals:
            bezout, cex["bezout"] = False, enc(a, b)
            break

    # stable range 1
    sr1 = True
    for a, b in cartesian(range(N), repeat=2):
        if comax[a][b] and not any(T.is_unit[T.add[a][T.mul[b][y]]] for y in range(N)):
            sr1, cex["sr1"] = False, enc(a, b)
            break

    # Hermite: (a, b) Q = (c, 0) for invertible Q, i.e. some unimodular
    # column (z, w) with az + bw = 0 can serve as the second column of Q
    hermite = True
    for a, b in cartesian(range(N), repeat=2):
        if not any(
            comax[z][w] and T.add[T.mul[a][z]][T.mul[b][w]] == T.zero
            for z, w in cartesian(range(N), repeat=2)
        ):
            hermite, cex["hermite"] = False, enc(a, b)
            break

    # clean: x = idempotent + unit
    idem = [e for e in range(N) if T.mul[e][e] == e]
    clean = True
    for x in range(N):
        if not any(T.is_unit[T.sub(x, e)] for e in idem):
            clean, cex["clean"] = False, enc(x)
            break

    all_adequate, witness = _all_adequate(T, comax)
    if not all_adequate:
        cex["all_adequate"] = enc(*witness)

    edr, bad = _edr_2x2(T)
    if not edr:
        cex["edr_2x2"] = [enc(*row) for row in bad]
    return PropertyReport(str(ring), bezout, hermite, sr1, all_adequate, clean, edr, cex)


def _all_adequate(T: _Tables, comax):
    """Every c admits, for every a, a factorization c = r s with r comaximal
    to a and no non-unit divisor of s comaximal to a."""
    N = T.N
    divisors = [[d for d in range(N) if T.divides(d, s)] for s in range(N)]
    good_s = [
        [all(T.is_unit[d] or not comax[d][a] for d in divisors[s]) for a in range(N)]
        for s in range(N)
    ]
    for c in range(N):
        factorizations = [(r, s) for r in range(N) for s in range(N) if T.mul[r][s] == c]
        for a in range(N):
            if not any(comax[r][a] and good_s[s][a] for r, s in factorizations):
                return False, (c, a)
    return True, None


def _gl2_generators(T: _Tables):
    """A generating set of GL_2, checked by closure against a full count."""
    N, mul, add, sub = T.N, T.mul, T.add, T.sub
    z, o = T.zero, T.one
    order = sum(
        1
        for p, q, r, s in cartesian(range(N), repeat=4)
        if T.is_unit[sub(mul[p][s], mul[q][r])]
    )

    def mm(g, h):
        return (
            add[mul[g[0]][h[0]]][mul[g[1]][h[2]]],
            add[mul[g[0]][h[1]]][mul[g[1]][h[3]]],
            add[mul[g[2]][h[0]]][mul[g[3]][h[2]]],
            add[mul[g[2]][h[1]]][mul[g[3]][h[3]]],
        )

    candidates = [(o, s, z, o) for s in range(N) if s != z]
    candidates += [(o, z, s, o) for s in range(N) if s != z]
    candidates += [(u, z, z, o) for u in T.units if u != o]
    gens, group = [], {(o, z, z, o)}
    for c in candidates:
        if len(group) == order:
            break
        if c in group:
            continue
        gens.append(c)
        frontier = list(group)
        while frontier:
            nxt = []
            for g in frontier:
                for h in gens:
                    k = mm(g, h)
                    if k not in group:
                        group.add(k)
                        nxt.append(k)
            frontier = nxt
    if len(group) != order:
        raise AssertionError("transvections and diagonal units do not generate GL_2")
    return gens, mm


def _edr_2x2(T: _Tables):
    """Every 2x2 matrix's GL_2 x GL_2 orbit contains diag(e1, e2), e1 | e2."""
    N = T.N
    gens, mm = _gl2_generators(T)
    parent = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != root:
            parent[x], x = root, parent[x]
        return root

    for A in cartesian(range(N), repeat=4):
        ra = find(A)
        for g in gens:
            for B in (mm(g, A), mm(A, g)):
                rb = find(B)
                if rb != ra:
                    parent[rb] = ra
    good = set()
    for e1, e2 in cartesian(range(N), repeat=2):
        if T.divides(e1, e2):
            good.add(find((e1, T.zero, T.zero, e2)))
    for A in cartesian(range(N), repeat=4):
        if find(A) not in good:
            return False, ((A[0], A[1]), (A[2], A[3]))
    return True, None


# ---------------------------------------------------------------------------
# determinantal divisors


class _IntOps:
    zero, one = 0, 1
    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    gcd = staticmethod(lambda a, b: math.gcd(a, b))
    quo = staticmethod(lambda a, b: a // b)


class _GFOps:
    """Dense GF(p)[x] arithmetic on high-to-low coefficient lists."""

    def __init__(self, p):
        self.p = p
        self.zero, self.one = [], [1]

    def add(self, a, b):
        return gf_add(a, b, self.p, ZZ)

    def sub(self, a, b):
        return gf_sub(a, b, self.p, ZZ)

    def mul(self, a, b):
        return gf_mul(a, b, self.p, ZZ)

    def gcd(self, a, b):
        return gf_gcd(a, b, self.p, ZZ)

    def quo(self, a, b):
        return gf_quo(a, b, self.p, ZZ)


def _ops_for(ring: Ring):
    if isinstance(ring, Integers):
        return _IntOps(), (lambda a: a), (lambda a: a)
    if isinstance(ring, PolyRing):
        ops = _GFOps(ring.p)
        to = lambda a: [int(c) for c in reversed(a)]  # noqa: E731
        back = lambda v: tuple(int(c) for c in reversed(v))  # noqa: E731
        return ops, to, back
    raise UnsupportedRingError(f"determinantal divisors need Z or GF(p)[x], not {ring}")


def _minor(ops, M, rows, cols):
    if not rows:
        return ops.one
    total, first = ops.zero, rows[0]
    for k, c in enumerate(cols):
        a = M[first][c]
        if a == ops.zero:
            continue
        term = ops.mul(a, _minor(ops, M, rows[1:], cols[:k] + cols[k + 1 :]))
        total = ops.sub(total, term) if k % 2 else ops.add(total, term)
    return total


def determinantal_divisors(A: Matrix) -> tuple:
    """``d_k`` = canonical gcd of all k x k minors, k = 1..min(m, n)."""
    from itertools import combinations

    ops, to, back = _ops_for(A.ring)
    M = [[to(a) for a in r] for r in A.rows]
    m, n = A.shape
    out = []
    for k in range(1, min(m, n) + 1):
        g = ops.zero
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = ops.gcd(g, _minor(ops, M, rows, cols))
        out.append(back(g))
    return tuple(out)


def divisors_to_invariants(ring: Ring, d) -> tuple:
    """``e_k = d_k / d_{k-1}`` with ``d_0 = 1``; zero once the chain hits zero."""
    ops, to, back = _ops_for(ring)
    prev, out = ops.one, []
    for dk in d:
        dk = to(dk)
        out.append(back(ops.zero if prev == ops.zero else ops.quo(dk, prev)))
        prev = dk
    return tuple(out)


# ---------------------------------------------------------------------------
# element checks and cross validation


def element_checks(ring: Ring, x, max_elements: int = DEFAULT_MAX_ELEMENTS) -> dict:
    T = _Tables(ring, max_elements)
    k = T.els.index(x)
    regular = any(T.mul[T.mul[k][y]][k] == k for y in range(T.N))
    clean = any(T.mul[e][e] == e and T.is_unit[T.sub(k, e)] for e in range(T.N))
    return {"is_clean": clean, "is_regular": regular}


@dataclass
class CrossValidation:
    ring: str
    checked: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


def cross_validate_reduction(
    ring: Ring,
    samples: int = 500,
    seed: int = 0,
    size: int = 3,
    bound: int = 50,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> CrossValidation:
    """Finite rings: every 2x2 matrix.  Z and GF(p)[x]: random samples compared
    with determinantal divisors."""
    from .reduction import diagonal_reduce, verify_certificate

    failures, checked = [], 0
    if ring.is_finite:
        T = _Tables(ring, max_elements)
        for a, b, c, d in cartesian(T.els, repeat=4):
            A = Matrix(ring, [[a, b], [c, d]], 2)
            checked += 1
            if not verify_certificate(A, diagonal_reduce(A)).passed:
                failures.append(A.to_lists())
        return CrossValidation(str(ring), checked, failures)
    rnd = random.Random(seed)
    for _ in range(samples):
        if isinstance(ring, Integers):
            rows = [[rnd.randint(-bound, bound) for _ in range(size)] for _ in range(size)]
        else:
            rows = [
                [ring.element_at(rnd.randrange(ring.p ** 3)) for _ in range(size)]
                for _ in range(size)
            ]
        A = Matrix(ring, rows, size)
        cert = diagonal_reduce(A)
        checked += 1
        expected = divisors_to_invariants(ring, determinantal_divisors(A))
        if not verify_certificate(A, cert).passed or cert.diag != expected:
            failures.append(A.to_lists())
    return CrossValidation(str(ring), checked, failures)
