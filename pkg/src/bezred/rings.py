"""Concrete commutative Bezout rings with exact arithmetic.

Elements are plain Python values owned by a ring object, which does all the
arithmetic (``ring.mul(a, b)``).  Representations are canonical, so ``==`` on
values is ring equality:

* ``Integers``: ``int``.
* ``PolyRing(p)``: tuple of coefficients in ``[0, p)``, low degree first,
  no trailing zeros (zero is ``()``).
* ``ResidueRing(base, modulus)``: the canonical remainder of a base element
  (``Zmod(n)`` is ``ResidueRing(Integers(), n)``; quotients of ``GF(p)[x]``
  are residue rings over ``PolyRing``).
* ``Product(left, right)``: a pair ``(l, r)``.

Every ring is hashable, so quotient and enumeration results can be cached.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Any, Iterator, Optional

from .errors import InfiniteRingError, RingMismatchError


@dataclass(frozen=True)
class BezoutData:
    """Output of ``gcdex(a, b)``.

    ``a*x + b*y == g``, ``a == g*a_bar``, ``b == g*b_bar`` and
    ``a_bar*x + b_bar*y == 1``.
    """

    g: Any
    x: Any
    y: Any
    a_bar: Any
    b_bar: Any


class Ring:
    is_finite: bool = False
    is_domain: bool = False
    has_sr1: str = "unknown"  # "yes" | "no" | "unknown"

    zero: Any
    one: Any

    # -- arithmetic -----------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def contains(self, a) -> bool:
        raise NotImplementedError

    def from_int(self, k: int):
        raise NotImplementedError

    # -- Bezout structure ----------------------------------------------
    def unit_inverse(self, a):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        return self.unit_inverse(a) is not None

    def gcdex(self, a, b) -> BezoutData:
        raise NotImplementedError

    def divide_exact(self, a, b):
        raise NotImplementedError

    def divides(self, b, a) -> bool:
        """True when ``b`` divides ``a``."""
        return self.divide_exact(a, b) is not None

    def canonical_associate(self, a):
        raise NotImplementedError

    def quotient(self, a) -> "Ring":
        raise NotImplementedError

    # -- enumeration ------------------------------------------------------
    def size(self) -> Optional[int]:
        return None

    def element_at(self, i: int):
        raise NotImplementedError

    def index_of(self, a) -> int:
        raise NotImplementedError

    def candidates(self) -> Iterator:
        """All elements in the deterministic tie-break order."""
        n = self.size()
        indices = range(n) if n is not None else itertools.count()
        return (self.element_at(i) for i in indices)

    def elements(self) -> tuple:
        if not self.is_finite:
            raise InfiniteRingError(f"{self} is infinite and cannot be enumerated")
        return _elements(self)

    # -- encoding -------------------------------------------------------
    def to_json(self, a):
        raise NotImplementedError

    def from_json(self, v):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError


@functools.lru_cache(maxsize=256)
def _elements(ring: Ring) -> tuple:
    return tuple(ring.element_at(i) for i in range(ring.size()))


def enumerate_ring(ring: Ring) -> tuple:
    return ring.elements()


def quotient_ring(ring: Ring, a) -> Ring:
    """``R/aR``; its ``project`` method is the canonical map.  ``R/(0)`` is ``R``."""
    return _quotient(ring, a)


def _memoized(method):
    """Cache a pure method of a hashable ring on (ring, *args)."""
    cached = functools.lru_cache(maxsize=1 << 16)(method)

    @functools.wraps(method)
    def wrapper(self, *args):
        return cached(self, *args)

    return wrapper


@functools.lru_cache(maxsize=4096)
def _quotient(ring: Ring, a) -> Ring:
    return ring.quotient(a)


def arith(op: str, ring: Ring, a, b=None):
    """Checked arithmetic: ``op`` is one of add, sub, mul, neg."""
    operands = (a,) if op == "neg" else (a, b)
    for x in operands:
        if not ring.contains(x):
            raise RingMismatchError(f"{x!r} is not an element of {ring}")
    if op == "neg":
        return ring.neg(a)
    if op not in ("add", "sub", "mul"):
        raise ValueError(f"unknown operation {op!r}")
    return getattr(ring, op)(a, b)


# ---------------------------------------------------------------------------
# Euclidean domains


class _EuclideanDomain(Ring):
    """Shared gcd machinery for Z and F_p[x]."""

    is_domain = True
    has_sr1 = "no"

    def divmod(self, a, b):
        raise NotImplementedError

    def mod(self, a, m):
        return self.divmod(a, m)[1]

    def xgcd(self, a, b):
        """Return ``(g, x, y)`` with ``a*x + b*y == g`` and ``g`` canonical."""
        r0, r1 = a, b
        s0, s1 = self.one, self.zero
        t0, t1 = self.zero, self.one
        while r1 != self.zero:
            q, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(q, s1))
            t0, t1 = t1, self.sub(t0, self.mul(q, t1))
        if r0 == self.zero:
            return self.zero, self.one, self.zero
        u, g = self.canonical_associate(r0)
        return g, self.mul(u, s0), self.mul(u, t0)

    def gcd(self, *xs):
        g = self.zero
        for x in xs:
            g = self.xgcd(g, x)[0]
        return g

    def gcdex(self, a, b) -> BezoutData:
        g, x, y = self.xgcd(a, b)
        if g == self.zero:
            return BezoutData(self.zero, self.one, self.zero, self.one, self.zero)
        return BezoutData(g, x, y, self.divmod(a, g)[0], self.divmod(b, g)[0])

    def divide_exact(self, a, b):
        if b == self.zero:
            return self.zero if a == self.zero else None
        q, r = self.divmod(a, b)
        return q if r == self.zero else None

    def strip(self, m, a):
        """Largest divisor of ``m`` sharing no prime factor with ``a``."""
        r = m
        while True:
            g = self.gcd(r, a)
            if self.is_unit(g):
                return r
            r = self.divmod(r, g)[0]

    def coprime_shift(self, a, b, m, cap: int = 64):
        """Some ``y`` with ``gcd(a + b*y, m)`` a unit.

        Requires ``gcd(a, b, m)`` to be a unit and ``m != 0``.  Small
        candidates are tried first in tie-break order; beyond ``cap`` the
        prime-avoiding choice ``y = strip(m, a)`` is used, which always works.
        """
        for y in itertools.islice(self.candidates(), cap):
            if self.is_unit(self.gcd(self.add(a, self.mul(b, y)), m)):
                return y
        y = self.strip(m, a)
        assert self.is_unit(self.gcd(self.add(a, self.mul(b, y)), m))
        return y

    def quotient(self, a) -> Ring:
        if a == self.zero:
            return self
        return ResidueRing(self, self.canonical_associate(a)[1])


@dataclass(frozen=True)
class Integers(_EuclideanDomain):
    zero = 0
    one = 1

    def __str__(self):
        return "Z"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool)

    def from_int(self, k):
        return k

    def divmod(self, a, b):
        return divmod(a, b)

    def mod(self, a, m):
        return a % m

    def unit_inverse(self, a):
        return a if a in (1, -1) else None

    def is_unit(self, a):
        return a in (1, -1)

    def canonical_associate(self, a):
        return (-1, -a) if a < 0 else (1, a)

    def element_at(self, i):
        # 0, 1, -1, 2, -2, ...
        return (i + 1) // 2 if i % 2 else -(i // 2)

    def index_of(self, a):
        return 2 * a - 1 if a > 0 else -2 * a

    def to_json(self, a):
        return a

    def from_json(self, v):
        if isinstance(v, bool) or not isinstance(v, int):
            raise TypeError(f"expected an integer, got {v!r}")
        return v

    def format(self, a):
        return str(a)


@dataclass(frozen=True)
class PolyRing(_EuclideanDomain):
    """``F_p[x]`` with coefficient tuples, low degree first."""

    p: int

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p**0.5) + 1)):
            raise ValueError(f"GF({self.p}) needs a prime characteristic")

    def __str__(self):
        return f"GF({self.p})[x]"

    @property
    def zero(self):
        return ()

    @property
    def one(self):
        return (1,)

    @staticmethod
    def _trim(c):
        c = list(c)
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        p = self.p
        return self._trim([(x + (b[i] if i < len(b) else 0)) % p for i, x in enumerate(a)])

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        p = self.p
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._trim([c % p for c in out])

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and all(isinstance(c, int) and 0 <= c < self.p for c in a)
            and (not a or a[-1] != 0)
        )

    def from_int(self, k):
        return self._trim([k % self.p])

    def degree(self, a) -> int:
        return len(a) - 1

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        inv = pow(b[-1], -1, p)
        r = list(a)
        db = len(b) - 1
        q = [0] * max(len(a) - db, 0)
        for k in range(len(a) - 1 - db, -1, -1):
            c = r[k + db] * inv % p
            if c:
                q[k] = c
                for j, y in enumerate(b):
                    r[k + j] = (r[k + j] - c * y) % p
        return self._trim(q), self._trim(r[:db])

    def unit_inverse(self, a):
        return (pow(a[0], -1, self.p),) if len(a) == 1 else None

    def is_unit(self, a):
        return len(a) == 1

    def canonical_associate(self, a):
        if not a:
            return (1,), ()
        u = (pow(a[-1], -1, self.p),)
        return u, self.mul(u, a)

    def element_at(self, i):
        # base-p digits of i, low first: orders by degree, then leading coefficients
        out = []
        while i:
            i, d = divmod(i, self.p)
            out.append(d)
        return tuple(out)

    def index_of(self, a):
        return sum(c * self.p**k for k, c in enumerate(a))

    def to_json(self, a):
        return list(a)

    def from_json(self, v):
        if isinstance(v, int) and not isinstance(v, bool):
            return self.from_int(v)
        if not isinstance(v, list) or not all(isinstance(c, int) for c in v):
            raise TypeError(f"expected a coefficient list, got {v!r}")
        return self._trim(c % self.p for c in v)

    def format(self, a):
        return "[" + ",".join(map(str, a)) + "]"


# ---------------------------------------------------------------------------
# Finite rings


@dataclass(frozen=True)
class ResidueRing(Ring):
    """``base/(modulus)`` for a Euclidean domain ``base`` and nonzero modulus."""

    base: _EuclideanDomain
    modulus: Any

    is_finite = True
    has_sr1 = "yes"

    def __post_init__(self):
        if self.modulus == self.base.zero:
            raise InfiniteRingError("residue ring modulo zero is infinite")
        if self.base.canonical_associate(self.modulus)[1] != self.modulus:
            raise ValueError("modulus must be given as its canonical associate")
        # polynomial reduction is the bottleneck; memoize small rings
        memo = {} if isinstance(self.base, PolyRing) and self.size() <= 1024 else None
        object.__setattr__(self, "_memo", memo)

    def __str__(self):
        if isinstance(self.base, Integers):
            return f"Zmod({self.modulus})"
        return f"Quot({self.base},{self.base.format(self.modulus)})"

    @property
    def zero(self):
        return self.base.zero

    @property
    def one(self):
        return self.reduce(self.base.one)

    def reduce(self, a):
        """Canonical representative of a base element."""
        return self.base.mod(a, self.modulus)

    project = reduce

    def add(self, a, b):
        memo = self._memo
        if memo is None:
            return self.reduce(self.base.add(a, b))
        key = ("+", a, b)
        v = memo.get(key)
        if v is None:
            v = memo[key] = self.reduce(self.base.add(a, b))
        return v

    def sub(self, a, b):
        return self.reduce(self.base.sub(a, b))

    def mul(self, a, b):
        memo = self._memo
        if memo is None:
            return self.reduce(self.base.mul(a, b))
        key = ("*", a, b)
        v = memo.get(key)
        if v is None:
            v = memo[key] = self.reduce(self.base.mul(a, b))
        return v

    def neg(self, a):
        return self.reduce(self.base.neg(a))

    def contains(self, a):
        return self.base.contains(a) and self.reduce(a) == a

    def from_int(self, k):
        return self.reduce(self.base.from_int(k))

    def size(self):
        if isinstance(self.base, Integers):
            return self.modulus
        return self.base.p ** self.base.degree(self.modulus)

    def element_at(self, i):
        if isinstance(self.base, Integers):
            return i
        return self.base.element_at(i)

    def index_of(self, a):
        if isinstance(self.base, Integers):
            return a
        return self.base.index_of(a)

    @_memoized
    def unit_inverse(self, a):
        D = self.base
        g, x, _ = D.xgcd(a, self.modulus)
        if not D.is_unit(g):
            return None
        return self.reduce(D.mul(x, D.unit_inverse(g)))

    @_memoized
    def gcdex(self, a, b) -> BezoutData:
        # Work with lifts in the base domain.  With d = gcd(a, b, n) write
        # a = d*al, b = d*be, n = d*nu.  The cofactor al is shifted by a
        # multiple of nu so that gcd(a_bar, b_bar, n) = 1; the shift is the
        # part of gcd(be, n) coprime to al, which avoids every prime of n
        # that would otherwise divide both cofactors.
        D, n = self.base, self.modulus
        d = D.gcd(a, b, n)
        if d == n:
            return BezoutData(self.zero, self.one, self.zero, self.one, self.zero)
        al = D.divmod(a, d)[0]
        be = D.divmod(b, d)[0]
        nu = D.divmod(n, d)[0]
        if D.is_unit(D.gcd(al, be, n)):
            shift = D.zero
        else:
            shift = D.strip(D.gcd(be, n), al)
        a_bar = self.reduce(D.add(al, D.mul(shift, nu)))
        b_bar = be
        g1, x1, y1 = D.xgcd(a_bar, b_bar)
        g2, u, _ = D.xgcd(g1, n)
        assert D.is_unit(g2)
        u = D.mul(u, D.unit_inverse(g2))
        x = self.reduce(D.mul(u, x1))
        y = self.reduce(D.mul(u, y1))
        return BezoutData(self.reduce(d), x, y, a_bar, self.reduce(b_bar))

    @_memoized
    def divide_exact(self, a, b):
        D, n = self.base, self.modulus
        g = D.gcd(b, n)
        a_g = D.divide_exact(a, g)
        if a_g is None:
            return None
        nu = D.divmod(n, g)[0]
        if D.is_unit(nu):
            return self.zero
        _, inv, _ = D.xgcd(D.divmod(b, g)[0], nu)
        # least solution is the remainder modulo n/g
        return D.mod(D.mul(a_g, inv), nu)

    @_memoized
    def canonical_associate(self, a):
        D, n = self.base, self.modulus
        d = D.gcd(a, n)
        if d == n:
            return self.one, self.zero
        al = D.divmod(a, d)[0]
        nu = D.divmod(n, d)[0]
        if D.is_unit(nu):
            u0 = D.one
        else:
            _, u0, _ = D.xgcd(al, nu)
            u0 = D.mod(u0, nu)
        # lift the inverse of al modulo nu to a unit modulo n
        u = self.reduce(D.add(u0, D.mul(nu, D.strip(n, u0))))
        return u, self.reduce(d)

    def stable_shift(self, a, b):
        """Some ``y`` with ``a + b*y`` a unit, for comaximal ``a, b``."""
        return self.reduce(self.base.coprime_shift(a, b, self.modulus))

    def quotient(self, a) -> Ring:
        return ResidueRing(self.base, self.base.gcd(self.modulus, a))

    def to_json(self, a):
        return self.base.to_json(a)

    def from_json(self, v):
        return self.reduce(self.base.from_json(v))

    def format(self, a):
        return self.base.format(a)


def Zmod(n: int) -> ResidueRing:
    if n < 2:
        raise ValueError("Zmod modulus must be at least 2")
    return ResidueRing(Integers(), n)


@dataclass(frozen=True)
class Product(Ring):
    left: Ring
    right: Ring

    is_domain = False

    def __str__(self):
        return f"Prod({self.left},{self.right})"

    @property
    def is_finite(self):
        return self.left.is_finite and self.right.is_finite

    @property
    def has_sr1(self):
        flags = {self.left.has_sr1, self.right.has_sr1}
        if "no" in flags:
            return "no"
        return "yes" if flags == {"yes"} else "unknown"

    @property
    def zero(self):
        return (self.left.zero, self.right.zero)

    @property
    def one(self):
        return (self.left.one, self.right.one)

    def _both(self, name, a, b):
        return (getattr(self.left, name)(a[0], b[0]), getattr(self.right, name)(a[1], b[1]))

    def add(self, a, b):
        return self._both("add", a, b)

    def sub(self, a, b):
        return self._both("sub", a, b)

    def mul(self, a, b):
        return self._both("mul", a, b)

    def neg(self, a):
        return (self.left.neg(a[0]), self.right.neg(a[1]))

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == 2
            and self.left.contains(a[0])
            and self.right.contains(a[1])
        )

    def from_int(self, k):
        return (self.left.from_int(k), self.right.from_int(k))

    def project(self, a):
        return (self.left.project(a[0]), self.right.project(a[1]))

    def unit_inverse(self, a):
        u, v = self.left.unit_inverse(a[0]), self.right.unit_inverse(a[1])
        return None if u is None or v is None else (u, v)

    def gcdex(self, a, b):
        l, r = self.left.gcdex(a[0], b[0]), self.right.gcdex(a[1], b[1])
        return BezoutData(
            (l.g, r.g), (l.x, r.x), (l.y, r.y), (l.a_bar, r.a_bar), (l.b_bar, r.b_bar)
        )

    def divide_exact(self, a, b):
        q, s = self.left.divide_exact(a[0], b[0]), self.right.divide_exact(a[1], b[1])
        return None if q is None or s is None else (q, s)

    def canonical_associate(self, a):
        (u, c), (v, d) = self.left.canonical_associate(a[0]), self.right.canonical_associate(a[1])
        return (u, v), (c, d)

    def quotient(self, a):
        return Product(_quotient(self.left, a[0]), _quotient(self.right, a[1]))

    def size(self):
        if not self.is_finite:
            return None
        return self.left.size() * self.right.size()

    def element_at(self, i):
        if self.is_finite:
            i, j = divmod(i, self.right.size())
            return (self.left.element_at(i), self.right.element_at(j))
        # Cantor pairing over the two tie-break orders (finite sides wrap)
        k = int(((8 * i + 1) ** 0.5 - 1) // 2)
        while k * (k + 1) // 2 > i:
            k -= 1
        while (k + 1) * (k + 2) // 2 <= i:
            k += 1
        j = i - k * (k + 1) // 2
        return (self._at(self.left, k - j), self._at(self.right, j))

    @staticmethod
    def _at(ring, i):
        n = ring.size()
        return ring.element_at(i % n if n else i)

    def index_of(self, a):
        if self.is_finite:
            return self.left.index_of(a[0]) * self.right.size() + self.right.index_of(a[1])
        raise NotImplementedError("index_of is only defined on finite products")

    def to_json(self, a):
        return [self.left.to_json(a[0]), self.right.to_json(a[1])]

    def from_json(self, v):
        if not isinstance(v, (list, tuple)) or len(v) != 2:
            raise TypeError(f"expected a pair, got {v!r}")
        return (self.left.from_json(v[0]), self.right.from_json(v[1]))

    def format(self, a):
        return f"({self.left.format(a[0])},{self.right.format(a[1])})"
