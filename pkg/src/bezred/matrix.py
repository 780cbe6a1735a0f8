"""Dense matrices over a ring, transvections and certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import RingMismatchError
from .rings import Ring


@dataclass(frozen=True)
class Matrix:
    ring: Ring
    rows: tuple  # tuple of row tuples
    ncols: int = field(default=-1)

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.ncols < 0:
            object.__setattr__(self, "ncols", len(rows[0]) if rows else 0)
        if any(len(r) != self.ncols for r in rows):
            raise ValueError("ragged matrix")

    @classmethod
    def of(cls, ring: Ring, rows: Sequence[Sequence[Any]], check: bool = True) -> "Matrix":
        m = cls(ring, rows)
        if check:
            for r in m.rows:
                for a in r:
                    if not ring.contains(a):
                        raise RingMismatchError(f"{a!r} is not an element of {ring}")
        return m

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, ring: Ring, m: int, n: int) -> "Matrix":
        return cls(ring, [[ring.zero] * n for _ in range(m)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.rows]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ring != other.ring:
            raise RingMismatchError("matrices over different rings")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix(self.ring, matmul(self.ring, self.rows, other.rows, other.ncols), other.ncols)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == Matrix.identity(self.ring, self.nrows)

    def __str__(self):
        f = self.ring.format
        return "[" + ", ".join("[" + ", ".join(f(a) for a in r) + "]" for r in self.rows) + "]"


def matmul(ring: Ring, A, B, ncols: int) -> list[list]:
    add, mul, z = ring.add, ring.mul, ring.zero
    out = []
    for row in A:
        new = []
        for j in range(ncols):
            s = z
            for k, a in enumerate(row):
                if a != z:
                    b = B[k][j]
                    if b != z:
                        s = add(s, mul(a, b))
            new.append(s)
        out.append(new)
    return out


def determinant(M: Matrix):
    """Laplace expansion; valid over any commutative ring (small sizes only)."""
    if M.nrows != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    ring = M.ring

    def det(rows, cols):
        if not rows:
            return ring.one
        i, rest = rows[0], rows[1:]
        total = ring.zero
        for k, j in enumerate(cols):
            a = M.rows[i][j]
            if a == ring.zero:
                continue
            term = ring.mul(a, det(rest, cols[:k] + cols[k + 1 :]))
            total = ring.sub(total, term) if k % 2 else ring.add(total, term)
        return total

    return det(tuple(range(M.nrows)), tuple(range(M.ncols)))


@dataclass(frozen=True)
class ElementaryOp:
    """Transvection: add ``scalar`` times line ``j`` to line ``i`` (0-based).

    ``side="left"`` acts on rows (left multiplication), ``side="right"`` on
    columns (right multiplication).
    """

    i: int
    j: int
    scalar: Any
    side: str = "left"
    kind: str = "transvection"

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("a transvection needs two distinct indices")
        if self.side not in ("left", "right"):
            raise ValueError(f"bad side {self.side!r}")

    def inverse(self, ring: Ring) -> "ElementaryOp":
        return ElementaryOp(self.i, self.j, ring.neg(self.scalar), self.side)


def apply_op(A: Matrix, op: ElementaryOp) -> Matrix:
    ring = A.ring
    rows = A.to_lists()
    n = A.nrows if op.side == "left" else A.ncols
    if not (0 <= op.i < n and 0 <= op.j < n):
        raise IndexError(f"op indices ({op.i}, {op.j}) out of range for size {n}")
    s = op.scalar
    if op.side == "left":
        rows[op.i] = [ring.add(a, ring.mul(s, b)) for a, b in zip(rows[op.i], rows[op.j])]
    else:
        for r in rows:
            r[op.i] = ring.add(r[op.i], ring.mul(s, r[op.j]))
    return Matrix(ring, rows, A.ncols)


def replay(ring: Ring, n: int, ops: Sequence[ElementaryOp]) -> Matrix:
    """The matrix ``E_k ... E_1`` obtained by applying ``ops`` to ``I_n`` in order."""
    M = Matrix.identity(ring, n)
    for op in ops:
        M = apply_op(M, op)
    return M


def diag_matrix(ring: Ring, m: int, n: int, diag: Sequence[Any]) -> Matrix:
    rows = [[ring.zero] * n for _ in range(m)]
    for k, e in enumerate(diag):
        rows[k][k] = e
    return Matrix(ring, rows, n)


@dataclass(frozen=True)
class Certificate:
    """``P @ A @ Q == diag`` with ``P`` the replay of ``left_ops``."""

    ring: Ring
    left_ops: tuple
    Q: Matrix
    Q_inv: Matrix
    diag: tuple
    shape: tuple  # (m, n) of the reduced matrix

    def P(self) -> Matrix:
        return replay(self.ring, self.shape[0], self.left_ops)

    def D(self) -> Matrix:
        return diag_matrix(self.ring, *self.shape, self.diag)
