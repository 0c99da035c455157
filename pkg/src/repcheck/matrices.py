"""Dense matrices and vectors over Q(zeta_8).

Everything stays exact: unitarity, Hermiticity and operator identities are
equality tests, never tolerance tests.  Sizes never exceed 16x16 here, so no
attempt is made at clever algorithms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from .cyclo import CycloNum, ONE, ZERO

Scalar = Union[CycloNum, int, Fraction]
Vector = tuple[CycloNum, ...]


def _as_cyclo(x: Scalar) -> CycloNum:
    return x if isinstance(x, CycloNum) else CycloNum(x)


class ExactMatrix:
    """An immutable rows x cols matrix with CycloNum entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[Scalar]]):
        self.entries = tuple(tuple(_as_cyclo(x) for x in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> ExactMatrix:
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def diag(cls, values: Sequence[Scalar]) -> ExactMatrix:
        n = len(values)
        return cls(
            [[_as_cyclo(values[i]) if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    def __getitem__(self, ij: tuple[int, int]) -> CycloNum:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_shape(other)
        return ExactMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_shape(other)
        return ExactMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix([[-a for a in row] for row in self.entries])

    def scale(self, c: Scalar) -> ExactMatrix:
        cc = _as_cyclo(c)
        return ExactMatrix([[cc * a for a in row] for row in self.entries])

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            out.append([_dot(row, col) for col in cols])
        return ExactMatrix(out)

    def _check_shape(self, other: ExactMatrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(list(zip(*self.entries)))

    def conj(self) -> ExactMatrix:
        return ExactMatrix([[a.conjugate() for a in row] for row in self.entries])

    def dagger(self) -> ExactMatrix:
        return self.conj().transpose()

    def trace(self) -> CycloNum:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        t = ZERO
        for i in range(self.rows):
            t = t + self.entries[i][i]
        return t

    def tensor(self, other: ExactMatrix) -> ExactMatrix:
        """Kronecker product; row-major qubit convention."""
        out = []
        for ra in self.entries:
            for rb in other.entries:
                out.append([a * b for a in ra for b in rb])
        return ExactMatrix(out)

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(row, v) for row in self.entries)

    def is_hermitian(self) -> bool:
        return self == self.dagger()

    def is_unitary(self) -> bool:
        return self.dagger() @ self == ExactMatrix.identity(self.rows)

    def is_identity(self) -> bool:
        return self == ExactMatrix.identity(self.rows)

    def __str__(self) -> str:
        cells = [[str(x) for x in row] for row in self.entries]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols})"


def _dot(xs: Sequence[CycloNum], ys: Sequence[CycloNum]) -> CycloNum:
    t = ZERO
    for x, y in zip(xs, ys):
        if x.is_zero() or y.is_zero():
            continue
        t = t + x * y
    return t


def hs_inner(x: ExactMatrix, y: ExactMatrix) -> CycloNum:
    """Hilbert-Schmidt inner product tr(X^dag Y)."""
    return (x.dagger() @ y).trace()


def vec_inner(v: Vector, w: Vector) -> CycloNum:
    """<v|w>, conjugate-linear in the first argument."""
    t = ZERO
    for a, b in zip(v, w):
        t = t + a.conjugate() * b
    return t


def vec_norm_sq(v: Vector) -> Fraction:
    return vec_inner(v, v).as_fraction()


def vec_add(v: Vector, w: Vector) -> Vector:
    return tuple(a + b for a, b in zip(v, w))


def vec_scale(c: Scalar, v: Vector) -> Vector:
    cc = _as_cyclo(c)
    return tuple(cc * a for a in v)


def vec_tensor(v: Vector, w: Vector) -> Vector:
    return tuple(a * b for a in v for b in w)


def outer(v: Vector, w: Vector) -> ExactMatrix:
    """|v><w| as an exact matrix."""
    return ExactMatrix([[a * b.conjugate() for b in w] for a in v])


def proportionality(v: Vector, w: Vector) -> "CycloNum | None":
    """The scalar c with v = c*w, or None if no such scalar exists.

    Exactness makes this a clean equality check; c lives in Q(zeta_8).
    A zero v against a non-zero w returns 0, so ray checks should also
    reject zero scalars.
    """
    if len(v) != len(w):
        return None
    pivot = next((i for i, x in enumerate(w) if not x.is_zero()), None)
    if pivot is None:
        return None if any(not x.is_zero() for x in v) else ONE
    c = v[pivot] / w[pivot]
    return c if all(x == c * y for x, y in zip(v, w)) else None


def matrix_proportionality(a: ExactMatrix, b: ExactMatrix) -> "CycloNum | None":
    """The scalar c with A = c*B, or None."""
    if (a.rows, a.cols) != (b.rows, b.cols):
        return None
    va = tuple(x for row in a.entries for x in row)
    vb = tuple(x for row in b.entries for x in row)
    return proportionality(va, vb)
