"""Exact rational linear algebra over :class:`fractions.Fraction`.

Vectors are tuples of Fractions and matrices are tuples of row tuples.
Everything here is a pure function of immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class MembershipError(ValueError):
    """A vector or subspace is not contained where it is required to be."""


def Q(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: nothing in this package is allowed to round.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c in s for c in ".eE"):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot make an exact rational from {type(x).__name__}")


def vec(xs: Iterable) -> Vector:
    return tuple(Q(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vec(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


def zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple(zeros(cols) for _ in range(rows))


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def neg(v: Sequence[Fraction]) -> Vector:
    return tuple(-a for a in v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), ZERO)


def is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


def transpose(m: Matrix, cols: int | None = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(cols or 0))
    return tuple(zip(*m))


def mat_vec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def rref_with_pivots(m: Sequence[Sequence[Fraction]]) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form plus the pivot column of each nonzero row."""
    rows = [list(r) for r in m]
    if not rows:
        return (), ()
    n_rows, n_cols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        piv_row = [x * inv for x in rows[r]]
        rows[r] = piv_row
        for i in range(n_rows):
            f = rows[i][c]
            if i != r and f:
                rows[i] = [a - f * b for a, b in zip(rows[i], piv_row)]
        pivots.append(c)
        r += 1
    return tuple(tuple(Fraction(x) for x in row) for row in rows), tuple(pivots)


def rref(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return rref_with_pivots(m)[0]


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    return len(rref_with_pivots(m)[1])


def det(m: Matrix) -> Fraction:
    n = len(m)
    rows = [list(r) for r in m]
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        d *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] * inv
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [tuple(row) + unit(n, i) for i, row in enumerate(m)]
    red, piv = rref_with_pivots(aug)
    if piv[:n] != tuple(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(row[n:] for row in red)


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient_dim held by its canonical (rref) basis rows."""

    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Fraction]], ambient_dim: int) -> "Subspace":
        rows = [tuple(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        red, piv = rref_with_pivots(rows)
        return cls(ambient_dim, red[: len(piv)])

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, identity(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(row) if x) for row in self.basis)

    def contains(self, v: Sequence[Fraction]) -> bool:
        w = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = w[p]
            if f:
                w = [a - f * b for a, b in zip(w, row)]
        return not any(w)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        # a·A = b·B  <=>  (a, -b) in the left kernel of [A; B]
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        stacked = self.basis + tuple(neg(r) for r in other.basis)
        left = kernel(transpose(stacked))
        k = self.dim
        vectors = [mat_vec(transpose(self.basis), c[:k]) for c in left.basis]
        return Subspace.span(vectors, self.ambient_dim)

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coefficients of ``v`` in this subspace's basis."""
        coeffs = tuple(v[p] for p in self.pivots)
        back = mat_vec(transpose(self.basis, self.ambient_dim), coeffs) if self.basis else zeros(self.ambient_dim)
        if back != tuple(v):
            raise MembershipError("vector is not in the subspace")
        return coeffs


def kernel(m: Sequence[Sequence[Fraction]], cols: int | None = None) -> Subspace:
    """Right null space of ``m``; pass ``cols`` when ``m`` has no rows."""
    if cols is None:
        if not m:
            raise ValueError("column count needed for an empty matrix")
        cols = len(m[0])
    if not m:
        return Subspace.full(cols)
    red, piv = rref_with_pivots(m)
    free = [c for c in range(cols) if c not in piv]
    vectors = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for row, p in zip(red, piv):
            v[p] = -row[f]
        vectors.append(v)
    return Subspace.span(vectors, cols)


def image(m: Matrix, cols: int | None = None) -> Subspace:
    """Column space of ``m``."""
    if not m:
        return Subspace.zero(0)
    return Subspace.span(transpose(m), len(m))


class Quotient:
    """Coordinates on ``ambient / sub`` in a canonical complement basis.

    The complement greedily extends the rref basis of ``sub`` by rref rows
    of ``ambient`` in order.
    """

    def __init__(self, ambient: Subspace, sub: Subspace):
        if not sub <= ambient:
            raise MembershipError("sub is not contained in ambient")
        self.ambient = ambient
        self.sub = sub
        comp: list[Vector] = []
        acc = sub
        for row in ambient.basis:
            if not acc.contains(row):
                comp.append(row)
                acc = Subspace.span(acc.basis + (row,), ambient.ambient_dim)
        self.complement: Matrix = tuple(comp)
        full = self.complement + sub.basis
        if full:
            # rows of `full` are independent, so its pivot columns give an invertible square block
            _, cols = rref_with_pivots(full)
            self._cols = cols
            square = tuple(tuple(r[c] for c in cols) for r in full)
            self._inv = inverse(square)
        else:
            self._cols = ()
            self._inv = ()

    @property
    def dim(self) -> int:
        return len(self.complement)

    def coords(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.ambient.ambient_dim:
            raise MembershipError("vector has the wrong length")
        if not self._cols:
            if any(v):
                raise MembershipError("vector is not in the ambient subspace")
            return ()
        picked = [v[c] for c in self._cols]
        # solve a·square = picked
        a = tuple(dot(picked, col) for col in transpose(self._inv))
        full = self.complement + self.sub.basis
        if tuple(dot(a, col) for col in transpose(full)) != tuple(v):
            raise MembershipError("vector is not in the ambient subspace")
        return a[: self.dim]

    def lift(self, coords: Sequence[Fraction]) -> Vector:
        out = zeros(self.ambient.ambient_dim)
        for c, row in zip(coords, self.complement):
            if c:
                out = add(out, scale(c, row))
        return out


@lru_cache(maxsize=4096)
def _quotient(ambient: Subspace, sub: Subspace) -> Quotient:
    return Quotient(ambient, sub)


def quotient(ambient: Subspace, sub: Subspace) -> Quotient:
    return _quotient(ambient, sub)


def quotient_coords(ambient: Subspace, sub: Subspace, v: Sequence[Fraction]) -> Vector:
    """Coordinates of ``v + sub`` in the canonical complement of ``sub`` in ``ambient``."""
    return quotient(ambient, sub).coords(tuple(v))
