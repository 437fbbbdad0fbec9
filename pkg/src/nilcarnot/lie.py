"""Finite-dimensional Lie algebras over Q given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

from .exactlin import (
    ZERO,
    Matrix,
    Subspace,
    Vector,
    Q,
    inverse,
    is_zero,
    kernel,
    mat_vec,
    transpose,
    unit,
    zeros,
)


class NonNilpotent(ValueError):
    """The lower central series stabilised at a nonzero subspace."""


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Lie algebra with basis e_1..e_n and brackets [e_i, e_j] for i < j.

    ``structure`` maps 0-based pairs ``(i, j)`` with ``i < j`` to the
    coordinate vector of ``[e_i, e_j]``; missing pairs are zero.  Anything
    inconsistent with antisymmetry that was supplied to :meth:`from_brackets`
    is kept in ``antisymmetry_conflicts`` so that :func:`validate` can report it.
    """

    dim: int
    structure: tuple[tuple[tuple[int, int], Vector], ...]
    basis_names: tuple[str, ...] = ()
    name: str = ""
    antisymmetry_conflicts: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.basis_names:
            object.__setattr__(self, "basis_names", tuple(f"e{i + 1}" for i in range(self.dim)))
        if len(self.basis_names) != self.dim:
            raise ValueError("basis_names must have one label per basis vector")

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, object] | Sequence],
        *,
        name: str = "",
        basis_names: Sequence[str] = (),
        one_based: bool = False,
    ) -> "LieAlgebra":
        """Build from ``{(i, j): {k: c}}`` or ``{(i, j): full_vector}``.

        Pairs with ``i > j`` are folded in by antisymmetry; a clash with an
        explicitly given ``(j, i)`` or a nonzero ``(i, i)`` is recorded.
        """
        off = 1 if one_based else 0
        table: dict[tuple[int, int], list[Fraction]] = {}
        conflicts: list[tuple[int, int]] = []
        seen: dict[tuple[int, int], tuple[int, int]] = {}
        for (i, j), val in brackets.items():
            i, j = i - off, j - off
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"bracket index ({i + off}, {j + off}) out of range")
            if isinstance(val, Mapping):
                v = [ZERO] * dim
                for k, c in val.items():
                    k -= off
                    if not 0 <= k < dim:
                        raise ValueError(f"bracket target index {k + off} out of range")
                    v[k] += Q(c)
            else:
                v = [Q(c) for c in val]
                if len(v) != dim:
                    raise ValueError("bracket vector has the wrong length")
            if i == j:
                if any(v):
                    conflicts.append((i, j))
                continue
            key, sign = ((i, j), 1) if i < j else ((j, i), -1)
            v = [sign * c for c in v]
            if key in seen:
                if table[key] != v:
                    conflicts.append(key)
                continue
            seen[key] = (i, j)
            table[key] = v
        structure = tuple(
            (key, tuple(table[key])) for key in sorted(table) if any(table[key])
        )
        return cls(dim, structure, tuple(basis_names), name, tuple(conflicts))

    @classmethod
    def abelian(cls, k: int, name: str = "") -> "LieAlgebra":
        return cls(k, (), (), name or f"ab{k}")

    @cached_property
    def _terms(self) -> tuple[tuple[int, int, tuple[tuple[int, Fraction], ...]], ...]:
        return tuple(
            (i, j, tuple((k, c) for k, c in enumerate(v) if c)) for (i, j), v in self.structure
        )

    @cached_property
    def table(self) -> tuple[tuple[Vector, ...], ...]:
        """``table[i][j]`` is the coordinate vector of ``[e_i, e_j]``."""
        n = self.dim
        t = [[zeros(n)] * n for _ in range(n)]
        for (i, j), v in self.structure:
            t[i][j] = v
            t[j][i] = tuple(-c for c in v)
        return tuple(tuple(r) for r in t)

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.dim
        for i, j, ks in self._terms:
            u = x[i] * y[j] - x[j] * y[i]
            if u:
                for k, c in ks:
                    out[k] += u * c
        return tuple(out)

    def basis_vector(self, i: int) -> Vector:
        return unit(self.dim, i)

    @property
    def is_abelian(self) -> bool:
        return not self.structure

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (self.dim, self.structure, self.basis_names, self.name) == (
            other.dim,
            other.structure,
            other.basis_names,
            other.name,
        )

    def __hash__(self):
        return hash((self.dim, self.structure, self.basis_names, self.name))

    def __repr__(self):
        label = self.name or "LieAlgebra"
        return f"<{label} dim={self.dim} brackets={len(self.structure)}>"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    antisymmetric: bool
    jacobi: bool
    nilpotent: bool
    violation: tuple[int, ...] | None = None  # 1-based basis indices
    message: str = ""
    step: int | None = None


@dataclass(frozen=True)
class SeriesReport:
    terms: tuple[Subspace, ...]
    step: int
    layer_ranks: tuple[int, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(t.dim for t in self.terms)


def jacobiator(L: LieAlgebra, i: int, j: int, k: int) -> Vector:
    e = L.basis_vector
    a = L.bracket(e(i), L.bracket(e(j), e(k)))
    b = L.bracket(e(j), L.bracket(e(k), e(i)))
    c = L.bracket(e(k), L.bracket(e(i), e(j)))
    return tuple(x + y + z for x, y, z in zip(a, b, c))


def validate(L: LieAlgebra) -> ValidationReport:
    """Check antisymmetry consistency, the Jacobi identity and nilpotency."""
    if L.antisymmetry_conflicts:
        i, j = L.antisymmetry_conflicts[0]
        return ValidationReport(
            False, False, False, False, (i + 1, j + 1),
            f"brackets [e{i + 1},e{j + 1}] are inconsistent with antisymmetry",
        )
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if not is_zero(jacobiator(L, i, j, k)):
                    return ValidationReport(
                        False, True, False, False, (i + 1, j + 1, k + 1),
                        f"Jacobi identity fails on (e{i + 1}, e{j + 1}, e{k + 1})",
                    )
    try:
        s = lower_central_series(L)
    except NonNilpotent as exc:
        return ValidationReport(False, True, True, False, None, str(exc))
    return ValidationReport(True, True, True, True, None, "ok", s.step)


def bracket_subspaces(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    if A.ambient_dim != L.dim or B.ambient_dim != L.dim:
        raise ValueError("subspace dimension does not match the algebra")
    return Subspace.span([L.bracket(a, b) for a in A.basis for b in B.basis], L.dim)


def _series(L: LieAlgebra, step_fn) -> list[Subspace]:
    terms = [Subspace.full(L.dim)]
    while terms[-1].dim:
        nxt = step_fn(terms[-1])
        if nxt.dim == terms[-1].dim:
            break
        terms.append(nxt)
    return terms


@lru_cache(maxsize=1024)
def lower_central_series(L: LieAlgebra) -> SeriesReport:
    """g_1 = g, g_{i+1} = [g, g_i], ending with the zero subspace."""
    full = Subspace.full(L.dim)
    terms = _series(L, lambda t: bracket_subspaces(L, full, t))
    if terms[-1].dim:
        raise NonNilpotent(
            f"lower central series stabilises at dimension {terms[-1].dim}"
        )
    ranks = tuple(a.dim - b.dim for a, b in zip(terms, terms[1:]))
    return SeriesReport(tuple(terms), len(terms) - 1, ranks)


def derived_series(L: LieAlgebra) -> SeriesReport:
    terms = _series(L, lambda t: bracket_subspaces(L, t, t))
    ranks = tuple(a.dim - b.dim for a, b in zip(terms, terms[1:]))
    length = len(terms) - 1 if terms[-1].dim == 0 else len(terms)
    return SeriesReport(tuple(terms), length, ranks)


def adjoint_matrix(L: LieAlgebra, x: Sequence[Fraction]) -> Matrix:
    """Matrix of ad_x acting on column coordinate vectors."""
    cols = [L.bracket(x, L.basis_vector(j)) for j in range(L.dim)]
    return tuple(tuple(col[i] for col in cols) for i in range(L.dim))


def center(L: LieAlgebra) -> Subspace:
    # v is central iff sum_i v_i [e_i, e_j] = 0 for every j
    n = L.dim
    if n == 0:
        return Subspace.zero(0)
    rows = [
        tuple(L.table[i][j][k] for i in range(n)) for j in range(n) for k in range(n)
    ]
    return kernel(rows, n)


def centralizer(L: LieAlgebra, A: Subspace) -> Subspace:
    n = L.dim
    if not A.basis:
        return Subspace.full(n)
    rows = []
    for a in A.basis:
        ad = adjoint_matrix(L, a)
        rows.extend(ad)
    return kernel(rows, n)


def homogeneous_dimension_of_series(s: SeriesReport) -> int:
    return sum((k + 1) * r for k, r in enumerate(s.layer_ranks))


def change_basis(L: LieAlgebra, P: Matrix, name: str | None = None) -> LieAlgebra:
    """The same algebra in the basis f_i = sum_k P[i][k] e_k (P invertible)."""
    Pinv_t = transpose(inverse(P))
    n = L.dim
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = L.bracket(P[i], P[j])
            if any(w):
                # w = sum_k a_k f_k  <=>  a = w · P^{-1}
                brackets[(i, j)] = mat_vec(Pinv_t, w)
    return LieAlgebra.from_brackets(n, brackets, name=L.name if name is None else name)
