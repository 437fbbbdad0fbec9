"""Carnot completions: the graded algebra of the lower central series, and dilations."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .exactlin import ZERO, Matrix, Subspace, Vector, Q, quotient, unit
from .lie import LieAlgebra, lower_central_series


class NotGraded(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GradedLieAlgebra:
    """A Lie algebra whose coordinates are grouped into layers v_1, ..., v_c.

    ``complements[i]`` holds, in source coordinates, the coset
    representatives chosen for layer ``i + 1`` when the algebra came from
    :func:`associated_graded`.
    """

    algebra: LieAlgebra
    layer_dims: tuple[int, ...]
    source: LieAlgebra | None = field(default=None, repr=False)
    complements: tuple[Matrix, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if sum(self.layer_dims) != self.algebra.dim:
            raise NotGraded("layer dimensions do not add up to the algebra dimension")
        if any(d <= 0 for d in self.layer_dims):
            raise NotGraded("layers must be nonempty")
        layer_of = self.layer_of
        c = len(self.layer_dims)
        for (i, j), v in self.algebra.structure:
            target = layer_of[i] + layer_of[j] + 1  # 0-based layer index of [v_i, v_j]
            for k, x in enumerate(v):
                if x and layer_of[k] != target:
                    raise NotGraded(
                        f"[e{i + 1},e{j + 1}] has a component outside layer {target + 1}"
                        if target < c else f"[e{i + 1},e{j + 1}] must vanish beyond the top layer"
                    )

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def step(self) -> int:
        return len(self.layer_dims)

    @property
    def name(self) -> str:
        return self.algebra.name

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for d in self.layer_dims:
            out.append(acc)
            acc += d
        return tuple(out)

    @cached_property
    def layer_of(self) -> tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.layer_dims) for _ in range(d))

    def layer_slice(self, i: int) -> slice:
        """0-based layer index -> coordinate slice."""
        return slice(self.offsets[i], self.offsets[i] + self.layer_dims[i])

    def layer_indices(self, i: int) -> range:
        s = self.layer_slice(i)
        return range(s.start, s.stop)

    def layer_subspace(self, i: int) -> Subspace:
        return Subspace.span([unit(self.dim, k) for k in self.layer_indices(i)], self.dim)

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        return self.algebra.bracket(x, y)

    def __eq__(self, other):
        if not isinstance(other, GradedLieAlgebra):
            return NotImplemented
        return self.algebra == other.algebra and self.layer_dims == other.layer_dims

    def __hash__(self):
        return hash((self.algebra, self.layer_dims))


def graded_bracket_of_representatives(
    L: LieAlgebra, i: int, j: int, x: Sequence[Fraction], y: Sequence[Fraction]
) -> Vector:
    """Layer-(i+j) coordinates of [x + g_{i+1}, y + g_{j+1}] for x in g_i, y in g_j (1-based i, j)."""
    s = lower_central_series(L)
    terms = s.terms
    if not (terms[i - 1].contains(x) and terms[j - 1].contains(y)):
        raise ValueError("representatives are not in the stated series terms")
    if i + j > s.step:
        return ()
    return quotient(terms[i + j - 1], terms[i + j]).coords(L.bracket(x, y))


def _complement_name(L: LieAlgebra, row: Vector, layer: int, k: int) -> str:
    nz = [m for m, c in enumerate(row) if c]
    if len(nz) == 1 and row[nz[0]] == 1:
        return f"{L.basis_names[nz[0]]}~"
    return f"v{layer}_{k}"


def associated_graded(L: LieAlgebra) -> GradedLieAlgebra:
    """The graded Lie algebra sum_i g_i / g_{i+1} with the induced bracket."""
    s = lower_central_series(L)
    c = s.step
    quots = [quotient(s.terms[i], s.terms[i + 1]) for i in range(c)]
    comps = tuple(q.complement for q in quots)
    dims = tuple(len(cm) for cm in comps)
    offsets = [sum(dims[:i]) for i in range(c)]
    n = sum(dims)
    names = []
    for i, cm in enumerate(comps):
        names.extend(_complement_name(L, row, i + 1, k + 1) for k, row in enumerate(cm))
    brackets = {}
    for i in range(c):
        for a, x in enumerate(comps[i]):
            for j in range(i, c):
                if i + j + 1 >= c:
                    continue
                for b, y in enumerate(comps[j]):
                    p, q_ = offsets[i] + a, offsets[j] + b
                    if p >= q_:
                        continue
                    coords = quots[i + j + 1].coords(L.bracket(x, y))
                    if any(coords):
                        v = [ZERO] * n
                        v[offsets[i + j + 1]: offsets[i + j + 1] + dims[i + j + 1]] = coords
                        brackets[(p, q_)] = v
    graded = LieAlgebra.from_brackets(
        n, brackets, name=f"gr({L.name})" if L.name else "", basis_names=names
    )
    return GradedLieAlgebra(graded, dims, L, comps)


def graded_from_algebra(L: LieAlgebra, layer_dims: Sequence[int]) -> GradedLieAlgebra:
    """Declare an algebra graded by consecutive coordinate blocks (checked)."""
    return GradedLieAlgebra(L, tuple(layer_dims))


def is_carnot(G: GradedLieAlgebra) -> bool:
    """Do iterated brackets of the first layer span every layer?"""
    if not G.layer_dims:
        return True
    first = [unit(G.dim, k) for k in G.layer_indices(0)]
    current = first
    for i in range(1, G.step):
        span = Subspace.span([G.bracket(a, w) for a in first for w in current], G.dim)
        if span.dim != G.layer_dims[i]:
            return False
        current = list(span.basis)
    return True


def _check_t(t) -> Fraction:
    t = Q(t)
    if t <= 0:
        raise ValueError("dilation factor must be positive")
    return t


def dilate(G: GradedLieAlgebra, t, v: Sequence[Fraction]) -> Vector:
    """Scale layer i of ``v`` by t^i."""
    t = _check_t(t)
    if len(v) != G.dim:
        raise ValueError("vector length does not match the graded algebra")
    powers = [t ** (layer + 1) for layer in G.layer_of]
    return tuple(p * x for p, x in zip(powers, v))


@dataclass(frozen=True)
class Dilation:
    t: Fraction
    target: GradedLieAlgebra

    def __post_init__(self):
        object.__setattr__(self, "t", _check_t(self.t))

    def __call__(self, v: Sequence[Fraction]) -> Vector:
        return dilate(self.target, self.t, v)

    def then(self, other: "Dilation") -> "Dilation":
        return Dilation(self.t * other.t, self.target)


def _covector(ell) -> Vector:
    return tuple(getattr(ell, "lift", ell))


def factors_through_abelianization(G: GradedLieAlgebra, ell) -> bool:
    row = _covector(ell)
    return all(row[k] == 0 for k in range(G.layer_dims[0], G.dim)) if G.step else True


def functional_homogeneity_check(G: GradedLieAlgebra, ell, t, v: Sequence[Fraction]) -> bool:
    """Exactly verify ell(delta_t v) = t * ell(v)."""
    row = _covector(ell)
    if len(row) != G.dim:
        raise ValueError("functional length does not match the graded algebra")
    if not factors_through_abelianization(G, row):
        raise ValueError("functional does not vanish on layers >= 2")
    t = _check_t(t)
    lhs = sum((a * b for a, b in zip(row, dilate(G, t, v))), ZERO)
    rhs = t * sum((a * b for a, b in zip(row, v)), ZERO)
    return lhs == rhs
