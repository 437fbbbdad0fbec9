"""Lie algebra and Carnot group homomorphisms.

Homomorphisms between simply connected nilpotent groups correspond to Lie
algebra morphisms, and in exponential coordinates the group map is the
same matrix.  Everything below is exact.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import NamedTuple, Union

from .carnot import GradedLieAlgebra, dilate, is_carnot
from .exactlin import (
    ZERO,
    Matrix,
    Quotient,
    Subspace,
    Vector,
    det,
    dot,
    identity,
    inverse as inverse_matrix,
    kernel,
    mat,
    mat_vec,
    rank,
    transpose,
    unit,
    zero_matrix,
)
from .lie import LieAlgebra, lower_central_series, validate
from .nilgroup import GroupElement, bch_multiply, inverse

Algebra = Union[LieAlgebra, GradedLieAlgebra]


class NoFunctional(ValueError):
    """The abelianized map is surjective, so no annihilating functional exists."""


def underlying(A: Algebra) -> LieAlgebra:
    return A.algebra if isinstance(A, GradedLieAlgebra) else A


def _is_block_graded(source: GradedLieAlgebra, target: GradedLieAlgebra, m: Matrix) -> bool:
    for r, row in enumerate(m):
        lr = target.layer_of[r]
        for c, x in enumerate(row):
            if x and source.layer_of[c] != lr:
                return False
    return True


@dataclass(frozen=True)
class Homomorphism:
    """Linear map given by a ``target.dim x source.dim`` matrix on coordinates."""

    source: Algebra
    target: Algebra
    matrix: Matrix
    graded: bool = False

    def __post_init__(self):
        m = mat(self.matrix)
        object.__setattr__(self, "matrix", m)
        rows, cols = underlying(self.target).dim, underlying(self.source).dim
        if len(m) != rows or any(len(r) != cols for r in m):
            raise ValueError(f"matrix must be {rows}x{cols}")
        if self.graded:
            if not (isinstance(self.source, GradedLieAlgebra) and isinstance(self.target, GradedLieAlgebra)):
                raise ValueError("graded homomorphisms need graded source and target")
            if not _is_block_graded(self.source, self.target, m):
                raise ValueError("matrix does not map layer i into layer i")

    @classmethod
    def make(cls, source: Algebra, target: Algebra, matrix, graded: bool | None = None) -> "Homomorphism":
        """Build a homomorphism, detecting gradedness when ``graded`` is None."""
        m = mat(matrix)
        if graded is None:
            graded = (
                isinstance(source, GradedLieAlgebra)
                and isinstance(target, GradedLieAlgebra)
                and len(m) == target.dim
                and _is_block_graded(source, target, m)
            )
        return cls(source, target, m, graded)

    @classmethod
    def identity(cls, A: Algebra) -> "Homomorphism":
        return cls(A, A, identity(underlying(A).dim), isinstance(A, GradedLieAlgebra))

    @classmethod
    def zero(cls, source: Algebra, target: Algebra) -> "Homomorphism":
        graded = isinstance(source, GradedLieAlgebra) and isinstance(target, GradedLieAlgebra)
        return cls(source, target, zero_matrix(underlying(target).dim, underlying(source).dim), graded)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return mat_vec(self.matrix, v)

    def __call__(self, x):
        if isinstance(x, GroupElement):
            return GroupElement(self.apply(x.coords), underlying(self.target))
        return self.apply(x)

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """self ∘ other."""
        m = tuple(
            tuple(dot(row, col) for col in transpose(other.matrix, underlying(other.source).dim))
            for row in self.matrix
        )
        return Homomorphism.make(other.source, self.target, m)

    @property
    def rank(self) -> int:
        return rank(self.matrix) if self.matrix and self.matrix[0] else 0

    @property
    def is_surjective(self) -> bool:
        return self.rank == underlying(self.target).dim

    @property
    def is_bijective(self) -> bool:
        n = underlying(self.source).dim
        return n == underlying(self.target).dim and (n == 0 or det(self.matrix) != 0)


def validate_hom(F: Homomorphism) -> bool:
    """F[e_i, e_j] == [F e_i, F e_j] for every pair of source basis vectors."""
    S, T = underlying(F.source), underlying(F.target)
    cols = transpose(F.matrix, S.dim) if F.matrix else tuple(() for _ in range(S.dim))
    images = [tuple(c) for c in cols] if T.dim else [() for _ in range(S.dim)]
    for i in range(S.dim):
        for j in range(i + 1, S.dim):
            lhs = F.apply(S.table[i][j])
            rhs = T.bracket(images[i], images[j])
            if lhs != rhs:
                return False
    return True


def _abelianization_quotient(A: LieAlgebra) -> Quotient:
    s = lower_central_series(A)
    derived = s.terms[1] if len(s.terms) > 1 else Subspace.zero(A.dim)
    return Quotient(Subspace.full(A.dim), derived)


def abelianization_map(F: Homomorphism) -> Homomorphism:
    """The induced map g/[g,g] -> h/[h,h] in canonical quotient coordinates."""
    S, T = underlying(F.source), underlying(F.target)
    qs, qt = _abelianization_quotient(S), _abelianization_quotient(T)
    cols = [qt.coords(F.apply(c)) for c in qs.complement]
    m = tuple(tuple(col[r] for col in cols) for r in range(qt.dim))
    src = LieAlgebra.abelian(qs.dim, f"ab({S.name})" if S.name else "")
    tgt = LieAlgebra.abelian(qt.dim, f"ab({T.name})" if T.name else "")
    return Homomorphism(src, tgt, m)


def layer_surjectivity(F: Homomorphism) -> tuple[bool, ...]:
    """Whether each layer block of a graded map has full row rank."""
    if not F.graded:
        raise ValueError("layer surjectivity needs a graded homomorphism")
    S, T = F.source, F.target
    out = []
    for i in range(T.step):
        rows = T.layer_indices(i)
        if i >= S.step:
            out.append(False)
            continue
        cols = S.layer_indices(i)
        block = [tuple(F.matrix[r][c] for c in cols) for r in rows]
        out.append(rank(block) == len(rows))
    return tuple(out)


class SurjectivityComparison(NamedTuple):
    surjective: bool
    ab_surjective: bool
    agree: bool


def _require_carnot_target(F: Homomorphism):
    T = F.target
    if isinstance(T, GradedLieAlgebra):
        if not is_carnot(T):
            raise ValueError("target is not a Carnot algebra")
    elif not validate(T).ok:
        raise ValueError("target is not a nilpotent Lie algebra")


def surjective_iff_ab_surjective(F: Homomorphism) -> SurjectivityComparison:
    _require_carnot_target(F)
    lhs = F.is_surjective
    fab = abelianization_map(F)
    rhs = fab.rank == underlying(fab.target).dim
    return SurjectivityComparison(lhs, rhs, lhs == rhs)


@dataclass(frozen=True)
class RigidityVerdict:
    status: str  # "not_applicable" | "bijective" | "violation"
    detail: str
    layer_dims_equal: bool | None = None
    determinant: Fraction | None = None
    layer_factors: tuple[Fraction, ...] = ()


def rigidity_check(F: Homomorphism, d_source: int, d_target: int) -> RigidityVerdict:
    """A surjective graded map between equal-d Carnot algebras must be an isomorphism."""
    if not F.graded:
        raise ValueError("rigidity check needs a graded homomorphism")
    if not F.is_surjective:
        return RigidityVerdict("not_applicable", "map is not surjective")
    if d_source != d_target:
        return RigidityVerdict("not_applicable", f"homogeneous dimensions differ ({d_source} vs {d_target})")
    S, T = F.source, F.target
    dims_equal = S.layer_dims == T.layer_dims
    if not dims_equal or not F.is_bijective:
        return RigidityVerdict(
            "violation",
            "surjective graded map between equal-d Carnot algebras is not bijective",
            dims_equal,
        )
    factors = []
    for i in range(S.step):
        idx = S.layer_indices(i)
        factors.append(det(tuple(tuple(F.matrix[r][c] for c in idx) for r in idx)))
    return RigidityVerdict("bijective", "map is a graded isomorphism", True, det(F.matrix), tuple(factors))


def _rational_sqrt(q: Fraction) -> Fraction | None:
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


@dataclass(frozen=True)
class Functional:
    """A homomorphism to the real line factoring through the abelianization.

    ``ab_coeffs`` is the covector on the canonical abelianization basis and
    ``lift`` the same functional on the algebra's own coordinates.  The
    normalized functional is ``lift / sqrt(norm_sq)``; when the Euclidean
    norm is rational it has already been divided out and ``norm_sq == 1``.
    """

    ab_coeffs: Vector
    lift: Vector
    norm_sq: Fraction = Fraction(1)

    def __call__(self, v) -> Fraction:
        """Unnormalized value ``lift · v``."""
        coords = v.coords if isinstance(v, GroupElement) else v
        return dot(self.lift, coords)

    @property
    def is_unit(self) -> bool:
        return sum((c * c for c in self.ab_coeffs), ZERO) == self.norm_sq

    @classmethod
    def on(cls, A: Algebra, ab_coeffs: Sequence) -> "Functional":
        """Functional on ``A`` from a covector on its abelianization (not renormalized)."""
        q = _abelianization_quotient(underlying(A))
        v = tuple(Fraction(c) for c in ab_coeffs)
        if len(v) != q.dim:
            raise ValueError(f"abelianization has dimension {q.dim}")
        n = underlying(A).dim
        lift = tuple(dot(v, q.coords(unit(n, m))) for m in range(n))
        return cls(v, lift, sum((c * c for c in v), ZERO))


def annihilating_functional(F: Homomorphism) -> Functional:
    """Unit covector orthogonal to Im(F_ab), pulled back to the target."""
    fab = abelianization_map(F)
    k = underlying(fab.target).dim
    if fab.rank == k:
        raise NoFunctional("the abelianized map is surjective")
    cols = transpose(fab.matrix, underlying(fab.source).dim) if fab.matrix else ()
    img = Subspace.span([c for c in cols if any(c)], k)
    perp = kernel(img.basis, k) if img.basis else Subspace.full(k)
    v = perp.basis[0]
    norm_sq = sum((c * c for c in v), ZERO)
    root = _rational_sqrt(norm_sq)
    if root is not None:
        v = tuple(c / root for c in v)
    ell = Functional.on(F.target, v)
    if root is None:
        ell = Functional(ell.ab_coeffs, ell.lift, norm_sq)
    return ell


def annihilates(ell: Functional, F: Homomorphism) -> bool:
    n = underlying(F.source).dim
    return all(ell(F.apply(unit(n, i))) == 0 for i in range(n))


def pansu_quotient(F: Homomorphism, g: GroupElement, x: GroupElement, s) -> GroupElement:
    """delta_{1/s}( F(g)^{-1} F(g delta_s(x)) ), computed exactly."""
    s = Fraction(s)
    if s <= 0:
        raise ValueError("scale must be positive")
    if not F.graded:
        raise ValueError("difference quotients are only offered for graded homomorphisms")
    S, T = F.source, F.target
    moved = bch_multiply(S.algebra, g, GroupElement(dilate(S, s, x.coords), S.algebra))
    diff = bch_multiply(T.algebra, inverse(F(g)), F(moved))
    return GroupElement(dilate(T, 1 / s, diff.coords), T.algebra)


@lru_cache(maxsize=256)
def _generation_scheme(G: GradedLieAlgebra):
    """For each layer k >= 2: bracket pairs (a, u) spanning it and the
    coefficients expressing each layer basis vector through them."""
    if not is_carnot(G):
        raise ValueError("source algebra is not Carnot")
    first = list(G.layer_indices(0))
    scheme = []
    for k in range(1, G.step):
        chosen: list[tuple[int, int]] = []
        vecs: list[Vector] = []
        acc = Subspace.zero(G.dim)
        for a in first:
            for u in G.layer_indices(k - 1):
                w = G.bracket(unit(G.dim, a), unit(G.dim, u))
                if any(w) and not acc.contains(w):
                    chosen.append((a, u))
                    vecs.append(w)
                    acc = Subspace.span(acc.basis + (w,), G.dim)
        # express each layer basis vector e_w = sum_t alpha_t vecs[t]
        idx = list(G.layer_indices(k))
        square = tuple(tuple(v[c] for c in idx) for v in vecs)
        inv = inverse_matrix(square)
        alphas = tuple(inv[r] for r in range(len(idx)))  # row r: e_idx[r] = sum_t inv[r][t] vecs[t]
        scheme.append((tuple(chosen), alphas))
    return tuple(scheme)


def induce_map(G: GradedLieAlgebra, H: Algebra, first_layer_images: Sequence[Sequence]) -> Homomorphism:
    """Extend images of the first-layer basis of G to a linear map by brackets.

    Layer k+1 of G is spanned by brackets [v_1, v_k], so the images there are
    forced.  The result is a homomorphism exactly when the relations of G hold
    among the images; check it with :func:`validate_hom`.  Gradedness is
    detected, not imposed.
    """
    T = underlying(H)
    g1 = G.layer_dims[0] if G.step else 0
    if len(first_layer_images) != g1:
        raise ValueError(f"need images of {g1} first-layer vectors")
    images: dict[int, Vector] = {}
    for c, img in enumerate(first_layer_images):
        v = mat([img])[0] if img else ()
        if len(v) != T.dim:
            raise ValueError(f"image {c} must have {T.dim} coordinates")
        images[c] = v
    for k, (chosen, alphas) in enumerate(_generation_scheme(G), start=1):
        fb = [T.bracket(images[a], images[u]) for a, u in chosen]
        for r, w in enumerate(G.layer_indices(k)):
            out = [ZERO] * T.dim
            for coeff, val in zip(alphas[r], fb):
                if coeff:
                    for m, y in enumerate(val):
                        if y:
                            out[m] += coeff * y
            images[w] = tuple(out)
    m = tuple(tuple(images[c][r] for c in range(G.dim)) for r in range(T.dim))
    return Homomorphism.make(G, H, m)


def induce_graded_map(G: GradedLieAlgebra, H: GradedLieAlgebra, block: Sequence[Sequence]) -> Homomorphism:
    """Graded map determined by its first-layer block (``H_1 x G_1``)."""
    block = mat(block)
    h1, g1 = H.layer_dims[0], G.layer_dims[0]
    if len(block) != h1 or any(len(r) != g1 for r in block):
        raise ValueError(f"first-layer block must be {h1}x{g1}")
    imgs = [tuple(block[r][c] for r in range(h1)) + (ZERO,) * (H.dim - h1) for c in range(g1)]
    F = induce_map(G, H, imgs)
    return Homomorphism(G, H, F.matrix, True)
