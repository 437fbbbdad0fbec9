"""Simply connected nilpotent groups in exponential coordinates.

A point is ``exp(sum_k coords[k] * e_k)``.  Multiplication is the BCH series,
which terminates at the nilpotency step, so it is exact over Q.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .bch import bch_words
from .exactlin import ZERO, Quotient, Subspace, Vector, Q, neg, unit, vec
from .lie import LieAlgebra, lower_central_series

Multiply = Callable[[Vector, Vector], Vector]


@lru_cache(maxsize=None)
def _word_trie(depth: int) -> dict:
    """Prefix tree ``{letter: (coefficient, subtree)}`` over the BCH words."""
    root: dict = {}
    coeffs = {w: c for c, w in bch_words(depth)}
    for _, w in bch_words(depth):
        node = root
        for d in range(len(w)):
            prefix = w[: d + 1]
            if w[d] not in node:
                node[w[d]] = (coeffs.get(prefix, ZERO), {})
            node = node[w[d]][1]
    return root


def bch_vectors(L: LieAlgebra, x: Sequence[Fraction], y: Sequence[Fraction], depth: int) -> Vector:
    """log(exp(x) exp(y)) truncated at bracket depth ``depth``."""
    letters = (tuple(x), tuple(y))
    out = [ZERO] * L.dim
    bracket = L.bracket

    def walk(node: dict, value: Vector):
        for letter, (c, child) in node.items():
            nxt = bracket(value, letters[letter])
            if not any(nxt):
                continue
            if c:
                for k, a in enumerate(nxt):
                    if a:
                        out[k] += c * a
            if child:
                walk(child, nxt)

    for letter, (c, child) in _word_trie(depth).items():
        v = letters[letter]
        for k, a in enumerate(v):
            if a:
                out[k] += c * a
        if child and depth > 1:
            walk(child, v)
    return tuple(out)


def multiplier(L: LieAlgebra) -> Multiply:
    """Group law on coordinate tuples, specialised to the step of ``L``."""
    step = lower_central_series(L).step
    if step <= 1:
        return lambda x, y: tuple(a + b for a, b in zip(x, y))
    if step == 2:
        half = Fraction(1, 2)

        def mul2(x, y):
            br = L.bracket(x, y)
            return tuple(a + b + half * c for a, b, c in zip(x, y, br))

        return mul2
    return lambda x, y: bch_vectors(L, x, y, step)


@dataclass(frozen=True)
class GroupElement:
    coords: Vector
    algebra: LieAlgebra = field(compare=False, hash=False, repr=False)

    @classmethod
    def of(cls, L: LieAlgebra, coords: Iterable) -> "GroupElement":
        v = vec(coords)
        if len(v) != L.dim:
            raise ValueError(f"expected {L.dim} coordinates, got {len(v)}")
        return cls(v, L)

    @classmethod
    def identity(cls, L: LieAlgebra) -> "GroupElement":
        return cls((ZERO,) * L.dim, L)

    @property
    def is_identity(self) -> bool:
        return not any(self.coords)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return bch_multiply(self.algebra, self, other)

    def inverse(self) -> "GroupElement":
        return inverse(self)

    def __pow__(self, k: int) -> "GroupElement":
        # exp(v)^k = exp(k v) on a one-parameter subgroup
        return GroupElement(tuple(k * c for c in self.coords), self.algebra)

    def key(self) -> str:
        return ",".join(str(c) for c in self.coords)


def bch_multiply(L: LieAlgebra, x: GroupElement, y: GroupElement) -> GroupElement:
    return GroupElement(multiplier(L)(x.coords, y.coords), L)


def inverse(x: GroupElement) -> GroupElement:
    return GroupElement(neg(x.coords), x.algebra)


@dataclass(frozen=True)
class GeneratingSet:
    generators: tuple[GroupElement, ...]
    symmetric: bool

    def __post_init__(self):
        if any(g.is_identity for g in self.generators):
            raise ValueError("generating set contains the identity")
        if self.symmetric:
            have = {g.coords for g in self.generators}
            if any(neg(g.coords) not in have for g in self.generators):
                raise ValueError("generating set flagged symmetric is not closed under inverses")

    @classmethod
    def symmetric_closure(cls, L: LieAlgebra, gens: Iterable[Iterable]) -> "GeneratingSet":
        out: list[GroupElement] = []
        seen: set[Vector] = set()
        for g in gens:
            v = vec(g)
            for w in (v, neg(v)):
                if w not in seen:
                    seen.add(w)
                    out.append(GroupElement.of(L, w))
        return cls(tuple(out), True)

    @classmethod
    def standard(cls, L: LieAlgebra) -> "GeneratingSet":
        """exp(±e_k) for the basis vectors spanning a complement of [g, g]."""
        s = lower_central_series(L)
        derived = s.terms[1] if len(s.terms) > 1 else Subspace.zero(L.dim)
        comp = Quotient(Subspace.full(L.dim), derived).complement
        return cls.symmetric_closure(L, comp)

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class BallRecord:
    radius: int
    counts: tuple[int, ...]
    elements: frozenset | None = None
    truncated: bool = False
    requested_radius: int | None = None

    def count(self, n: int) -> int:
        return self.counts[n]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["radius", "count"])
        for r, c in enumerate(self.counts):
            w.writerow([r, c])
        return buf.getvalue()


def word_ball(
    L: LieAlgebra,
    S: GeneratingSet,
    n: int,
    *,
    max_elements: int | None = None,
    keep_elements: bool = False,
) -> BallRecord:
    """Breadth-first enumeration of S-words of length <= n from the identity.

    When ``max_elements`` would be exceeded the record stops at the last
    completed radius and is flagged ``truncated``.
    """
    if n < 0:
        raise ValueError("radius must be non-negative")
    if not S.symmetric:
        raise ValueError("word balls need a symmetric generating set")
    mul = multiplier(L)
    gens = [g.coords for g in S.generators]
    origin = (ZERO,) * L.dim
    if lower_central_series(L).step <= 1 and all(c.denominator == 1 for g in gens for c in g):
        # abelian lattice: plain integer tuples hash and add far faster than Fractions
        gens = [tuple(int(c) for c in g) for g in gens]
        origin = (0,) * L.dim
    seen = {origin}
    frontier = [origin]
    counts = [1]
    for r in range(1, n + 1):
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if max_elements is not None and len(seen) > max_elements:
            for y in nxt:
                seen.discard(y)
            return BallRecord(r - 1, tuple(counts), _frozen(seen) if keep_elements else None, True, n)
        counts.append(len(seen))
        frontier = nxt
    return BallRecord(n, tuple(counts), _frozen(seen) if keep_elements else None, False, n)


def _frozen(points: set) -> frozenset:
    return frozenset(tuple(Fraction(c) for c in p) for p in points)


def parse_element(L: LieAlgebra, text: str) -> GroupElement:
    """``"1,0,1/2"`` -> GroupElement."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    return GroupElement.of(L, [Q(p) for p in parts])


def exp_basis(L: LieAlgebra, i: int) -> GroupElement:
    return GroupElement(unit(L.dim, i), L)
