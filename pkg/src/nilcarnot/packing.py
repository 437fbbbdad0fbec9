"""Disjoint translates pushed along an abelianized functional.

Given a Carnot group, a functional ell killing commutators, a transporter h
with ell(h) = 1 and a finite sample S whose ell-image is narrow around
ell(x), the conjugated dilate h_eps = x delta_mu(h) x^{-1} moves S into
translates with pairwise disjoint ell-intervals.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .carnot import GradedLieAlgebra, dilate, factors_through_abelianization
from .exactlin import Q
from .morphisms import Functional
from .nilgroup import GroupElement, bch_multiply, inverse

THIRD = Fraction(1, 3)


class InstanceInvalid(ValueError):
    def __init__(self, message: str, sample: GroupElement | None = None):
        super().__init__(message)
        self.sample = sample


@dataclass(frozen=True)
class PackingInstance:
    G: GradedLieAlgebra
    ell: Functional
    h: GroupElement
    x: GroupElement
    eps: Fraction
    mu: Fraction
    S: tuple[GroupElement, ...]

    def check(self) -> None:
        """Raise :class:`InstanceInvalid` on the first violated requirement."""
        if len(self.ell.lift) != self.G.dim or not factors_through_abelianization(self.G, self.ell):
            raise InstanceInvalid("functional must vanish on layers >= 2")
        if self.eps <= 0 or self.mu <= 0:
            raise InstanceInvalid("eps and mu must be positive")
        if self.mu > self.eps:
            raise InstanceInvalid("mu must not exceed eps")
        if self.ell(self.h) != 1:
            raise InstanceInvalid(f"ell(h) = {self.ell(self.h)}, expected 1")
        if not self.S:
            raise InstanceInvalid("sample set is empty")
        base = self.ell(self.x)
        for s in self.S:
            if not 3 * abs(self.ell(s) - base) < self.mu:
                raise InstanceInvalid(
                    f"sample {[str(c) for c in s.coords]} has |ell(s) - ell(x)| >= mu/3", s
                )


@dataclass(frozen=True)
class PackingReport:
    count: int
    pairwise_disjoint: bool
    interval_witnesses: tuple[tuple[int, Fraction, Fraction], ...]
    radius_bound_ok: bool
    ell_h_eps: Fraction
    intervals_hold: bool
    translates: tuple[tuple[GroupElement, ...], ...] = field(default=(), repr=False)

    def to_text(self) -> str:
        lines = [
            f"translates: {self.count}",
            f"ell(h_eps) = {self.ell_h_eps}",
            f"ell-images inside witness intervals: {'yes' if self.intervals_hold else 'NO'}",
            f"pairwise disjoint: {'yes' if self.pairwise_disjoint else 'NO'}",
            f"inside gauge box of radius 2*eps: {'yes' if self.radius_bound_ok else 'no'}",
            "j,lower,upper",
        ]
        lines += [f"{j},{lo},{hi}" for j, lo, hi in self.interval_witnesses]
        return "\n".join(lines) + "\n"


def expected_count(eps, mu) -> int:
    return 1 + 2 * floor(Q(eps) / Q(mu))


def gauge_radius_check(G: GradedLieAlgebra, v: Sequence[Fraction], r) -> bool:
    """|coordinate| <= r^i for every coordinate of layer i (a dilation-homogeneous box)."""
    r = Q(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    return all(abs(c) <= r ** (layer + 1) for c, layer in zip(v, G.layer_of))


def build_packing(p: PackingInstance, keep_translates: bool = False) -> PackingReport:
    p.check()
    G, ell, L = p.G, p.ell, p.G.algebra
    dil_h = GroupElement(dilate(G, p.mu, p.h.coords), L)
    h_eps = bch_multiply(L, bch_multiply(L, p.x, dil_h), inverse(p.x))
    base = ell(p.x)
    m = floor(p.eps / p.mu)
    witnesses, translates = [], []
    inside = True
    for j in range(-m, m + 1):
        lo, hi = (j - THIRD) * p.mu + base, (j + THIRD) * p.mu + base
        shift = h_eps ** j
        block = tuple(bch_multiply(L, shift, s) for s in p.S)
        inside &= all(lo < ell(y) < hi for y in block)
        witnesses.append((j, lo, hi))
        translates.append(block)
    intervals_disjoint = all(
        witnesses[a][2] <= witnesses[b][1]
        for a in range(len(witnesses)) for b in range(a + 1, len(witnesses))
    )
    seen: set = set()
    sets_disjoint = True
    for block in translates:
        keys = {y.coords for y in block}
        if keys & seen:
            sets_disjoint = False
        seen |= keys
    x_inv = inverse(p.x)
    radius_ok = all(
        gauge_radius_check(G, bch_multiply(L, x_inv, y).coords, 2 * p.eps)
        for block in translates for y in block
    )
    return PackingReport(
        count=len(witnesses),
        pairwise_disjoint=intervals_disjoint and sets_disjoint and inside,
        interval_witnesses=tuple(witnesses),
        radius_bound_ok=radius_ok,
        ell_h_eps=ell(h_eps),
        intervals_hold=inside,
        translates=tuple(translates) if keep_translates else (),
    )
