"""Homogeneous dimension (Bass formula) and empirical growth checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .lie import LieAlgebra, lower_central_series
from .nilgroup import BallRecord


class InsufficientRadius(ValueError):
    pass


@dataclass(frozen=True)
class GrowthReport:
    d: int
    rank: int
    layer_ranks: tuple[int, ...]
    empirical: tuple[tuple[int, int, float], ...] = ()

    def to_text(self) -> str:
        lines = [
            f"homogeneous dimension d = {self.d}",
            f"rank = {self.rank}",
            f"layer ranks = {list(self.layer_ranks)}",
        ]
        if self.empirical:
            lines.append("n,#B(n),log2(#B(2n)/#B(n))  [estimate]")
            lines.extend(f"{n},{b},{e:.6f}" for n, b, e in self.empirical)
        return "\n".join(lines) + "\n"


def homogeneous_dimension(L: LieAlgebra) -> int:
    """d = sum_k k * dim(g_k / g_{k+1})."""
    ranks = lower_central_series(L).layer_ranks
    return sum(k * r for k, r in enumerate(ranks, start=1))


def growth_report(L: LieAlgebra, ball: BallRecord | None = None) -> GrowthReport:
    ranks = lower_central_series(L).layer_ranks
    empirical = ()
    if ball is not None:
        empirical = tuple(
            (n, ball.counts[n], math.log2(ball.counts[2 * n] / ball.counts[n]))
            for n in range(1, ball.radius // 2 + 1)
        )
    return GrowthReport(homogeneous_dimension(L), sum(ranks), ranks, empirical)


def estimate_growth_exponent(b: BallRecord, n: int | None = None) -> float:
    """log2(#B(2n) / #B(n)) at the largest n the record covers (an estimate, not exact)."""
    largest = b.radius // 2
    if n is None:
        n = largest
    if n < 4 or 2 * n > b.radius:
        raise InsufficientRadius(f"need counts up to radius 2n with n >= 4; record reaches {b.radius}")
    return math.log2(b.counts[2 * n] / b.counts[n])


@dataclass(frozen=True)
class InequalityReport:
    multiplier: int
    holds: tuple[tuple[int, bool], ...]
    required: tuple[tuple[int, int], ...]
    least_multiplier: int
    stabilised: bool

    def to_text(self) -> str:
        lines = ["n,holds,least_N_at_n"]
        req = dict(self.required)
        for n, ok in self.holds:
            lines.append(f"{n},{'yes' if ok else 'no'},{req[n]}")
        lines.append(f"least N over the range: {self.least_multiplier}")
        lines.append("required N stabilised" if self.stabilised else "required N still growing: growth orders differ")
        return "\n".join(lines) + "\n"


def conclusion_inequality_check(
    b_gamma: BallRecord, b_delta: BallRecord, N: int, n_min: int = 1, n_max: int | None = None
) -> InequalityReport:
    """Check N * #B_Gamma(n) > #B_Delta(2n) for each n in [n_min, n_max]."""
    top = min(b_gamma.radius, b_delta.radius // 2)
    if n_max is None:
        n_max = top
    if n_max > top or n_min > n_max or n_min < 0:
        raise InsufficientRadius(f"records cover n <= {top} (need n and 2n)")
    holds, required = [], []
    for n in range(n_min, n_max + 1):
        g, d = b_gamma.counts[n], b_delta.counts[2 * n]
        holds.append((n, N * g > d))
        required.append((n, d // g + 1))
    least = max(r for _, r in required)
    half = [r for n, r in required if n >= (n_min + n_max) / 2]
    stabilised = len(half) < 2 or half[-1] == half[0]
    return InequalityReport(N, tuple(holds), tuple(required), least, stabilised)
