import math

import pytest

from nilcarnot.catalog import ab, free_nilpotent, h3, preset
from nilcarnot.growth import (
    InsufficientRadius,
    conclusion_inequality_check,
    estimate_growth_exponent,
    growth_report,
    homogeneous_dimension,
)
from nilcarnot.nilgroup import BallRecord, GeneratingSet, word_ball

from helpers import witt


def ball(L, n):
    return word_ball(L, GeneratingSet.standard(L), n)


@pytest.mark.parametrize(
    "name,d",
    [("h3", 4), ("h5", 6), ("h3_plus_ab2", 6), ("filiform4", 7), ("twostep_d7", 7), ("free32", 10), ("h3_scrambled", 4)],
)
def test_bass_values(name, d):
    assert homogeneous_dimension(preset(name)) == d


@pytest.mark.parametrize("rank,step", [(2, 2), (2, 3), (3, 2), (2, 4)])
def test_bass_of_free_nilpotent_by_witt(rank, step):
    expected = sum(k * witt(rank, k) for k in range(1, step + 1))
    assert homogeneous_dimension(free_nilpotent(rank, step)) == expected


def test_abelian_bass_is_rank():
    for k in range(1, 7):
        assert homogeneous_dimension(ab(k)) == k


def test_growth_report_fields():
    r = growth_report(h3(), ball(h3(), 8))
    assert (r.d, r.rank, r.layer_ranks) == (4, 3, (2, 1))
    n, count, est = r.empirical[-1]
    assert n == 4 and count == ball(h3(), 4).counts[4]
    assert "d = 4" in r.to_text()


def test_estimate_needs_enough_radius():
    b = ball(ab(2), 6)
    with pytest.raises(InsufficientRadius):
        estimate_growth_exponent(b)
    b = ball(ab(2), 20)
    assert estimate_growth_exponent(b) == math.log2((2 * 400 + 40 + 1) / (2 * 100 + 20 + 1))


def test_inequality_with_self():
    b = ball(ab(2), 20)
    r = conclusion_inequality_check(b, b, 4, 2, 10)
    assert all(ok for _, ok in r.holds) and r.least_multiplier == 4 and r.stabilised
    assert not all(ok for _, ok in conclusion_inequality_check(b, b, 3, 2, 10).holds)
    with pytest.raises(InsufficientRadius):
        conclusion_inequality_check(b, b, 4, 2, 11)


def test_inequality_detects_faster_growth():
    small, big = ball(ab(1), 24), ball(ab(2), 24)
    r = conclusion_inequality_check(small, big, 10, 2, 12)
    assert not r.stabilised
    assert r.least_multiplier == max(big.counts[2 * n] // small.counts[n] + 1 for n in range(2, 13))


def test_inequality_table_text():
    b = BallRecord(4, (1, 5, 13, 25, 41))
    text = conclusion_inequality_check(b, b, 4, 1, 2).to_text()
    assert text.splitlines()[0] == "n,holds,least_N_at_n"
    assert "least N over the range: 4" in text
