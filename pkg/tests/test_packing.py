from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nilcarnot.carnot import associated_graded
from nilcarnot.catalog import h3, preset
from nilcarnot.morphisms import Functional
from nilcarnot.nilgroup import GroupElement
from nilcarnot.packing import (
    InstanceInvalid,
    PackingInstance,
    build_packing,
    expected_count,
    gauge_radius_check,
)

H3 = associated_graded(h3())
L = H3.algebra
ELL = Functional.on(H3, (0, 1))  # the dual of e2 on the abelianization


def el(*c):
    return GroupElement.of(L, c)


def heisenberg_instance(eps, mu, x=(1, 0, 0)):
    third = Fraction(mu) / 4
    S = (el(*x), el(x[0] + 1, x[1], 5), el(x[0], x[1] + third, -2))
    return PackingInstance(H3, ELL, el(0, 1, 0), el(*x), Fraction(eps), Fraction(mu), S)


def test_heisenberg_worked_example():
    rep = build_packing(heisenberg_instance(1, Fraction(1, 4)), keep_translates=True)
    assert rep.count == 9
    assert rep.pairwise_disjoint and rep.intervals_hold
    assert rep.ell_h_eps == Fraction(1, 4)
    assert [j for j, _, _ in rep.interval_witnesses] == list(range(-4, 5))
    assert rep.interval_witnesses[0][1:] == (Fraction(-13, 12), Fraction(-11, 12))
    # the ell-value of every translate is j*mu + ell(s), recomputed by hand
    for (j, lo, hi), block in zip(rep.interval_witnesses, rep.translates):
        for y, s in zip(block, heisenberg_instance(1, Fraction(1, 4)).S):
            assert ELL(y) == j * Fraction(1, 4) + ELL(s)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 50), st.fractions(Fraction(1, 9), 9, max_denominator=9))
def test_count_and_disjointness(ratio, eps):
    mu = eps / ratio
    rep = build_packing(heisenberg_instance(eps, mu))
    assert rep.count == 1 + 2 * ratio == expected_count(eps, mu)
    assert rep.pairwise_disjoint


def test_non_integer_ratio_uses_floor():
    rep = build_packing(heisenberg_instance(1, Fraction(2, 5)))
    assert rep.count == 5


def test_invalid_instances():
    base = heisenberg_instance(1, Fraction(1, 4))
    far = base.S + (el(1, Fraction(1, 12), 0),)
    with pytest.raises(InstanceInvalid) as info:
        build_packing(PackingInstance(H3, ELL, base.h, base.x, base.eps, base.mu, far))
    assert info.value.sample is not None
    with pytest.raises(InstanceInvalid):
        build_packing(PackingInstance(H3, ELL, el(0, 2, 0), base.x, base.eps, base.mu, base.S))
    with pytest.raises(InstanceInvalid):
        build_packing(PackingInstance(H3, ELL, base.h, base.x, Fraction(1, 8), base.mu, base.S))
    center_ell = Functional((0, 0), (0, 0, 1))
    with pytest.raises(InstanceInvalid):
        build_packing(PackingInstance(H3, center_ell, base.h, base.x, base.eps, base.mu, base.S))
    with pytest.raises(InstanceInvalid):
        build_packing(PackingInstance(H3, ELL, base.h, base.x, base.eps, base.mu, ()))


def test_gauge_box_scales_by_layer():
    assert gauge_radius_check(H3, (2, -2, 4), 2)
    assert not gauge_radius_check(H3, (2, -2, 5), 2)
    with pytest.raises(ValueError):
        gauge_radius_check(H3, (0, 0, 0), 0)


def test_packing_on_step_three_group():
    G = associated_graded(preset("free32"))
    ell = Functional.on(G, (1, 0))
    x = GroupElement.of(G.algebra, (0, 1, 0, 0, 0))
    S = (x, GroupElement.of(G.algebra, (0, 1, 3, -1, 2)))
    rep = build_packing(PackingInstance(G, ell, GroupElement.of(G.algebra, (1, 0, 0, 0, 0)), x, Fraction(3), Fraction(1, 2), S))
    assert rep.count == 13 and rep.pairwise_disjoint and rep.ell_h_eps == Fraction(1, 2)


def test_report_text_lists_intervals():
    text = build_packing(heisenberg_instance(1, 1)).to_text()
    assert text.startswith("translates: 3\n") and "\n-1,-4/3,-2/3\n" in text
