from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracles
from citerank.classes import (
    ClassFraction,
    cwts_fractions,
    cwts_probabilities,
    expected_top_count,
    top_class_members,
)
from citerank.ranking import percentile

counts = st.lists(st.integers(0, 20), min_size=1, max_size=12)
thresholds = st.sampled_from([1, 5, 10, 12.5, 20, 25, 50, 75, 100])


def test_hazen_top_decile_is_top_paper():
    scores = percentile(list(range(1, 11)), "hazen")
    assert scores.tolist() == [5, 15, 25, 35, 45, 55, 65, 75, 85, 95]
    assert top_class_members(scores, 10) == {9}


def test_whole_set_at_x_100():
    assert top_class_members([0, 12.5, 99], 100) == {0, 1, 2}


def test_boundary_rule_matters_for_p_low():
    scores = percentile(list(range(1, 11)), "p_low")
    assert scores.tolist() == [0, 10, 20, 30, 40, 50, 60, 70, 80, 90]
    assert top_class_members(scores, 10, "strict") == set()
    assert top_class_members(scores, 10, "inclusive") == {9}


@pytest.mark.parametrize("x", [0, -5, 100.01])
def test_threshold_range(x):
    with pytest.raises(ValueError):
        top_class_members([50], x)
    with pytest.raises(ValueError):
        cwts_probabilities([1], x)


@given(st.lists(st.floats(0, 100), min_size=1, max_size=30), thresholds, thresholds, st.sampled_from(["inclusive", "strict"]))
def test_classes_nest(scores, x1, x2, rule):
    lo, hi = sorted((x1, x2))
    assert top_class_members(scores, lo, rule) <= top_class_members(scores, hi, rule)


def test_cwts_example_boundary_ties():
    cites = [9, 7, 7, 7, 3, 2, 1, 0, 0, 0]
    expected = oracles.cwts(cites, 20)
    assert expected == [1, Fraction(1, 3), Fraction(1, 3), Fraction(1, 3), 0, 0, 0, 0, 0, 0]
    got = cwts_probabilities(cites, 20)
    np.testing.assert_allclose(got, [float(f) for f in expected], atol=1e-12)
    assert got.sum() == pytest.approx(2.0, abs=1e-9)
    fractions = cwts_fractions(cites, 20)
    assert expected_top_count(fractions) == pytest.approx(2.0, abs=1e-9)
    assert fractions[0] == ClassFraction(0, 1.0, 20.0)


def test_cwts_full_tie_shares_slots():
    assert cwts_probabilities([4] * 5, 20).tolist() == pytest.approx([0.2] * 5)


@given(counts)
def test_cwts_whole_set(values):
    assert cwts_probabilities(values, 100).tolist() == [1.0] * len(values)


def test_cwts_fractions_keep_ids():
    fr = cwts_fractions([3, 1], 50, paper_ids=["a", "b"])
    assert [(f.paper_id, f.p) for f in fr] == [("a", 1.0), ("b", 0.0)]
    with pytest.raises(ValueError):
        cwts_fractions([3, 1], 50, paper_ids=["a"])


def test_expected_top_count_is_additive():
    a = cwts_fractions([9, 7, 7, 7, 3, 2, 1, 0, 0, 0], 20)
    b = cwts_fractions(list(range(10)), 30)
    assert expected_top_count([]) == 0
    assert expected_top_count(a + b) == pytest.approx(5.0, abs=1e-9)


@given(counts, thresholds)
def test_cwts_matches_oracle(values, x):
    expected = [float(f) for f in oracles.cwts(values, x)]
    np.testing.assert_allclose(cwts_probabilities(values, x), expected, atol=1e-9)


@given(st.lists(st.integers(0, 10_000), min_size=1, max_size=400), st.floats(0.01, 100))
def test_cwts_sum_and_monotone(values, x):
    p = cwts_probabilities(values, x)
    assert p.sum() == pytest.approx(len(values) * x / 100, abs=1e-9)
    assert ((p >= 0) & (p <= 1)).all()
    order = np.argsort(values, kind="stable")
    assert (np.diff(p[order]) >= 0).all()


@given(st.sets(st.integers(0, 1000), min_size=1, max_size=12), st.data())
def test_cwts_agrees_with_score_classes_without_ties(distinct, data):
    values = sorted(distinct)
    n = len(values)
    slots = data.draw(st.integers(1, n))
    x = Fraction(100 * slots, n)
    assume(float(x) * n / 100 == slots)
    p = cwts_probabilities(values, float(x))
    in_class = {j for j, v in enumerate(p) if v == 1.0}
    assert all(v in (0.0, 1.0) for v in p)
    for formula, rule in [("hazen", "inclusive"), ("hazen", "strict"), ("p_low", "inclusive"), ("p_inc", "strict")]:
        scores = percentile(values, formula, zero_rule=False)
        assert top_class_members(scores, float(x), rule) == in_class, (formula, rule)
