"""Membership functions, alpha cuts, and fuzzy-event probabilities."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from woediag import (
    ContingencyTable,
    DegenerateEventError,
    FuzzyEvent,
    MembershipFunction,
    alpha_cut,
    default_alpha_grid,
    estimate_weight,
    membership,
    optimal_alpha,
    yager_probability,
    zadeh_probability,
)

from helpers import oracle_membership

RAMP = MembershipFunction(((38.0, 0.0), (39.5, 1.0)))

PAPER_GRADES = {"x1": 0.2, "x2": 0.7, "x3": 0.0, "x4": 0.4}
PAPER_EVENT = FuzzyEvent("temp", "high", PAPER_GRADES)
UNIFORM4 = {k: 0.25 for k in PAPER_GRADES}


def grades_strategy(min_size=1, max_size=12):
    return st.dictionaries(
        st.integers(0, 40).map(lambda i: f"x{i}"),
        st.floats(0.0, 1.0, allow_nan=False),
        min_size=min_size,
        max_size=max_size,
    )


class TestMembership:
    def test_exact_at_breakpoint(self):
        assert membership(RAMP, 39.5) == 1.0
        assert membership(RAMP, 38.0) == 0.0

    def test_linear_at_midpoint(self):
        assert membership(RAMP, 38.75) == pytest.approx(0.5)

    def test_clamped_outside_range(self):
        assert membership(RAMP, 45.0) == 1.0
        assert membership(RAMP, 2.0) == 0.0

    def test_invalid_breakpoints(self):
        with pytest.raises(ValueError):
            MembershipFunction(((2.0, 0.0), (1.0, 1.0)))
        with pytest.raises(ValueError):
            MembershipFunction(((0.0, 1.5),))

    @given(
        st.lists(
            st.tuples(st.floats(-50, 50, allow_nan=False), st.floats(0, 1, allow_nan=False)),
            min_size=1,
            max_size=6,
            unique_by=lambda p: p[0],
        ),
        st.floats(-60, 60, allow_nan=False),
    )
    @settings(max_examples=300, deadline=None)
    def test_matches_interp_oracle(self, points, x):
        points = sorted(points)
        mf = MembershipFunction(tuple(points))
        assert membership(mf, x) == pytest.approx(oracle_membership(points, x), abs=1e-12)


class TestAlphaCut:
    def test_printed_example(self):
        assert alpha_cut(PAPER_EVENT, 0.2) == {"x1", "x2", "x4"}

    def test_no_grade_reaches_one(self):
        assert alpha_cut(PAPER_EVENT, 1.0) == set()

    def test_cut_at_highest_grade(self):
        assert alpha_cut(PAPER_EVENT, 0.7) == {"x2"}

    @pytest.mark.parametrize("alpha", [0.0, -0.1, 1.01])
    def test_alpha_out_of_range(self, alpha):
        with pytest.raises(ValueError):
            alpha_cut(PAPER_EVENT, alpha)

    @given(grades_strategy(), st.floats(0.001, 1.0), st.floats(0.001, 1.0))
    @settings(max_examples=300, deadline=None)
    def test_anti_monotone(self, grades, a1, a2):
        lo, hi = min(a1, a2), max(a1, a2)
        event = FuzzyEvent("a", "l", grades)
        assert alpha_cut(event, hi) <= alpha_cut(event, lo)

    @given(grades_strategy())
    @settings(max_examples=200, deadline=None)
    def test_order_preserving_rescale_preserves_cuts(self, grades):
        # t -> t^2 is strictly increasing on [0,1]; grades and grid move together
        event = FuzzyEvent("a", "l", grades)
        squared = FuzzyEvent("a", "l", {k: g * g for k, g in grades.items()})
        for alpha in (0.1, 0.3, 0.5, 0.9, 1.0):
            assert alpha_cut(event, alpha) == alpha_cut(squared, alpha * alpha)


class TestZadehProbability:
    def test_crisp_event_reduces_to_probability(self):
        crisp = FuzzyEvent("a", "l", {"x1": 1.0, "x2": 1.0, "x3": 0.0, "x4": 0.0})
        assert zadeh_probability(crisp, UNIFORM4) == pytest.approx(0.5)

    def test_mean_of_grades_under_uniform(self):
        assert zadeh_probability(PAPER_EVENT, UNIFORM4) == pytest.approx(0.325)

    def test_zero_grades(self):
        empty = FuzzyEvent("a", "l", {k: 0.0 for k in PAPER_GRADES})
        assert zadeh_probability(empty, UNIFORM4) == 0.0

    def test_unnormalized_probabilities_rejected(self):
        with pytest.raises(ValueError, match="sum to 1"):
            zadeh_probability(PAPER_EVENT, {k: 0.3 for k in PAPER_GRADES})


class TestYagerProbability:
    def test_printed_grid(self):
        got = yager_probability(PAPER_EVENT, [0.2, 0.5, 0.8], UNIFORM4)
        assert got == [(0.2, 0.75), (0.5, 0.25), (0.8, 0.0)]

    def test_crisp_event_constant_below_one(self):
        crisp = FuzzyEvent("a", "l", {"x1": 1.0, "x2": 1.0, "x3": 0.0, "x4": 0.0})
        for _alpha, p in yager_probability(crisp, [0.1, 0.5, 0.99, 1.0], UNIFORM4):
            assert p == pytest.approx(0.5)

    def test_zero_support_event(self):
        empty = FuzzyEvent("a", "l", {k: 0.0 for k in PAPER_GRADES})
        assert all(p == 0.0 for _a, p in yager_probability(empty, [0.2, 0.9], UNIFORM4))

    def test_grid_must_increase(self):
        with pytest.raises(ValueError, match="increasing"):
            yager_probability(PAPER_EVENT, [0.5, 0.2], UNIFORM4)

    @given(grades_strategy(min_size=1))
    @settings(max_examples=300, deadline=None)
    def test_non_increasing_along_grid(self, grades):
        event = FuzzyEvent("a", "l", grades)
        uniform = {k: 1.0 / len(grades) for k in grades}
        ps = [p for _a, p in yager_probability(event, list(default_alpha_grid(0.05)), uniform)]
        assert all(p1 >= p2 for p1, p2 in zip(ps, ps[1:]))

    @given(grades_strategy(min_size=1), st.floats(0.01, 1.0))
    @settings(max_examples=200, deadline=None)
    def test_crisp_event_matches_zadeh_everywhere(self, grades, alpha):
        crisp = {k: (1.0 if g >= 0.5 else 0.0) for k, g in grades.items()}
        event = FuzzyEvent("a", "l", crisp)
        uniform = {k: 1.0 / len(crisp) for k in crisp}
        [(_, p)] = yager_probability(event, [alpha], uniform)
        assert p == pytest.approx(zadeh_probability(event, uniform), abs=1e-12)


class TestOptimalAlpha:
    GRADES = {"x1": 0.9, "x2": 0.6, "x3": 0.3, "x4": 0.1}
    LABELS = {"x1": True, "x2": True, "x3": False, "x4": False}

    def test_hand_evaluated_maximum(self):
        event = FuzzyEvent("a", "l", self.GRADES)
        choice = optimal_alpha(event, self.LABELS, [0.25, 0.5, 0.75], smoothing=0.5)
        assert choice.alpha == 0.5
        assert choice.weight_at_alpha == pytest.approx(math.log(5), abs=1e-12)
        assert choice.subset_size == 2

    def test_zero_bias_ties_break_to_smallest_alpha(self):
        # matched positive/negative pairs at every grade: every cut is balanced
        grades = {"p1": 0.3, "n1": 0.3, "p2": 0.8, "n2": 0.8}
        labels = {"p1": True, "n1": False, "p2": True, "n2": False}
        event = FuzzyEvent("a", "l", grades)
        choice = optimal_alpha(event, labels, [0.25, 0.5, 0.75], smoothing=0.5)
        # 0.25 cuts the full set (inadmissible); 0.5 is the smallest admissible
        assert choice.weight_at_alpha == 0.0
        assert choice.alpha == 0.5

    def test_degenerate_when_every_cut_trivial(self):
        grades = {"x1": 0.95, "x2": 0.9, "x3": 0.92}
        labels = {"x1": True, "x2": False, "x3": True}
        event = FuzzyEvent("a", "l", grades)
        with pytest.raises(DegenerateEventError, match="degenerate fuzzy event"):
            optimal_alpha(event, labels, [0.5], smoothing=0.5)

    def test_single_class_labels_degenerate(self):
        event = FuzzyEvent("a", "l", self.GRADES)
        with pytest.raises(DegenerateEventError):
            optimal_alpha(event, {k: True for k in self.GRADES}, [0.5], smoothing=0.5)

    @given(grades_strategy(min_size=4, max_size=12), st.integers(0, 2**31))
    @settings(max_examples=200, deadline=None)
    def test_weight_consistent_with_estimate_on_cut(self, grades, seed):
        import random

        rng = random.Random(seed)
        labels = {k: rng.random() < 0.5 for k in grades}
        if len(set(labels.values())) < 2:
            labels[next(iter(labels))] = not next(iter(labels.values()))
        if len(set(labels.values())) < 2:
            return
        event = FuzzyEvent("a", "l", grades)
        try:
            choice = optimal_alpha(event, labels, list(default_alpha_grid(0.1)), smoothing=0.5)
        except DegenerateEventError:
            return
        cut = alpha_cut(event, choice.alpha)
        a = sum(1 for k in cut if labels[k])
        c = len(cut) - a
        n_pos = sum(labels.values())
        n_neg = len(labels) - n_pos
        table = ContingencyTable(a, n_pos - a, c, n_neg - c)
        assert estimate_weight(table, 0.5).w == choice.weight_at_alpha
        assert choice.subset_size == len(cut)


class TestDefaultGrid:
    def test_default_step(self):
        grid = default_alpha_grid()
        assert len(grid) == 100
        assert grid[0] == 0.01
        assert grid[-1] == 1.0
        assert 0.0 not in grid

    def test_coarse_step(self):
        assert default_alpha_grid(0.25) == (0.25, 0.5, 0.75, 1.0)
