"""Contingency tables, weight estimation, and log-odds combination."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from woediag import (
    Attribute,
    Case,
    ContingencyTable,
    Dataset,
    Schema,
    SymptomDescriptor,
    UndefinedWeightError,
    build_table,
    combine,
    estimate_weight,
    is_significant,
    prior_log_odds,
    to_probability,
)

tables = st.builds(
    ContingencyTable,
    a=st.integers(0, 500),
    b=st.integers(0, 500),
    c=st.integers(0, 500),
    d=st.integers(0, 500),
)


def _crisp_dataset(rows):
    """rows: (id, pain value or None, lesion bool or None)"""
    schema = Schema((Attribute(name="pain", kind="categorical", values=("none", "severe")),))
    cases = tuple(
        Case(id=i, values={"pain": v}, surgical_lesion=label) for i, v, label in rows
    )
    return Dataset(schema=schema, cases=cases)


SEVERE = SymptomDescriptor(attribute="pain", kind="equals", value="severe")


class TestBuildTable:
    def test_perfectly_aligned_symptom(self):
        ds = _crisp_dataset(
            [("1", "severe", True), ("2", "severe", True), ("3", "none", False), ("4", "none", False)]
        )
        t = build_table(ds, [SEVERE])
        assert (t.a, t.b, t.c, t.d, t.n_excluded) == (2, 0, 0, 2, 0)

    def test_missing_attribute_excluded(self):
        ds = _crisp_dataset(
            [("1", "severe", True), ("2", None, True), ("3", "none", False), ("4", "none", False)]
        )
        t = build_table(ds, [SEVERE])
        assert (t.a, t.b, t.c, t.d, t.n_excluded) == (1, 0, 0, 2, 1)

    def test_missing_label_excluded(self):
        ds = _crisp_dataset([("1", "severe", True), ("2", "severe", None), ("3", "none", False)])
        t = build_table(ds, [SEVERE])
        assert (t.a, t.b, t.c, t.d, t.n_excluded) == (1, 0, 0, 1, 1)

    def test_zero_cell_when_symptom_never_with_h(self):
        ds = _crisp_dataset(
            [("1", "none", True), ("2", "none", True), ("3", "severe", False), ("4", "none", False)]
        )
        t = build_table(ds, [SEVERE])
        assert t.a == 0 and t.c == 1

    def test_unknown_attribute_rejected(self):
        ds = _crisp_dataset([("1", "severe", True)])
        bogus = SymptomDescriptor(attribute="bogus", kind="equals", value="x")
        with pytest.raises(Exception, match="unknown attribute"):
            build_table(ds, [bogus])

    def test_count_conservation(self):
        ds = _crisp_dataset(
            [("1", "severe", True), ("2", None, True), ("3", "none", None), ("4", "none", False)]
        )
        t = build_table(ds, [SEVERE])
        assert t.n + t.n_excluded == len(ds)


class TestEstimateWeight:
    def test_exact_ratio_values(self):
        est = estimate_weight(ContingencyTable(30, 20, 10, 40), smoothing=0.0)
        assert est.w == pytest.approx(1.0986122886681096, abs=1e-12)
        assert est.se == pytest.approx(0.30550504633038933, abs=1e-12)
        assert est.z == pytest.approx(3.5960528373073486, abs=1e-12)

    def test_equal_rates_give_zero(self):
        est = estimate_weight(ContingencyTable(10, 10, 20, 20), smoothing=0.0)
        assert est.w == 0.0

    def test_smoothed_equal_group_sizes(self):
        est = estimate_weight(ContingencyTable(30, 20, 10, 40), smoothing=0.5)
        assert est.w == pytest.approx(math.log(30.5 / 10.5), abs=1e-12)

    def test_zero_cell_without_smoothing_undefined(self):
        with pytest.raises(UndefinedWeightError, match="undefined weight"):
            estimate_weight(ContingencyTable(0, 5, 3, 2), smoothing=0.0)

    def test_empty_table_undefined_even_smoothed(self):
        with pytest.raises(UndefinedWeightError):
            estimate_weight(ContingencyTable(0, 0, 0, 0), smoothing=0.5)

    def test_zero_cell_with_smoothing_is_finite(self):
        est = estimate_weight(ContingencyTable(0, 5, 3, 2), smoothing=0.5)
        assert math.isfinite(est.w) and est.se > 0

    @given(tables, st.floats(0.0, 5.0))
    @settings(max_examples=500, deadline=None)
    def test_antisymmetry_exact(self, table, s):
        try:
            est = estimate_weight(table, s)
        except UndefinedWeightError:
            return
        flipped = estimate_weight(table.swapped(), s)
        assert flipped.w == -est.w
        assert flipped.se == est.se
        assert flipped.z == -est.z

    @given(st.integers(1, 200), st.integers(1, 200), st.integers(1, 400), st.floats(0.1, 3.0))
    @settings(max_examples=500, deadline=None)
    def test_shrinkage_under_equal_row_totals(self, a, c, m_extra, s):
        # with equal row totals the smoothed ratio contracts toward 1
        m = max(a, c) + m_extra
        est0 = estimate_weight(ContingencyTable(a, m - a, c, m - c), smoothing=0.0)
        est_s = estimate_weight(ContingencyTable(a, m - a, c, m - c), smoothing=s)
        assert abs(est_s.w) <= abs(est0.w) + 1e-12

    @given(tables, st.floats(0.1, 5.0))
    @settings(max_examples=500, deadline=None)
    def test_smoothed_se_positive(self, table, s):
        if table.n == 0:
            return
        assert estimate_weight(table, s).se > 0


class TestSignificance:
    def test_large_z(self):
        est = estimate_weight(ContingencyTable(30, 20, 10, 40), smoothing=0.0)
        assert is_significant(est, 1.96)

    def test_zero_weight_never_significant(self):
        est = estimate_weight(ContingencyTable(10, 10, 20, 20), smoothing=0.0)
        assert not is_significant(est, 1.96)
        assert not is_significant(est, 0.001)

    def test_boundary_below(self):
        est = estimate_weight(ContingencyTable(30, 20, 10, 40), smoothing=0.0)
        fake = type(est)(w=est.w, se=est.se, z=1.95, smoothing=0.0)
        assert not is_significant(fake, 1.96)
        exact = type(est)(w=est.w, se=est.se, z=1.96, smoothing=0.0)
        assert is_significant(exact, 1.96)


class TestPriorOdds:
    def test_even_odds(self):
        assert prior_log_odds(0.5).log_odds == 0.0

    def test_referral_prevalence(self):
        assert prior_log_odds(0.61).log_odds == pytest.approx(0.447, abs=0.001)

    def test_training_prevalence(self):
        assert prior_log_odds(0.6295).log_odds == pytest.approx(0.530, abs=0.001)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
    def test_boundary_rejected(self, p):
        with pytest.raises(ValueError):
            prior_log_odds(p)

    @given(st.floats(1e-9, 1.0 - 1e-9))
    @settings(max_examples=500, deadline=None)
    def test_round_trip_through_probability(self, p):
        back = to_probability(prior_log_odds(p).log_odds, "canonical")
        assert back == pytest.approx(p, abs=1e-12)


class TestCombine:
    PAPER_WEIGHTS = [1.053, 0.861, 0.861, 0.661, 0.372, 0.312, -0.547]

    def test_published_ledger_sum(self):
        prior = prior_log_odds(0.6295)
        assert combine(prior, self.PAPER_WEIGHTS) == pytest.approx(4.103, abs=0.0005)

    def test_empty_weights(self):
        assert combine(prior_log_odds(0.5), []) == 0.0

    def test_cancellation(self):
        prior = prior_log_odds(0.3)
        assert combine(prior, [2.5, -2.5]) == pytest.approx(prior.log_odds, abs=1e-12)

    @given(st.lists(st.floats(-30, 30, allow_nan=False), max_size=12), st.floats(0.01, 0.99), st.randoms())
    @settings(max_examples=500, deadline=None)
    def test_permutation_invariant_exactly(self, weights, p, rng):
        prior = prior_log_odds(p)
        shuffled = list(weights)
        rng.shuffle(shuffled)
        assert combine(prior, shuffled) == combine(prior, weights)


class TestToProbability:
    def test_compat_reads_log_odds_as_odds(self):
        assert to_probability(4.103, "compat") == pytest.approx(0.804, abs=0.001)

    def test_canonical_sigmoid(self):
        assert to_probability(4.103, "canonical") == pytest.approx(0.9837, abs=0.001)
        assert to_probability(0.0, "canonical") == 0.5

    def test_compat_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            to_probability(0.0, "compat")
        with pytest.raises(ValueError):
            to_probability(-1.0, "compat")

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            to_probability(1.0, "other")

    @given(st.floats(-700, 700, allow_nan=False), st.floats(-700, 700, allow_nan=False))
    @settings(max_examples=500, deadline=None)
    def test_strictly_increasing(self, l1, l2):
        if l1 == l2:
            return
        lo, hi = min(l1, l2), max(l1, l2)
        p_lo, p_hi = to_probability(lo, "canonical"), to_probability(hi, "canonical")
        assert p_lo <= p_hi
        if hi - lo > 1e-9 and -30 < lo and hi < 30:
            assert p_lo < p_hi

    @given(st.floats(-500, 500, allow_nan=False))
    @settings(max_examples=500, deadline=None)
    def test_complement_symmetry(self, log_odds):
        p = to_probability(log_odds, "canonical")
        q = to_probability(-log_odds, "canonical")
        assert p + q == pytest.approx(1.0, abs=1e-12)
