import random

import pytest
from hypothesis import given, settings, strategies as st

from cdhlab.acceptance import random_summary
from cdhlab.errors import HypothesisError, InputError
from cdhlab.expr import CircuitSpec, SymmetricExpression, hamming_profile
from cdhlab.ff import is_period, smallest_exponent_above
from cdhlab.hypergraph import LabeledHypergraph, PurifiedSummary
from cdhlab.period import (
    and_lower_bound,
    check_period_theorem,
    chi_box,
    chi_exponent,
    chi_member,
    chi_star_member,
    count_partitions,
    eval_purified,
    expression_period_report,
    main_period_bound,
    orbit_profile,
    predicted_period,
    purified_profile,
)

PAIRS = [(2, 3), (3, 2), (2, 5), (5, 2), (3, 5), (5, 3)]

# C = {1, 2} with unary label 1, plus one complement vertex labelled 1
SMALL = PurifiedSummary(2, 3, 2, (1,), (0, 1))


def summaries():
    @st.composite
    def build(draw):
        p, q = draw(st.sampled_from(PAIRS))
        n = draw(st.integers(1, 7))
        seed = draw(st.integers(0, 10**6))
        return random_summary(random.Random(seed), p, n), q

    return build()


class TestCounting:
    def test_example(self):
        # s = (0, 1), m = 2: one 1 in C' and one in L'_1 -> 2!/(1!1!) * 1
        assert count_partitions(SMALL, (0, 1), 2, 3) == 2

    def test_impossible_vectors(self):
        assert count_partitions(SMALL, (0, 1), 0, 3) == 0
        assert count_partitions(SMALL, (0, 0), 3, 3) == 0

    def test_membership(self):
        assert chi_member(SMALL, 0, 2, (0, 0))
        assert not chi_member(SMALL, 0, 3, (0, 0))  # s_C = 3 > l_C
        with pytest.raises(InputError):
            chi_member(SMALL, 0, 1, (0, 2))

    def test_eval_examples(self):
        # x1 + x2 + x3 over F_2 on a weight-m input
        assert [eval_purified(SMALL, 1, m, 3) for m in range(4)] == [0, 1, 0, 1]
        assert [eval_purified(SMALL, 0, m, 3) for m in range(4)] == [1, 0, 1, 0]

    def test_chi_exponent(self):
        assert chi_exponent(SMALL) == 1
        assert chi_exponent(PurifiedSummary(2, 8, 4, (0, 1, 1), (2, 2))) == 3

    @settings(max_examples=60, deadline=None)
    @given(summaries(), st.integers(0, 4))
    def test_all_variants_match_orbit(self, sq, r):
        summary, q = sq
        r %= summary.p
        brute = orbit_profile(summary.to_graph(), r, q)
        for variant in ("chi", "chi_prime", "chi_star"):
            assert purified_profile(summary, r, q, variant) == brute

    @settings(max_examples=60, deadline=None)
    @given(summaries(), st.integers(0, 4), st.integers(0, 30))
    def test_chi_star_depends_on_m_mod_p_power(self, sq, r, m):
        summary, _ = sq
        step = summary.p ** smallest_exponent_above(summary.p, summary.d)
        for s in chi_box(summary):
            assert chi_star_member(summary, r, m, s) == chi_star_member(summary, r, m + step, s)


class TestPredicted:
    def test_examples(self):
        pairs = PurifiedSummary(2, 8, 8, (0, 1), (0, 0))
        assert predicted_period(pairs, 3).period == 4
        assert predicted_period(SMALL, 3).period == 2 * 3
        assert predicted_period(PurifiedSummary(3, 5, 3, (1,), (1, 1, 0)), 2).period == 12

    def test_needs_majority(self):
        with pytest.raises(HypothesisError):
            predicted_period(PurifiedSummary(2, 4, 2, (1,), (1, 1)), 3)

    def test_pairs_profile(self):
        rep = check_period_theorem(PurifiedSummary(2, 8, 8, (0, 1), (0, 0)), 1, 3)
        assert rep.profile == [0, 0, 1, 1, 0, 0, 1, 1, 0]
        assert rep.minimal_period == 4 and rep.ok

    @pytest.mark.parametrize("p,q", PAIRS)
    def test_random_summaries_large_n(self, p, q):
        rng = random.Random(p * 10 + q)
        for _ in range(10):
            n = rng.randint(8, 40)
            s = random_summary(rng, p, n)
            rep = check_period_theorem(s, rng.randrange(p), q)
            assert is_period(rep.profile, rep.predicted.period)


class TestBounds:
    def test_main_bound(self):
        # 2**2 > 3; 3**k - 1 >= 10 first at k = 3
        b = main_period_bound(100, 3, 1000, 2, 3)
        assert (b.k_p, b.k_q, b.period) == (2, 3, 4 * 27)
        # s = 1: 2**(q**0 - 1) = 1 is not > 1, q**1 = 3 gives 4 > 1
        assert main_period_bound(13, 1, 1, 2, 3).period == 2 * 3

    def test_main_bound_boundary(self):
        # q**k > log2(s) + 1 exactly: s = 4 needs q**k > 3
        assert main_period_bound(30, 1, 4, 3, 2).k_q == 2
        assert main_period_bound(30, 1, 3, 3, 2).k_q == 2
        assert main_period_bound(30, 1, 1, 3, 2).k_q == 1

    def test_main_bound_preconditions(self):
        with pytest.raises(HypothesisError):
            main_period_bound(12, 1, 1, 2, 3)
        with pytest.raises(HypothesisError):
            main_period_bound(18, 1, 4, 2, 3)  # 4**9 = 2**18
        with pytest.raises(HypothesisError):
            main_period_bound(20, 21, 1, 2, 3)

    def test_and_bound(self):
        b = and_lower_bound(144, 1, 2, 3)
        assert b.dominant == "sqrt" and b.exponent == 12
        b = and_lower_bound(200, 1, 2, 3)
        assert b.dominant == "linear" and str(b.exponent) == "50/3"
        assert and_lower_bound(150, 10, 2, 3).exponent == "sqrt(150)"
        with pytest.raises(HypothesisError):
            and_lower_bound(100, 1, 2, 3)


class TestExpressionReport:
    def test_combination(self):
        g1 = LabeledHypergraph.pseudo_clique(6, 2, [0, 1])
        g2 = LabeledHypergraph(6, 2, 1, {(6,): 1})
        e = SymmetricExpression.single(g1, 1, 3) + SymmetricExpression.single(g2, 0, 3, 2)
        rep = expression_period_report(e)
        assert rep.ok and rep.checks["orbit_profile_agrees"]
        assert is_period(rep.profile, rep.predicted.period)

    def test_rejects_unpurified(self):
        g = LabeledHypergraph(5, 2, 2, {(4, 5): 1})
        with pytest.raises(HypothesisError):
            expression_period_report(SymmetricExpression.single(g, 1, 3))

    def test_outer_gate_keeps_period(self):
        inner = SymmetricExpression.single(LabeledHypergraph.pseudo_clique(8, 2, [0, 1]), 1, 3)
        for acc in ({0}, {1}, {0, 2}):
            prof = hamming_profile(CircuitSpec(inner, frozenset(acc)))
            assert is_period(prof.values, 4)
