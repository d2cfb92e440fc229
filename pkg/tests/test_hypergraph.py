import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cdhlab.caps import DEFAULT_CAPS
from cdhlab.errors import CapExceeded, InputError
from cdhlab.hypergraph import (
    LabeledHypergraph,
    PurifiedSummary,
    aut_order,
    automorphism_report,
    canonical_form,
    check_dichotomy,
    compose,
    cycle_graph,
    exchange_classes,
    is_fully_symmetric,
    is_isomorphic,
    is_symmetry_purified,
    maximal_fully_symmetric,
    orbit,
    purified_summary,
)


def four_vertex():
    # all 2-subsets of {1,2,3} labeled 1, lambda({4}) = 2, over F_3
    return LabeledHypergraph(4, 3, 2, {(1, 2): 1, (1, 3): 1, (2, 3): 1, (4,): 2})


@st.composite
def graphs(draw, max_n=6, primes=(2, 3)):
    n = draw(st.integers(1, max_n))
    p = draw(st.sampled_from(primes))
    d = draw(st.integers(1, min(3, n)))
    edges = [e for k in range(1, d + 1) for e in itertools.combinations(range(1, n + 1), k)]
    chosen = draw(st.lists(st.sampled_from(edges), max_size=8, unique=True))
    labels = {e: draw(st.integers(1, p - 1)) for e in chosen}
    return LabeledHypergraph(n, p, d, labels)


perms = lambda n: st.permutations(list(range(1, n + 1)))


def brute_aut(g):
    return sum(1 for pi in itertools.permutations(range(1, g.n + 1)) if g.apply_perm(pi) == g)


def fully_symmetric_by_definition(g, C):
    # equal-size edges with equal parts outside C carry equal labels
    C = set(C)
    subsets = [e for k in range(1, g.d + 1) for e in itertools.combinations(range(1, g.n + 1), k)]
    for e1, e2 in itertools.combinations(subsets, 2):
        if len(e1) == len(e2) and set(e1) - C == set(e2) - C and g.label(e1) != g.label(e2):
            return False
    return True


class TestConstruction:
    def test_zero_labels_dropped(self):
        g = LabeledHypergraph(3, 2, 2, {(1, 2): 2, (3,): 1})
        assert g.items == (((3,), 1),)

    @pytest.mark.parametrize("labels", [{(0,): 1}, {(1, 4): 1}, {(1, 1): 1}, {(1, 2, 3): 1}])
    def test_rejects_bad_edges(self, labels):
        with pytest.raises(InputError):
            LabeledHypergraph(3, 2, 2, labels)


class TestEvaluate:
    def test_examples(self):
        assert LabeledHypergraph.empty(3, 2).evaluate((1, 0, 1)) == 0
        assert LabeledHypergraph(3, 2, 2, {(1, 2): 1}).evaluate((1, 1, 0)) == 1
        pairs = LabeledHypergraph(4, 2, 2, {e: 1 for e in itertools.combinations(range(1, 5), 2)})
        assert pairs.evaluate((1, 1, 1, 0)) == math.comb(3, 2) % 2

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            LabeledHypergraph.empty(3, 2).evaluate((1, 0))

    @settings(max_examples=60)
    @given(graphs(), st.data())
    def test_action_compatibility(self, g, data):
        pi = data.draw(perms(g.n))
        h = g.apply_perm(pi)
        for x in itertools.product((0, 1), repeat=g.n):
            # (pi^-1 . x)_v = x_{pi(v)}
            y = tuple(x[pi[v] - 1] for v in range(g.n))
            assert h.evaluate(x) == g.evaluate(y)


class TestArithmetic:
    def test_examples(self):
        g = four_vertex()
        assert len(g - g) == 0
        assert len(g.scale(0)) == 0
        h = LabeledHypergraph(2, 2, 1, {(1,): 1}).add_singletons([1, 2])
        assert h.items == (((2,), 1),)

    def test_mismatch(self):
        with pytest.raises(InputError):
            LabeledHypergraph.empty(3, 2) + LabeledHypergraph.empty(4, 2)

    @settings(max_examples=40)
    @given(graphs(max_n=4), graphs(max_n=4))
    def test_product_is_pointwise(self, g, h):
        if (g.n, g.p) != (h.n, h.p):
            return
        gh = g.product(h)
        for x in itertools.product((0, 1), repeat=g.n):
            assert gh.evaluate(x) == g.evaluate(x) * h.evaluate(x) % g.p


class TestAction:
    def test_examples(self):
        g = four_vertex()
        assert g.apply_perm([1, 2, 3, 4]) == g
        assert LabeledHypergraph(2, 2, 1, {(1,): 1}).apply_perm([2, 1]).items == (((2,), 1),)
        with pytest.raises(InputError):
            g.apply_perm([1, 1, 2, 3])

    @settings(max_examples=40)
    @given(graphs(), st.data())
    def test_action_law(self, g, data):
        pi, sigma = data.draw(perms(g.n)), data.draw(perms(g.n))
        assert g.apply_perm(compose(pi, sigma)) == g.apply_perm(sigma).apply_perm(pi)


class TestSymmetry:
    def test_fully_symmetric_examples(self):
        g = four_vertex()
        assert is_fully_symmetric(g, [2])
        assert is_fully_symmetric(g, [1, 2, 3])
        assert not is_fully_symmetric(g, [1, 2, 3, 4])

    def test_exchange_class_examples(self):
        assert exchange_classes(LabeledHypergraph.empty(4, 2)) == [(1, 2, 3, 4)]
        assert exchange_classes(four_vertex()) == [(1, 2, 3), (4,)]
        distinct = LabeledHypergraph(4, 5, 1, {(1,): 1, (2,): 2, (3,): 3, (4,): 4})
        assert exchange_classes(distinct) == [(1,), (2,), (3,), (4,)]

    def test_maximal_examples(self):
        assert maximal_fully_symmetric(LabeledHypergraph.empty(4, 2)) == (1, 2, 3, 4)
        assert maximal_fully_symmetric(four_vertex()) == (1, 2, 3)
        halves = LabeledHypergraph(4, 2, 2, {(1, 2): 1, (3,): 1, (4,): 1})
        assert maximal_fully_symmetric(halves) is None

    @settings(max_examples=80)
    @given(graphs(max_n=5), st.data())
    def test_definition_agrees_with_transpositions(self, g, data):
        C = data.draw(st.sets(st.integers(1, g.n)))
        assert is_fully_symmetric(g, C) == fully_symmetric_by_definition(g, C)

    @settings(max_examples=60)
    @given(graphs())
    def test_classes_are_fully_symmetric_and_big_one_unique(self, g):
        classes = exchange_classes(g)
        assert sorted(v for c in classes for v in c) == list(range(1, g.n + 1))
        assert all(is_fully_symmetric(g, c) for c in classes)
        assert sum(2 * len(c) > g.n for c in classes) <= 1


class TestAutomorphisms:
    def test_report_examples(self):
        r = automorphism_report(LabeledHypergraph.empty(4, 2))
        assert (r.aut_order, r.index) == (24, 1)
        r = automorphism_report(four_vertex())
        assert (r.aut_order, r.index) == (6, 4)
        assert r.exchange_classes == ((1, 2, 3), (4,))
        assert automorphism_report(cycle_graph(13)).aut_order == 26

    @settings(max_examples=60)
    @given(graphs())
    def test_against_brute_force(self, g):
        assert aut_order(g) == brute_aut(g)

    @settings(max_examples=60)
    @given(graphs())
    def test_orbit_stabilizer(self, g):
        members = orbit(g).members
        assert len(set(members)) == len(members)
        assert g in members
        assert len(members) * aut_order(g) == math.factorial(g.n)

    def test_orbit_examples(self):
        assert len(orbit(LabeledHypergraph.pseudo_clique(6, 3, [1, 2]))) == 1
        assert len(orbit(LabeledHypergraph(3, 2, 1, {(1,): 1}))) == 3
        assert len(orbit(four_vertex())) == 4

    def test_orbit_cap(self):
        g = LabeledHypergraph(8, 5, 1, {(i,): i % 5 for i in range(1, 9)})
        with pytest.raises(CapExceeded):
            orbit(g, DEFAULT_CAPS.with_(orbit=100))

    def test_larger_graphs(self):
        # wheel-like graph on 14 vertices: dihedral symmetry of the rim
        labels = {tuple(sorted((i, i % 13 + 1))): 1 for i in range(1, 14)}
        labels.update({(i, 14): 1 for i in range(1, 14)})
        assert aut_order(LabeledHypergraph(14, 2, 2, labels)) == 26
        assert aut_order(LabeledHypergraph.pseudo_clique(16, 2, [1])) == math.factorial(16)


class TestCanonicalForm:
    def test_examples(self):
        assert canonical_form(LabeledHypergraph.empty(3, 2)) == LabeledHypergraph.empty(3, 2)
        g = LabeledHypergraph(2, 2, 1, {(2,): 1})
        assert canonical_form(g) == LabeledHypergraph(2, 2, 1, {(1,): 1})

    @settings(max_examples=60)
    @given(graphs(), st.data())
    def test_invariant(self, g, data):
        pi = data.draw(perms(g.n))
        assert canonical_form(g.apply_perm(pi)) == canonical_form(g)

    @settings(max_examples=60)
    @given(graphs(max_n=5), graphs(max_n=5))
    def test_separates_non_isomorphic(self, g, h):
        if (g.n, g.p) != (h.n, h.p):
            return
        brute = any(g.apply_perm(pi) == h for pi in itertools.permutations(range(1, g.n + 1)))
        assert (canonical_form(g) == canonical_form(h)) == brute
        assert is_isomorphic(g, h) == brute

    def test_joint_isomorphism_above_canonical_cap(self):
        g = cycle_graph(12)
        rng = random.Random(3)
        pi = list(range(1, 13))
        rng.shuffle(pi)
        assert is_isomorphic(g, g.apply_perm(pi))
        path = LabeledHypergraph(12, 2, 2, {(i, i + 1): 1 for i in range(1, 12)} | {(1,): 1})
        assert not is_isomorphic(g, path)


class TestPurification:
    def test_predicate_examples(self):
        assert is_symmetry_purified(LabeledHypergraph.pseudo_clique(6, 2, [0, 1]), range(1, 7))
        assert is_symmetry_purified(four_vertex(), [1, 2, 3])
        crossing = LabeledHypergraph(4, 2, 2, {(1, 4): 1})
        assert not is_symmetry_purified(crossing, [1, 2, 3])

    def test_partial_predicate(self):
        g = LabeledHypergraph(5, 2, 2, {(4, 5): 1})
        assert is_symmetry_purified(g, [1, 2, 3], partial=True)
        assert not is_symmetry_purified(g, [1, 2, 3])

    def test_summary_examples(self):
        s = purified_summary(LabeledHypergraph.pseudo_clique(8, 2, [0, 1]), range(1, 9))
        assert (s.l_C, s.t, s.l) == (8, (0, 1), (0, 0))
        s = purified_summary(four_vertex(), [1, 2, 3])
        assert (s.l_C, s.t, s.l) == (3, (0, 1), (0, 0, 1))
        s = purified_summary(LabeledHypergraph.empty(5, 3), range(1, 6))
        assert (s.l_C, s.t, s.l) == (5, (0,), (0, 0, 0))
        with pytest.raises(InputError):
            purified_summary(LabeledHypergraph(4, 2, 2, {(1, 4): 1}), [1, 2, 3])

    def test_summary_round_trip(self):
        rng = random.Random(0)
        for _ in range(50):
            p = rng.choice([2, 3, 5])
            n = rng.randint(1, 9)
            lc = rng.randint(n // 2 + 1, n)
            l = [0] * p
            for _ in range(n - lc):
                l[rng.randrange(p)] += 1
            s = PurifiedSummary(p, n, lc, tuple(rng.randrange(p) for _ in range(3)), tuple(l))
            g = s.to_graph()
            assert purified_summary(g, range(1, lc + 1)) == s

    def test_summary_validation(self):
        with pytest.raises(InputError):
            PurifiedSummary(2, 5, 3, (1,), (1, 0))
        with pytest.raises(InputError):
            PurifiedSummary(3, 4, 3, (1,), (1, 0))


class TestDichotomy:
    def test_pseudo_clique(self):
        r = check_dichotomy(LabeledHypergraph.pseudo_clique(13, 2, [1, 1]), Fraction(1, 10))
        assert r.branch1 and r.largest_fully_symmetric == tuple(range(1, 14)) and r.lemma_applies

    def test_cycle_degenerate_threshold(self):
        r = check_dichotomy(cycle_graph(13), Fraction(7, 100))
        assert r.k == 0 and r.branch2 and r.index == math.factorial(13) // 26

    def test_cycle_branch2(self):
        r = check_dichotomy(cycle_graph(13), Fraction(3, 25))
        assert r.k == 1
        assert not r.branch1
        assert r.branch2 and r.index == 239500800

    def test_small_n_not_asserted(self):
        assert not check_dichotomy(cycle_graph(5), Fraction(1, 10)).lemma_applies
