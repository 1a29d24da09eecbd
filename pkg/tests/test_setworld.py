from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adjcomp.setworld import (
    DenotationUniverse,
    OperatorKind,
    SetOperator,
    check_eq1,
    check_eq2,
    check_ni,
    compose,
    jaccard_distance,
    run_simulation,
    verify_intersective_bound,
)

subsets = st.frozensets(st.integers(min_value=0, max_value=7), max_size=8)


class TestJaccard:
    def test_identity(self):
        assert jaccard_distance({1, 2, 3}, {1, 2, 3}) == 0.0

    def test_derived_two_thirds(self):
        assert jaccard_distance({1, 2}, {2, 3}) == pytest.approx(
            float(Fraction(2, 3)), abs=1e-15
        )

    def test_empty_empty_convention(self):
        assert jaccard_distance(set(), set()) == 0.0

    def test_empty_vs_nonempty(self):
        assert jaccard_distance(set(), {1}) == 1.0

    @given(subsets, subsets)
    def test_range_and_symmetry(self, x, y):
        d = jaccard_distance(x, y)
        assert 0.0 <= d <= 1.0
        assert d == jaccard_distance(y, x)

    @given(subsets)
    def test_self_distance_zero(self, x):
        assert jaccard_distance(x, x) == 0.0


def make_universe(size=6):
    return DenotationUniverse(universe_size=size)


class TestCompose:
    def test_intersective_definition(self):
        uni = make_universe(4)
        uni.intersective_sets["c"] = frozenset({0, 1})
        uni.noun_sets["w"] = frozenset({1, 2})
        assert compose(uni, "c", "w") == frozenset({1})

    def test_privative_disjoint_contract(self):
        uni = make_universe(6)
        uni.noun_sets["w"] = frozenset({0, 1, 2})
        op = SetOperator(
            kind=OperatorKind.PRIVATIVE,
            mask=frozenset({3, 4}),
            universe=uni.universe,
        )
        uni.operators["fake"] = op
        result = compose(uni, "fake", "w")
        assert result & uni.noun_sets["w"] == frozenset()

    def test_subsective_subset_contract(self):
        uni = make_universe(6)
        uni.noun_sets["w"] = frozenset({0, 1, 2, 3})
        op = SetOperator(
            kind=OperatorKind.SUBSECTIVE,
            mask=frozenset({1, 3, 5}),
            universe=uni.universe,
        )
        uni.operators["skilful"] = op
        assert compose(uni, "skilful", "w") <= uni.noun_sets["w"]

    def test_operator_contracts_on_sampled_inputs(self):
        uni = make_universe(8)
        sub = SetOperator(OperatorKind.SUBSECTIVE, frozenset({0, 2, 4}), uni.universe)
        priv = SetOperator(OperatorKind.PRIVATIVE, frozenset({1, 3}), uni.universe)
        for mask in range(1 << 8):
            s = frozenset(i for i in range(8) if mask >> i & 1)
            assert sub(s) <= s
            assert priv(s) & s == frozenset()

    def test_unknown_words_rejected(self):
        uni = make_universe(4)
        uni.noun_sets["w"] = frozenset({0})
        with pytest.raises(KeyError):
            compose(uni, "nope", "w")
        with pytest.raises(KeyError):
            compose(uni, "nope", "missing-noun")


class TestEq1:
    def test_exhaustive_theorem_small_universes(self):
        holds, total = verify_intersective_bound(4)
        assert holds == total

    def test_equal_sets_boundary(self):
        uni = make_universe(4)
        uni.intersective_sets["c"] = frozenset({0, 1})
        uni.noun_sets["w"] = frozenset({0, 1})
        assert check_eq1(uni, "c", "w")

    def test_privative_standin_fails(self):
        # W={0,1}, proxy C={1,2} -> d(W,C)=2/3; composed P={3} disjoint
        # from W -> d(P,W)=1 > 2/3, so the bound breaks
        uni = make_universe(5)
        uni.noun_sets["w"] = frozenset({0, 1})
        op = SetOperator(OperatorKind.PRIVATIVE, frozenset({3}), uni.universe)
        uni.operators["c"] = op
        uni.proxies["c"] = frozenset({1, 2})
        assert compose(uni, "c", "w") == frozenset({3})
        assert jaccard_distance(frozenset({3}), uni.noun_sets["w"]) == 1.0
        assert not check_eq1(uni, "c", "w")


class TestEq2:
    def test_identical_sets_all_zero(self):
        uni = make_universe(4)
        s = frozenset({0, 1})
        uni.intersective_sets["a"] = s
        uni.intersective_sets["b"] = s
        uni.noun_sets["w"] = s
        assert check_eq2(uni, ["a", "b"], "w")

    def test_nested_sets(self):
        # A={0} subset B={0,1} subset W={0,1,2}; P=A
        uni = make_universe(4)
        uni.intersective_sets["a"] = frozenset({0})
        uni.intersective_sets["b"] = frozenset({0, 1})
        uni.noun_sets["w"] = frozenset({0, 1, 2})
        # d(P,A)=0, d(P,B)=1/2, d(P,W)=2/3; pairs: d(A,B)=1/2, d(A,W)=2/3,
        # d(B,W)=1/3 -> max 2/3 > min 1/3 -> fails
        assert not check_eq2(uni, ["a", "b"], "w")

    def test_disjoint_boundary(self):
        uni = make_universe(6)
        uni.intersective_sets["a"] = frozenset({0, 1})
        uni.intersective_sets["b"] = frozenset({2, 3})
        uni.noun_sets["w"] = frozenset({4, 5})
        # P empty: all phrase-term distances 1; all pair distances 1
        assert check_eq2(uni, ["a", "b"], "w")

    def test_requires_two_intersective(self):
        uni = make_universe(4)
        uni.intersective_sets["a"] = frozenset({0})
        uni.noun_sets["w"] = frozenset({0})
        with pytest.raises(ValueError):
            check_eq2(uni, ["a"], "w")


class TestNonSubsectivityCheck:
    def test_privative_always_true(self):
        uni = make_universe(6)
        uni.noun_sets["w"] = frozenset({0, 1, 2})
        op = SetOperator(OperatorKind.PRIVATIVE, frozenset({3, 4}), uni.universe)
        uni.operators["fake"] = op
        uni.proxies["fake"] = op(uni.noun_sets["w"])
        assert check_ni(uni, "fake", "w")

    def test_intersective_equal_sizes_tie(self):
        uni = make_universe(6)
        uni.intersective_sets["a"] = frozenset({0, 1, 2})
        uni.noun_sets["w"] = frozenset({1, 2, 3})
        # |A| == |N|: d(P,A) == d(P,N) == 1 - 2/3
        assert check_ni(uni, "a", "w")

    def test_intersective_larger_adjective_set_fails(self):
        uni = make_universe(6)
        uni.intersective_sets["a"] = frozenset({0, 1, 2, 3})
        uni.noun_sets["w"] = frozenset({0, 1, 2})
        # P = {0,1,2}: d(P,A) = 1/4 > d(P,N) = 0
        assert not check_ni(uni, "a", "w")


class TestSimulation:
    def test_intersective_eq1_rate_is_one(self):
        report = run_simulation(seed=7, universe_size=6, trials=500)
        assert report.rates[("intersective", "eq1")] == 1.0

    def test_deterministic_given_seed(self):
        a = run_simulation(seed=3, universe_size=8, trials=300)
        b = run_simulation(seed=3, universe_size=8, trials=300)
        assert a == b

    def test_different_seed_differs(self):
        a = run_simulation(seed=3, universe_size=8, trials=300)
        b = run_simulation(seed=4, universe_size=8, trials=300)
        assert a != b

    def test_single_trial_rate_binary(self):
        report = run_simulation(seed=11, universe_size=6, trials=1)
        for rate in report.rates.values():
            assert rate in (0.0, 1.0)

    def test_zero_trials_category_absent(self):
        report = run_simulation(
            seed=1, universe_size=6, trials=10, category_mix={"privative": 0, "plain": 10}
        )
        assert "privative" not in report.trials
        assert all(cat != "privative" for cat, _ in report.rates)
        assert ("plain", "eq1") in report.rates

    def test_unknown_category_rejected(self):
        with pytest.raises(ValueError):
            run_simulation(seed=1, trials=1, category_mix={"sideways": 1})

    def test_privative_compositions_disjoint(self):
        report = run_simulation(
            seed=5, universe_size=8, trials=500, category_mix={"privative": 500}
        )
        assert report.privative_nonempty > 0
        assert report.privative_disjoint == report.privative_nonempty
