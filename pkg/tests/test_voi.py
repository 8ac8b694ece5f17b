import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from argvoi.framework import ArgumentationError, ObservationBundle, make_framework
from argvoi.praf import MonteCarloConfig, from_dung, make_praf
from argvoi.voi import (
    DifferenceKind,
    Evaluator,
    Objective,
    UtilityKind,
    difference,
    rank_observed,
    rank_single_attacks,
    utility,
    value_of_observation,
    value_of_observed,
)
from cases import EX2_ARG_PROB, EX2_ATT_PROB
from strategies import dung_frameworks, prafs

INF = math.inf


def ex1_objective():
    return Objective({"a3", "a4"}, UtilityKind.DAF_TARGET_OUTPUT, DifferenceKind.SIGNED, target={"a3"})


def ex2_objective():
    return Objective({"a3", "a4"}, UtilityKind.PRAF_TARGET_OUTPUT, DifferenceKind.SIGNED, target={"a3"})


def kl_objective():
    return Objective({"h1", "h2"}, UtilityKind.PRAF_PROBABILITY, DifferenceKind.KL)


def change_objective():
    return Objective({"h1", "h2"}, UtilityKind.DAF_MAXIMISING_CHANGE, DifferenceKind.ABSOLUTE)


def test_daf_target_utilities(ex1):
    obj = ex1_objective()
    E = frozenset({"a1", "a4"})
    assert utility("a3", ex1, obj, E) == 0
    assert utility("a4", ex1, obj, E) == 0
    assert utility("a4", ex1, obj, frozenset()) == 1


def test_entropy_utility_at_half(ex2):
    obj = Objective({"a3"}, UtilityKind.PRAF_ENTROPY, DifferenceKind.SIGNED)
    assert utility("a3", ex2, obj, {"a3": 0.5}) == pytest.approx(-math.log(2))
    assert utility("a3", ex2, obj, {"a3": 0.0}) == 0.0
    assert utility("a3", ex2, obj, {"a3": 1.0}) == 0.0


def test_praf_target_output_utility(ex2):
    assert utility("a4", ex2, ex2_objective(), {"a4": 0.7790}) == pytest.approx(0.2210)
    assert utility("a3", ex2, ex2_objective(), {"a3": 0.4118}) == pytest.approx(0.4118)


def test_utility_errors(ex1):
    with pytest.raises(ArgumentationError):
        Objective({"a3"}, UtilityKind.DAF_TARGET_OUTPUT, DifferenceKind.SIGNED)
    with pytest.raises(ArgumentationError):
        utility("a1", ex1, ex1_objective(), frozenset())
    with pytest.raises(ArgumentationError):
        Objective({"a3"}, UtilityKind.DAF_TARGET_OUTPUT, DifferenceKind.SIGNED, target={"a1"})


def test_utility_kind_must_match_framework(ex1, ex2):
    with pytest.raises(ArgumentationError):
        value_of_observed(ex1, ex2_objective(), {"a1"})
    with pytest.raises(ArgumentationError):
        value_of_observed(ex2, ex1_objective(), {"a1"})


@pytest.mark.parametrize("x", [0.0, 0.2, 0.5, 0.999, 1.0])
def test_kl_identity(x):
    assert difference(DifferenceKind.KL, x, x) == 0.0


def test_kl_values():
    assert round(difference("kl", 0.43875, 0.325), 4) == 0.0281
    assert difference("kl", 0.43875, 0.325) == pytest.approx(oracles.kl(0.43875, 0.325), abs=1e-15)
    assert difference("kl", 0.06125, 0.0) == INF
    assert difference("kl", 0.3, 1.0) == INF
    with pytest.raises(ArgumentationError):
        difference("kl", 1.2, 0.3)


def test_signed_and_absolute():
    assert difference("signed", 0.2, 0.5) == pytest.approx(-0.3)
    assert difference("absolute", 0.2, 0.5) == pytest.approx(0.3)


def test_example1_values(ex1):
    assert value_of_observed(ex1, ex1_objective(), {"a1"}) == -1
    assert value_of_observation(ex1, ex1_objective(), ObservationBundle(["b"], [("b", "a4")])) == 2


def test_example2_values(ex2):
    v = value_of_observed(ex2, ex2_objective(), {"a1"})
    assert v == pytest.approx(-0.2435, abs=1e-3)
    # full precision, from the world oracle
    p = oracles.acceptance(EX2_ARG_PROB, EX2_ATT_PROB, "grounded", "sceptical")
    q = oracles.acceptance({k: v for k, v in EX2_ARG_PROB.items() if k != "a1"},
                           {d: v for d, v in EX2_ATT_PROB.items() if "a1" not in d}, "grounded", "sceptical")
    assert v == pytest.approx((p["a3"] - q["a3"]) + ((1 - p["a4"]) - (1 - q["a4"])), abs=1e-12)
    w = value_of_observation(ex2, ex2_objective(), ObservationBundle({"b": 1.0}, {("b", "a4"): 0.9}))
    assert w == pytest.approx(0.8221, abs=5e-4)


def test_aegean_kl_observed(aegean):
    obj = kl_objective()
    assert value_of_observed(aegean, obj, {"e1"}) == pytest.approx(0.0850, abs=5e-4)
    assert value_of_observed(aegean, obj, {"e3"}) == value_of_observed(aegean, obj, {"e1"})
    assert value_of_observed(aegean, obj, {"e2"}) == INF


def test_aegean_kl_observed_matches_oracle(aegean):
    # removing e1 leaves h1 alive when e3 is absent and e2 defeats h2: 0.35 * 0.5
    expected = oracles.kl(0.06125, 0.35 * 0.5) + oracles.kl(0.43875, 0.65 * 0.5)
    assert value_of_observed(aegean, kl_objective(), {"e1"}) == pytest.approx(expected, abs=1e-12)


def test_aegean_kl_observation(aegean):
    obj = kl_objective()
    h2 = value_of_observation(aegean, obj, ObservationBundle({"b": 0.5}, {("b", "h2"): 1.0}))
    e3 = value_of_observation(aegean, obj, ObservationBundle({"b": 0.5}, {("b", "e3"): 1.0}))
    assert h2 == pytest.approx(0.1126, abs=5e-4)
    assert e3 == pytest.approx(0.0291, abs=5e-4)


def test_aegean_daf_maximising_change(aegean):
    F = aegean.base
    ranking = dict(rank_observed(F, change_objective(), 3))
    ones = {frozenset(s) for s in ({"e2"}, {"e1", "e2"}, {"e1", "e3"}, {"e2", "e3"})}
    for subset, v in ranking.items():
        assert v == (1.0 if subset in ones else 0.0)
    assert len(ranking) == 7


def test_rank_observed_order(aegean):
    ranked = rank_observed(aegean.base, change_objective(), 2)
    assert [sorted(s) for s, _ in ranked] == [
        ["e1", "e2"], ["e1", "e3"], ["e2"], ["e2", "e3"], ["e1"], ["e3"]]
    ranked = rank_observed(aegean, kl_objective(), 1)
    assert [(sorted(s), v) for s, v in ranked][0] == (["e2"], INF)


def test_rank_observed_bounds(aegean):
    with pytest.raises(ArgumentationError):
        rank_observed(aegean, kl_objective(), 0)
    F = make_framework(["a"], [])
    obj = Objective({"a"}, UtilityKind.DAF_MAXIMISING_CHANGE, DifferenceKind.ABSOLUTE)
    assert rank_observed(F, obj, 3) == []


def test_removing_objective_arguments(ex1):
    obj = Objective({"a1", "a4"}, UtilityKind.DAF_MAXIMISING_CHANGE, DifferenceKind.ABSOLUTE)
    with pytest.raises(ArgumentationError):
        value_of_observed(ex1, obj, {"a1"})
    # a removed objective argument counts as not accepted afterwards
    assert value_of_observed(ex1, obj, {"a1"}, allow_objective=True) == 2
    assert len(rank_observed(ex1, obj, 1, allow_objective=True)) == 4


def test_rank_single_attacks_kl(aegean):
    ranked = rank_single_attacks(aegean, kl_objective(), 0.5, 1.0)
    order = [t for t, _ in ranked]
    values = dict(ranked)
    assert order.index("h2") < order.index("e3")
    assert values["h2"] == pytest.approx(0.1126, abs=5e-4)
    assert values["e3"] == pytest.approx(0.0291, abs=5e-4)


def test_rank_single_attacks_daf(aegean):
    values = dict(rank_single_attacks(aegean.base, change_objective()))
    assert values["e3"] == 0
    # attacking e2 frees h2, the only single attack that changes the outcome
    assert values["e2"] == 1
    assert values["h2"] == 0


def test_rank_single_attacks_empty():
    obj = Objective(set(), UtilityKind.DAF_MAXIMISING_CHANGE, DifferenceKind.ABSOLUTE)
    assert rank_single_attacks(make_framework([], []), obj) == []


def test_fresh_id_avoids_collision():
    F = make_framework(["b", "a"], [("b", "a")])
    obj = Objective({"a"}, UtilityKind.DAF_MAXIMISING_CHANGE, DifferenceKind.ABSOLUTE)
    values = dict(rank_single_attacks(F, obj))
    assert values == {"a": 0.0, "b": 1.0}


def test_daf_bundle_with_probabilities_rejected(ex1):
    with pytest.raises(ArgumentationError):
        value_of_observation(ex1, ex1_objective(), ObservationBundle({"b": 0.5}, {("b", "a4"): 1.0}))


def test_monte_carlo_evaluator(ex2):
    ev = Evaluator(mc=MonteCarloConfig(100_000, 8))
    v = value_of_observed(ex2, ex2_objective(), {"a1"}, evaluator=ev)
    assert v == pytest.approx(-0.2437, abs=0.01)


@settings(max_examples=40, deadline=None)
@given(prafs(max_args=4, max_attacks=4), st.sampled_from(list(DifferenceKind)))
def test_empty_removal_and_empty_bundle_are_worthless(pf, diff):
    obj = Objective(set(sorted(pf.arguments)[:2]), UtilityKind.PRAF_PROBABILITY, diff)
    assert value_of_observed(pf, obj, set()) == 0
    assert value_of_observation(pf, obj, ObservationBundle()) == 0


@settings(max_examples=40, deadline=None)
@given(prafs(max_args=4, max_attacks=4), st.data())
def test_kl_values_non_negative_and_match_recomputation(pf, data):
    args = sorted(pf.arguments)
    obj = Objective({args[0]}, UtilityKind.PRAF_PROBABILITY, DifferenceKind.KL)
    alpha = set(data.draw(st.lists(st.sampled_from(args[1:]), unique=True))) if len(args) > 1 else set()
    v = value_of_observed(pf, obj, alpha)
    assert v >= 0
    keep = {a: p for a, p in pf.arg_prob.items() if a not in alpha}
    before = oracles.acceptance(pf.arg_prob, pf.att_prob, "grounded", "sceptical")
    after = oracles.acceptance(keep, {d: p for d, p in pf.att_prob.items() if d[0] in keep and d[1] in keep},
                               "grounded", "sceptical")
    expected = oracles.kl(before[args[0]], after[args[0]])
    if math.isinf(expected):
        assert v == INF
    else:
        assert v == pytest.approx(expected, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(dung_frameworks(max_args=6), st.data())
def test_maximising_change_values_are_bounded_integers(F, data):
    args = sorted(F.arguments)
    if not args:
        return
    O = set(data.draw(st.lists(st.sampled_from(args), unique=True, min_size=1)))
    obj = Objective(O, UtilityKind.DAF_MAXIMISING_CHANGE, DifferenceKind.ABSOLUTE)
    for _, v in rank_observed(F, obj, 2, allow_objective=True):
        assert v == int(v) and 0 <= v <= len(O)
    praf_obj = Objective(O, UtilityKind.PRAF_MAXIMISING_CHANGE, DifferenceKind.ABSOLUTE)
    pf = from_dung(F)
    for (s1, v1), (s2, v2) in zip(rank_observed(F, obj, 1, allow_objective=True),
                                  rank_observed(pf, praf_obj, 1, allow_objective=True)):
        assert (s1, v1) == (s2, v2)
