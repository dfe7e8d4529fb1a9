"""Tests for the randomized cross-check suites and their generators."""

import random

import pytest

from pcat import (
    check_category_axioms,
    check_groupoid_axioms,
    is_groupoid,
    parse,
    validate_category,
    validate_topology,
)
from pcat.oracle import (
    chain_category,
    connected_groupoid,
    group_axioms_direct,
    group_category,
    monoid_axioms_direct,
    random_category,
    random_groupoid,
    random_monoid,
    random_points,
    random_topology,
    random_valid_action,
    run_oracle,
    suite_axiom_equivalence,
    suite_closure_equivalence,
    suite_embedding_open,
    suite_groupoid_injectivity,
    suite_scenario,
    suite_universality,
)

from conftest import fixture_text


def test_group_category_structure():
    z3 = group_category("z3")
    assert z3.objects == ("e",)
    assert z3.morphisms == ("e", "m1", "m2")
    assert z3.comp[("m1", "m1")] == "m2"
    assert z3.comp[("m1", "m2")] == "e"
    assert validate_category(z3).ok
    wit = is_groupoid(z3)
    assert wit and wit.inverse == {"e": "e", "m1": "m2", "m2": "m1"}


def test_connected_groupoid_structure():
    cat = connected_groupoid(2, "z2")
    assert len(cat.objects) == 2
    assert validate_category(cat).ok
    assert is_groupoid(cat) is not None
    assert len(cat.morphisms) == 2 * 2 * 2


def test_chain_category_structure():
    cat = chain_category()
    assert cat.objects == ("a", "b", "c")
    assert cat.comp[("q", "p")] == "qp"
    assert validate_category(cat).ok
    assert is_groupoid(cat) is None


def test_random_generators_produce_valid_categories():
    rng = random.Random(3)
    for _ in range(30):
        cat = random_category(rng)
        assert validate_category(cat).ok
    for _ in range(10):
        g = random_groupoid(rng)
        assert validate_category(g).ok
        assert is_groupoid(g) is not None
        m = random_monoid(rng)
        assert validate_category(m).ok
        assert len(m.objects) == 1


def test_random_valid_action_always_satisfies_first_three_axioms():
    rng = random.Random(41)
    produced = 0
    for _ in range(120):
        cat = random_category(rng)
        act = random_valid_action(rng, cat, random_points(rng))
        if act is None:
            continue
        produced += 1
        rep = check_category_axioms(cat, act)
        assert rep.passed("C1", "C2", "C3")
    assert produced > 60


def test_random_topology_is_valid():
    rng = random.Random(17)
    for _ in range(60):
        t = random_topology(rng, "abcde")
        assert validate_topology(t).ok


def test_direct_one_object_checkers():
    z2 = group_category("z2")
    wit = is_groupoid(z2)
    total = {("e", "0"): "0", ("e", "1"): "1", ("m1", "0"): "1", ("m1", "1"): "0"}
    from pcat import PartialAction

    act = PartialAction.make(("0", "1"), total)
    assert group_axioms_direct(z2, wit, act)
    assert monoid_axioms_direct(z2, act)
    assert check_groupoid_axioms(z2, wit, act).all_pass

    broken = PartialAction.make(("0", "1"), {**total, ("m1", "1"): "1"})
    assert not group_axioms_direct(z2, wit, broken)

    partial = PartialAction.make(
        ("0", "1"), {("e", "0"): "0", ("e", "1"): "1", ("m1", "0"): "1"}
    )
    assert not group_axioms_direct(z2, wit, partial)
    assert not monoid_axioms_direct(z2, partial)


def test_closure_suite_passes_and_detects_sabotage():
    good = suite_closure_equivalence(5, cases=60)
    assert good.ok and good.cases > 0

    def merge_everything(xbar, sim):
        return (tuple(sorted(xbar.elements)),)

    bad = suite_closure_equivalence(5, cases=60, closure_impl=merge_everything)
    assert not bad.ok
    assert "closure" in bad.failures[0]


def test_axiom_equivalence_suite_small_run():
    res = suite_axiom_equivalence(11, cases=80, one_object_cases=40)
    assert res.ok and res.cases > 0


def test_universality_suite_small_run():
    res = suite_universality(max_size=5)
    assert res.ok and res.cases > 0


def test_groupoid_injectivity_suite_small_run():
    res = suite_groupoid_injectivity(13, max_size=5, cases=12)
    assert res.ok and res.cases > 0


def test_embedding_open_suite_small_run():
    res, hypothesis_passes = suite_embedding_open(19, samples=120)
    assert res.ok and res.cases == 120
    assert hypothesis_passes > 0


def test_scenario_suite_on_fixture():
    sc = parse(fixture_text("arrow_small"))
    res = suite_scenario(sc.category, sc.action, 4)
    assert res.ok and res.cases > 0


def test_run_oracle_suite_names_and_reproducibility():
    first = run_oracle(23, 4)
    second = run_oracle(23, 4)
    assert [s.name for s in first] == [
        "closure-equivalence",
        "axiom-equivalence",
        "universality",
        "groupoid-injectivity",
    ]
    assert all(s.ok for s in first)
    assert [(s.name, s.cases, s.failures) for s in first] == [
        (s.name, s.cases, s.failures) for s in second
    ]
