"""Tests for finite topologies, continuity checks, and the topologized quotient."""

import random

from pcat import (
    FiniteTopology,
    Space,
    TopScenario,
    build_globalization,
    check_continuous_action,
    check_continuous_partial,
    check_embedding_open,
    check_graph_open,
    check_star_open,
    check_topological_category,
    embedding_open_verdict,
    min_nbhd,
    parse,
    product_topology,
    quotient_space,
    quotient_topology,
    subspace_topology,
    topologize_globalization,
    validate_topology,
)
from pcat.oracle import group_category, random_topology

from conftest import fixture_text

fs = frozenset


def brute_opens(space):
    pts = list(space.carrier)
    out = set()
    for mask in range(1 << len(pts)):
        s = fs(p for i, p in enumerate(pts) if mask >> i & 1)
        if all(space.nbhd[p] <= s for p in s):
            out.add(s)
    return fs(out)


def test_validate_topology_positive_and_builders():
    t = FiniteTopology.make("12", [set(), {"1"}, {"2"}, {"1", "2"}])
    assert validate_topology(t).ok
    assert t.is_open({"1"}) and not t.is_open({"3"})
    d = FiniteTopology.discrete("123")
    assert validate_topology(d).ok and len(d.opens) == 8
    i = FiniteTopology.indiscrete("123")
    assert validate_topology(i).ok and len(i.opens) == 2


def test_validate_topology_negatives():
    t = FiniteTopology.make("12", [set(), {"1"}, {"2"}])
    assert validate_topology(t).violations == (
        ("missing_total",),
        ("union", ("1",), ("2",)),
    )
    t = FiniteTopology.make("123", [set(), {"1", "2"}, {"2", "3"}, {"1", "2", "3"}])
    assert validate_topology(t).violations == (("intersection", ("1", "2"), ("2", "3")),)
    t = FiniteTopology(("1", "2"), fs({fs("1"), fs("12")}))
    assert ("missing_empty",) in validate_topology(t).violations
    t = FiniteTopology.make("12", [set(), {"1"}])
    assert validate_topology(t).violations == (("missing_total",),)
    t = FiniteTopology(("1", "2"), fs({fs(), fs("12"), fs("13")}))
    assert ("stray_points", ("3",)) in validate_topology(t).violations


def test_min_nbhd_on_a_chain():
    t = FiniteTopology.make("123", [set(), {"1"}, {"1", "2"}, {"1", "2", "3"}])
    assert min_nbhd(t, "1") == fs("1")
    assert min_nbhd(t, "2") == fs("12")
    assert min_nbhd(t, "3") == fs("123")


def test_space_opens_matches_brute_force():
    rng = random.Random(97)
    for _ in range(40):
        t = random_topology(rng, "abcd")
        assert validate_topology(t).ok
        sp = Space.from_topology(t)
        assert sp.opens() == t.opens == brute_opens(sp)


def test_product_dual_route_and_brute_force():
    rng = random.Random(11)
    for _ in range(25):
        a = random_topology(rng, "ab")
        b = random_topology(rng, "xyz")
        via_fn = product_topology(a, b)
        via_space = Space.product(
            Space.from_topology(a), Space.from_topology(b)
        ).to_topology()
        assert via_fn.opens == via_space.opens
        assert set(via_fn.carrier) == {(p, q) for p in "ab" for q in "xyz"}
        assert via_fn.opens == brute_opens(Space.from_topology(via_fn))
        assert validate_topology(via_fn).ok


def test_subspace_dual_route():
    rng = random.Random(23)
    for _ in range(40):
        t = random_topology(rng, "abcd")
        sub = {"a", "c"}
        via_fn = subspace_topology(t, sub)
        via_space = Space.from_topology(t).subspace(sub).to_topology()
        assert via_fn.opens == via_space.opens
        assert validate_topology(via_fn).ok


def test_quotient_dual_route_and_finest_property():
    rng = random.Random(29)
    for _ in range(40):
        t = random_topology(rng, "abcd")
        class_of = {p: rng.choice("xy") for p in "abcd"}
        if len(set(class_of.values())) == 1:
            class_of["a"] = "x"
            class_of["b"] = "y"
        reps = {p: min(q for q in class_of if class_of[q] == class_of[p]) for p in class_of}
        via_fn = quotient_topology(t, reps)
        via_space = Space.from_topology(t).quotient(reps).to_topology()
        assert via_fn.opens == via_space.opens
        # Finest topology making the projection continuous: a set of classes
        # is open exactly when its preimage is open.
        members = {}
        for p, r in reps.items():
            members.setdefault(r, set()).add(p)
        expect = set()
        for mask in range(1 << len(members)):
            chosen = [r for i, r in enumerate(sorted(members)) if mask >> i & 1]
            pre = set().union(*(members[r] for r in chosen)) if chosen else set()
            if t.is_open(pre):
                expect.add(fs(chosen))
        assert via_fn.opens == fs(expect)


def test_continuous_partial_identity_map():
    ind = FiniteTopology.indiscrete("12")
    dis = FiniteTopology.discrete("12")
    ident = {"1": "1", "2": "2"}
    assert check_continuous_partial(ident, dis, ind).ok
    v = check_continuous_partial(ident, ind, dis)
    assert v.witnesses == (("1",), ("2",))


def test_continuous_partial_uses_subspace_of_domain():
    # On the subspace {2, 3} of the chain, the point 2 becomes relatively
    # open, so opens selecting 2 stop being witnesses; the point 3 still
    # drags 2 along in its relative neighborhood, so opens selecting 3
    # without 2 remain witnesses.
    chain = FiniteTopology.make("123", [set(), {"1"}, {"1", "2"}, {"1", "2", "3"}])
    dis = FiniteTopology.discrete("123")
    full = check_continuous_partial({"1": "1", "2": "2", "3": "3"}, chain, dis)
    assert ("2",) in full.witnesses
    part = check_continuous_partial({"2": "2", "3": "3"}, chain, dis)
    assert part.witnesses == (("1", "3"), ("3",))


def test_topological_category_verdicts():
    z3 = group_category("z3")
    bad = FiniteTopology.make(z3.morphisms, [set(), {"m1"}, set(z3.morphisms)])
    assert check_topological_category(z3, bad).witnesses == (("m1",),)
    assert check_topological_category(z3, FiniteTopology.discrete(z3.morphisms)).ok
    assert check_topological_category(z3, FiniteTopology.indiscrete(z3.morphisms)).ok


def test_star_open_verdicts():
    sc = parse(fixture_text("arrow_small"))
    arrow = sc.category
    bad = FiniteTopology.make(arrow.morphisms, [set(), {"g"}, set(arrow.morphisms)])
    assert check_star_open(arrow, bad).witnesses == ("e", "f")
    assert check_star_open(arrow, FiniteTopology.discrete(arrow.morphisms)).ok


def test_nonopen_fixture_frozen_verdicts():
    sc = parse(fixture_text("arrow_small_nonopen"))
    scn = TopScenario(sc.category, sc.action, sc.top_mor, sc.top_space)
    ca = check_continuous_action(scn)
    assert ca.ca1_witnesses == ("f",)
    assert ca.ca2_witnesses == ()
    assert check_graph_open(scn).witnesses == (("f", "2"), ("g", "2"))
    assert check_star_open(sc.category, sc.top_mor).ok


def test_discrete_fixture_all_verdicts_pass():
    sc = parse(fixture_text("arrow_small_topo"))
    scn = TopScenario(sc.category, sc.action, sc.top_mor, sc.top_space)
    glob = build_globalization(sc.category, sc.action)
    tg = topologize_globalization(scn, glob)
    assert tg.ca.ok and tg.star.ok and tg.graph.ok
    assert tg.embed_continuous.ok and tg.action_continuous.ok and tg.embed_open.ok
    assert tg.k_continuous is None
    assert len(tg.top_y.opens) == 16
    assert validate_topology(tg.top_y).ok


def test_discrete_fixture_mediating_map_is_continuous():
    sc = parse(fixture_text("arrow_small_topo"))
    scn = TopScenario(sc.category, sc.action, sc.top_mor, sc.top_space)
    glob = build_globalization(sc.category, sc.action)
    tgt = parse(fixture_text("arrow_small_target"))
    tg = topologize_globalization(
        scn,
        glob,
        (tgt.action, FiniteTopology.discrete(tgt.action.carrier), dict(tgt.gfun)),
    )
    assert tg.k_continuous is not None and tg.k_continuous.ok


def test_indiscrete_carrier_conclusions_hold_without_hypotheses():
    # With an indiscrete carrier the openness hypotheses fail (identity
    # domains are not open and neither is the definedness domain), yet the
    # continuity conclusions about the quotient still hold; only the openness
    # of the embedding is lost.
    sc = parse(fixture_text("arrow_small"))
    scn = TopScenario(
        sc.category,
        sc.action,
        FiniteTopology.discrete(sc.category.morphisms),
        FiniteTopology.indiscrete(sc.action.carrier),
    )
    glob = build_globalization(sc.category, sc.action)
    tg = topologize_globalization(scn, glob)
    assert tg.ca.ca1_witnesses == ("e", "f")
    assert tg.ca.ca2_witnesses == ()
    assert tg.graph.witnesses == (
        ("e", "1"),
        ("e", "2"),
        ("f", "2"),
        ("f", "3"),
        ("g", "2"),
    )
    assert tg.star.ok
    assert tg.embed_continuous.ok and tg.action_continuous.ok
    assert tg.embed_open.witnesses == (("1", "2", "3"),)
    assert len(tg.top_y.opens) == 2


def test_embedding_open_routes_agree():
    for stem, tops in (
        ("arrow_small_topo", None),
        ("arrow_small", "indiscrete"),
    ):
        sc = parse(fixture_text(stem))
        if tops is None:
            scn = TopScenario(sc.category, sc.action, sc.top_mor, sc.top_space)
        else:
            scn = TopScenario(
                sc.category,
                sc.action,
                FiniteTopology.discrete(sc.category.morphisms),
                FiniteTopology.indiscrete(sc.action.carrier),
            )
        glob = build_globalization(sc.category, sc.action)
        top_y = quotient_space(scn, glob).to_topology()
        direct = check_embedding_open(scn, glob, top_y)
        lazy = embedding_open_verdict(scn, glob)
        assert direct.witnesses == lazy.witnesses, stem


def test_quotient_space_carrier_is_class_representatives():
    sc = parse(fixture_text("arrow_small_topo"))
    scn = TopScenario(sc.category, sc.action, sc.top_mor, sc.top_space)
    glob = build_globalization(sc.category, sc.action)
    ys = quotient_space(scn, glob)
    assert set(ys.carrier) == {cls[0] for cls in glob.classes}
