"""Seeded randomized cross-check suites backing the ``oracle`` CLI command.

Every suite pits two independent routes against each other: union-find
closure vs naive chain saturation, category-action axioms vs groupoid-action
axioms, quotient construction vs exhaustively enumerated receivers, and the
per-morphism axiom forms vs direct one-object group/monoid checks.  All
randomness flows through an injected ``random.Random`` so runs are
reproducible from a seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from .category import Category, GroupoidWitness, composable_pairs, is_groupoid, validate_category
from .action import PartialAction, check_category_axioms, check_groupoid_axioms
from . import fixtures
from .globalization import (
    _canonical_key,
    _fresh_points,
    build_xbar,
    build_globalization,
    equiv_closure,
    enumerate_globalizations,
    induces_source,
    mediating,
    mediating_candidates,
    naive_closure,
    sim_pairs,
)
from .topology import (
    FiniteTopology,
    TopScenario,
    check_continuous_action,
    check_graph_open,
    check_star_open,
    embedding_open_verdict,
)


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one randomized suite: case count and failure descriptions."""

    name: str
    cases: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


# --- small-structure generators -------------------------------------------

_GROUP_TABLES = {
    "z1": [[0]],
    "z2": [[0, 1], [1, 0]],
    "z3": [[0, 1, 2], [1, 2, 0], [2, 0, 1]],
    "z4": [[(i + j) % 4 for j in range(4)] for i in range(4)],
    "klein": [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]],
    "s3": [
        [0, 1, 2, 3, 4, 5],
        [1, 2, 0, 4, 5, 3],
        [2, 0, 1, 5, 3, 4],
        [3, 5, 4, 0, 2, 1],
        [4, 3, 5, 1, 0, 2],
        [5, 4, 3, 2, 1, 0],
    ],
}


def group_category(name: str, prefix: str = "m") -> Category:
    """One-object category for a named group; element 0 is the identity."""
    table = _GROUP_TABLES[name]
    n = len(table)
    ids = ["e"] + [f"{prefix}{i}" for i in range(1, n)]
    arrows = {ids[i]: ("e", "e") for i in range(1, n)}
    comp = {
        (ids[i], ids[j]): ids[table[i][j]]
        for i in range(n)
        for j in range(n)
        if i != 0 and j != 0
    }
    return Category.make(["e"], arrows, comp)


def connected_groupoid(n_objects: int, group: str) -> Category:
    """A groupoid with ``n_objects`` pairwise-isomorphic objects over a group.

    Morphisms o_j -> o_i are labeled by group elements; composition
    multiplies the labels.
    """
    table = _GROUP_TABLES[group]
    n = len(table)
    objs = [f"o{i}" for i in range(n_objects)]

    def name(i, j, h):
        if i == j and h == 0:
            return objs[i]
        return f"a{i}_{j}_{h}"

    arrows = {}
    for i in range(n_objects):
        for j in range(n_objects):
            for h in range(n):
                if i == j and h == 0:
                    continue
                arrows[name(i, j, h)] = (objs[j], objs[i])
    comp = {}
    for i in range(n_objects):
        for j in range(n_objects):
            for k in range(n_objects):
                for h1 in range(n):
                    for h2 in range(n):
                        a, b = name(i, j, h1), name(j, k, h2)
                        if a in arrows and b in arrows:
                            comp[(a, b)] = name(i, k, table[h1][h2])
    return Category.make(objs, arrows, comp)


def chain_category() -> Category:
    """Three objects in a row with a composite arrow: a -> b -> c."""
    return Category.make(
        ["a", "b", "c"],
        {"p": ("a", "b"), "q": ("b", "c"), "qp": ("a", "c")},
        {("q", "p"): "qp"},
    )


def random_monoid(rng: random.Random, max_tries: int = 400) -> Category:
    """A one-object category from a random associative table with identity.

    Rejection-samples small tables; falls back to a library group when no
    associative table shows up within the budget.
    """
    n = rng.choice([2, 3, 3])
    ids = ["e"] + [f"m{i}" for i in range(1, n)]
    for _ in range(max_tries):
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            table[0][i] = i
            table[i][0] = i
        for i in range(1, n):
            for j in range(1, n):
                table[i][j] = rng.randrange(n)
        if all(
            table[table[i][j]][k] == table[i][table[j][k]]
            for i in range(n)
            for j in range(n)
            for k in range(n)
        ):
            arrows = {ids[i]: ("e", "e") for i in range(1, n)}
            comp = {
                (ids[i], ids[j]): ids[table[i][j]]
                for i in range(n)
                for j in range(n)
                if i != 0 and j != 0
            }
            return Category.make(["e"], arrows, comp)
    return group_category(rng.choice(["z2", "z3"]))


def random_groupoid(rng: random.Random, max_mor: int = 8) -> Category:
    """A library-shaped random groupoid with at most ``max_mor`` morphisms."""
    choices = [
        ("z1", 1), ("z2", 1), ("z3", 1), ("z4", 1), ("klein", 1), ("s3", 1),
        ("z1", 2), ("z2", 2),
    ]
    group, n_obj = rng.choice(
        [(g, n) for (g, n) in choices if n * n * len(_GROUP_TABLES[g]) <= max_mor]
    )
    return connected_groupoid(n_obj, group)


def random_category(rng: random.Random) -> Category:
    """A category from the mixed library: fixtures, chains, monoids, groupoids."""
    pick = rng.randrange(5)
    if pick == 0:
        return fixtures.arrow_category()
    if pick == 1:
        return fixtures.iso_groupoid()
    if pick == 2:
        return chain_category()
    if pick == 3:
        return random_monoid(rng)
    return random_groupoid(rng)


def random_points(rng: random.Random, max_points: int = 6) -> tuple[str, ...]:
    return tuple(str(i) for i in range(1, rng.randint(1, max_points) + 1))


def random_table(rng: random.Random, cat: Category, points, density: float) -> PartialAction:
    """A raw table with no axiom guarantees: identity rows are biased toward
    fixing their point, everything else is uniform noise."""
    table = {}
    for g in cat.morphisms:
        for x in points:
            if rng.random() < density:
                if g in cat.objects and rng.random() < 0.8:
                    table[(g, x)] = x
                else:
                    table[(g, x)] = rng.choice(points)
    return PartialAction(tuple(sorted(points)), table)


def random_valid_action(
    rng: random.Random, cat: Category, points, density: float = 0.4, max_rounds: int = 60
) -> Optional[PartialAction]:
    """A table repaired to satisfy C1-C3, or None when repair fails to settle.

    Repair alternates: force identity rows to fix their points, add the
    base step each defined step needs, and close definedness along
    composites; on a value conflict the non-identity culprit is dropped.
    """
    objs = set(cat.objects)
    table: dict[tuple[str, str], str] = {}
    for x in points:
        for e in rng.sample(sorted(objs), rng.randint(1, len(objs))):
            table[(e, x)] = x
    for g in cat.morphisms:
        if g in objs:
            continue
        for x in points:
            if rng.random() < density:
                table[(g, x)] = rng.choice(points)

    pairs = sorted(composable_pairs(cat))
    for _ in range(max_rounds):
        changed = False
        for (f, x), v in list(table.items()):
            if f in objs and v != x:
                del table[(f, x)]
                changed = True
        for (g, x) in list(table):
            if (cat.dom[g], x) not in table:
                table[(cat.dom[g], x)] = x
                changed = True
        for (g, h) in pairs:
            k = cat.comp[(g, h)]
            for x in points:
                if (h, x) not in table:
                    continue
                y = table[(h, x)]
                a = table.get((k, x))
                b = table.get((g, y))
                if a is None and b is None:
                    continue
                if a is None:
                    if k in objs and b != x:
                        del table[(g, y)]
                    else:
                        table[(k, x)] = b
                    changed = True
                elif b is None:
                    if g in objs and a != y:
                        del table[(k, x)]
                    else:
                        table[(g, y)] = a
                    changed = True
                elif a != b:
                    del table[(k, x) if k not in objs else (g, y)]
                    changed = True
        if not changed:
            break
    else:
        return None
    act = PartialAction(tuple(sorted(points)), table)
    rep = check_category_axioms(cat, act)
    if not rep.passed("C1", "C2", "C3"):
        return None
    return act


def random_topology(rng: random.Random, carrier) -> FiniteTopology:
    """A random topology: sometimes discrete or indiscrete, else the closure
    of a few random subsets under union and intersection."""
    pts = sorted(set(carrier))
    roll = rng.random()
    if roll < 0.3:
        return FiniteTopology.discrete(pts)
    if roll < 0.45:
        return FiniteTopology.indiscrete(pts)
    opens = {frozenset(), frozenset(pts)}
    for _ in range(rng.randint(1, 4)):
        size = rng.randint(1, len(pts))
        opens.add(frozenset(rng.sample(pts, size)))
    changed = True
    while changed:
        changed = False
        for a in list(opens):
            for b in list(opens):
                for u in (a | b, a & b):
                    if u not in opens:
                        opens.add(u)
                        changed = True
    return FiniteTopology(tuple(pts), frozenset(opens))


# --- direct one-object axiom checkers (group / monoid statements) ---------


def group_axioms_direct(cat: Category, wit: GroupoidWitness, act: PartialAction) -> bool:
    """The three group-action axioms checked verbatim on a one-object groupoid."""
    assert len(cat.objects) == 1
    e = cat.objects[0]
    t = act.table
    if not all(t.get((e, x)) == x for x in act.carrier):
        return False
    for (g, x), y in t.items():
        if t.get((wit.inverse[g], y)) != x:
            return False
    for g in cat.morphisms:
        for h in cat.morphisms:
            for x in act.carrier:
                if (h, x) in t and (g, t[(h, x)]) in t:
                    if t.get((cat.comp[(g, h)], x)) != t[(g, t[(h, x)])]:
                        return False
    return True


def monoid_axioms_direct(cat: Category, act: PartialAction) -> bool:
    """The two monoid-action axioms checked verbatim on a one-object category."""
    assert len(cat.objects) == 1
    e = cat.objects[0]
    t = act.table
    if not all(t.get((e, x)) == x for x in act.carrier):
        return False
    for g in cat.morphisms:
        for h in cat.morphisms:
            k = cat.comp[(g, h)]
            for x in act.carrier:
                if (h, x) not in t:
                    continue
                comp_def = (k, x) in t
                step_def = (g, t[(h, x)]) in t
                if comp_def != step_def:
                    return False
                if comp_def and t[(k, x)] != t[(g, t[(h, x)])]:
                    return False
    return True


# --- suites ----------------------------------------------------------------


def suite_closure_equivalence(
    seed: int,
    cases: int = 500,
    closure_impl: Callable = equiv_closure,
) -> SuiteResult:
    """Union-find closure must equal the naive saturation on fixtures and
    random valid actions (morphisms <= 8, points <= 6)."""
    rng = random.Random(seed)
    failures = []
    ran = 0
    for name, make in fixtures.FIXTURES.items():
        cat, act = make()
        xbar = build_xbar(cat, act)
        sim = sim_pairs(cat, act, xbar)
        ran += 1
        if closure_impl(xbar, sim) != naive_closure(xbar, sim):
            failures.append(f"fixture {name}: closures disagree")
    while ran < cases + len(fixtures.FIXTURES):
        cat = random_category(rng)
        act = random_valid_action(rng, cat, random_points(rng), rng.uniform(0.15, 0.8))
        if act is None:
            continue
        xbar = build_xbar(cat, act)
        sim = sim_pairs(cat, act, xbar)
        ran += 1
        if closure_impl(xbar, sim) != naive_closure(xbar, sim):
            failures.append(f"case {ran}: closures disagree (seed {seed})")
    return SuiteResult("closure-equivalence", ran, tuple(failures))


def suite_axiom_equivalence(seed: int, cases: int = 500, one_object_cases: int = 250) -> SuiteResult:
    """Category-action axioms C1-C3 must hold exactly when the groupoid-action
    axioms GR1-GR3 do, and one-object verdicts must match the direct group
    and monoid checks."""
    rng = random.Random(seed)
    failures = []
    ran = 0
    for _ in range(cases):
        cat = random_groupoid(rng)
        wit = is_groupoid(cat)
        assert wit is not None and validate_category(cat).ok
        points = random_points(rng)
        if rng.random() < 0.5:
            act = random_table(rng, cat, points, rng.uniform(0.1, 0.9))
        else:
            act = random_valid_action(rng, cat, points, rng.uniform(0.15, 0.8))
            if act is None:
                act = random_table(rng, cat, points, 0.5)
        ran += 1
        c = check_category_axioms(cat, act)
        gr = check_groupoid_axioms(cat, wit, act)
        if c.passed("C1", "C2", "C3") != gr.passed("GR1", "GR2", "GR3"):
            failures.append(f"case {ran}: C1-C3 and GR1-GR3 verdicts differ (seed {seed})")

    for _ in range(one_object_cases):
        gname = rng.choice(["z1", "z2", "z3", "z4", "klein", "s3"])
        cat = group_category(gname)
        wit = is_groupoid(cat)
        points = random_points(rng)
        act = random_table(rng, cat, points, rng.uniform(0.2, 0.95))
        ran += 1
        c = check_category_axioms(cat, act)
        if c.passed("C1", "C2", "C3") != group_axioms_direct(cat, wit, act):
            failures.append(f"group case {ran}: direct check disagrees (seed {seed})")

    for _ in range(one_object_cases):
        cat = random_monoid(rng)
        points = random_points(rng)
        act = random_table(rng, cat, points, rng.uniform(0.2, 0.95))
        ran += 1
        c = check_category_axioms(cat, act)
        if c.passed("C1", "C2", "C3") != monoid_axioms_direct(cat, act):
            failures.append(f"monoid case {ran}: direct check disagrees (seed {seed})")
    return SuiteResult("axiom-equivalence", ran, tuple(failures))


def _relabel_as_extension(glob) -> PartialAction:
    """The quotient action relabeled so the embedding is the inclusion.

    Embedded classes take their source point's name; the rest take fresh
    names in canonical order.  Used to locate the quotient among enumerated
    receivers."""
    inv = {rep: x for x, rep in glob.embed.items()}
    extra = [c[0] for c in glob.classes if c[0] not in inv]
    fresh = _fresh_points(glob.source.carrier, len(extra))
    names = dict(inv)
    names.update(dict(zip(sorted(extra), fresh)))
    table = {(g, names[src]): names[dst] for (g, src), dst in glob.action.items()}
    carrier = tuple(sorted(names.values(), key=str))
    return PartialAction(carrier, table)


def suite_universality(max_size: Optional[int] = None) -> SuiteResult:
    """Every enumerated receiver admits exactly one equivariant factorization.

    For each fixture, enumeration runs up to one point beyond the quotient
    size (capped by ``max_size``); the mediating map must be the only
    equivariant extension of the inclusion.  The quotient itself must appear
    among the receivers, reflect definedness (see ``induces_source``), and
    receive a bijective mediating map from itself."""
    failures = []
    ran = 0
    for name, make in fixtures.FIXTURES.items():
        cat, act = make()
        glob = build_globalization(cat, act)
        bound = len(glob.classes) + 1
        if max_size is not None:
            bound = min(bound, max_size)
        bound = max(bound, len(act.carrier))
        targets = enumerate_globalizations(cat, act, bound)
        y_relabeled = _relabel_as_extension(glob)
        base = set(act.carrier)
        y_key = _canonical_key(y_relabeled, act.carrier, [p for p in y_relabeled.carrier if p not in base])
        t_keys = [
            _canonical_key(t, act.carrier, [p for p in t.carrier if p not in base])
            for t, _ in targets
        ]
        if bound >= len(glob.classes) and y_key not in t_keys:
            failures.append(f"{name}: quotient missing from enumerated receivers")
        if not induces_source(cat, act, y_relabeled, {x: x for x in act.carrier}).ok:
            failures.append(f"{name}: quotient does not reflect definedness")
        k_self = mediating(glob, y_relabeled, {x: x for x in act.carrier})
        if sorted(k_self.values(), key=str) != sorted(y_relabeled.carrier, key=str):
            failures.append(f"{name}: mediating map onto the quotient itself is not bijective")
        for target, j in targets:
            ran += 1
            k = mediating(glob, target, j)
            cands = mediating_candidates(glob, target, j)
            if len(cands) != 1 or cands[0] != k:
                failures.append(f"{name}: receiver admits {len(cands)} factorizations")
    return SuiteResult("universality", ran, tuple(failures))


def suite_groupoid_injectivity(
    seed: int, max_size: Optional[int] = None, cases: int = 40
) -> SuiteResult:
    """Injectivity facts about mediating maps that hold for groupoid origins.

    Between universal globalizations the mediating map is bijective: checked
    for the groupoid fixtures against their own relabeled quotients.  For
    one-object groupoids the sharper statement holds: the mediating map into
    any receiver whose restriction to the carrier image is exactly the
    source (``induces_source``) is injective; checked on seeded random group
    actions.  Receivers over several objects genuinely break that sharper
    statement — a receiver point may carry identities of several objects at
    once and absorb distinct classes whose tags end at different objects —
    so multi-object receivers are exercised only through the
    fixture/quotient check.  The regression tests pin concrete
    counterexamples."""
    failures = []
    ran = 0
    for name in ("iso_fixed", "iso_shift"):
        cat, act = fixtures.FIXTURES[name]()
        glob = build_globalization(cat, act)
        ident = {x: x for x in act.carrier}
        y_relabeled = _relabel_as_extension(glob)
        ran += 1
        k = mediating(glob, y_relabeled, ident)
        if sorted(k.values(), key=str) != sorted(y_relabeled.carrier, key=str):
            failures.append(f"{name}: quotient-to-quotient mediating map is not bijective")

    rng = random.Random(seed)
    reflecting = 0
    produced = 0
    while produced < cases:
        cat = group_category(rng.choice(["z2", "z3", "z4", "klein"]))
        act = random_valid_action(rng, cat, random_points(rng, 4), rng.uniform(0.2, 0.7))
        if act is None:
            continue
        glob = build_globalization(cat, act)
        if len(glob.classes) > 7:
            continue
        produced += 1
        bound = min(8, max(len(glob.classes) + 1, len(act.carrier)))
        if max_size is not None:
            bound = min(bound, max(max_size, len(act.carrier)))
        for target, j in enumerate_globalizations(cat, act, bound):
            if not induces_source(cat, act, target, j).ok:
                continue
            ran += 1
            reflecting += 1
            k = mediating(glob, target, j)
            if len(set(k.values())) != len(k):
                failures.append(f"group case (seed {seed}): mediating map collapses classes")
    if not reflecting:
        failures.append(f"no reflecting receivers sampled (seed {seed})")
    return SuiteResult("groupoid-injectivity", ran, tuple(failures))


def small_category(rng: random.Random) -> Category:
    """A category with at most four morphisms, for topology sweeps."""
    pick = rng.randrange(4)
    if pick == 0:
        return fixtures.arrow_category()
    if pick == 1:
        return fixtures.iso_groupoid()
    if pick == 2:
        return group_category(rng.choice(["z1", "z2", "z3", "z4", "klein"]))
    return Category.make(["u", "v"], {}, {})


def suite_embedding_open(seed: int, samples: int = 1000) -> tuple[SuiteResult, int]:
    """Star-open plus graph-open plus CA1/CA2 must force the embedding open.

    Samples scenarios with random topologies on carriers of at most four
    points; scenarios failing the hypotheses only count toward the sample
    budget.  The failure list would name any scenario where the hypotheses
    hold but some carrier open has a non-open image.  Also returns how many
    samples satisfied the hypotheses, so callers can assert non-vacuity."""
    rng = random.Random(seed)
    failures = []
    hypothesis_passes = 0
    ran = 0
    while ran < samples:
        cat = small_category(rng)
        if len(cat.morphisms) > 4:
            continue
        points = tuple(str(i) for i in range(1, rng.randint(1, 4) + 1))
        act = random_valid_action(rng, cat, points, rng.uniform(0.2, 0.9))
        if act is None:
            continue
        ran += 1
        scn = TopScenario(
            cat,
            act,
            random_topology(rng, cat.morphisms),
            random_topology(rng, act.carrier),
        )
        ca = check_continuous_action(scn)
        star = check_star_open(cat, scn.top_mor)
        graph = check_graph_open(scn)
        if not (ca.ok and star.ok and graph.ok):
            continue
        hypothesis_passes += 1
        glob = build_globalization(cat, act)
        verdict = embedding_open_verdict(scn, glob)
        if not verdict.ok:
            failures.append(f"sample {ran}: open embedding fails, witnesses {verdict.witnesses}")
    result = SuiteResult("topo-embedding-open", ran, tuple(failures))
    return result, hypothesis_passes


def suite_scenario(cat: Category, act: PartialAction, max_size: int) -> SuiteResult:
    """Closure cross-check plus factorization-uniqueness sweep for one scenario.

    Raises the same axiom error as the construction when C1-C3 fail."""
    failures = []
    xbar = build_xbar(cat, act)
    sim = sim_pairs(cat, act, xbar)
    cases = 1
    if equiv_closure(xbar, sim) != naive_closure(xbar, sim):
        failures.append("closures disagree")
    glob = build_globalization(cat, act)
    if len(act.carrier) <= 8:
        bound = min(8, max(min(max_size, len(glob.classes) + 1), len(act.carrier), 1))
        for target, j in enumerate_globalizations(cat, act, bound):
            cases += 1
            k = mediating(glob, target, j)
            cands = mediating_candidates(glob, target, j)
            if len(cands) != 1 or cands[0] != k:
                failures.append(f"receiver admits {len(cands)} factorizations")
    return SuiteResult("scenario", cases, tuple(failures))


def run_oracle(seed: int, max_size: int, closure_impl: Callable = equiv_closure) -> list[SuiteResult]:
    """The four suites behind the ``oracle`` CLI command."""
    return [
        suite_closure_equivalence(seed, closure_impl=closure_impl),
        suite_axiom_equivalence(seed),
        suite_universality(max_size),
        suite_groupoid_injectivity(seed, max_size),
    ]
