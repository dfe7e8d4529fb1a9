"""Partial actions of a finite category on a finite set, in three presentations.

The primary presentation is a partial table ``(morphism, point) -> point``.
The same data can be viewed per-morphism (definedness domain, image, and the
induced map) or, when the action is global, as a set-valued functor.  Axiom
checkers return witness-bearing reports and never raise on law failures; they
raise ``ValueError`` only for structurally ill-formed input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping, Optional

from .category import Category, GroupoidWitness, composable_pairs

Pt = Any


@dataclass(frozen=True)
class PartialAction:
    """A partial action table over an ordered carrier of points.

    ``table[(g, x)] = y`` means the morphism ``g`` sends ``x`` to ``y``; pairs
    absent from the table are undefined.  No axiom is assumed to hold.
    """

    carrier: tuple[Pt, ...]
    table: Mapping[tuple[str, Pt], Pt]

    @staticmethod
    def make(carrier, table) -> "PartialAction":
        return PartialAction(tuple(sorted(set(carrier))), dict(table))

    def defined(self, g: str, x: Pt) -> bool:
        return (g, x) in self.table

    def apply(self, g: str, x: Pt) -> Optional[Pt]:
        return self.table.get((g, x))


@dataclass(frozen=True)
class AxiomReport:
    """Witness lists per axiom name; an axiom passes iff its list is empty."""

    witnesses: Mapping[str, tuple[tuple, ...]]

    def passed(self, *axioms: str) -> bool:
        return all(not self.witnesses[a] for a in axioms)

    @property
    def all_pass(self) -> bool:
        return all(not w for w in self.witnesses.values())

    def verdicts(self) -> dict[str, bool]:
        return {a: not w for a, w in self.witnesses.items()}


def _check_refs(cat: Category, act: PartialAction) -> None:
    mors = set(cat.morphisms)
    pts = set(act.carrier)
    for (g, x), y in act.table.items():
        if g not in mors:
            raise ValueError(f"action references unknown morphism {g!r}")
        if x not in pts or y not in pts:
            raise ValueError(f"action entry ({g!r}, {x!r}) -> {y!r} leaves the carrier")


def check_category_axioms(cat: Category, act: PartialAction) -> AxiomReport:
    """Check the four category-action axioms, collecting all witnesses.

    C1: every point is fixed by at least one object, and any object that acts
        on a point fixes it.  C2: definedness of g.x forces definedness of
        dom(g).x.  C3: along a composable pair, the two evaluation orders are
        defined together and agree.  C4 (globality): definedness of dom(g).x
        forces definedness of g.x.
    """
    _check_refs(cat, act)
    t = act.table
    c1: list[tuple] = []
    c2: list[tuple] = []
    c3: list[tuple] = []
    c4: list[tuple] = []

    for x in act.carrier:
        if not any((e, x) in t for e in cat.objects):
            c1.append((x,))
        for e in cat.objects:
            if (e, x) in t and t[(e, x)] != x:
                c1.append((e, x))

    for (g, x) in sorted(t):
        if (cat.dom[g], x) not in t:
            c2.append((g, x))
    for g in cat.morphisms:
        for x in act.carrier:
            if (cat.dom[g], x) in t and (g, x) not in t:
                c4.append((g, x))

    for (g, h) in sorted(composable_pairs(cat)):
        k = cat.comp.get((g, h))
        if k is None:
            continue
        for x in act.carrier:
            if (h, x) not in t:
                continue
            via_comp = t.get((k, x))
            stepwise = t.get((g, t[(h, x)]))
            comp_def = (k, x) in t
            step_def = (g, t[(h, x)]) in t
            if comp_def != step_def or (comp_def and via_comp != stepwise):
                c3.append((g, h, x))

    return AxiomReport({"C1": tuple(c1), "C2": tuple(c2), "C3": tuple(c3), "C4": tuple(c4)})


def check_groupoid_axioms(cat: Category, wit: GroupoidWitness, act: PartialAction) -> AxiomReport:
    """Check the groupoid-action axioms GR1-GR4.

    GR1 coincides with C1 and GR4 with C4.  GR2 demands that the inverse
    undoes every defined step; GR3 demands closure of definedness under
    composition in the stepwise-to-composite direction only.
    """
    _check_refs(cat, act)
    t = act.table
    base = check_category_axioms(cat, act)
    gr2: list[tuple] = []
    gr3: list[tuple] = []

    for (g, x) in sorted(t):
        y = t[(g, x)]
        gi = wit.inverse[g]
        if t.get((gi, y)) != x:
            gr2.append((g, x))

    for (g, h) in sorted(composable_pairs(cat)):
        k = cat.comp[(g, h)]
        for x in act.carrier:
            if (h, x) not in t:
                continue
            y = t[(h, x)]
            if (g, y) in t and t.get((k, x)) != t[(g, y)]:
                gr3.append((g, h, x))

    return AxiomReport(
        {
            "GR1": base.witnesses["C1"],
            "GR2": tuple(gr2),
            "GR3": tuple(gr3),
            "GR4": base.witnesses["C4"],
        }
    )


@dataclass(frozen=True)
class TripleForm:
    """Per-morphism view of an action: definedness domain, image, induced map."""

    carrier: tuple[Pt, ...]
    domains: Mapping[str, frozenset]
    images: Mapping[str, frozenset]
    maps: Mapping[str, Mapping[Pt, Pt]]


def to_triple(act: PartialAction) -> TripleForm:
    """Regroup the table by morphism; morphisms absent from it get no entry."""
    doms: dict[str, set] = {}
    maps: dict[str, dict] = {}
    for (g, x), y in act.table.items():
        doms.setdefault(g, set()).add(x)
        maps.setdefault(g, {})[x] = y
    return TripleForm(
        act.carrier,
        {g: frozenset(s) for g, s in doms.items()},
        {g: frozenset(maps[g].values()) for g in maps},
        {g: dict(m) for g, m in maps.items()},
    )


def from_triple(cat: Category, t: TripleForm) -> PartialAction:
    """Flatten a per-morphism view back into one table.

    Raises ``ValueError`` when a map is not defined exactly on its stated
    domain, when its image disagrees with the stated image, or when any value
    leaves the carrier.
    """
    pts = set(t.carrier)
    table: dict[tuple[str, Pt], Pt] = {}
    for g in sorted(t.domains):
        if g not in cat.morphisms:
            raise ValueError(f"triple form references unknown morphism {g!r}")
        m = t.maps.get(g, {})
        if set(m) != set(t.domains[g]):
            raise ValueError(f"map for {g!r} not defined exactly on its domain")
        if not set(m.values()) <= pts or not set(m) <= pts:
            raise ValueError(f"map for {g!r} leaves the carrier")
        if frozenset(m.values()) != t.images.get(g, frozenset()):
            raise ValueError(f"stated image for {g!r} disagrees with its map")
        for x, y in m.items():
            table[(g, x)] = y
    return PartialAction(t.carrier, table)


def check_triple_axioms(
    cat: Category, t: TripleForm, groupoid: Optional[GroupoidWitness] = None
) -> AxiomReport:
    """Check the per-morphism forms of the axioms on a triple view.

    Always checks C1'-C4'; with a groupoid witness additionally checks the
    groupoid forms (GR1' and GR2' restate C1' and C2') plus GR3' and the
    bijectivity of each induced map with the inverse morphism's map.
    """
    dom_of = lambda g: t.domains.get(g, frozenset())
    img_of = lambda g: t.images.get(g, frozenset())
    map_of = lambda g: t.maps.get(g, {})

    c1: list[tuple] = []
    covered = set()
    for e in cat.objects:
        covered |= dom_of(e)
        for x, y in map_of(e).items():
            if y != x:
                c1.append((e, x))
    for x in t.carrier:
        if x not in covered:
            c1.append((x,))

    c2: list[tuple] = []
    for g in sorted(t.domains):
        if g not in cat.dom:
            raise ValueError(f"triple form references unknown morphism {g!r}")
        for x in sorted(dom_of(g) - dom_of(cat.dom[g])):
            c2.append((g, x))

    c3: list[tuple] = []
    for (g, h) in sorted(composable_pairs(cat)):
        k = cat.comp.get((g, h))
        if k is None:
            continue
        lhs = dom_of(h) & dom_of(k)
        rhs = {x for x in dom_of(h) if map_of(h)[x] in dom_of(g)}
        for x in sorted(lhs ^ rhs):
            c3.append((g, h, x))
        for x in sorted(lhs & rhs):
            if map_of(g)[map_of(h)[x]] != map_of(k)[x]:
                c3.append((g, h, x))

    c4: list[tuple] = []
    for g in cat.morphisms:
        for x in sorted(dom_of(g) ^ dom_of(cat.dom[g])):
            c4.append((g, x))

    out = {"C1'": tuple(c1), "C2'": tuple(c2), "C3'": tuple(c3), "C4'": tuple(c4)}
    if groupoid is not None:
        gr3: list[tuple] = []
        for (g, h) in sorted(composable_pairs(cat)):
            k = cat.comp.get((g, h))
            if k is None:
                continue
            hi = groupoid.inverse[h]
            lhs = {map_of(h)[x] for x in dom_of(h) & dom_of(k)}
            rhs = dom_of(g) & dom_of(hi)
            for x in sorted(lhs ^ rhs):
                gr3.append((g, h, x))
            for x in sorted(dom_of(h) & dom_of(k)):
                if map_of(h)[x] in dom_of(g) and map_of(g)[map_of(h)[x]] != map_of(k)[x]:
                    gr3.append((g, h, x))
        bij: list[tuple] = []
        for g in sorted(t.domains):
            gi = groupoid.inverse[g]
            for x in sorted(img_of(g) ^ dom_of(gi)):
                bij.append((g, x))
            for x in sorted(dom_of(g)):
                y = map_of(g)[x]
                if map_of(gi).get(y) != x:
                    bij.append((g, x))
        out["GR1'"] = out["C1'"]
        out["GR2'"] = out["C2'"]
        out["GR3'"] = tuple(gr3)
        out["ALPHA_BIJ"] = tuple(bij)
    return AxiomReport(out)


@dataclass(frozen=True)
class SetFunctor:
    """A set-valued functor: a set per object, a total map per morphism."""

    object_sets: Mapping[str, frozenset]
    maps: Mapping[str, Mapping[Pt, Pt]]


def functor_violations(cat: Category, f: SetFunctor) -> tuple[str, ...]:
    """Law failures of a set-valued functor, as human-readable strings."""
    out: list[str] = []
    for e in cat.objects:
        if e not in f.object_sets:
            out.append(f"no set assigned to object {e}")
    for g in cat.morphisms:
        if g not in f.maps:
            out.append(f"no map assigned to morphism {g}")
            continue
        src = f.object_sets.get(cat.dom[g], frozenset())
        dst = f.object_sets.get(cat.cod[g], frozenset())
        m = f.maps[g]
        if set(m) != set(src):
            out.append(f"map for {g} not total on its source set")
        if not set(m.values()) <= set(dst):
            out.append(f"map for {g} leaves its target set")
    for e in cat.objects:
        for x, y in f.maps.get(e, {}).items():
            if y != x:
                out.append(f"map for identity {e} moves {x}")
    for (g, h) in sorted(composable_pairs(cat)):
        k = cat.comp.get((g, h))
        if k is None or g not in f.maps or h not in f.maps or k not in f.maps:
            continue
        for x, y in f.maps[h].items():
            if y in f.maps[g] and f.maps[k].get(x) != f.maps[g][y]:
                out.append(f"composite law fails for ({g}, {h}) at {x}")
    return tuple(out)


def to_functor(cat: Category, act: PartialAction) -> SetFunctor:
    """View a global action as a set-valued functor.

    Raises ``ValueError`` unless all of C1-C4 pass: the object sets are the
    identity definedness domains, and globality makes each morphism's map
    total on its source set.
    """
    rep = check_category_axioms(cat, act)
    if not rep.all_pass:
        raise ValueError("to_functor requires a global action (C1-C4 all passing)")
    trip = to_triple(act)
    sets = {e: trip.domains.get(e, frozenset()) for e in cat.objects}
    maps = {g: dict(trip.maps.get(g, {})) for g in cat.morphisms}
    return SetFunctor(sets, maps)


def from_functor(cat: Category, f: SetFunctor) -> PartialAction:
    """Rebuild the global action table from a set-valued functor.

    Raises ``ValueError`` when the functor laws fail.
    """
    bad = functor_violations(cat, f)
    if bad:
        raise ValueError("not a functor: " + "; ".join(bad))
    carrier: set = set()
    for e in cat.objects:
        carrier |= f.object_sets[e]
    table: dict[tuple[str, Pt], Pt] = {}
    for g in cat.morphisms:
        for x, y in f.maps[g].items():
            table[(g, x)] = y
    return PartialAction(tuple(sorted(carrier)), table)
