"""Universal globalization of a partial category action.

The construction: pair every morphism g with every point x whose dom(g)-step
is defined, relate pairs by a one-step relation generated from the action,
take the equivalence closure, and act on the classes by composing on the
left.  The embedded copy of the original carrier sits inside the quotient,
and every global action receiving the original action factors through it
uniquely.

Two closure routes are kept deliberately separate: a union-find (primary) and
a naive relational fixpoint (oracle).  They must always agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Mapping, Optional

from .category import Category, composable_pairs, is_groupoid
from .action import AxiomReport, PartialAction, check_category_axioms

Pt = Any
El = tuple[str, Pt]


class AxiomError(ValueError):
    """Raised when a construction needs axioms that the input fails."""

    def __init__(self, message: str, report: AxiomReport):
        super().__init__(message)
        self.report = report


class MediationError(ValueError):
    """Raised when a mediating map is requested for unusable data."""


@dataclass(frozen=True)
class XBar:
    """The expanded carrier: all (morphism, point) pairs with a defined base step."""

    elements: tuple[El, ...]


@dataclass(frozen=True)
class SimPair:
    """One generating relation instance between expanded-carrier elements.

    Clause "i" rewrites (g'h, x) to (g', h.x) and records the witnessing h;
    clause "ii" links two identity-tagged pairs over the same point.
    """

    src: El
    dst: El
    clause: str
    via: Optional[str]


@dataclass(frozen=True)
class SimRelation:
    pairs: tuple[SimPair, ...]


def _require_c123(cat: Category, act: PartialAction) -> None:
    rep = check_category_axioms(cat, act)
    if not rep.passed("C1", "C2", "C3"):
        raise AxiomError("globalization requires C1-C3 to hold", rep)


def build_xbar(cat: Category, act: PartialAction) -> XBar:
    """Enumerate the expanded carrier; requires C1-C3."""
    _require_c123(cat, act)
    els = [
        (g, x)
        for g in cat.morphisms
        for x in act.carrier
        if (cat.dom[g], x) in act.table
    ]
    return XBar(tuple(sorted(els)))


def sim_pairs(cat: Category, act: PartialAction, xbar: XBar) -> SimRelation:
    """All non-reflexive one-step relations between expanded-carrier elements."""
    t = act.table
    out: set[SimPair] = set()
    els = set(xbar.elements)
    by_result: dict[str, list[tuple[str, str]]] = {}
    for (gp, h), g in cat.comp.items():
        by_result.setdefault(g, []).append((gp, h))
    for (g, x) in xbar.elements:
        for (gp, h) in by_result.get(g, ()):
            if (h, x) in t:
                dst = (gp, t[(h, x)])
                assert dst in els, "one-step relation left the expanded carrier"
                if dst != (g, x):
                    out.add(SimPair((g, x), dst, "i", h))
    for x in act.carrier:
        acting = [e for e in cat.objects if (e, x) in t]
        for e, f in itertools.permutations(acting, 2):
            out.add(SimPair((e, x), (f, x), "ii", None))
    return SimRelation(tuple(sorted(out, key=lambda p: (p.src, p.dst, p.clause, p.via or ""))))


class _UnionFind:
    """Plain union-find with path compression over hashable items."""

    def __init__(self, items):
        self.parent = {i: i for i in items}
        self.size = {i: 1 for i in items}

    def find(self, a):
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


Partition = tuple[tuple[El, ...], ...]


def equiv_closure(xbar: XBar, sim: SimRelation) -> Partition:
    """Partition the expanded carrier by the closure of the one-step relation.

    Classes are sorted internally and listed by their least member.
    """
    uf = _UnionFind(xbar.elements)
    for p in sim.pairs:
        uf.union(p.src, p.dst)
    groups: dict[El, list[El]] = {}
    for el in xbar.elements:
        groups.setdefault(uf.find(el), []).append(el)
    return tuple(sorted(tuple(sorted(g)) for g in groups.values()))


def naive_closure(xbar: XBar, sim: SimRelation) -> Partition:
    """Oracle closure: saturate the symmetrized relation by joining chains.

    Kept free of union-find machinery on purpose so the two routes can be
    compared against each other.
    """
    succ: dict[El, set[El]] = {el: {el} for el in xbar.elements}
    for p in sim.pairs:
        succ[p.src].add(p.dst)
        succ[p.dst].add(p.src)
    changed = True
    while changed:
        changed = False
        for a in xbar.elements:
            extra = set()
            for b in succ[a]:
                extra |= succ[b]
            if not extra <= succ[a]:
                succ[a] |= extra
                changed = True
    seen: set[frozenset] = set()
    classes = []
    for el in xbar.elements:
        key = frozenset(succ[el])
        if key not in seen:
            seen.add(key)
            classes.append(tuple(sorted(key)))
    return tuple(sorted(classes))


@dataclass(frozen=True)
class Globalization:
    """The quotient action together with everything needed to audit it.

    ``class_of`` sends each expanded-carrier element to its class
    representative (the least member); ``action`` is keyed by (morphism,
    representative); ``embed`` realizes the original carrier inside the
    quotient; ``witness_trace`` gives, for each element, a chain of one-step
    relations from its representative.
    """

    category: Category
    source: PartialAction
    xbar: XBar
    sim: SimRelation
    classes: Partition
    class_of: Mapping[El, El]
    action: Mapping[tuple[str, El], El]
    embed: Mapping[Pt, El]
    witness_trace: Mapping[El, tuple]

    def as_action(self) -> PartialAction:
        """The quotient action as a plain partial action on representatives."""
        return PartialAction(tuple(c[0] for c in self.classes), dict(self.action))

    def members(self, rep: El) -> tuple[El, ...]:
        for cls in self.classes:
            if cls[0] == rep:
                return cls
        raise KeyError(rep)


def _trace_from_reps(classes: Partition, sim: SimRelation) -> dict[El, tuple]:
    adj: dict[El, list[tuple]] = {}
    for p in sim.pairs:
        adj.setdefault(p.src, []).append((p.dst, (p.src, p.dst, p.clause, p.via, "fwd")))
        adj.setdefault(p.dst, []).append((p.src, (p.src, p.dst, p.clause, p.via, "rev")))
    trace: dict[El, tuple] = {}
    for cls in classes:
        rep = cls[0]
        trace[rep] = ()
        frontier = [rep]
        while frontier:
            nxt = []
            for a in frontier:
                for b, step in sorted(adj.get(a, ()), key=lambda s: s[0]):
                    if b in cls and b not in trace:
                        trace[b] = trace[a] + (step,)
                        nxt.append(b)
            frontier = nxt
        assert all(m in trace for m in cls)
    return trace


def build_globalization(cat: Category, act: PartialAction) -> Globalization:
    """Run the whole construction and audit its defining invariants.

    Requires C1-C3.  The induced action on classes is computed by scanning
    class members in canonical order for one whose tag composes with the
    acting morphism; every composable member is checked to land in the same
    class before the value is accepted.
    """
    xbar = build_xbar(cat, act)
    sim = sim_pairs(cat, act, xbar)
    classes = equiv_closure(xbar, sim)
    class_of: dict[El, El] = {}
    for cls in classes:
        for el in cls:
            class_of[el] = cls[0]

    action: dict[tuple[str, El], El] = {}
    for g in cat.morphisms:
        for cls in classes:
            results = {
                class_of[(cat.comp[(g, h)], x)]
                for (h, x) in cls
                if (g, h) in cat.comp
            }
            if results:
                assert len(results) == 1, f"action of {g} on {cls[0]} is not class-invariant"
                action[(g, cls[0])] = results.pop()

    embed: dict[Pt, El] = {}
    for x in act.carrier:
        reps = {class_of[(e, x)] for e in cat.objects if (e, x) in act.table}
        assert reps, "C1 guarantees an identity step for every point"
        assert len(reps) == 1, f"identity tags of {x!r} fall in distinct classes"
        embed[x] = reps.pop()

    glob = Globalization(
        cat,
        act,
        xbar,
        sim,
        classes,
        class_of,
        action,
        embed,
        _trace_from_reps(classes, sim),
    )

    induced = check_category_axioms(cat, glob.as_action())
    assert induced.all_pass, f"induced action is not global: {induced.witnesses}"
    assert len(set(embed.values())) == len(embed), "embedding is not injective"
    for cls in classes:
        g, x = cls[0]
        assert action[(g, embed[x])] == cls[0], "class unreachable from the embedded carrier"
    return glob


@dataclass(frozen=True)
class GFunctionReport:
    """Equivariance failures of a map between actions over one category."""

    witnesses: tuple[tuple, ...]

    @property
    def ok(self) -> bool:
        return not self.witnesses


def check_g_function(f: Mapping, source: PartialAction, target: PartialAction) -> GFunctionReport:
    """Check equivariance: every defined source step maps to a defined target step.

    Witnesses are (morphism, point) pairs where the image step is undefined
    or lands on the wrong point.  Raises ``ValueError`` if ``f`` is not a
    total map from the source carrier into the target carrier.
    """
    if set(f) != set(source.carrier):
        raise ValueError("map is not total on the source carrier")
    if not set(f.values()) <= set(target.carrier):
        raise ValueError("map leaves the target carrier")
    bad = []
    for (g, x), y in sorted(source.table.items()):
        if target.table.get((g, f[x])) != f[y]:
            bad.append((g, x))
    return GFunctionReport(tuple(bad))


@dataclass(frozen=True)
class InducedReport:
    witnesses: tuple[tuple, ...]

    @property
    def ok(self) -> bool:
        return not self.witnesses


def check_induced(act: PartialAction, glob: Globalization) -> InducedReport:
    """Check that the quotient action restricted along the embedding is the original.

    A witness (g, y, z) marks a triple where definedness or the value
    disagrees between g.y in the original and g.embed(y) = embed(z) in the
    quotient.
    """
    bad = []
    for g in glob.category.morphisms:
        for y in act.carrier:
            for z in act.carrier:
                lhs = glob.action.get((g, glob.embed[y])) == glob.embed[z]
                rhs = act.table.get((g, y)) == z
                if lhs != rhs:
                    bad.append((g, y, z))
    return InducedReport(tuple(bad))


def induces_source(
    cat: Category, source: PartialAction, target: PartialAction, j: Mapping
) -> InducedReport:
    """Check that the target action restricted to the image of ``j`` is the source.

    Beyond equivariance, definedness must be reflected: whenever a target
    step starting on the image lands back on the image, the matching source
    step must already be defined with the matching value.  Receivers with
    this property are exactly the ones the injectivity statements about
    mediating maps quantify over; an equivariant injection alone does not
    suffice, since the target may connect image points the source keeps
    apart.  Witnesses are (morphism, point) pairs.
    """
    image = {j[x] for x in source.carrier}
    bad = []
    for g in cat.morphisms:
        for x in source.carrier:
            val = target.table.get((g, j[x]))
            if (g, x) in source.table:
                if val != j[source.table[(g, x)]]:
                    bad.append((g, x))
            elif val is not None and val in image:
                bad.append((g, x))
    return InducedReport(tuple(sorted(bad)))


def mediating(glob: Globalization, target: PartialAction, j: Mapping) -> dict[El, Pt]:
    """The unique equivariant map out of the quotient extending ``j``.

    ``target`` must be a global action over the same category and ``j`` an
    equivariant map from the original action into it.  The value on a class
    is the target step of its representative's tag applied to the embedded
    point; the audit asserts equivariance and compatibility with the
    embedding.
    """
    t_rep = check_category_axioms(glob.category, target)
    if not t_rep.all_pass:
        raise MediationError("mediating requires a global target action")
    j_rep = check_g_function(j, glob.source, target)
    if not j_rep.ok:
        raise MediationError(f"j is not equivariant; witnesses {j_rep.witnesses}")
    k: dict[El, Pt] = {}
    for cls in glob.classes:
        g, x = cls[0]
        val = target.table.get((g, j[x]))
        assert val is not None, "globality of the target must define this step"
        k[cls[0]] = val
    y_act = glob.as_action()
    assert check_g_function(k, y_act, target).ok
    assert all(k[glob.embed[x]] == j[x] for x in glob.source.carrier)
    return k


def mediating_candidates(glob: Globalization, target: PartialAction, j: Mapping) -> list[dict]:
    """Every equivariant map out of the quotient that extends ``j``.

    Exhaustive: values on embedded classes are pinned by ``j``; all value
    assignments on the remaining classes are tried and filtered by the
    equivariance check.  Intended for desk-scale uniqueness audits.
    """
    y_act = glob.as_action()
    pinned = {glob.embed[x]: j[x] for x in glob.source.carrier}
    free = [r for r in y_act.carrier if r not in pinned]
    found = []
    for combo in itertools.product(target.carrier, repeat=len(free)):
        cand = dict(pinned)
        cand.update(zip(free, combo))
        if check_g_function(cand, y_act, target).ok:
            found.append(cand)
    return found


def _fresh_points(existing, count: int) -> list[str]:
    out = []
    i = 0
    taken = {str(x) for x in existing}
    while len(out) < count:
        name = f"w{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


def _maps_for(cat, pairs, order, idx, assign, seeds, sets, groupoid):
    """Backtracking enumeration of per-morphism maps satisfying the functor laws.

    ``assign`` holds only fully-fixed morphisms (identities at the start);
    ``seeds`` holds the table entries each remaining morphism must extend.
    Values forced by composites with fixed morphisms are propagated before
    free slots are enumerated; a full functor-law check runs at the leaves.
    """
    if idx == len(order):
        for (a, b) in pairs:
            c = cat.comp[(a, b)]
            for z in sets[cat.dom[b]]:
                if assign[c][z] != assign[a][assign[b][z]]:
                    return
        yield {m: dict(assign[m]) for m in assign}
        return
    m = order[idx]
    src, dst = sets[cat.dom[m]], sets[cat.cod[m]]
    forced: dict = dict(seeds.get(m, {}))
    ok = True
    for (a, b), c in cat.comp.items():
        if a == m and m not in (b, c) and b in assign and c in assign:
            for z in sets[cat.dom[b]]:
                y, v = assign[b][z], assign[c][z]
                if forced.get(y, v) != v:
                    ok = False
                forced[y] = v
        if b == m and m not in (a, c) and a in assign and c in assign:
            amap = assign[a]
            for z in src:
                want = assign[c][z]
                pre = [u for u in sets[cat.dom[a]] if amap[u] == want]
                if not pre:
                    ok = False
                elif len(pre) == 1:
                    if forced.get(z, pre[0]) != pre[0]:
                        ok = False
                    forced[z] = pre[0]
    if not ok or not set(forced.values()) <= set(dst):
        return
    if groupoid and len(set(forced.values())) != len(forced):
        return
    free = sorted(z for z in src if z not in forced)
    for combo in itertools.product(sorted(dst), repeat=len(free)):
        full = dict(forced)
        full.update(zip(free, combo))
        if groupoid and len(set(full.values())) != len(full):
            continue
        assign[m] = full
        yield from _maps_for(cat, pairs, order, idx + 1, assign, seeds, sets, groupoid)
        del assign[m]


def enumerate_globalizations(
    cat: Category, act: PartialAction, max_size: int
) -> list[tuple[PartialAction, dict]]:
    """All global actions extending ``act`` on carriers up to ``max_size``.

    Results are pairs (target, j) with j an injective equivariant map; after
    relabeling, j can always be taken to be the inclusion of the original
    carrier, so targets live on the original points plus fresh ones, and
    duplicates differing only by a renaming of the fresh points are removed.
    For groupoid categories, per-morphism maps are pruned to bijections since
    global groupoid actions act bijectively.
    """
    if not 1 <= max_size <= 8:
        raise ValueError("max_size must be between 1 and 8")
    _require_c123(cat, act)
    X = list(act.carrier)
    trip_dom: dict[str, set] = {}
    for (g, x) in act.table:
        trip_dom.setdefault(g, set()).add(x)
    groupoid = is_groupoid(cat) is not None

    seen: dict[tuple, tuple[PartialAction, dict]] = {}
    for n in range(len(X), max_size + 1):
        aux = _fresh_points(X, n - len(X))
        Z = sorted(X + aux, key=str)
        obj_opts = []
        for e in cat.objects:
            base = frozenset(trip_dom.get(e, set()))
            extras = [z for z in Z if z not in base]
            opts = []
            for r in range(len(extras) + 1):
                for add in itertools.combinations(extras, r):
                    opts.append(base | set(add))
            obj_opts.append(opts)
        pairs = sorted(composable_pairs(cat))
        non_id = sorted(m for m in cat.morphisms if m not in cat.objects)
        for choice in itertools.product(*obj_opts):
            sets = dict(zip(cat.objects, choice))
            if set().union(*sets.values()) != set(Z):
                continue
            seeds: dict[str, dict] = {}
            seeds_ok = True
            for m in non_id:
                sm = {x: act.table[(m, x)] for x in trip_dom.get(m, set())}
                if not set(sm) <= sets[cat.dom[m]] or not set(sm.values()) <= sets[cat.cod[m]]:
                    seeds_ok = False
                    break
                seeds[m] = sm
            if not seeds_ok:
                continue
            assign: dict[str, dict] = {e: {z: z for z in sets[e]} for e in cat.objects}
            for maps in _maps_for(cat, pairs, non_id, 0, assign, seeds, sets, groupoid):
                table: dict[tuple[str, Pt], Pt] = {}
                for g in cat.morphisms:
                    for z, v in maps[g].items():
                        table[(g, z)] = v
                target = PartialAction(tuple(sorted(Z, key=str)), table)
                key = _canonical_key(target, X, aux)
                if key not in seen:
                    seen[key] = (target, {x: x for x in X})
    return [seen[k] for k in sorted(seen)]


def _canonical_key(target: PartialAction, X, aux) -> tuple:
    best = None
    for perm in itertools.permutations(aux):
        ren = {a: b for a, b in zip(aux, perm)}
        ren.update({x: x for x in X})
        tab = tuple(sorted((g, str(ren[x]), str(ren[y])) for (g, x), y in target.table.items()))
        if best is None or tab < best:
            best = tab
    return (len(target.carrier), best)
