"""Finite categories with explicit composition tables, plus groupoid detection.

An object is identified with its identity morphism, so ``objects`` is a subset
of ``morphisms`` and every table is keyed by plain identifiers.  ``comp[(g, h)]``
reads "g after h" and must be present exactly when ``dom[g] == cod[h]``.
Values are immutable after construction; all operations here are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional


@dataclass(frozen=True)
class Category:
    """A finite category given by identifier sets and explicit structure maps.

    Construction performs no law checking; see :func:`validate_category`.
    """

    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    dom: Mapping[str, str]
    cod: Mapping[str, str]
    comp: Mapping[tuple[str, str], str]

    @staticmethod
    def make(
        objects: Iterable[str],
        arrows: Mapping[str, tuple[str, str]],
        comp: Mapping[tuple[str, str], str],
    ) -> "Category":
        """Build a category from non-identity arrow data.

        ``arrows`` maps each non-identity morphism to ``(dom, cod)``.  Identity
        morphisms (named by their object) and all composites involving an
        identity are filled in automatically; ``comp`` only needs the pairs of
        non-identity morphisms.
        """
        objs = tuple(sorted(set(objects)))
        dom = {o: o for o in objs}
        cod = {o: o for o in objs}
        for name, (d, c) in arrows.items():
            if name in dom:
                raise ValueError(f"duplicate morphism identifier {name!r}")
            dom[name] = d
            cod[name] = c
        mors = tuple(sorted(dom))
        table: dict[tuple[str, str], str] = {}
        for g in mors:
            table[(g, dom[g])] = g
            table[(cod[g], g)] = g
        for (g, h), k in comp.items():
            prior = table.get((g, h))
            if prior is not None and prior != k:
                raise ValueError(f"conflicting composite for ({g!r}, {h!r})")
            table[(g, h)] = k
        return Category(objs, mors, dom, cod, table)

    def is_object(self, m: str) -> bool:
        return m in self.objects

    def identity(self, obj: str) -> str:
        """The identity morphism of an object is the object itself."""
        assert obj in self.objects
        return obj


@dataclass(frozen=True)
class Violation:
    """One law failure found by :func:`validate_category`."""

    kind: str
    subject: tuple
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> tuple[str, ...]:
        return tuple(sorted({v.kind for v in self.violations}))


def composable_pairs(cat: Category) -> set[tuple[str, str]]:
    """All pairs (g, h) with dom(g) == cod(h), i.e. where "g after h" exists."""
    return {
        (g, h)
        for g in cat.morphisms
        for h in cat.morphisms
        if cat.dom.get(g) is not None and cat.dom.get(g) == cat.cod.get(h)
    }


def compose(cat: Category, g: str, h: str) -> Optional[str]:
    """The composite "g after h", or None when the pair is not composable."""
    return cat.comp.get((g, h))


def validate_category(cat: Category) -> ValidationReport:
    """Check every category law on the explicit tables.

    Structural problems (missing dom/cod entries, unknown identifiers) are
    reported alongside law failures; dependent checks are skipped when the
    data they need is absent.
    """
    out: list[Violation] = []
    mors = set(cat.morphisms)
    objs = set(cat.objects)

    for o in sorted(objs - mors):
        out.append(Violation("object_not_morphism", (o,), f"object {o} missing from morphisms"))
    for g in cat.morphisms:
        for name, tab in (("dom", cat.dom), ("cod", cat.cod)):
            v = tab.get(g)
            if v is None:
                out.append(Violation(f"{name}_missing", (g,), f"{name}({g}) undefined"))
            elif v not in objs:
                out.append(Violation(f"{name}_not_object", (g, v), f"{name}({g}) = {v} is not an object"))
    for o in sorted(objs & mors):
        if cat.dom.get(o) != o or cat.cod.get(o) != o:
            out.append(Violation("bad_identity_span", (o,), f"identity {o} must have dom = cod = {o}"))

    pairs = composable_pairs(cat)
    for (g, h), k in sorted(cat.comp.items()):
        if g not in mors or h not in mors:
            out.append(Violation("comp_unknown_key", (g, h), f"composite keyed by unknown morphism"))
            continue
        if (g, h) not in pairs:
            out.append(Violation("comp_not_composable", (g, h), f"dom({g}) != cod({h})"))
            continue
        if k not in mors:
            out.append(Violation("comp_unknown_value", (g, h, k), f"{g} after {h} = {k} unknown"))
            continue
        if cat.dom.get(k) != cat.dom.get(h) or cat.cod.get(k) != cat.cod.get(g):
            out.append(Violation("comp_bad_span", (g, h, k), f"{g} after {h} = {k} has wrong dom/cod"))
    for (g, h) in sorted(pairs):
        if (g, h) not in cat.comp:
            out.append(Violation("missing_comp", (g, h), f"no composite declared for {g} after {h}"))

    for g in cat.morphisms:
        d, c = cat.dom.get(g), cat.cod.get(g)
        if d in objs and (g, d) in cat.comp and cat.comp[(g, d)] != g:
            out.append(Violation("identity_law", (g, d), f"{g} after {d} != {g}"))
        if c in objs and (c, g) in cat.comp and cat.comp[(c, g)] != g:
            out.append(Violation("identity_law", (c, g), f"{c} after {g} != {g}"))

    for (g, h) in sorted(pairs):
        gh = cat.comp.get((g, h))
        if gh is None:
            continue
        for k in cat.morphisms:
            if cat.cod.get(k) != cat.dom.get(h):
                continue
            hk = cat.comp.get((h, k))
            if hk is None:
                continue
            left = cat.comp.get((gh, k))
            right = cat.comp.get((g, hk))
            if left is None or right is None or left != right:
                out.append(Violation("associativity", (g, h, k), f"({g}{h}){k} != {g}({h}{k})"))
    return ValidationReport(tuple(out))


@dataclass(frozen=True)
class GroupoidWitness:
    """Inverse assignment witnessing that a category is a groupoid."""

    inverse: Mapping[str, str]


def is_groupoid(cat: Category) -> Optional[GroupoidWitness]:
    """Return an inverse witness if every morphism has a two-sided inverse.

    Expects a category that passes :func:`validate_category`.
    """
    inv: dict[str, str] = {}
    for g in cat.morphisms:
        found = None
        for h in cat.morphisms:
            if cat.comp.get((g, h)) == cat.cod.get(g) and cat.comp.get((h, g)) == cat.dom.get(g):
                found = h
                break
        if found is None:
            return None
        inv[g] = found
    assert all(inv[inv[g]] == g for g in cat.morphisms)
    return GroupoidWitness(inv)
