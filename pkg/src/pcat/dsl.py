"""Line-oriented scenario language: category, action, optional topologies.

A scenario file declares one category block and one action block, optionally
followed by topology blocks for the morphism set and the carrier and by
``gfun`` lines naming an equivariant map (used for mediation targets).
``#`` starts a comment, identifiers are ``[A-Za-z0-9_]+`` and case-sensitive,
and both LF and CRLF line endings are accepted.  Identity morphisms are
created automatically and share their object's identifier; composites
involving an identity are implied.  Every parse error carries a stable code
and a 1-based source position.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

from .category import Category, ValidationReport, composable_pairs
from .action import AxiomReport, PartialAction
from .globalization import Globalization
from .topology import FiniteTopology

_TOKEN = re.compile(r"->|[:.=]|[A-Za-z0-9_]+|[^\s]")
_IDENT = re.compile(r"[A-Za-z0-9_]+\Z")


@dataclass(frozen=True)
class Span:
    line: int
    col: int


class ParseError(Exception):
    """A scenario-text error with a machine-readable code and source span."""

    def __init__(self, code: str, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {code}: {message}")
        self.code = code
        self.reason = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Scenario:
    """One parsed scenario; ``spans`` maps every declared entity to its position."""

    category_name: str
    action_name: str
    category: Category
    action: PartialAction
    top_mor: Optional[FiniteTopology]
    top_space: Optional[FiniteTopology]
    gfun: Optional[Mapping[str, str]]
    spans: Mapping[tuple, Span] = field(compare=False, default_factory=dict)


def _tokens(line_text: str):
    body = line_text.split("#", 1)[0].rstrip("\r")
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]


class _Parser:
    def __init__(self, text: str):
        self.lines = text.split("\n")
        self.idx = 0
        self.spans: dict[tuple, Span] = {}

    def err(self, code, msg, line, col):
        raise ParseError(code, msg, line, col)

    def next_line(self):
        while self.idx < len(self.lines):
            n = self.idx + 1
            toks = _tokens(self.lines[self.idx])
            self.idx += 1
            if toks:
                return n, toks
        return None, None

    def want_ident(self, tok, line, what):
        text, col = tok
        if not _IDENT.match(text):
            self.err("E_SYNTAX", f"expected {what}, got {text!r}", line, col)
        if text == "empty":
            self.err("E_SYNTAX", "'empty' is reserved for the empty open set", line, col)
        return text

    def parse(self) -> Scenario:
        line, toks = self.next_line()
        if toks is None:
            self.err("E_SYNTAX", "empty input: expected a category block", 1, 1)
        if toks[0][0] != "category":
            self.err("E_SYNTAX", "expected 'category <name>'", line, toks[0][1])
        cat_name, category = self.category_block(line, toks)

        line, toks = self.next_line()
        if toks is None or toks[0][0] != "action":
            where = (line, toks[0][1]) if toks else (len(self.lines), 1)
            self.err("E_SYNTAX", "expected 'action <name>' after the category block", *where)
        act_name, action = self.action_block(line, toks, category)

        top_mor = top_space = None
        gfun: Optional[dict] = None
        while True:
            line, toks = self.next_line()
            if toks is None:
                break
            head, col = toks[0]
            if head == "topology":
                kind_tok = toks[1] if len(toks) > 1 else (None, col)
                kind = kind_tok[0]
                if kind not in ("mor", "space") or len(toks) != 2:
                    self.err("E_SYNTAX", "expected 'topology mor' or 'topology space'", line, kind_tok[1])
                if kind == "mor":
                    if top_mor is not None:
                        self.err("E_DUP_DEF", "second 'topology mor' block", line, col)
                    top_mor = self.topology_block(line, kind, tuple(category.morphisms))
                else:
                    if top_space is not None:
                        self.err("E_DUP_DEF", "second 'topology space' block", line, col)
                    top_space = self.topology_block(line, kind, action.carrier)
            elif head == "gfun":
                if gfun is None:
                    gfun = {}
                if len(toks) != 4 or toks[2][0] != "=":
                    self.err("E_SYNTAX", "expected 'gfun <point> = <point>'", line, col)
                src = self.want_ident(toks[1], line, "a point identifier")
                dst = self.want_ident(toks[3], line, "a point identifier")
                if dst not in action.carrier:
                    self.err("E_UNKNOWN_ID", f"unknown point {dst!r}", line, toks[3][1])
                if src in gfun:
                    self.err("E_DUP_DEF", f"duplicate gfun entry for {src!r}", line, toks[1][1])
                gfun[src] = dst
                self.spans[("gfun", src)] = Span(line, toks[1][1])
            else:
                self.err("E_SYNTAX", f"unexpected directive {head!r}", line, col)

        return Scenario(cat_name, act_name, category, action, top_mor, top_space, gfun, self.spans)

    def category_block(self, line, toks):
        if len(toks) != 2:
            self.err("E_SYNTAX", "expected 'category <name>'", line, toks[-1][1])
        name = self.want_ident(toks[1], line, "a category name")
        self.spans[("category", name)] = Span(line, toks[1][1])
        objects: list[str] = []
        arrows: dict[str, tuple[str, str]] = {}
        explicit: dict[tuple[str, str], str] = {}
        while True:
            line, toks = self.next_line()
            if toks is None:
                self.err("E_SYNTAX", "category block not closed with 'end'", len(self.lines), 1)
            head, col = toks[0]
            if head == "end":
                break
            if head == "object":
                if len(toks) != 2:
                    self.err("E_SYNTAX", "expected 'object <id>'", line, col)
                obj = self.want_ident(toks[1], line, "an object identifier")
                if obj in objects or obj in arrows:
                    self.err("E_DUP_DEF", f"duplicate identifier {obj!r}", line, toks[1][1])
                objects.append(obj)
                self.spans[("object", obj)] = Span(line, toks[1][1])
            elif head == "mor":
                if len(toks) != 6 or toks[2][0] != ":" or toks[4][0] != "->":
                    self.err("E_SYNTAX", "expected 'mor <id> : <obj> -> <obj>'", line, col)
                mid = self.want_ident(toks[1], line, "a morphism identifier")
                d = self.want_ident(toks[3], line, "an object identifier")
                c = self.want_ident(toks[5], line, "an object identifier")
                if mid in objects or mid in arrows:
                    self.err("E_DUP_DEF", f"duplicate identifier {mid!r}", line, toks[1][1])
                if d not in objects:
                    self.err("E_UNKNOWN_ID", f"unknown object {d!r}", line, toks[3][1])
                if c not in objects:
                    self.err("E_UNKNOWN_ID", f"unknown object {c!r}", line, toks[5][1])
                arrows[mid] = (d, c)
                self.spans[("mor", mid)] = Span(line, toks[1][1])
            elif head == "comp":
                if len(toks) != 6 or toks[2][0] != "." or toks[4][0] != "=":
                    self.err("E_SYNTAX", "expected 'comp <g> . <h> = <k>'", line, col)
                names = []
                for t in (toks[1], toks[3], toks[5]):
                    ident = self.want_ident(t, line, "a morphism identifier")
                    if ident not in objects and ident not in arrows:
                        self.err("E_UNKNOWN_ID", f"unknown morphism {ident!r}", line, t[1])
                    names.append(ident)
                g, h, k = names
                span = lambda m: (m, m) if m in objects else arrows[m]
                if span(g)[0] != span(h)[1]:
                    self.err("E_SYNTAX", f"pair ({g}, {h}) is not composable", line, col)
                if (g, h) in explicit:
                    self.err("E_DUP_DEF", f"duplicate composite for ({g}, {h})", line, col)
                implied = None
                if g in objects and span(g)[0] == span(h)[1]:
                    implied = h
                if h in objects and span(g)[0] == span(h)[1]:
                    implied = g
                if implied is not None and implied != k:
                    self.err("E_DUP_DEF", f"composite for ({g}, {h}) conflicts with the identity law", line, col)
                explicit[(g, h)] = k
                self.spans[("comp", g, h)] = Span(line, col)
            else:
                self.err("E_SYNTAX", f"unexpected directive {head!r} in category block", line, col)

        dom = {o: o for o in objects}
        cod = {o: o for o in objects}
        for m, (d, c) in arrows.items():
            dom[m] = d
            cod[m] = c
        comp: dict[tuple[str, str], str] = {}
        for m in dom:
            comp[(m, dom[m])] = m
            comp[(cod[m], m)] = m
        comp.update(explicit)
        for (g, h) in sorted((g, h) for g in arrows for h in arrows if arrows[g][0] == arrows[h][1]):
            if (g, h) not in explicit:
                self.err(
                    "E_MISSING_COMP",
                    f"composable pair ({g}, {h}) has no comp line",
                    line,
                    1,
                )
        cat = Category(
            tuple(sorted(objects)), tuple(sorted(dom)), dom, cod, comp
        )
        return name, cat

    def action_block(self, line, toks, category: Category):
        if len(toks) != 2:
            self.err("E_SYNTAX", "expected 'action <name>'", line, toks[-1][1])
        name = self.want_ident(toks[1], line, "an action name")
        self.spans[("action", name)] = Span(line, toks[1][1])
        points: list[str] = []
        table: dict[tuple[str, str], str] = {}
        while True:
            line, toks = self.next_line()
            if toks is None:
                self.err("E_SYNTAX", "action block not closed with 'end'", len(self.lines), 1)
            head, col = toks[0]
            if head == "end":
                break
            if head == "point":
                if len(toks) < 2:
                    self.err("E_SYNTAX", "expected 'point <id> [<id> ...]'", line, col)
                for t in toks[1:]:
                    p = self.want_ident(t, line, "a point identifier")
                    if p in points:
                        self.err("E_DUP_DEF", f"duplicate point {p!r}", line, t[1])
                    points.append(p)
                    self.spans[("point", p)] = Span(line, t[1])
            elif head == "act":
                if len(toks) != 5 or toks[3][0] != "=":
                    self.err("E_SYNTAX", "expected 'act <mor> <point> = <point>'", line, col)
                g = self.want_ident(toks[1], line, "a morphism identifier")
                x = self.want_ident(toks[2], line, "a point identifier")
                y = self.want_ident(toks[4], line, "a point identifier")
                if g not in category.morphisms:
                    self.err("E_UNKNOWN_ID", f"unknown morphism {g!r}", line, toks[1][1])
                if x not in points:
                    self.err("E_UNKNOWN_ID", f"unknown point {x!r}", line, toks[2][1])
                if y not in points:
                    self.err("E_UNKNOWN_ID", f"unknown point {y!r}", line, toks[4][1])
                if (g, x) in table:
                    self.err("E_DUP_DEF", f"duplicate action entry for ({g}, {x})", line, col)
                table[(g, x)] = y
                self.spans[("act", g, x)] = Span(line, col)
            else:
                self.err("E_SYNTAX", f"unexpected directive {head!r} in action block", line, col)
        return name, PartialAction(tuple(sorted(points)), table)

    def topology_block(self, header_line, kind, carrier):
        self.spans[("topology", kind)] = Span(header_line, 1)
        known = set(carrier)
        opens: set[frozenset] = {frozenset()}
        declared: set[frozenset] = set()
        while True:
            line, toks = self.next_line()
            if toks is None:
                self.err("E_SYNTAX", "topology block not closed with 'end'", len(self.lines), 1)
            head, col = toks[0]
            if head == "end":
                break
            if head != "open":
                self.err("E_SYNTAX", f"unexpected directive {head!r} in topology block", line, col)
            if len(toks) == 2 and toks[1][0] == "empty":
                u: frozenset = frozenset()
            else:
                if len(toks) < 2:
                    self.err("E_SYNTAX", "expected 'open <id> [<id> ...]' or 'open empty'", line, col)
                members = []
                for t in toks[1:]:
                    p = self.want_ident(t, line, "an identifier")
                    if p not in known:
                        self.err("E_UNKNOWN_ID", f"unknown identifier {p!r}", line, t[1])
                    members.append(p)
                u = frozenset(members)
            if u in declared:
                self.err("E_DUP_DEF", "duplicate open set", line, col)
            declared.add(u)
            opens.add(u)
            self.spans[("open", kind, tuple(sorted(u)))] = Span(line, col)
        if frozenset(carrier) not in opens:
            self.err("E_TOP_NO_TOTAL", "the full carrier is not listed as open", header_line, 1)
        return FiniteTopology(tuple(carrier), frozenset(opens))


def parse(text: str) -> Scenario:
    """Parse scenario text; raises :class:`ParseError` with code and span."""
    return _Parser(text).parse()


def _pt(x) -> str:
    return x if isinstance(x, str) else str(x)


def _rep_text(rep) -> str:
    g, x = rep
    return f"[{g},{_pt(x)}]"


def _el_text(el) -> str:
    g, x = el
    return f"({g},{_pt(x)})"


def _rep_json(rep):
    g, x = rep
    return [g, _pt(x)]


def _scenario_text(s: Scenario) -> str:
    cat, act = s.category, s.action
    named = set(cat.morphisms) | set(act.carrier) | set(s.gfun or ())
    if "empty" in named:
        raise ValueError("identifier 'empty' is reserved and cannot be written as scenario text")
    out = [f"category {s.category_name}"]
    for o in cat.objects:
        out.append(f"  object {o}")
    for m in cat.morphisms:
        if m not in cat.objects:
            out.append(f"  mor {m} : {cat.dom[m]} -> {cat.cod[m]}")
    for (g, h) in sorted(cat.comp):
        if g not in cat.objects and h not in cat.objects:
            out.append(f"  comp {g} . {h} = {cat.comp[(g, h)]}")
    out.append("end")
    out.append(f"action {s.action_name}")
    if act.carrier:
        out.append("  point " + " ".join(act.carrier))
    for (g, x) in sorted(act.table):
        out.append(f"  act {g} {x} = {act.table[(g, x)]}")
    out.append("end")
    for kind, top in (("mor", s.top_mor), ("space", s.top_space)):
        if top is None:
            continue
        out.append(f"topology {kind}")
        for u in sorted(top.opens, key=lambda u: tuple(sorted(u))):
            if u:
                out.append("  open " + " ".join(sorted(u)))
        out.append("end")
    if s.gfun is not None:
        for src in sorted(s.gfun):
            out.append(f"gfun {src} = {s.gfun[src]}")
    return "\n".join(out) + "\n"


def _topology_json(top: Optional[FiniteTopology]):
    if top is None:
        return None
    return {
        "carrier": [_pt(p) for p in top.carrier],
        "opens": sorted([sorted(_pt(p) for p in u) for u in top.opens]),
    }


def _scenario_json(s: Scenario) -> dict:
    cat, act = s.category, s.action
    return {
        "category": {
            "name": s.category_name,
            "objects": list(cat.objects),
            "morphisms": [
                {"id": m, "dom": cat.dom[m], "cod": cat.cod[m]} for m in cat.morphisms
            ],
            "comp": [
                {"after": g, "first": h, "result": k}
                for (g, h), k in sorted(cat.comp.items())
            ],
        },
        "action": {
            "name": s.action_name,
            "points": list(act.carrier),
            "table": [
                {"g": g, "src": _pt(x), "dst": _pt(y)}
                for (g, x), y in sorted(act.table.items())
            ],
        },
        "top_mor": _topology_json(s.top_mor),
        "top_space": _topology_json(s.top_space),
        "gfun": dict(sorted(s.gfun.items())) if s.gfun is not None else None,
    }


def _globalization_json(glob: Globalization) -> dict:
    from .action import check_category_axioms

    verdicts = check_category_axioms(glob.category, glob.as_action()).verdicts()
    return {
        "classes": [
            {"rep": _rep_json(cls[0]), "members": [_rep_json(m) for m in cls]}
            for cls in glob.classes
        ],
        "action": [
            {"g": g, "src": _rep_json(src), "dst": _rep_json(dst)}
            for (g, src), dst in sorted(glob.action.items())
        ],
        "embedding": {_pt(x): _rep_json(r) for x, r in sorted(glob.embed.items())},
        "axioms": verdicts,
    }


def _globalization_text(glob: Globalization) -> str:
    from .action import check_category_axioms

    out = [f"xbar {len(glob.xbar.elements)}", f"classes {len(glob.classes)}"]
    for cls in glob.classes:
        out.append(f"class {_rep_text(cls[0])} = " + " ".join(_el_text(m) for m in cls))
    for (g, src), dst in sorted(glob.action.items()):
        out.append(f"act {g} {_rep_text(src)} = {_rep_text(dst)}")
    for x in sorted(glob.embed):
        out.append(f"embed {_pt(x)} = {_rep_text(glob.embed[x])}")
    rep = check_category_axioms(glob.category, glob.as_action())
    for a, ok in rep.verdicts().items():
        out.append(f"axioms {a} {'pass' if ok else 'fail'}")
    return "\n".join(out) + "\n"


def _axiom_report_text(rep: AxiomReport) -> str:
    out = []
    for a, wit in rep.witnesses.items():
        if wit:
            shown = " ".join("(" + ",".join(_pt(p) for p in w) + ")" for w in wit[:8])
            out.append(f"axioms {a} fail {shown}")
        else:
            out.append(f"axioms {a} pass")
    return "\n".join(out) + "\n"


def _axiom_report_json(rep: AxiomReport) -> dict:
    return {
        "axioms": {
            a: {"pass": not wit, "witnesses": [[_pt(p) for p in w] for w in wit]}
            for a, wit in rep.witnesses.items()
        }
    }


def _validation_text(rep: ValidationReport) -> str:
    if rep.ok:
        return "category valid\n"
    out = ["category invalid"]
    for v in rep.violations:
        out.append(f"violation {v.kind} (" + ",".join(_pt(p) for p in v.subject) + f") {v.detail}")
    return "\n".join(out) + "\n"


def _validation_json(rep: ValidationReport) -> dict:
    return {
        "valid": rep.ok,
        "violations": [
            {"kind": v.kind, "subject": [_pt(p) for p in v.subject], "detail": v.detail}
            for v in rep.violations
        ],
    }


def serialize(obj, fmt: str = "text") -> str:
    """Render a scenario, report, or globalization canonically.

    Scenario text round-trips through :func:`parse`.  All collections are
    emitted in sorted order so identical values always serialize to identical
    bytes.
    """
    if fmt not in ("text", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(obj, Scenario):
        if fmt == "text":
            return _scenario_text(obj)
        return json.dumps(_scenario_json(obj), indent=2, sort_keys=True) + "\n"
    if isinstance(obj, Globalization):
        if fmt == "text":
            return _globalization_text(obj)
        return json.dumps(_globalization_json(obj), indent=2, sort_keys=True) + "\n"
    if isinstance(obj, AxiomReport):
        if fmt == "text":
            return _axiom_report_text(obj)
        return json.dumps(_axiom_report_json(obj), indent=2, sort_keys=True) + "\n"
    if isinstance(obj, ValidationReport):
        if fmt == "text":
            return _validation_text(obj)
        return json.dumps(_validation_json(obj), indent=2, sort_keys=True) + "\n"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def globalization_to_scenario(
    glob: Globalization, category_name: str, action_name: str
) -> Scenario:
    """Re-express a globalization as a scenario over named points.

    Class representatives (g, x) become point identifiers ``g__x`` and the
    embedding becomes the scenario's ``gfun`` block, so the output can be fed
    back in as a mediation target.
    """
    name = {cls[0]: f"{cls[0][0]}__{_pt(cls[0][1])}" for cls in glob.classes}
    table = {(g, name[src]): name[dst] for (g, src), dst in glob.action.items()}
    act = PartialAction(tuple(sorted(name[c[0]] for c in glob.classes)), table)
    gfun = {_pt(x): name[r] for x, r in glob.embed.items()}
    return Scenario(category_name, action_name, glob.category, act, None, None, gfun)
