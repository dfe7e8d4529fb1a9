"""Command-line driver for validating, globalizing, and topologizing scenarios.

Exit codes: 0 for success, 1 for a semantic failure (an axiom or property
violation in an otherwise well-formed scenario), 2 for unreadable or
unparsable input.  Identical inputs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .category import is_groupoid, validate_category
from .action import check_category_axioms, check_groupoid_axioms
from .dsl import ParseError, Scenario, globalization_to_scenario, parse, serialize
from .globalization import (
    AxiomError,
    MediationError,
    build_globalization,
    mediating,
)
from .oracle import run_oracle, suite_scenario
from .topology import (
    FiniteTopology,
    TopScenario,
    check_topological_category,
    topologize_globalization,
    validate_topology,
)

DEFAULT_SEED = 1729


class _InputError(Exception):
    """Input file unreadable or unparsable; message already on stderr."""


def _read_scenario(path: str) -> Scenario:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"{path}: {exc.strerror or exc}", file=sys.stderr)
        raise _InputError from exc
    try:
        return parse(text)
    except ParseError as exc:
        print(f"{path}:{exc.line}:{exc.col}: {exc.code}: {exc.reason}", file=sys.stderr)
        raise _InputError from exc


def _emit(obj, as_json: bool) -> None:
    sys.stdout.write(serialize(obj, "json" if as_json else "text"))


def _jnorm(value):
    """Make witness payloads JSON-friendly: tuples/sets become sorted lists."""
    if isinstance(value, (tuple, list)):
        return [_jnorm(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((_jnorm(v) for v in value), key=str)
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


def _wit_text(witnesses, limit: int = 8) -> str:
    parts = []
    for w in witnesses[:limit]:
        if isinstance(w, tuple):
            parts.append("(" + ",".join(str(p) for p in w) + ")")
        else:
            parts.append(str(w))
    return " ".join(parts)


def _check_line(name: str, witnesses) -> str:
    if witnesses:
        return f"{name} fail {_wit_text(tuple(witnesses))}"
    return f"{name} pass"


def cmd_validate(args) -> int:
    scn = _read_scenario(args.file)
    val = validate_category(scn.category)
    if not val.ok:
        _emit(val, args.json)
        return 1
    axioms = check_category_axioms(scn.category, scn.action)
    witness = is_groupoid(scn.category)
    gr = check_groupoid_axioms(scn.category, witness, scn.action) if witness else None
    if args.json:
        payload = {
            "category": json.loads(serialize(val, "json")),
            "action": json.loads(serialize(axioms, "json"))["axioms"],
        }
        if gr is not None:
            payload["groupoid_action"] = json.loads(serialize(gr, "json"))["axioms"]
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(serialize(val, "text"))
        sys.stdout.write(serialize(axioms, "text"))
        if gr is not None:
            sys.stdout.write(serialize(gr, "text"))
    return 0 if axioms.passed("C1", "C2", "C3") else 1


def cmd_globalize(args) -> int:
    scn = _read_scenario(args.file)
    val = validate_category(scn.category)
    if not val.ok:
        sys.stderr.write(serialize(val, "text"))
        return 1
    try:
        glob = build_globalization(scn.category, scn.action)
    except AxiomError as exc:
        sys.stderr.write(serialize(exc.report, "text"))
        return 1
    _emit(glob, args.json)
    if args.target_out:
        out = globalization_to_scenario(
            glob, scn.category_name, f"{scn.action_name}_global"
        )
        with open(args.target_out, "w", encoding="utf-8") as fh:
            fh.write(serialize(out, "text"))
    return 0


def cmd_mediate(args) -> int:
    scn = _read_scenario(args.file)
    tgt = _read_scenario(args.target)
    if tgt.category != scn.category:
        print("target category differs from source category", file=sys.stderr)
        return 1
    if tgt.gfun is None:
        print("target file must supply gfun lines naming j", file=sys.stderr)
        return 1
    try:
        glob = build_globalization(scn.category, scn.action)
    except AxiomError as exc:
        sys.stderr.write(serialize(exc.report, "text"))
        return 1
    try:
        k = mediating(glob, tgt.action, tgt.gfun)
    except (MediationError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 1
    injective = len(set(k.values())) == len(k)
    if args.json:
        payload = {
            "k": [
                {"class": [rep[0], str(rep[1])], "value": str(k[rep])}
                for rep in sorted(k)
            ],
            "compose_ok": True,
            "injective": injective,
        }
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        lines = [f"k [{rep[0]},{rep[1]}] = {k[rep]}" for rep in sorted(k)]
        lines.append("compose ok")
        lines.append(f"injective {'true' if injective else 'false'}")
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_topo(args) -> int:
    scn = _read_scenario(args.file)
    val = validate_category(scn.category)
    if not val.ok:
        sys.stderr.write(serialize(val, "text"))
        return 1

    top_mor = scn.top_mor
    if top_mor is None:
        print("note: no morphism topology given; defaulting to discrete", file=sys.stderr)
        top_mor = FiniteTopology.discrete(scn.category.morphisms)
    top_space = scn.top_space
    if top_space is None:
        print("note: no carrier topology given; defaulting to discrete", file=sys.stderr)
        top_space = FiniteTopology.discrete(scn.action.carrier)

    checks: list[tuple[str, tuple]] = []
    ok_required = True
    for label, top in (("topology mor", top_mor), ("topology space", top_space)):
        rep = validate_topology(top)
        checks.append((label, rep.violations))
        ok_required = ok_required and rep.ok
    if not ok_required:
        for label, wit in checks:
            print(_check_line(label, wit))
        return 1

    axioms = check_category_axioms(scn.category, scn.action)
    if not axioms.passed("C1", "C2", "C3"):
        sys.stdout.write(serialize(axioms, "text"))
        return 1

    tscn = TopScenario(scn.category, scn.action, top_mor, top_space)
    mcont = check_topological_category(scn.category, top_mor)
    glob = build_globalization(scn.category, scn.action)

    target = None
    if args.target:
        tgt = _read_scenario(args.target)
        if tgt.category != scn.category:
            print("target category differs from source category", file=sys.stderr)
            return 1
        if tgt.gfun is None:
            print("target file must supply gfun lines naming j", file=sys.stderr)
            return 1
        t_top = tgt.top_space
        if t_top is None:
            print("note: no target carrier topology given; defaulting to discrete", file=sys.stderr)
            t_top = FiniteTopology.discrete(tgt.action.carrier)
        target = (tgt.action, t_top, tgt.gfun)

    try:
        tg = topologize_globalization(tscn, glob, target)
    except (MediationError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 1

    checks.append(("continuity comp", mcont.witnesses))
    checks.append(("continuity CA1", tg.ca.ca1_witnesses))
    checks.append(("continuity CA2", tg.ca.ca2_witnesses))
    checks.append(("star-open", tg.star.witnesses))
    checks.append(("graph-open", tg.graph.witnesses))
    checks.append(("embedding continuous", tg.embed_continuous.witnesses))
    checks.append(("action continuous", tg.action_continuous.witnesses))
    checks.append(("embedding open", tg.embed_open.witnesses))
    if tg.k_continuous is not None:
        checks.append(("mediating continuous", tg.k_continuous.witnesses))

    required = [
        not mcont.witnesses,
        not tg.ca.ca1_witnesses,
        not tg.ca.ca2_witnesses,
        not tg.embed_continuous.witnesses,
        not tg.action_continuous.witnesses,
    ]
    if tg.star.ok and tg.graph.ok:
        required.append(tg.embed_open.ok)
    if tg.k_continuous is not None:
        required.append(tg.k_continuous.ok)

    if args.json:
        payload = {
            "checks": {
                name.replace(" ", "_"): {
                    "pass": not wit,
                    "witnesses": _jnorm(tuple(wit)),
                }
                for name, wit in checks
            },
            "quotient_opens": len(tg.top_y.opens),
            "ok": all(required),
        }
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        for name, wit in checks:
            print(_check_line(name, wit))
        print(f"quotient opens {len(tg.top_y.opens)}")
    return 0 if all(required) else 1


def cmd_oracle(args) -> int:
    if not 1 <= args.max_size <= 8:
        print("--max-size must be between 1 and 8", file=sys.stderr)
        return 2
    suites = run_oracle(args.seed, args.max_size)
    if args.file:
        scn = _read_scenario(args.file)
        try:
            suites.append(suite_scenario(scn.category, scn.action, args.max_size))
        except AxiomError as exc:
            sys.stderr.write(serialize(exc.report, "text"))
            return 1
    if args.json:
        payload = {
            "suites": [
                {
                    "name": s.name,
                    "cases": s.cases,
                    "ok": s.ok,
                    "failures": list(s.failures),
                }
                for s in suites
            ],
            "ok": all(s.ok for s in suites),
        }
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        for s in suites:
            status = "ok" if s.ok else f"fail {s.failures[0]}"
            print(f"suite {s.name} cases {s.cases} {status}")
    return 0 if all(s.ok for s in suites) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcat",
        description="Validate, globalize, mediate, and topologize partial category actions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check category structure and action axioms")
    p.add_argument("file", help="scenario file")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("globalize", help="build the universal globalization")
    p.add_argument("file", help="scenario file")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument(
        "--target-out",
        metavar="PATH",
        help="also write the globalization as a scenario file usable as a mediation target",
    )
    p.set_defaults(func=cmd_globalize)

    p = sub.add_parser("mediate", help="compute the mediating map into a target action")
    p.add_argument("file", help="scenario file")
    p.add_argument("--target", required=True, metavar="FILE", help="global target scenario with gfun lines")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=cmd_mediate)

    p = sub.add_parser("topo", help="run the topological checks and build the quotient topology")
    p.add_argument("file", help="scenario file")
    p.add_argument("--target", metavar="FILE", help="topologized global target scenario with gfun lines")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=cmd_topo)

    p = sub.add_parser("oracle", help="run the randomized cross-check suites")
    p.add_argument("file", nargs="?", help="optional scenario to include in the sweeps")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--max-size", type=int, default=6, metavar="N", help="receiver carrier bound (1-8)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, metavar="S", help="seed for randomized suites")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    """Entry point; returns the process exit code."""
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError:
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
