"""Tests for the scenario text format: parsing, errors, and canonical output."""

import json

import pytest

from pcat import (
    AxiomReport,
    Category,
    ParseError,
    Span,
    build_globalization,
    check_category_axioms,
    globalization_to_scenario,
    parse,
    serialize,
    validate_category,
)

from conftest import FIXTURE_DIR, fixture_text

CANONICAL = ("arrow_collapse", "arrow_small", "arrow_small_target", "iso_fixed", "iso_shift")
ALL_FIXTURES = CANONICAL + ("arrow_small_nonopen", "arrow_small_topo")


def test_parse_arrow_small_structure():
    sc = parse(fixture_text("arrow_small"))
    assert sc.category_name == "arrow" and sc.action_name == "small"
    cat = sc.category
    assert cat.objects == ("e", "f")
    assert cat.morphisms == ("e", "f", "g")
    assert cat.dom == {"e": "e", "f": "f", "g": "e"}
    assert cat.cod == {"e": "e", "f": "f", "g": "f"}
    assert cat.comp[("f", "g")] == "g" and cat.comp[("g", "e")] == "g"
    assert sc.action.carrier == ("1", "2", "3")
    assert dict(sc.action.table) == {
        ("e", "1"): "1",
        ("e", "2"): "2",
        ("f", "2"): "2",
        ("f", "3"): "3",
        ("g", "2"): "2",
    }
    assert sc.top_mor is None and sc.top_space is None and sc.gfun is None


def test_parse_records_spans():
    sc = parse(fixture_text("arrow_small"))
    assert sc.spans[("category", "arrow")] == Span(1, 10)
    assert sc.spans[("mor", "g")] == Span(4, 7)
    assert sc.spans[("point", "1")] == Span(7, 9)


def test_parse_topology_and_gfun_blocks():
    sc = parse(fixture_text("arrow_small_topo"))
    assert sc.top_mor is not None and sc.top_space is not None
    assert len(sc.top_mor.opens) == 8 and len(sc.top_space.opens) == 8
    tgt = parse(fixture_text("arrow_small_target"))
    assert tgt.gfun == {"1": "e__1", "2": "e__2", "3": "f__4"}


def test_canonical_fixtures_round_trip_byte_exact():
    for stem in CANONICAL:
        text = fixture_text(stem)
        assert serialize(parse(text)) == text, stem


def test_serialization_is_idempotent_on_all_fixtures():
    for stem in ALL_FIXTURES:
        once = serialize(parse(fixture_text(stem)))
        again = serialize(parse(once))
        assert once == again, stem


def test_reparsed_fixture_scenarios_are_equal():
    for stem in ALL_FIXTURES:
        sc = parse(fixture_text(stem))
        back = parse(serialize(sc))
        assert back.category == sc.category
        assert back.action == sc.action
        assert back.top_mor == sc.top_mor and back.top_space == sc.top_space
        assert back.gfun == sc.gfun


PARSE_ERRORS = [
    ("", "E_SYNTAX", 1, 1),
    ("action a\nend\n", "E_SYNTAX", 1, 1),
    ("category c\nobject e\nmor g : e\nend\naction a\npoint 1\nend\n", "E_SYNTAX", 3, 1),
    ("category c\nobject e\nmor g : e -> zz\nend\naction a\npoint 1\nend\n", "E_UNKNOWN_ID", 3, 14),
    ("category c\nobject e\nmor e : e -> e\nend\naction a\npoint 1\nend\n", "E_DUP_DEF", 3, 5),
    (
        "category c\nobject e\nobject f\nmor g : e -> f\nmor h : f -> e\nend\n"
        "action a\npoint 1\nend\n",
        "E_MISSING_COMP",
        6,
        1,
    ),
    (
        "category c\nobject e\nobject f\nmor g : e -> f\ncomp g . g = g\nend\n"
        "action a\npoint 1\nend\n",
        "E_SYNTAX",
        5,
        1,
    ),
    (
        "category c\nobject e\nmor g : e -> e\ncomp g . g = e\ncomp g . g = g\nend\n"
        "action a\npoint 1\nend\n",
        "E_DUP_DEF",
        5,
        1,
    ),
    (
        "category c\nobject e\nmor g : e -> e\ncomp g . e = e\ncomp g . g = e\nend\n"
        "action a\npoint 1\nend\n",
        "E_DUP_DEF",
        4,
        1,
    ),
    ("category c\nobject e\nend\naction a\npoint 1 1\nend\n", "E_DUP_DEF", 5, 9),
    ("category c\nobject e\nend\naction a\npoint 1\nact z 1 = 1\nend\n", "E_UNKNOWN_ID", 6, 5),
    ("category c\nobject e\nend\naction a\npoint 1\nact e 9 = 1\nend\n", "E_UNKNOWN_ID", 6, 7),
    (
        "category c\nobject e\nend\naction a\npoint 1\nact e 1 = 1\nact e 1 = 1\nend\n",
        "E_DUP_DEF",
        7,
        1,
    ),
    ("category c\nobject e\n", "E_SYNTAX", 3, 1),
    ("category c\nobject e\nend\naction a\npoint 1\n", "E_SYNTAX", 6, 1),
    (
        "category c\nobject e\nend\naction a\npoint 1\nend\n"
        "topology mor\nopen empty\nopen e\nend\ntopology mor\nopen empty\nopen e\nend\n",
        "E_DUP_DEF",
        11,
        1,
    ),
    (
        "category c\nobject e\nend\naction a\npoint 1 2\nend\n"
        "topology space\nopen empty\nopen 1\nend\n",
        "E_TOP_NO_TOTAL",
        7,
        1,
    ),
    (
        "category c\nobject e\nend\naction a\npoint 1\nend\n"
        "topology space\nopen 9\nopen 1\nend\n",
        "E_UNKNOWN_ID",
        8,
        6,
    ),
    ("category c\nobject e\nend\naction a\npoint 1\nend\ngfun 1 = q\n", "E_UNKNOWN_ID", 7, 10),
    (
        "category c\nobject e\nend\naction a\npoint 1\nend\ngfun 1 = 1\ngfun 1 = 1\n",
        "E_DUP_DEF",
        8,
        6,
    ),
    ("category c\nobject e\nend\naction a\npoint 1\nend\nwhatever x\n", "E_SYNTAX", 7, 1),
    ("category c\nzzz e\nend\naction a\npoint 1\nend\n", "E_SYNTAX", 2, 1),
    ("category c\nobject empty\nend\naction a\npoint 1\nend\n", "E_SYNTAX", 2, 8),
    ("category c\nobject e\nend\naction a\npoint empty\nend\n", "E_SYNTAX", 5, 7),
    (
        "category c\nobject e\nmor empty : e -> e\ncomp empty . empty = e\nend\n"
        "action a\npoint 1\nend\n",
        "E_SYNTAX",
        3,
        5,
    ),
]


@pytest.mark.parametrize("text,code,line,col", PARSE_ERRORS)
def test_parse_error_codes_and_spans(text, code, line, col):
    with pytest.raises(ParseError) as exc:
        parse(text)
    err = exc.value
    assert err.code == code
    assert (err.line, err.col) == (line, col)
    assert str(err).startswith(f"{line}:{col}: {code}: ")
    assert err.reason


def test_fixture_files_match_programmatic_builders():
    # The oracle suites audit the programmatic copies while the CLI goldens
    # exercise the files; this pins the two sources of truth together.
    from pcat.fixtures import FIXTURES

    for stem, make in FIXTURES.items():
        cat, act = make()
        sc = parse(fixture_text(stem))
        assert sc.category == cat, stem
        assert sc.action == act, stem


def test_parsed_categories_validate():
    for stem in ALL_FIXTURES:
        sc = parse(fixture_text(stem))
        assert validate_category(sc.category).ok, stem


def test_scenario_json_shape():
    sc = parse(fixture_text("arrow_small"))
    data = json.loads(serialize(sc, fmt="json"))
    assert data["category"]["name"] == "arrow"
    assert data["category"]["objects"] == ["e", "f"]
    assert data["action"]["name"] == "small"
    assert data["action"]["points"] == ["1", "2", "3"]


def test_serialize_rejects_bad_inputs():
    sc = parse(fixture_text("arrow_small"))
    with pytest.raises(ValueError):
        serialize(sc, fmt="yaml")
    with pytest.raises(TypeError):
        serialize(42)


def test_empty_keyword_denotes_empty_open_and_is_reserved():
    text = (
        "category c\nobject e\nend\naction a\npoint 1\nact e 1 = 1\nend\n"
        "topology space\nopen empty\nopen 1\nend\n"
    )
    sc = parse(text)
    assert frozenset() in sc.top_space.opens and len(sc.top_space.opens) == 2

    # Programmatic scenarios may use any point names, but a point named
    # "empty" has no unambiguous spelling in the text format, so the
    # serializer refuses rather than emit a line that re-parses as the
    # empty set.
    from pcat import Category, FiniteTopology, PartialAction, Scenario

    cat = Category(("e",), ("e",), {"e": "e"}, {"e": "e"}, {("e", "e"): "e"})
    act = PartialAction.make(("empty", "x"), {("e", "empty"): "empty", ("e", "x"): "x"})
    top = FiniteTopology.make(("empty", "x"), [{"empty"}, {"empty", "x"}])
    with pytest.raises(ValueError):
        serialize(Scenario("c", "a", cat, act, None, top, None))


def test_axiom_report_text_and_witness_cap():
    sc = parse(fixture_text("arrow_small"))
    rep = check_category_axioms(sc.category, sc.action)
    text = serialize(rep)
    assert "axioms C1 pass" in text
    assert "axioms C4 fail (g,1)" in text
    many = AxiomReport({"C1": tuple(("p", str(i)) for i in range(12))})
    line = serialize(many).strip()
    assert line.count("(") == 8

    data = json.loads(serialize(rep, fmt="json"))
    assert data["axioms"]["C4"] == {"pass": False, "witnesses": [["g", "1"]]}
    full = json.loads(serialize(many, fmt="json"))
    assert len(full["axioms"]["C1"]["witnesses"]) == 12


def test_validation_report_text():
    sc = parse(fixture_text("arrow_small"))
    assert serialize(validate_category(sc.category)) == "category valid\n"
    broken = Category(("e",), ("e", "g"), {"e": "e", "g": "zz"}, {"e": "e", "g": "e"}, {})
    text = serialize(validate_category(broken))
    assert text.startswith("category invalid\n")
    assert "violation" in text


def test_globalization_to_scenario_round_trip():
    sc = parse(fixture_text("arrow_small"))
    glob = build_globalization(sc.category, sc.action)
    out = globalization_to_scenario(glob, "arrow", "small_globalized")
    assert out.gfun == {"1": "e__1", "2": "e__2", "3": "f__3"}
    assert out.action.carrier == ("e__1", "e__2", "f__3", "g__1")
    back = parse(serialize(out))
    assert back.category == sc.category
    assert back.action == out.action
    assert back.gfun == out.gfun
    rep = check_category_axioms(back.category, back.action)
    assert rep.all_pass


def test_globalization_serializes_in_both_formats():
    sc = parse(fixture_text("arrow_small"))
    glob = build_globalization(sc.category, sc.action)
    text = serialize(glob)
    assert text == serialize(glob)
    data = json.loads(serialize(glob, fmt="json"))
    assert len(data["classes"]) == 4
    assert sum(len(c["members"]) for c in data["classes"]) == 6
    assert data["embedding"]["3"] == ["f", "3"]
    assert all(c["rep"] == c["members"][0] for c in data["classes"])
