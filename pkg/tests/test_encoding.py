import csv
import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import FREE1, free1_modules, mod
from f1hall.canon import key_of
from f1hall.encoding import (
    dump_json,
    hall_from_json,
    hall_to_json,
    module_from_json,
    module_to_json,
    parse_module,
    parse_operand,
    parse_spec,
    rep_from_json,
    rep_to_json,
    tensor_from_json,
    tensor_to_json,
    to_csv,
    to_markdown,
)
from f1hall.errors import ModuleError, ParseError, SpecError
from f1hall.forest import Forest, forest_to_module, module_to_forest
from f1hall.hall import HallElement, coproduct
from f1hall.module import format_module
from f1hall.rep import RepElement
from f1hall.semigroup import GROUP, PATH, TCONG, build_t_congruence


# -- spec strings ---------------------------------------------------------------------

@pytest.mark.parametrize("text,kind,size", [
    ("tcong:2,0", TCONG, 3),
    ("tcong:3,1", TCONG, 4),
    ("tcong:3,t0", TCONG, 4),
    ("tcong:4,t^1", TCONG, 5),
    ("gz:z2", GROUP, 3),
    ("gz:s3", GROUP, 7),
])
def test_spec_strings(text, kind, size):
    s = parse_spec(text)
    assert s.kind == kind and len(s.elements) == size


def test_tcong_notations_agree():
    assert parse_spec("tcong:3,1").fingerprint == parse_spec("tcong:3,t1").fingerprint
    assert parse_spec("tcong:3,0").fingerprint == build_t_congruence(3).fingerprint


@pytest.mark.parametrize("text,pos", [
    ("free", 4),
    ("free:x", 5),
    ("tcong:3", 6),
    ("gz:q7", 3),
    ("blah:1", 0),
    ("path:quiver", 5),
])
def test_bad_spec_positions(text, pos):
    with pytest.raises(ParseError) as err:
        parse_spec(text)
    assert err.value.position == pos


def test_spec_files(tmp_path):
    q = tmp_path / "a2.quiver"
    q.write_text("# A2\nvertices 2\nedge 1 2\n")
    s = parse_spec(f"path:@{q}")
    edge = s.generators[-1]
    assert s.kind == PATH and s.evaluate_word([edge, edge]) == "0"

    g = tmp_path / "z3.group"
    g.write_text("e a b\ne a b\na b e\nb e a\n")
    assert len(parse_spec(f"gz:table@{g}").elements) == 4

    t = tmp_path / "f1.table"
    t.write_text("0 1\n0 0\n0 1\n")
    assert parse_spec(f"table@{t}").has_unit


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        parse_spec(f"table@{tmp_path / 'nope'}")


def test_bad_table_file(tmp_path):
    t = tmp_path / "bad.table"
    t.write_text("0 a\n0 0\n0 q\n")
    with pytest.raises(SpecError):
        parse_spec(f"table@{t}")


# -- module text -----------------------------------------------------------------------------

def test_module_round_trip():
    m = parse_module(FREE1, "2;t:[2,0]")
    assert format_module(m) == "2; t:[2,0]"
    assert parse_module(FREE1, format_module(m)) == m


@given(free1_modules())
def test_module_text_round_trip(m):
    assert parse_module(FREE1, format_module(m)) == m


def test_zero_module_text():
    assert parse_module(FREE1, "0").dim == 0


@pytest.mark.parametrize("text,pos", [
    ("x; t:[0]", 0),
    ("1 t:[0]", 2),
    ("1; t[0]", 2),
    ("2; t:[2,a]", 8),
])
def test_module_parse_positions(text, pos):
    with pytest.raises(ParseError) as err:
        parse_module(FREE1, text)
    assert err.value.position == pos


def test_module_text_checks_relations():
    with pytest.raises(ModuleError):
        parse_module(parse_spec("gz:z2"), "2; g:[1,1]")


def test_operands():
    assert key_of(parse_operand(FREE1, "(()())")) == key_of(mod([3, 3, 0]))
    assert key_of(parse_operand(FREE1, "2|t:2,0")) == "2|t:2,0"
    assert parse_operand(FREE1, "∅").dim == 0
    with pytest.raises((ParseError, ModuleError)):
        parse_operand(FREE1, "2|t:9,9")


# -- forests ------------------------------------------------------------------------------

def test_forest_text_round_trip():
    f = Forest.parse("(()())")
    assert str(f) == "(()())"
    assert module_to_forest(forest_to_module(f)) == f


# -- JSON ---------------------------------------------------------------------------------

def test_module_json_round_trip():
    m = mod([3, 3, 0, 1])
    data = json.loads(dump_json(module_to_json(m)))
    assert data["key"] == key_of(m)
    assert module_from_json(FREE1, data) == m


def test_module_json_wrong_spec():
    data = module_to_json(mod([0]))
    with pytest.raises(SpecError):
        module_from_json(parse_spec("free:2"), data)


def test_hall_json_round_trip():
    x = HallElement(FREE1, {"1|t:0": Fraction(2, 3), "2|t:2,0": -1})
    data = json.loads(dump_json(hall_to_json(x)))
    assert data[0]["coeff"] == "2/3"
    assert hall_from_json(FREE1, data) == x


def test_tensor_json_round_trip():
    t = coproduct(HallElement.of(mod([0, 0])))
    assert tensor_from_json(FREE1, json.loads(dump_json(tensor_to_json(t)))) == t


def test_rep_json_round_trip():
    x = RepElement.of(mod([0, 0, 3]))
    assert rep_from_json(FREE1, json.loads(dump_json(rep_to_json(x)))) == x


def test_dump_json_is_stable():
    assert dump_json({"a": [1, "•"]}) == '{\n  "a": [\n    1,\n    "•"\n  ]\n}\n'


# -- tables --------------------------------------------------------------------------------

def test_csv_and_markdown():
    rows = [["a|b", 1], ["c", "x,y"]]
    assert to_csv(["h1", "h2"], rows) == 'h1,h2\na|b,1\nc,"x,y"\n'
    md = to_markdown(["h1", "h2"], rows)
    assert md.splitlines()[0] == "| h1 | h2 |"
    assert "a\\|b" in md


@given(st.lists(st.lists(st.text(alphabet="ab|,\" ", max_size=4), min_size=2, max_size=2), max_size=4))
def test_csv_reads_back(rows):
    text = to_csv(["x", "y"], rows)
    back = list(csv.reader(io.StringIO(text)))
    assert back[1:] == rows
