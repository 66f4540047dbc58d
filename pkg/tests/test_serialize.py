import copy
import json
from fractions import Fraction
from pathlib import Path

import pytest

from odca import boolean, fixtures, model as md, serialize, translate
from odca.errors import ValidationError
from odca.exactla import VectorSpace

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.json")), ids=lambda p: p.name)
def test_fixture_files_round_trip_byte_identical(path):
    text = path.read_text(encoding="utf-8")
    assert serialize.dumps(serialize.loads(text)) == text


@pytest.mark.parametrize("name, make", [
    ("pad.json", fixtures.prefix_aware_decimal),
    ("pad-eta2.json", fixtures.prefix_aware_decimal_eta2),
    ("epp.json", fixtures.equal_prefix_power),
    ("counter-oblivious.json", fixtures.counter_oblivious),
])
def test_weighted_files_match_builders(name, make):
    assert serialize.load(FIXTURES / name, "weighted-odca") == make()


def test_boolean_files_match_builders():
    l1 = serialize.load(FIXTURES / "l1.json", "boolean-odca")
    for w in md.words("ab", 7):
        assert boolean.bool_eval(l1, w) == boolean.bool_eval(boolean.l1(), w)
    l3 = serialize.load(FIXTURES / "l3.json", "boolean-odca")
    for w in md.words("abc", 5):
        assert boolean.bool_eval(l3, w) == boolean.bool_eval(boolean.l3(), w)


def doc(name):
    return json.loads((FIXTURES / name).read_text(encoding="utf-8"))


def test_rationals_normalised():
    d = doc("pad.json")
    d["payload"]["lambda"][0] = "2/2"
    d["payload"]["eta"][3] = "2/4"
    m = serialize.from_document(d)
    out = serialize.to_document(m)
    assert out["payload"]["lambda"][0] == "1"
    assert out["payload"]["eta"][3] == "1/2"


def test_missing_delta1_entry_names_state_and_letter():
    d = doc("pad.json")
    del d["payload"]["delta1"]["p2"]["b"]
    with pytest.raises(ValidationError, match=r"\(p2, b\)"):
        serialize.from_document(d)


@pytest.mark.parametrize("where", ["document", "payload"])
def test_unknown_fields_rejected(where):
    d = doc("pad.json")
    (d if where == "document" else d["payload"])["extra"] = 1
    with pytest.raises(ValidationError, match="unknown field"):
        serialize.from_document(d)


@pytest.mark.parametrize("mutate, message", [
    (lambda d: d.update(version="2"), "version"),
    (lambda d: d.update(type="nope"), "type"),
    (lambda d: d["payload"].update(initial_counter_state="zz"), "initial_counter_state"),
    (lambda d: d["payload"]["delta0"]["p0"].update(a=["p0", -1]), "effect"),
    (lambda d: d["payload"]["delta"]["a"]["zero"].pop(), "rows"),
    (lambda d: d["payload"]["lambda"].__setitem__(0, "1/0"), "lambda"),
    (lambda d: d["payload"]["lambda"].__setitem__(0, "x"), "lambda"),
    (lambda d: d["payload"].update(alphabet=["ab", "b"]), "single characters"),
])
def test_bad_documents(mutate, message):
    d = doc("pad.json")
    mutate(d)
    with pytest.raises(ValidationError, match=message):
        serialize.from_document(d)


def test_expected_type_enforced():
    with pytest.raises(ValidationError, match="expected"):
        serialize.load(FIXTURES / "l1.json", "weighted-odca")


def test_malformed_json():
    with pytest.raises(ValidationError, match="malformed"):
        serialize.loads("{")


def test_oca_round_trip():
    oca = translate.odca_to_oca(fixtures.prefix_aware_decimal())
    back = serialize.loads(serialize.dumps(oca), "weighted-oca")
    assert back.trans0 == oca.trans0 and back.trans1 == oca.trans1
    assert serialize.dumps(back) == serialize.dumps(oca)


def test_config_and_space_round_trip():
    c = md.Configuration((1, 0, 0, 6), "p2", 1)
    assert serialize.loads(serialize.dumps(c), "config") == md.Configuration(tuple(map(Fraction, c.x)), "p2", 1)
    v = VectorSpace.span(3, [[1, 2, 0], [2, 4, 0], [0, 0, 1]])
    back = serialize.loads(serialize.dumps(v), "vector-space")
    assert back.dim == 3 and back.basis == v.basis


def test_bad_config():
    text = json.dumps({"type": "config", "version": "1", "payload": {"x": ["1"], "counter_state": "p", "counter": -1}})
    with pytest.raises(ValidationError, match="counter"):
        serialize.loads(text)


def test_boolean_rejects_non_bits():
    d = doc("l1.json")
    d["payload"]["lambda"][0] = 2
    with pytest.raises(ValidationError):
        serialize.from_document(d)


def test_dump_deepcopy_stable():
    m = fixtures.equal_prefix_power()
    assert serialize.dumps(m) == serialize.dumps(copy.deepcopy(m))
