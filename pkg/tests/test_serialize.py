import json

import pytest
from hypothesis import given, settings, strategies as st

from bicatkit.bicat import (enumerate_2nats, enumerate_icons, enumerate_modifications,
                            enumerate_pseudofunctors, identity_2nat, identity_pseudofunctor)
from bicatkit.constructions import free_cell
from bicatkit.fincat import validate_fincat
from bicatkit.fixtures import FIXTURES, fixture_document, twisted_2group
from bicatkit.formal2cat import AdjunctionData, fixture_subcategory_lifting
from bicatkit.serialize import (Adjunction, DocumentError, Lifting, decode, document, dumps,
                                loads)

from corpus import bicat_fixtures, small_categories

FIX = bicat_fixtures()


def roundtrip(kind, value):
    text = dumps(document(kind, value))
    doc = loads(text)
    assert dumps(doc) == text
    return decode(doc)


def test_terminal_bicat_roundtrips_byte_identically():
    text = dumps(fixture_document("terminal-bicat"))
    assert dumps(loads(text)) == text
    assert text.endswith("\n") and json.loads(text)["format_version"] == 1


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_shipped_fixtures_roundtrip(name):
    text = dumps(fixture_document(name))
    assert dumps(loads(text)) == text


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(small_categories(4)))
def test_fincat_roundtrip(c):
    assert roundtrip("fincat", c) == c


@pytest.mark.parametrize("name", sorted(FIX))
def test_bicat_roundtrip(name):
    b = FIX[name]
    back = roundtrip("bicat", b)
    assert back == b
    assert back.associators == b.associators


def test_cell_kinds_roundtrip():
    T = twisted_2group()
    for F in enumerate_pseudofunctors(T, T):
        assert roundtrip("pseudofunctor", F) == F
        for i in enumerate_icons(F, F):
            assert roundtrip("icon", i) == i
    C2 = free_cell("two")
    fs = enumerate_pseudofunctors(C2, C2, strict=True)
    for F in fs:
        for G in fs:
            for t in enumerate_2nats(F, G):
                assert roundtrip("two_nat", t) == t
                for m in enumerate_modifications(t, t):
                    assert roundtrip("modification", m) == m


def test_problem_kinds_roundtrip():
    _, _, p = fixture_subcategory_lifting()
    back = roundtrip("lifting_problem", Lifting("2-Cat", p))
    assert back.cosmos == "2-Cat" and back.problem == p
    i = identity_pseudofunctor(free_cell("one"))
    a = AdjunctionData(i, i, identity_2nat(i), identity_2nat(i))
    back = roundtrip("adjunction", Adjunction("2-Cat", a))
    assert back.data == a


def test_output_is_canonical():
    doc = fixture_document("free-cell-2")
    shuffled = json.loads(dumps(doc))
    shuffled["payload"]["objects"].reverse()
    shuffled["payload"]["homs"].reverse()
    text = json.dumps(shuffled)
    assert dumps(loads(text)) == dumps(doc)


def _doc(kind, payload, version=1):
    return json.dumps({"format_version": version, "kind": kind, "payload": payload})


FINCAT = {"objects": ["a", "b"], "morphisms": [["f", "a", "b"], ["id_a", "a", "a"], ["id_b", "b", "b"]],
          "identities": {"a": "id_a", "b": "id_b"},
          "composition": [["f", "id_a", "f"], ["id_b", "f", "f"], ["id_a", "id_a", "id_a"],
                          ["id_b", "id_b", "id_b"]]}


def test_valid_handwritten_document():
    c = decode(loads(_doc("fincat", FINCAT)))
    assert c.objects == ("a", "b") and c.compose("f", "id_a") == "f"


@pytest.mark.parametrize("mutate,fragment", [
    (lambda p: p.update(extra=1), "unknown field 'extra'"),
    (lambda p: p.pop("identities"), "missing field 'identities'"),
    (lambda p: p["morphisms"].append(["g", "a", "c"]), "'c'"),
    (lambda p: p["composition"].append(["f", "g", "f"]), "'g'"),
])
def test_strict_schema_errors(mutate, fragment):
    p = json.loads(json.dumps(FINCAT))
    mutate(p)
    with pytest.raises(DocumentError) as e:
        loads(_doc("fincat", p))
    assert str(e.value).startswith("$") and fragment in str(e.value)


def test_undeclared_two_cell_is_named():
    p = json.loads(dumps(fixture_document("free-cell-2")))["payload"]
    p["hcomp2"][0][2] = "beta"
    with pytest.raises(DocumentError) as e:
        loads(_doc("bicat", p))
    assert "beta" in str(e.value)


def test_version_kind_and_syntax_errors():
    with pytest.raises(DocumentError, match="format_version"):
        loads(_doc("fincat", FINCAT, version=2))
    with pytest.raises(DocumentError, match="unknown kind"):
        loads(_doc("quiver", FINCAT))
    with pytest.raises(DocumentError) as e:
        loads('{"format_version": 1,\n  "kind": }')
    assert "line 2, column" in str(e.value)


def test_references_between_tables_are_checked():
    p = json.loads(dumps(fixture_document("codiscrete-equivalence")))["payload"]
    p["functor"]["target"] = "B7"
    with pytest.raises(DocumentError):
        loads(_doc("pseudofunctor", p))


def test_document_roundtrip_preserves_request_params():
    doc = fixture_document("identity-icon-limit")
    back = loads(dumps(doc))
    assert back == doc and decode(back).params["apex"] == "*"


def test_semantic_errors_are_left_to_validators():
    # a well-typed document whose identity entry is not an identity loads fine
    p = json.loads(json.dumps(FINCAT))
    p["identities"]["b"] = "f"
    c = decode(loads(_doc("fincat", p)))
    assert not validate_fincat(c)
