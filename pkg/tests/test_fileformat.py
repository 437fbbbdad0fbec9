import json

import pytest
from hypothesis import given, settings, strategies as st

from nilcarnot.carnot import associated_graded
from nilcarnot.catalog import PRESETS, preset
from nilcarnot.fileformat import NilgError, dumps, load_spec, loads, parse_document, read_document

H3_DOC = {
    "name": "h3",
    "dimension": 3,
    "brackets": [{"i": 1, "j": 2, "c": [{"k": 3, "q": "1"}]}],
    "generators": [["1", "0", "0"], ["0", "1", "0"]],
}


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(PRESETS)))
def test_roundtrip(name):
    L = preset(name)
    assert loads(dumps(L)) == L


def test_graded_export_carries_layers():
    G = associated_graded(preset("filiform4"))
    data = json.loads(dumps(G))
    assert data["layers"] == [2, 1, 1] and data["basis_names"][0] == "e1~"


def test_parse_and_spec(tmp_path):
    path = tmp_path / "h3.nilg"
    path.write_text(json.dumps(H3_DOC))
    doc = read_document(path)
    assert doc.algebra.structure == preset("h3").structure
    spec = load_spec(path)
    assert spec.name == "h3" and len(spec.generators) == 4


@pytest.mark.parametrize(
    "mutate,where",
    [
        (lambda d: d["brackets"][0]["c"][0].update(q="0.5"), "brackets[0].c[0].q"),
        (lambda d: d["brackets"][0].update(i=3), "brackets[0]"),
        (lambda d: d.pop("dimension"), ""),
        (lambda d: d["generators"].append(["1", "0"]), "generators[2]"),
        (lambda d: d["brackets"][0]["c"][0].update(k=9), "brackets[0].c[0]"),
    ],
)
def test_errors_are_located(mutate, where):
    data = json.loads(json.dumps(H3_DOC))
    mutate(data)
    with pytest.raises(NilgError) as info:
        parse_document(data, "f.nilg")
    assert info.value.where.startswith("f.nilg") and where in info.value.where


def test_json_syntax_error_has_line(tmp_path):
    path = tmp_path / "broken.nilg"
    path.write_text('{\n  "dimension": 3,\n  oops\n}')
    with pytest.raises(NilgError) as info:
        read_document(path)
    assert info.value.where.endswith(":3:3")


def test_presets_by_name():
    assert read_document("preset:h5").algebra == preset("h5")
    assert read_document("free32").algebra == preset("free32")
    with pytest.raises(NilgError):
        read_document("preset:nope")
