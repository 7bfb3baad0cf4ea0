import json

import pytest
from hypothesis import given

from harmquat.characters import Frame, InvalidFrameError
from harmquat.fieldfile import (
    FieldFileError, dump_document, dumps, load_document, parse_rational, rational_str,
    read_field, write_field,
)
from harmquat.harmonic import basis_quat_harmonic
from harmquat.poly import Axis

from conftest import qfields


def test_rational_strings():
    assert rational_str(3) == "3/1"
    assert parse_rational("-6/4") == parse_rational("-3/2")
    for bad in ("abc", "1/0", 0.5, None):
        with pytest.raises(FieldFileError):
            parse_rational(bad)


@given(qfields())
def test_roundtrip(p):
    doc = json.loads(dumps(dump_document(p)))
    assert load_document(doc)["field"] == p


def test_file_roundtrip_with_frame(tmp_path):
    p = basis_quat_harmonic(2)[4]
    path = tmp_path / "f.json"
    write_field(path, p, frame=Frame.standard(), axes=[Axis((1, 2, 3))])
    doc = read_field(path)
    assert doc["field"] == p
    assert doc["frame"] == Frame.standard()
    assert doc["axes"][0].key == (1, 2, 3)
    # canonical output is stable
    text = path.read_text()
    write_field(path, doc["field"], frame=doc["frame"], axes=doc["axes"])
    assert path.read_text() == text


@pytest.mark.parametrize("doc", [
    [],
    {"format_version": 2, "field": {"alpha": [], "u": [[], [], []]}},
    {"format_version": 1, "field": {"alpha": [{"e": [-1, 0, 0], "c": "1/1"}], "u": [[], [], []]}},
    {"format_version": 1, "field": {"alpha": [{"e": [0, 0], "c": "1/1"}], "u": [[], [], []]}},
    {"format_version": 1, "field": {"alpha": [], "u": [[], []]}},
    {"format_version": 1, "field": {"alpha": [{"e": [1, 0, 0], "c": 0.5}], "u": [[], [], []]}},
    {"format_version": 1, "field": {"alpha": [], "u": [[], [], []]}, "axes": [["0/1", "0/1", "0/1"]]},
])
def test_malformed(doc):
    with pytest.raises(FieldFileError):
        load_document(doc)


def test_bad_frame():
    doc = {"format_version": 1, "field": {"alpha": [], "u": [[], [], []]},
           "frame": [["0/1", "1/1", "0/1"], ["1/1", "0/1", "0/1"], ["0/1", "0/1", "1/1"]]}
    with pytest.raises(InvalidFrameError):
        load_document(doc)


def test_missing_file(tmp_path):
    with pytest.raises(FieldFileError):
        read_field(tmp_path / "nope.json")
    (tmp_path / "bad.json").write_text("{not json")
    with pytest.raises(FieldFileError):
        read_field(tmp_path / "bad.json")
