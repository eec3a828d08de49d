import json

import pytest
from hypothesis import given

from conftest import dags, grounded_systems
from lcadag.dag import Dag
from lcadag.documents import (
    dag_from_document,
    dag_to_document,
    dag_to_edge_list,
    export_dot,
    parse_input,
    serialize,
)
from lcadag.errors import DocumentSyntaxError, InputError
from lcadag.fixtures import DAGS, SYSTEMS, fixture_path
from lcadag.lca import i_lca_vertices
from lcadag.sizes import SizeIndex


def test_edge_list_t3(fx):
    d = parse_input(b"rho u / rho c / u a / u b\nleaves: a b c\n", "dag")
    assert d == fx("T3")


def test_edge_list_roundtrip(fx):
    t3 = fx("T3")
    assert parse_input(dag_to_edge_list(t3), "dag") == t3


def test_c4_document(fx):
    text = fixture_path("C4.json").read_bytes()
    assert parse_input(text, "system") == fx("C4")


def test_malformed_json_position():
    with pytest.raises(DocumentSyntaxError) as info:
        parse_input(b'{\n  "vertices": [\n    {"id": 1,,}\n]}', "dag")
    assert info.value.line == 3
    assert info.value.column > 1


def test_edge_list_syntax_error_position():
    with pytest.raises(DocumentSyntaxError) as info:
        parse_input("a b\nx y z\n", "dag")
    assert (info.value.line, info.value.column) == (2, 1)


@pytest.mark.parametrize("doc", [
    {"format_version": 1, "ground": ["a", "a"], "sets": []},
    {"format_version": 1, "ground": ["a", "b"], "sets": [["a"], ["a"]]},
    {"format_version": 1, "ground": ["a"], "sets": [["a", "a"]]},
])
def test_system_duplicates_rejected(doc):
    with pytest.raises(InputError):
        parse_input(json.dumps(doc), "system")


def test_bad_documents():
    with pytest.raises(DocumentSyntaxError):
        parse_input('{"format_version": 2, "vertices": [], "edges": []}', "dag")
    with pytest.raises(DocumentSyntaxError):
        parse_input('{"vertices": [{"id": 1.5}], "edges": []}', "dag")
    with pytest.raises(InputError):
        parse_input('{"vertices": [{"id": 0}, {"id": 1, "label": "a"}], "edges": [[0, 1], [0, 1]]}', "dag")
    with pytest.raises(DocumentSyntaxError):
        parse_input(b"\xff\xfe", "dag")


def test_metadata_survives():
    doc = dag_to_document(Dag.from_edges([("r", "a")], leaves="a"), {"note": "x"})
    d, meta = dag_from_document(doc)
    assert meta == {"note": "x"}


@pytest.mark.parametrize("name", sorted(DAGS))
def test_dag_fixture_roundtrip(name, fx):
    d = fx(name)
    text = serialize(d)
    again = parse_input(text, "dag")
    assert again == d
    assert serialize(again) == text


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_system_fixture_roundtrip(name, fx):
    s = fx(name)
    text = serialize(s)
    assert parse_input(text, "system") == s
    assert serialize(parse_input(text, "system")) == text


@given(dags())
def test_random_dag_roundtrip(d):
    assert parse_input(serialize(d), "dag") == d


@given(grounded_systems())
def test_random_system_roundtrip(s):
    assert parse_input(serialize(s), "system") == s


def test_dot_t3(fx):
    text = export_dot(fx("T3"))
    lines = text.splitlines()
    assert sum(1 for x in lines if "->" in x) == 4
    assert sum(1 for x in lines if "[label=" in x) == 5
    assert text == export_dot(fx("T3"))


def test_dot_highlight_and_shortcuts(fx):
    b3 = fx("B3")
    w = i_lca_vertices(b3, SizeIndex.one((1, 2)))[1]
    rho_line = next(x for x in export_dot(b3, highlight=w).splitlines() if x.startswith('  "rho" ['))
    assert "fillcolor=lightblue" in rho_line
    s1 = export_dot(fx("S1"), dashed_shortcuts=True)
    assert '"r" -> "x" [style=dashed];' in s1
    assert '"r" -> "m";' in s1


def test_dot_clusters_annotation(fx):
    text = export_dot(fx("T3"), show_clusters=True)
    assert 'xlabel="{a,b}"' in text
