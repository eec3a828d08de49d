import pytest
from hypothesis import given

import oracles
from conftest import dags, size_indexes
from lcadag.dag import Dag, cluster_map, cluster_system, connectivity_witness, leq
from lcadag.errors import EmptySetError, InputError, NotWellDefinedError, ResourceLimitError
from lcadag.lca import (
    has_i_lca_property,
    i_lca_vertices,
    is_i_lca_relevant,
    lca_property_witness,
    lca_set,
    level_gaps,
    unique_lca,
)
from lcadag.setsys import classify_structure, is_pre_i_ary, minimal_supersets
from lcadag.sizes import SizeIndex, enumerate_subsets

I12 = SizeIndex.one((1, 2))


def test_lca_set_examples(fx):
    h4, t3, b3 = fx("H4"), fx("T3"), fx("B3")
    assert lca_set(h4, "bc") == {"v_abc", "v_bcd"}
    assert lca_set(t3, "ac") == {"rho"}
    assert lca_set(b3, "ab") == {"v_ab"}
    assert unique_lca(t3, "a") == "a"
    assert unique_lca(b3, "ac") == "v_ac"


def test_undefined_lca_is_typed(fx):
    with pytest.raises(NotWellDefinedError) as info:
        unique_lca(fx("H4"), "bc")
    assert info.value.labels == {"b", "c"}
    assert len(info.value.lcas) == 2


def test_no_common_ancestor():
    d = Dag.from_edges([("r", "a"), ("s", "b")], leaves="ab")
    assert lca_set(d, "ab") == frozenset()
    with pytest.raises(NotWellDefinedError):
        unique_lca(d, "ab")


def test_empty_and_unknown_inputs(fx):
    with pytest.raises(EmptySetError):
        lca_set(fx("T3"), [])
    with pytest.raises(InputError):
        lca_set(fx("T3"), ["z"])


def test_i_lca_vertices_examples(fx):
    assert i_lca_vertices(fx("B3"), I12)[1] == {"rho"}
    assert i_lca_vertices(fx("H4"), I12)[1] == frozenset()
    table, w = i_lca_vertices(fx("T3"), I12)
    assert w == frozenset()
    assert table["u"].witness == {"a", "b"}
    assert table["rho"].witness == {"a", "c"}
    assert table["a"].witness == {"a"}


def test_relevance_and_property_examples(fx):
    b3, h4, t3 = fx("B3"), fx("H4"), fx("T3")
    assert is_i_lca_relevant(h4, I12)
    assert not is_i_lca_relevant(b3, I12)
    assert is_i_lca_relevant(b3, SizeIndex.one((1, 2, 3)))
    assert has_i_lca_property(b3, I12)
    assert lca_property_witness(h4, I12) == {"b", "c"}
    assert has_i_lca_property(t3, SizeIndex.one((1, 2, 3)))
    assert has_i_lca_property(h4, SizeIndex.one((1, 3)))
    assert has_i_lca_property(h4, SizeIndex.one((1, 4)))


def test_property_requires_one(fx):
    with pytest.raises(InputError):
        has_i_lca_property(fx("T3"), SizeIndex((2,)))


def test_sizes_beyond_ground_are_vacuous(fx):
    assert i_lca_vertices(fx("T3"), SizeIndex.one((1, 2, 9)))[1] == frozenset()
    with pytest.raises(InputError):
        i_lca_vertices(fx("T3"), SizeIndex((7,)))


def test_enumeration_order_and_cap(monkeypatch):
    assert list(enumerate_subsets("cab", SizeIndex((1, 2)))) == [
        ("a",), ("b",), ("c",), ("a", "b"), ("a", "c"), ("b", "c")]
    monkeypatch.setenv("LCADAG_MAX_SUBSETS", "5")
    with pytest.raises(ResourceLimitError):
        list(enumerate_subsets("abc", SizeIndex((1, 2))))


def test_size_parsing():
    assert SizeIndex.parse("1,2")[0].sizes == (1, 2)
    assert SizeIndex.parse("1-3") == (SizeIndex.one((1, 2, 3)), False)
    assert SizeIndex.parse("2") == (SizeIndex.one((1, 2)), True)
    for bad in ("x", "3-1", "0"):
        with pytest.raises(InputError):
            SizeIndex.parse(bad)


@given(dags(), size_indexes())
def test_lca_matches_brute_force(d, index):
    ground = sorted(d.ground)
    for a in oracles.subsets(ground, (1, 2, 3)):
        assert lca_set(d, a) == oracles.lca_set(d.vertices, d.edges, d.labels, a)
    found = oracles.i_lca_vertices(d.vertices, d.edges, d.labels, index.sizes)
    assert i_lca_vertices(d, index)[1] == set(d.vertices) - found


@given(dags())
def test_unique_lca_is_minimal_cluster(d):
    cm = cluster_map(d)
    members = set(cm.values())
    for a in oracles.subsets(d.ground, (1, 2, 3)):
        mask = lca_set(d, a)
        if len(mask) != 1:
            continue
        v = unique_lca(d, a)
        assert minimal_supersets(cluster_system(d), a) == [cm[v]]
        assert oracles.minimal_supersets(members, a) == {cm[v]}
        for u in d.vertices:
            if a <= cm[u]:
                assert leq(d, v, u)


@given(dags())
def test_singleton_law(d):
    for v, lab in d.labels.items():
        assert unique_lca(d, [lab]) == v


@given(dags(), size_indexes())
def test_property_consequences(d, index):
    if not has_i_lca_property(d, index):
        return
    assert is_pre_i_ary(cluster_system(d), index)
    if len(index.effective(len(d.ground))) > 1:
        assert connectivity_witness(d) is None


@given(dags(max_leaves=5, max_internal=5))
def test_level_gaps_under_n3o(d):
    if classify_structure(cluster_system(d)).n3o:
        assert level_gaps(d) == {}
