import pytest
from hypothesis import given

from conftest import dags, grounded_systems, size_indexes
from lcadag.dag import cluster_system, is_pcc, is_regular, recognize_shape, remove_shortcuts, shortcuts
from lcadag.errors import NotGroundedError, NotIAryError, NotPreIAryError
from lcadag.hasse import build_hasse, hasse_dag, realize_with_property
from lcadag.lca import has_i_lca_property, is_i_lca_relevant
from lcadag.setsys import SetSystem, is_i_ary, is_pre_i_ary
from lcadag.sizes import SizeIndex
from lcadag.transform import isomorphic_to_hasse

I12 = SizeIndex.one((1, 2))


def _cover_edges(h):
    return {(frozenset(h.member_of[u]), frozenset(h.member_of[w])) for u, w in h.dag.edges}


def test_c4_gives_h4(fx):
    h = build_hasse(fx("C4"))
    f = frozenset
    assert _cover_edges(h) == {
        (f("abcd"), f("abc")), (f("abcd"), f("bcd")),
        (f("abc"), f("a")), (f("abc"), f("b")), (f("abc"), f("c")),
        (f("bcd"), f("b")), (f("bcd"), f("c")), (f("bcd"), f("d")),
    }
    assert isomorphic_to_hasse(fx("H4"), fx("C4"))


def test_powerset_gives_b3(fx):
    h = build_hasse(fx("P3"))
    assert len(h.dag.edges) == 9
    assert h.vertex_of(frozenset("abc")) == 6
    assert isomorphic_to_hasse(fx("B3"), fx("P3"))


def test_cg_is_galled_tree(fx):
    rep = recognize_shape(hasse_dag(fx("Cg")))
    assert rep.galled_tree and not rep.tree


def test_ids_are_stable(fx):
    assert build_hasse(fx("C4")) == build_hasse(fx("C4"))


def test_realize(fx):
    assert has_i_lca_property(realize_with_property(fx("P3"), I12), I12)
    with pytest.raises(NotPreIAryError) as info:
        realize_with_property(fx("C4"), I12)
    assert info.value.witness == {"b", "c"}
    with pytest.raises(NotIAryError):
        realize_with_property(fx("P3"), I12, "ary")
    d = realize_with_property(fx("P3"), SizeIndex.one((1, 2, 3)), "ary")
    assert is_i_lca_relevant(d, SizeIndex.one((1, 2, 3)))
    with pytest.raises(NotGroundedError):
        realize_with_property(SetSystem.of([["a", "b"]], "ab"), I12)


def test_ungrounded_hasse_keeps_set_labels():
    h = build_hasse(SetSystem.of([["a", "b"], ["a", "b", "c"]], "abc"), relabel=False)
    assert sorted(h.dag.labels.values()) == ["{a,b}"]
    assert not shortcuts(h.dag) and is_pcc(h.dag)


@given(grounded_systems(), size_indexes())
def test_hasse_characterizes_ary(sys, index):
    h = hasse_dag(sys)
    assert cluster_system(h) == sys
    prop = has_i_lca_property(h, index)
    assert is_pre_i_ary(sys, index) == prop
    assert is_i_ary(sys, index) == (prop and is_i_lca_relevant(h, index))


@given(dags())
def test_regular_round_trip(d):
    if is_regular(d):
        assert isomorphic_to_hasse(d, cluster_system(d))
        assert remove_shortcuts(d) == d
