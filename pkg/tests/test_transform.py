import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import dags, size_indexes
from lcadag.dag import Dag, cluster_system, delete_edge, is_regular, remove_shortcuts, shortcuts
from lcadag.errors import InputError, RemovesEverythingError, UnknownVertexError, UnlabeledLeafError
from lcadag.lca import has_i_lca_property, i_lca_vertices, is_i_lca_relevant
from lcadag.oracle import ominus_sequential
from lcadag.setsys import SetSystem, ic_members, is_i_ary
from lcadag.sizes import SizeIndex
from lcadag.transform import isomorphic_to_hasse, ominus, simplify, verify_preservation

I12 = SizeIndex.one((1, 2))


def test_ominus_examples(fx):
    b3 = fx("B3")
    p3 = SetSystem.powerset("abc")
    assert cluster_system(ominus(b3, ["rho"])) == p3.without(frozenset("abc"))
    assert len(ominus(b3, ["rho"]).roots) == 3
    g = ominus(b3, ["v_ac"])
    assert cluster_system(g) == p3.without(frozenset("ac"))
    assert {("rho", "a"), ("rho", "c")} <= g.edges
    assert ominus(fx("S1"), ["m"]).edges == {("r", "x")}
    assert isomorphic_to_hasse(ominus(fx("G1"), ["v"]), fx("C4"))
    assert ominus(b3, []) is b3


def test_ominus_errors(fx):
    with pytest.raises(UnknownVertexError):
        ominus(fx("T3"), ["zz"])
    with pytest.raises(RemovesEverythingError):
        ominus(fx("T3"), ["a", "b", "c"])
    with pytest.raises(UnlabeledLeafError):
        ominus(fx("T3"), ["a", "b"])


def test_simplify_b3(fx):
    res = simplify(fx("B3"), I12)
    p3 = SetSystem.powerset("abc")
    assert res.removed == {"rho"}
    assert cluster_system(res.reduced) == p3.without(frozenset("abc"))
    assert res.cluster_diff == [frozenset("abc")]
    assert res.uniqueness_certified
    sf = res.reduced_shortcut_free
    assert is_regular(sf) and is_i_lca_relevant(sf, I12) and has_i_lca_property(sf, I12)
    assert is_i_ary(cluster_system(sf), I12)
    assert isomorphic_to_hasse(sf, ic_members(p3, I12))


def test_simplify_t3_is_identity(fx):
    res = simplify(fx("T3"), I12)
    assert res.removed == frozenset() and res.reduced == fx("T3") and res.cluster_diff == []


def test_simplify_without_property(fx):
    res = simplify(fx("G1"), I12)
    assert not res.uniqueness_certified
    assert res.removed == {"v"}
    assert isomorphic_to_hasse(res.reduced, fx("C4"))
    with pytest.raises(InputError):
        simplify(fx("T3"), SizeIndex((2,)))


def test_preservation_examples(fx):
    b3 = fx("B3")
    assert verify_preservation(b3, ominus(b3, ["rho"]), I12).all_pass
    rep = verify_preservation(b3, ominus(b3, ["v_ab"]), I12)
    assert rep.s0 and rep.s1 and rep.s2 and rep.s3 and not rep.s4
    assert rep.witnesses["s4"] == {"a", "b"}
    assert verify_preservation(fx("T3"), fx("T3"), I12).all_pass


def test_preservation_detects_new_vertex_and_label_change(fx):
    t3 = fx("T3")
    grown = Dag(list(t3.vertices) + ["n"], t3.edges | {("n", "rho")}, t3.labels)
    rep = verify_preservation(t3, grown, I12)
    assert not rep.s2 and rep.witnesses["s2"] == "n"
    relabeled = Dag(t3.vertices, t3.edges, {"a": "b", "b": "a", "c": "c"})
    assert not verify_preservation(t3, relabeled, I12).s1


@st.composite
def dag_and_removal(draw):
    d = draw(dags())
    inner = [v for v in d.vertices if v not in d.labels]
    w = draw(st.lists(st.sampled_from(inner), unique=True)) if inner else []
    return d, w, draw(st.randoms(use_true_random=False))


@given(dag_and_removal())
def test_ominus_is_order_independent(case):
    d, w, rnd = case
    direct = ominus(d, w)
    assert direct.edges == oracles.ominus_edges(d.vertices, d.edges, w)
    perm = list(w)
    rnd.shuffle(perm)
    assert ominus_sequential(d, perm) == direct.edges


@given(dags(), size_indexes(), st.randoms(use_true_random=False))
def test_removing_non_lca_vertices_preserves(d, index, rnd):
    w_all = i_lca_vertices(d, index)[1]
    w = [v for v in sorted(w_all) if rnd.random() < 0.5]
    assert verify_preservation(d, ominus(d, w), index).all_pass
    full = ominus(d, w_all)
    assert is_i_lca_relevant(full, index)
    assert is_regular(remove_shortcuts(full))
    if has_i_lca_property(d, index):
        assert has_i_lca_property(ominus(d, w), index)
        simplify(d, index)


@given(dags(), size_indexes(), st.randoms(use_true_random=False))
def test_deleting_a_shortcut_preserves(d, index, rnd):
    cuts = shortcuts(d)
    if not cuts:
        return
    h = delete_edge(d, rnd.choice(cuts))
    assert verify_preservation(d, h, index).all_pass
    if is_i_lca_relevant(d, index):
        assert is_i_lca_relevant(h, index)


def test_sequential_oracle_matches_path_oracle():
    rng = random.Random(7)
    from lcadag.oracle import random_dag
    for _ in range(50):
        d = random_dag(rng, 4, 5, 0.4)
        inner = [v for v in d.vertices if v not in d.labels]
        w = [v for v in inner if rng.random() < 0.5]
        assert ominus_sequential(d, w) == oracles.ominus_edges(d.vertices, d.edges, w)
