import pytest
from hypothesis import given

import oracles
from conftest import grounded_systems, size_indexes
from lcadag.errors import InputError
from lcadag.setsys import (
    SetSystem,
    classify_structure,
    covering_pairs,
    ic_members,
    is_i_ary,
    is_pre_i_ary,
    kappa,
    minimal_supersets,
    pre_i_ary_witness,
    validate_system,
)
from lcadag.sizes import SizeIndex

I12 = SizeIndex.one((1, 2))


def S(*sets, ground=None):
    return SetSystem.of([list(s) for s in sets], ground)


def test_c4_counterexample(fx):
    c4 = fx("C4")
    flags = validate_system(c4)
    assert flags.grounded and flags.clustering
    assert not is_pre_i_ary(c4, I12)
    assert pre_i_ary_witness(c4, I12) == {"b", "c"}
    assert minimal_supersets(c4, {"b", "c"}) == [frozenset("abc"), frozenset("bcd")]
    assert ic_members(c4, I12) == c4


def test_t3_clusters():
    t3 = S("a", "b", "c", "ab", "abc")
    assert minimal_supersets(t3, {"a", "c"}) == [frozenset("abc")]
    assert ic_members(t3, I12) == t3
    rep = classify_structure(t3)
    assert rep.tree_like and rep.galled_tree_like


def test_structure_examples(fx):
    c4 = classify_structure(fx("C4"))
    assert (c4.tree_like, c4.n3o, c4.prop_l, c4.closed, c4.galled_tree_like) == (
        False, True, True, False, False)
    assert c4.kappa == 3
    cg = classify_structure(fx("Cg"))
    assert cg.closed and cg.n3o and cg.prop_l and cg.galled_tree_like and not cg.tree_like
    p3 = classify_structure(fx("P3"))
    assert not p3.n3o and "n3o" in p3.witnesses


def test_prop_l_violation():
    # {a,b,c} overlaps {c,d} in {c} and {b,c,e} in {b,c}
    sys = S("a", "b", "c", "d", "e", "abc", "cd", "bce", "abcde")
    rep = classify_structure(sys)
    assert not rep.prop_l
    assert "prop_l" in rep.witnesses


def test_validation_and_errors():
    assert not validate_system(S("a", "ab", ground="ab")).grounded
    with pytest.raises(InputError):
        SetSystem(frozenset(), frozenset())
    with pytest.raises(InputError):
        SetSystem.of([["a", "z"]], "ab")
    with pytest.raises(InputError):
        minimal_supersets(S("a", "b"), set())


def test_kappa():
    assert kappa(S("a", "b")) is None
    assert kappa(S("a", "b", "c", "abc")) == 3


def test_powerset_pre_ary(fx):
    p3 = fx("P3")
    assert is_pre_i_ary(p3, I12)
    assert not is_i_ary(p3, I12)
    assert is_i_ary(p3, SizeIndex.one((1, 2, 3)))
    assert ic_members(p3, I12) == p3.without(frozenset("abc"))


@given(grounded_systems(), size_indexes())
def test_ary_predicates_match_oracle(sys, index):
    members, ground = set(sys.members), sys.ground
    assert is_pre_i_ary(sys, index) == oracles.pre_ary(members, ground, index.sizes)
    ic = ic_members(sys, index)
    assert set(ic.members) == oracles.ic_members(members, ground, index.sizes)
    assert ic.members <= sys.members
    if is_i_ary(sys, index):
        assert is_pre_i_ary(sys, index)
    for a in oracles.subsets(ground, (1, 2)):
        assert set(minimal_supersets(sys, a)) == oracles.minimal_supersets(members, a)


@given(grounded_systems())
def test_covering_matches_oracle(sys):
    assert covering_pairs(sys.members) == oracles.covers(set(sys.members))


@given(grounded_systems())
def test_structure_implications(sys):
    rep = classify_structure(sys)
    if rep.tree_like:
        assert rep.n3o and rep.prop_l
    if rep.galled_tree_like:
        assert rep.n3o and rep.prop_l and rep.closed
