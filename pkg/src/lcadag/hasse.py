"""Hasse diagrams of set systems and DAG realizations of (pre-)I-ary systems."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .dag import Dag, cluster_system
from .errors import ContractViolation, NotGroundedError, NotIAryError, NotPreIAryError
from .lca import has_i_lca_property, is_i_lca_relevant
from .setsys import SetSystem, covering_pairs, fmt_set, is_i_ary, pre_i_ary_witness, validate_system
from .sizes import SizeIndex


@dataclass(frozen=True)
class HasseDag:
    dag: Dag
    member_of: dict

    def vertex_of(self, member) -> int:
        member = frozenset(member)
        return next(v for v, m in self.member_of.items() if m == member)


def build_hasse(sys: SetSystem, relabel: bool = True) -> HasseDag:
    """Cover digraph of ``sys`` with integer ids in canonical member order.

    With ``relabel`` (the default) each singleton leaf {x} is labeled x, so the
    resulting DAG has exactly ``sys`` as cluster system; a non-singleton
    minimal member then raises NotGroundedError. Without it, leaves are
    labeled by the printed member, e.g. ``"{a,b}"``.
    """
    members = sys.sorted_members()
    if not members:
        raise NotGroundedError("cannot build a Hasse diagram of an empty system")
    ids = {m: i for i, m in enumerate(members)}
    edges = [(ids[a], ids[b]) for a, b in covering_pairs(members)]
    has_child = {u for u, _ in edges}
    labels = {}
    for m in members:
        if ids[m] in has_child:
            continue
        if relabel:
            if len(m) != 1:
                raise NotGroundedError(f"minimal member {fmt_set(m)} is not a singleton")
            (labels[ids[m]],) = m
        else:
            labels[ids[m]] = fmt_set(m)
    dag = Dag(range(len(members)), edges, labels)
    return HasseDag(dag, {i: m for m, i in ids.items()})


def hasse_dag(sys: SetSystem) -> Dag:
    return build_hasse(sys).dag


def realize_with_property(sys: SetSystem, index: SizeIndex,
                          demand: Literal["property", "ary"] = "property") -> Dag:
    """The relabeled Hasse DAG of ``sys``, checked to carry the demanded lca properties.

    ``"property"`` needs a grounded pre-I-ary system and yields the
    I-lca-property; ``"ary"`` needs an I-ary system and additionally yields
    I-lca-relevance.
    """
    if not validate_system(sys).grounded:
        raise NotGroundedError("system is not grounded")
    witness = pre_i_ary_witness(sys, index)
    if witness is not None:
        raise NotPreIAryError(witness)
    if demand == "ary" and not is_i_ary(sys, index):
        raise NotIAryError("some member is not the unique minimal superset of any A in X(I)")
    dag = hasse_dag(sys)
    if cluster_system(dag) != sys:
        raise ContractViolation("Hasse realization changed the cluster system")
    if not has_i_lca_property(dag, index):
        raise ContractViolation("Hasse realization of a pre-I-ary system lacks the lca-property")
    if demand == "ary" and not is_i_lca_relevant(dag, index):
        raise ContractViolation("Hasse realization of an I-ary system is not I-lca-relevant")
    return dag
