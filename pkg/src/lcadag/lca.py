"""Least common ancestors, I-lca vertices, I-lca-relevance and the I-lca-property."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .dag import Dag, Vertex, cluster_map
from .errors import EmptySetError, InputError, NotWellDefinedError
from .sizes import SizeIndex, enumerate_subsets

__all__ = [
    "SizeIndex",
    "LcaWitness",
    "lca_set",
    "unique_lca",
    "i_lca_vertices",
    "is_i_lca_relevant",
    "lca_property_witness",
    "has_i_lca_property",
    "level_gaps",
]


@dataclass(frozen=True)
class LcaWitness:
    vertex: Vertex
    witness: frozenset[str] | None

    @property
    def is_lca_vertex(self) -> bool:
        return self.witness is not None


def _lca_mask(dag: Dag, labels: Iterable[str]) -> int:
    """Bitmask of LCA(A): minimal elements of the common-ancestor set."""
    labels = list(labels)
    if not labels:
        raise EmptySetError("leaf set must be nonempty")
    idx, anc, desc = dag.index, dag.anc_mask, dag.desc_mask
    common = -1
    for lab in labels:
        common &= anc[idx[dag.vertex_for(lab)]]
    out = 0
    rest = common
    while rest:
        low = rest & -rest
        i = low.bit_length() - 1
        if desc[i] & common == low:
            out |= low
        rest ^= low
    return out


def lca_set(dag: Dag, labels: Iterable[str]) -> frozenset:
    """All least common ancestors of the leaves labeled ``labels`` (possibly none)."""
    return dag.mask_to_vertices(_lca_mask(dag, labels))


def _single(mask: int) -> bool:
    return mask != 0 and mask & (mask - 1) == 0


def unique_lca(dag: Dag, labels: Iterable[str]):
    labels = frozenset(labels)
    mask = _lca_mask(dag, labels)
    if not _single(mask):
        raise NotWellDefinedError(labels, dag.mask_to_vertices(mask))
    return dag.vertices[mask.bit_length() - 1]


def i_lca_vertices(dag: Dag, index: SizeIndex) -> tuple[dict[Vertex, LcaWitness], frozenset]:
    """Classify every vertex; the second item is the set of non-I-lca vertices.

    Each witness is the first A in canonical X(I) order with lca(A) = vertex.
    """
    if not index.effective(len(dag.ground)):
        raise InputError(f"size index {index} has no size within 1..{len(dag.ground)}")
    found: dict[int, frozenset[str]] = {}
    n = len(dag.vertices)
    for a in enumerate_subsets(dag.ground, index):
        mask = _lca_mask(dag, a)
        if _single(mask):
            i = mask.bit_length() - 1
            if i not in found:
                found[i] = frozenset(a)
                if len(found) == n:
                    break
    table = {v: LcaWitness(v, found.get(i)) for i, v in enumerate(dag.vertices)}
    missing = frozenset(v for i, v in enumerate(dag.vertices) if i not in found)
    return table, missing


def non_lca_vertices(dag: Dag, index: SizeIndex) -> frozenset:
    return i_lca_vertices(dag, index)[1]


def is_i_lca_relevant(dag: Dag, index: SizeIndex) -> bool:
    return not non_lca_vertices(dag, index)


def lca_property_witness(dag: Dag, index: SizeIndex) -> frozenset[str] | None:
    """First A in X(I) whose lca is not well-defined, or None."""
    if not index.requires_one:
        raise InputError("the lca-property is defined for I-one index sets (containing 1)")
    for a in enumerate_subsets(dag.ground, index):
        if not _single(_lca_mask(dag, a)):
            return frozenset(a)
    return None


def has_i_lca_property(dag: Dag, index: SizeIndex) -> bool:
    return lca_property_witness(dag, index) is None


def level_gaps(dag: Dag) -> dict[Vertex, list[int]]:
    """For each non-leaf v, the sizes l in 2..|C(v)| for which v is not an {l}-lca vertex.

    Vertices that are a {k}-lca vertex for no k >= 2 are omitted, so an empty
    result means every remaining vertex is witnessed at every level.
    """
    cm = cluster_map(dag)
    n = len(dag.ground)
    levels: dict[int, set[int]] = {}
    for k in range(2, n + 1):
        for a in enumerate_subsets(dag.ground, SizeIndex((k,))):
            mask = _lca_mask(dag, a)
            if _single(mask):
                levels.setdefault(mask.bit_length() - 1, set()).add(k)
    gaps = {}
    for i, v in enumerate(dag.vertices):
        if v in dag.labels or i not in levels:
            continue
        missing = [k for k in range(2, len(cm[v]) + 1) if k not in levels[i]]
        if missing:
            gaps[v] = missing
    return gaps
