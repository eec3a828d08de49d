"""Vertex removal with parent-child bridging, lca-driven simplification and S0-S4 checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .dag import Dag, cluster_map, cluster_system, is_regular, less, remove_shortcuts, vertex_key
from .errors import ContractViolation, InputError, RemovesEverythingError, UnknownVertexError
from .hasse import build_hasse
from .lca import _lca_mask, _single, has_i_lca_property, i_lca_vertices, is_i_lca_relevant
from .setsys import SetSystem, ic_members
from .sizes import SizeIndex, enumerate_subsets


def ominus(dag: Dag, remove: Iterable) -> Dag:
    """Delete ``remove`` and join p -> q whenever a directed p..q path runs entirely through it.

    This equals removing the vertices one at a time in any order. An empty
    ``remove`` returns ``dag`` unchanged.
    """
    gone = frozenset(remove)
    for v in gone:
        if v not in dag.index:
            raise UnknownVertexError(v)
    if not gone:
        return dag
    if gone >= set(dag.vertices) or gone >= set(dag.labels):
        raise RemovesEverythingError("removal would leave no vertex or no leaf")
    edges = set()
    for p in dag.vertices:
        if p in gone:
            continue
        stack = list(dag.children(p))
        seen = set(stack)
        while stack:
            c = stack.pop()
            if c not in gone:
                edges.add((p, c))
                continue
            for q in dag.children(c):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
    keep = [v for v in dag.vertices if v not in gone]
    return Dag(keep, edges, {v: lab for v, lab in dag.labels.items() if v not in gone})


@dataclass
class SimplificationResult:
    removed: frozenset
    reduced: Dag
    reduced_shortcut_free: Dag
    cluster_diff: list[frozenset[str]]
    uniqueness_certified: bool


def simplify(dag: Dag, index: SizeIndex) -> SimplificationResult:
    """Remove every non-I-lca vertex.

    When ``dag`` has the I-lca-property the result is additionally checked
    against the cluster characterization and the Hasse isomorphism; any
    mismatch raises ContractViolation.
    """
    if not index.requires_one:
        raise InputError("simplify needs an I-one index set (containing 1)")
    _, w = i_lca_vertices(dag, index)
    reduced = ominus(dag, w)
    reduced_sf = remove_shortcuts(reduced)
    before = cluster_system(dag)
    after = cluster_system(reduced)
    diff = sorted(before.members - after.members, key=lambda s: (len(s), sorted(s)))
    certified = has_i_lca_property(dag, index)
    if not is_i_lca_relevant(reduced, index):
        raise ContractViolation("reduced DAG is not I-lca-relevant")
    if certified:
        _check_characterization(dag, reduced, reduced_sf, before, index)
    return SimplificationResult(w, reduced, reduced_sf, diff, certified)


def _check_characterization(dag, reduced, reduced_sf, before: SetSystem, index: SizeIndex):
    if not has_i_lca_property(reduced, index):
        raise ContractViolation("reduced DAG lost the I-lca-property")
    expected = ic_members(before, index)
    if cluster_system(reduced) != expected:
        raise ContractViolation("reduced clusters differ from the (I-C) members")
    if not is_regular(reduced_sf):
        raise ContractViolation("shortcut-free reduced DAG is not regular")
    if not isomorphic_to_hasse(reduced_sf, expected):
        raise ContractViolation("shortcut-free reduced DAG is not the Hasse diagram of the (I-C) members")


def isomorphic_to_hasse(dag: Dag, sys: SetSystem) -> bool:
    """Whether v -> C(v) maps ``dag`` isomorphically onto the Hasse diagram of ``sys``."""
    cm = cluster_map(dag)
    if len(set(cm.values())) != len(dag.vertices) or set(cm.values()) != sys.members:
        return False
    h = build_hasse(sys)
    return {(cm[u], cm[w]) for u, w in dag.edges} == {
        (h.member_of[u], h.member_of[w]) for u, w in h.dag.edges
    }


@dataclass
class PreservationReport:
    s0: bool
    s1: bool
    s2: bool
    s3: bool
    s4: bool
    witnesses: dict[str, object] = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return self.s0 and self.s1 and self.s2 and self.s3 and self.s4

    def as_dict(self) -> dict:
        out = {k: getattr(self, k) for k in ("s0", "s1", "s2", "s3", "s4")}
        out["witnesses"] = {k: _jsonable(v) for k, v in sorted(self.witnesses.items())}
        return out


def _jsonable(w):
    if isinstance(w, (frozenset, set)):
        return sorted(w, key=vertex_key)
    if isinstance(w, (tuple, list)):
        return [_jsonable(x) for x in w]
    return w


def verify_preservation(original: Dag, transformed: Dag, index: SizeIndex) -> PreservationReport:
    w: dict[str, object] = {}
    g_cm, h_cm = cluster_map(original), cluster_map(transformed)
    shared = [v for v in transformed.vertices if v in original.index]

    s2 = len(shared) == len(transformed.vertices)
    if not s2:
        w["s2"] = next(v for v in transformed.vertices if v not in original.index)

    s0 = True
    g_members = set(g_cm.values())
    for v in transformed.vertices:
        if h_cm[v] not in g_members or (v in original.index and g_cm[v] != h_cm[v]):
            s0 = False
            w["s0"] = v
            break

    s1 = original.labels == transformed.labels
    if not s1:
        diff = set(original.labels.items()) ^ set(transformed.labels.items())
        w["s1"] = min((v for v, _ in diff), key=vertex_key)

    s3 = True
    for u, v in combinations(shared, 2):
        if (less(original, u, v) != less(transformed, u, v)
                or less(original, v, u) != less(transformed, v, u)):
            s3 = False
            w["s3"] = (u, v)
            break

    s4 = True
    if s1:
        for a in enumerate_subsets(original.ground, index):
            gm = _lca_mask(original, a)
            if not _single(gm):
                continue
            g_lca = original.vertices[gm.bit_length() - 1]
            hm = _lca_mask(transformed, a)
            if not _single(hm) or transformed.vertices[hm.bit_length() - 1] != g_lca:
                s4 = False
                w["s4"] = frozenset(a)
                break
    else:
        s4 = False
        w["s4"] = "leaf labels differ"
    return PreservationReport(s0, s1, s2, s3, s4, w)
