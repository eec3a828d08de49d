"""Leaf-labeled DAGs: validation, ancestry order, clusters and structural classifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Mapping

import networkx as nx

from .errors import (
    CyclicError,
    DuplicateLabelError,
    EmptyGraphError,
    LabeledInternalError,
    SelfLoopError,
    UnknownLabelError,
    UnknownVertexError,
    UnlabeledLeafError,
)
from .setsys import SetSystem, covering_pairs, fmt_set, kappa

Vertex = Hashable

# Above this many vertices leq() walks the graph instead of reading the closure.
CLOSURE_LIMIT = 4096


def vertex_key(v) -> tuple:
    """Sort key that tolerates a mix of integer and string ids."""
    return (0, v, "") if isinstance(v, int) else (1, 0, str(v))


def _find_cycle(vertices, children) -> list:
    color = dict.fromkeys(vertices, 0)
    for start in vertices:
        if color[start]:
            continue
        stack = [(start, iter(children[start]))]
        path = [start]
        color[start] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[v] = 2
                stack.pop()
                path.pop()
            elif color[nxt] == 1:
                return path[path.index(nxt):] + [nxt]
            elif color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(children[nxt])))
                path.append(nxt)
    return []


class Dag:
    """An immutable DAG whose leaves (out-degree 0) carry distinct string labels.

    The constructor validates every structural requirement and raises a
    subclass of :class:`~lcadag.errors.InputError` on the first violation.
    """

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[tuple[Vertex, Vertex]],
                 labels: Mapping[Vertex, str]):
        vs = sorted(set(vertices), key=vertex_key)
        if not vs:
            raise EmptyGraphError("a DAG needs at least one vertex")
        vset = set(vs)
        es = set()
        for u, w in edges:
            if u == w:
                raise SelfLoopError(u)
            for x in (u, w):
                if x not in vset:
                    raise UnknownVertexError(x)
            es.add((u, w))
        children = {v: [] for v in vs}
        for u, w in sorted(es, key=lambda e: (vertex_key(e[0]), vertex_key(e[1]))):
            children[u].append(w)
        cycle = _find_cycle(vs, children)
        if cycle:
            raise CyclicError(cycle)
        labels = dict(labels)
        for v, lab in labels.items():
            if v not in vset:
                raise UnknownVertexError(v)
            if not isinstance(lab, str) or not lab:
                raise UnlabeledLeafError(v)
            if children[v]:
                raise LabeledInternalError(v)
        seen: dict[str, Vertex] = {}
        for v in vs:
            if not children[v] and v not in labels:
                raise UnlabeledLeafError(v)
            if v in labels:
                lab = labels[v]
                if lab in seen:
                    raise DuplicateLabelError(lab, (seen[lab], v))
                seen[lab] = v
        self.vertices: tuple = tuple(vs)
        self.edges: frozenset = frozenset(es)
        self.labels: dict = {v: labels[v] for v in vs if v in labels}
        self._children = {v: tuple(c) for v, c in children.items()}

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[Vertex, Vertex]], leaves: Iterable[str] = (),
                   vertices: Iterable[Vertex] = ()) -> "Dag":
        """Build a DAG whose leaf ids double as their labels."""
        edges = list(edges)
        vs = set(vertices) | set(leaves) | {x for e in edges for x in e}
        return cls(vs, edges, {x: x for x in leaves})

    # -- equality and basic structure ------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Dag):
            return NotImplemented
        return (set(self.vertices) == set(other.vertices) and self.edges == other.edges
                and self.labels == other.labels)

    def __hash__(self):
        return hash((frozenset(self.vertices), self.edges, frozenset(self.labels.items())))

    def __repr__(self):
        es = ", ".join(f"{u!r}->{w!r}" for u, w in self.sorted_edges())
        return f"Dag({len(self.vertices)} vertices: {es})"

    def sorted_edges(self) -> list[tuple]:
        return sorted(self.edges, key=lambda e: (vertex_key(e[0]), vertex_key(e[1])))

    def children(self, v) -> tuple:
        self._check(v)
        return self._children[v]

    @cached_property
    def _parents(self) -> dict:
        ps = {v: [] for v in self.vertices}
        for u, w in self.sorted_edges():
            ps[w].append(u)
        return {v: tuple(p) for v, p in ps.items()}

    def parents(self, v) -> tuple:
        self._check(v)
        return self._parents[v]

    def _check(self, v):
        if v not in self.index:
            raise UnknownVertexError(v)

    @property
    def leaves(self) -> tuple:
        return tuple(self.labels)

    @property
    def roots(self) -> tuple:
        return tuple(v for v in self.vertices if not self._parents[v])

    @property
    def ground(self) -> frozenset[str]:
        return frozenset(self.labels.values())

    @cached_property
    def vertex_of_label(self) -> dict[str, Vertex]:
        return {lab: v for v, lab in self.labels.items()}

    def vertex_for(self, label: str):
        try:
            return self.vertex_of_label[label]
        except KeyError:
            raise UnknownLabelError(label) from None

    # -- reachability ----------------------------------------------------

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def topological_order(self) -> tuple:
        """Parents before children; ties broken by vertex order."""
        indeg = {v: len(self._parents[v]) for v in self.vertices}
        ready = [v for v in self.vertices if indeg[v] == 0]
        out = []
        while ready:
            v = ready.pop(0)
            out.append(v)
            for c in self._children[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    ready.append(c)
        return tuple(out)

    @cached_property
    def desc_mask(self) -> list[int]:
        """Bitmask (by vertex index) of the descendants of each vertex, itself included."""
        idx = self.index
        masks = [0] * len(self.vertices)
        for v in reversed(self.topological_order):
            m = 1 << idx[v]
            for c in self._children[v]:
                m |= masks[idx[c]]
            masks[idx[v]] = m
        return masks

    @cached_property
    def anc_mask(self) -> list[int]:
        """Bitmask of the ancestors of each vertex, itself included."""
        idx = self.index
        masks = [0] * len(self.vertices)
        for v in self.topological_order:
            m = 1 << idx[v]
            for p in self._parents[v]:
                m |= masks[idx[p]]
            masks[idx[v]] = m
        return masks

    @cached_property
    def _clusters(self) -> dict:
        cm: dict = {}
        for v in reversed(self.topological_order):
            if v in self.labels:
                cm[v] = frozenset([self.labels[v]])
            else:
                cm[v] = frozenset().union(*(cm[c] for c in self._children[v]))
        return cm

    def mask_to_vertices(self, mask: int) -> frozenset:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.vertices[i])
            mask >>= 1
            i += 1
        return frozenset(out)

    def descendants(self, v) -> frozenset:
        self._check(v)
        return self.mask_to_vertices(self.desc_mask[self.index[v]])

    def ancestors(self, v) -> frozenset:
        self._check(v)
        return self.mask_to_vertices(self.anc_mask[self.index[v]])


def validate(vertices: Iterable[Vertex], edges: Iterable[tuple[Vertex, Vertex]],
             labels: Mapping[Vertex, str]) -> Dag:
    """Admit a raw vertex/edge/label description as a :class:`Dag`."""
    return Dag(vertices, edges, labels)


def leq(dag: Dag, u, v) -> bool:
    """True iff ``u`` is a descendant of ``v`` (reflexive)."""
    dag._check(u)
    dag._check(v)
    if len(dag.vertices) <= CLOSURE_LIMIT:
        return bool(dag.desc_mask[dag.index[v]] >> dag.index[u] & 1)
    stack, seen = [v], {v}
    while stack:
        x = stack.pop()
        if x == u:
            return True
        for c in dag._children[x]:
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return False


def less(dag: Dag, u, v) -> bool:
    return u != v and leq(dag, u, v)


# -- clusters ---------------------------------------------------------------

def cluster_map(dag: Dag) -> dict[Vertex, frozenset[str]]:
    return dict(dag._clusters)


def _cluster_map(dag: Dag) -> dict:
    return dag._clusters


def clusters(dag: Dag) -> tuple[dict[Vertex, frozenset[str]], SetSystem]:
    """Per-vertex clusters and the de-duplicated cluster system."""
    cm = dict(_cluster_map(dag))
    return cm, SetSystem(dag.ground, frozenset(cm.values()))


def cluster_system(dag: Dag) -> SetSystem:
    return clusters(dag)[1]


# -- shortcuts --------------------------------------------------------------

def shortcuts(dag: Dag) -> list[tuple]:
    """Edges (u, w) for which w is also reachable through another child of u."""
    idx, dm = dag.index, dag.desc_mask
    out = []
    for u, w in dag.sorted_edges():
        bit = 1 << idx[w]
        if any(c != w and dm[idx[c]] & bit for c in dag._children[u]):
            out.append((u, w))
    return out


def remove_shortcuts(dag: Dag) -> Dag:
    """The unique shortcut-free DAG with the same vertices, order and clusters."""
    cut = set(shortcuts(dag))
    if not cut:
        return dag
    return Dag(dag.vertices, dag.edges - cut, dag.labels)


def delete_edge(dag: Dag, edge: tuple) -> Dag:
    if edge not in dag.edges:
        raise UnknownVertexError(edge)
    return Dag(dag.vertices, dag.edges - {edge}, dag.labels)


# -- classifiers ------------------------------------------------------------

def pcc_witness(dag: Dag) -> tuple | None:
    """First vertex pair on which order-comparability and cluster-comparability disagree."""
    cm = _cluster_map(dag)
    for u, v in combinations(dag.vertices, 2):
        comparable = leq(dag, u, v) or leq(dag, v, u)
        nested = cm[u] <= cm[v] or cm[v] <= cm[u]
        if comparable != nested:
            return (u, v)
    return None


def is_pcc(dag: Dag) -> bool:
    return pcc_witness(dag) is None


def regularity_witness(dag: Dag) -> dict | None:
    """Why v -> C(v) fails to be an isomorphism onto the Hasse diagram, or None."""
    cm = _cluster_map(dag)
    by_cluster: dict[frozenset, list] = {}
    for v in dag.vertices:
        by_cluster.setdefault(cm[v], []).append(v)
    for c, vs in by_cluster.items():
        if len(vs) > 1:
            return {"reason": "not injective", "cluster": sorted(c), "vertices": vs}
    image = {(cm[u], cm[w]) for u, w in dag.edges}
    hasse = covering_pairs(by_cluster)
    extra = image - hasse
    if extra:
        a, b = min(extra, key=lambda p: (fmt_set(p[0]), fmt_set(p[1])))
        return {"reason": "edge not a cover", "edge": [by_cluster[a][0], by_cluster[b][0]]}
    missing = hasse - image
    if missing:
        a, b = min(missing, key=lambda p: (fmt_set(p[0]), fmt_set(p[1])))
        return {"reason": "cover without edge", "edge": [by_cluster[a][0], by_cluster[b][0]]}
    return None


def is_regular(dag: Dag) -> bool:
    return regularity_witness(dag) is None


def phylogenetic_witness(dag: Dag):
    for v in dag.vertices:
        if len(dag._children[v]) == 1 and len(dag._parents[v]) <= 1:
            return v
    return None


def is_phylogenetic(dag: Dag) -> bool:
    return phylogenetic_witness(dag) is None


def _undirected(dag: Dag) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(dag.vertices)
    g.add_edges_from(dag.edges)
    return g


def connectivity_witness(dag: Dag) -> tuple | None:
    comps = sorted((sorted(c, key=vertex_key) for c in nx.connected_components(_undirected(dag))),
                   key=lambda c: vertex_key(c[0]))
    if len(comps) > 1:
        return (comps[0][0], comps[1][0])
    return None


def _galled_block_witness(dag: Dag) -> list | None:
    """A biconnected block that is neither an edge nor two internally disjoint directed paths."""
    g = _undirected(dag)
    blocks = sorted(
        (sorted(b, key=lambda e: (vertex_key(e[0]), vertex_key(e[1])))
         for b in nx.biconnected_component_edges(g)),
        key=lambda b: (vertex_key(b[0][0]), vertex_key(b[0][1])),
    )
    for block in blocks:
        if len(block) == 1:
            continue
        verts = {x for e in block for x in e}
        directed = [(u, w) for u, w in dag.edges if u in verts and w in verts]
        ok = len(directed) == len(verts)
        if ok:
            out = dict.fromkeys(verts, 0)
            inn = dict.fromkeys(verts, 0)
            for u, w in directed:
                out[u] += 1
                inn[w] += 1
            sources = [v for v in verts if inn[v] == 0]
            sinks = [v for v in verts if out[v] == 0]
            ok = (len(sources) == 1 and len(sinks) == 1
                  and out[sources[0]] == 2 and inn[sinks[0]] == 2
                  and all(inn[v] == 1 and out[v] == 1 for v in verts
                          if v != sources[0] and v != sinks[0]))
        if not ok:
            return sorted(verts, key=vertex_key)
    return None


@dataclass
class PropertyReport:
    """Named structural flags; each false flag has an entry in ``witnesses``."""

    connected: bool
    network: bool
    phylogenetic: bool
    pcc: bool
    regular: bool
    shortcut_free: bool
    tree: bool
    galled_tree: bool
    non_trivial: bool
    kappa: int | None = None
    witnesses: dict[str, object] = field(default_factory=dict)
    extra: dict[str, object] = field(default_factory=dict)

    FLAGS = ("connected", "network", "phylogenetic", "pcc", "regular", "shortcut_free",
             "tree", "galled_tree", "non_trivial")

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.FLAGS}
        d["kappa"] = self.kappa
        d.update(self.extra)
        d["witnesses"] = {k: _jsonable(v) for k, v in sorted(self.witnesses.items())}
        return d


def _jsonable(w):
    if isinstance(w, (frozenset, set)):
        return sorted(w, key=vertex_key)
    if isinstance(w, (tuple, list)):
        return [_jsonable(x) for x in w]
    if isinstance(w, dict):
        return {k: _jsonable(v) for k, v in w.items()}
    return w


def recognize_shape(dag: Dag) -> PropertyReport:
    w: dict[str, object] = {}

    def flag(name, witness):
        if witness is not None:
            w[name] = witness
        return witness is None

    connected = flag("connected", connectivity_witness(dag))
    roots = dag.roots
    network = flag("network", None if len(roots) == 1 else list(roots))
    phylo = flag("phylogenetic", phylogenetic_witness(dag))
    pcc = flag("pcc", pcc_witness(dag))
    regular = flag("regular", regularity_witness(dag))
    cuts = shortcuts(dag)
    shortcut_free = flag("shortcut_free", cuts[0] if cuts else None)
    reticulate = next((v for v in dag.vertices if len(dag._parents[v]) > 1), None)
    if not network:
        tree = flag("tree", {"roots": list(roots)})
        galled = flag("galled_tree", {"roots": list(roots)})
    else:
        tree = flag("tree", reticulate)
        galled = flag("galled_tree", _galled_block_witness(dag))
    k = kappa(cluster_system(dag))
    non_trivial = flag("non_trivial", None if k is not None else "every cluster is a singleton")
    return PropertyReport(
        connected=connected, network=network, phylogenetic=phylo, pcc=pcc, regular=regular,
        shortcut_free=shortcut_free, tree=tree, galled_tree=galled, non_trivial=non_trivial,
        kappa=k, witnesses=w,
    )
