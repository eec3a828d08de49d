"""Seeded instance generators and the law-checking corpus runner.

Every law is a pair of functions: ``make(rng, params)`` draws an instance of
the flavor the law needs, and ``check(instance)`` returns ``None`` when the
law holds (or its hypothesis is not met) and a failure message otherwise.
Checks are pure functions of the instance so a failing instance can be
shrunk and replayed.
"""

from __future__ import annotations

import random
import string
import time
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Callable

from .dag import (
    Dag,
    cluster_map,
    cluster_system,
    connectivity_witness,
    delete_edge,
    is_pcc,
    is_phylogenetic,
    is_regular,
    leq,
    recognize_shape,
    remove_shortcuts,
    shortcuts,
)
from .documents import dag_to_document, system_to_document
from .errors import ContractViolation, InfeasibleParamsError, InputError
from .hasse import hasse_dag
from .lca import has_i_lca_property, i_lca_vertices, is_i_lca_relevant, level_gaps
from .setsys import (
    SetSystem,
    classify_structure,
    ic_members,
    is_i_ary,
    is_pre_i_ary,
    minimal_supersets,
    pre_i_ary_witness,
    validate_system,
)
from .sizes import SizeIndex
from .transform import ominus, simplify, verify_preservation

DAG_FLAVORS = ("arbitrary_dag", "pcc_dag", "property_dag")
SYSTEM_FLAVORS = ("tree_like_system", "galled_tree_like_system", "n3o_system", "grounded_system")
FLAVORS = DAG_FLAVORS + SYSTEM_FLAVORS


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    leaf_count: tuple[int, int] = (2, 6)
    internal_vertices: tuple[int, int] = (1, 8)
    edge_density: float = 0.4
    flavor: str = "arbitrary_dag"
    sizes: tuple[int, ...] | None = None
    max_vertices: int = 16

    def __post_init__(self):
        lo, hi = self.leaf_count
        ilo, ihi = self.internal_vertices
        if lo < 1 or lo > hi:
            raise InfeasibleParamsError(f"bad leaf_count range {self.leaf_count}")
        if ilo < 0 or ilo > ihi:
            raise InfeasibleParamsError(f"bad internal_vertices range {self.internal_vertices}")
        if not 0.0 <= self.edge_density <= 1.0:
            raise InfeasibleParamsError("edge_density must lie in [0, 1]")
        if self.flavor not in FLAVORS:
            raise InfeasibleParamsError(f"unknown flavor {self.flavor!r}")
        if self.max_vertices < lo:
            raise InfeasibleParamsError("max_vertices is smaller than the minimum leaf count")
        if self.sizes is not None and 1 not in self.sizes:
            raise InfeasibleParamsError("sizes must contain 1")

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "leaf_count": list(self.leaf_count),
            "internal_vertices": list(self.internal_vertices),
            "edge_density": self.edge_density,
            "flavor": self.flavor,
            "sizes": list(self.sizes) if self.sizes else None,
            "max_vertices": self.max_vertices,
        }


def leaf_labels(n: int) -> list[str]:
    if n <= 26:
        return list(string.ascii_lowercase[:n])
    return [f"x{i}" for i in range(n)]


def random_index(rng: random.Random, n: int, must: int | None = None) -> SizeIndex:
    """A random I-one subset of 1..n; contains ``must`` when given."""
    sizes = {1}
    if must is not None:
        sizes.add(must)
    if n >= 2:
        extra = [k for k in range(2, n + 1) if rng.random() < 0.5]
        if not extra and must is None:
            extra = [rng.randint(2, n)]
        sizes.update(extra)
    return SizeIndex.one(sizes)


# -- DAG generators ---------------------------------------------------------

def random_dag(rng: random.Random, n_leaves: int, n_internal: int, density: float) -> Dag:
    """Internal vertices 0..m-1 in topological order, leaves m..m+n-1."""
    m = n_internal
    labels = leaf_labels(n_leaves)
    leaves = list(range(m, m + n_leaves))
    edges = set()
    for i in range(m):
        cands = list(range(i + 1, m)) + leaves
        for c in cands:
            if rng.random() < density:
                edges.add((i, c))
        if not any(u == i for u, _ in edges):
            edges.add((i, rng.choice(cands)))
    if m:
        for x in leaves:
            if not any(w == x for _, w in edges) and rng.random() < 0.9:
                edges.add((rng.randrange(m), x))
    return Dag(range(m + n_leaves), edges, dict(zip(leaves, labels)))


def _strict_descendants_not_children(dag: Dag, u) -> list:
    kids = set(dag.children(u))
    return [w for w in sorted(dag.descendants(u) - {u} - kids, key=dag.index.get)]


def add_random_shortcut(rng: random.Random, dag: Dag) -> Dag:
    """Add one edge u -> w where w is already a non-child descendant of u."""
    options = [(u, w) for u in dag.vertices for w in _strict_descendants_not_children(dag, u)]
    if not options:
        return dag
    return Dag(dag.vertices, dag.edges | {rng.choice(options)}, dag.labels)


def _next_id(dag: Dag) -> int:
    return max((v for v in dag.vertices if isinstance(v, int)), default=-1) + 1


def _subdivide(rng: random.Random, dag: Dag) -> Dag:
    u, w = rng.choice(dag.sorted_edges())
    x = _next_id(dag)
    return Dag(dag.vertices + (x,), (dag.edges - {(u, w)}) | {(u, x), (x, w)}, dag.labels)


def _insert_vertex(rng: random.Random, dag: Dag) -> Dag:
    vs = list(dag.vertices)
    kids = rng.sample(vs, rng.randint(1, min(3, len(vs))))
    below = set().union(*(dag.descendants(k) for k in kids))
    pool = [v for v in vs if v not in below and v not in dag.labels]
    parents = rng.sample(pool, rng.randint(0, min(2, len(pool)))) if pool else []
    x = _next_id(dag)
    edges = set(dag.edges) | {(x, k) for k in kids} | {(p, x) for p in parents}
    return Dag(vs + [x], edges, dag.labels)


def mutate(rng: random.Random, dag: Dag, steps: int, max_vertices: int,
           accept: Callable[[Dag], bool]) -> Dag:
    """Apply up to ``steps`` random edits, keeping only those ``accept`` approves."""
    for _ in range(steps):
        kind = rng.choice(("subdivide", "shortcut", "insert", "insert"))
        if kind != "shortcut" and len(dag.vertices) >= max_vertices:
            kind = "shortcut"
        try:
            if kind == "subdivide":
                cand = _subdivide(rng, dag) if dag.edges else dag
            elif kind == "shortcut":
                cand = add_random_shortcut(rng, dag)
            else:
                cand = _insert_vertex(rng, dag)
        except InputError:
            continue
        if cand is not dag and accept(cand):
            dag = cand
    return dag


# -- set-system generators --------------------------------------------------

def random_grounded_system(rng: random.Random, labels: list[str], extra: int,
                           with_ground: float = 0.7) -> SetSystem:
    n = len(labels)
    sets = [frozenset([x]) for x in labels]
    if n >= 2:
        for _ in range(extra):
            sets.append(frozenset(rng.sample(labels, rng.randint(2, n))))
        if rng.random() < with_ground:
            sets.append(frozenset(labels))
    return SetSystem.of(sets, labels)


def make_pre_i_ary(sys: SetSystem, index: SizeIndex) -> SetSystem:
    """Smallest-effort repair: add X when A has no superset, else the meet of A's minimal supersets."""
    while True:
        a = pre_i_ary_witness(sys, index)
        if a is None:
            return sys
        mins = minimal_supersets(sys, a)
        new = sys.ground if not mins else frozenset.intersection(*mins)
        sys = SetSystem(sys.ground, sys.members | {new})


def random_hierarchy(rng: random.Random, labels: list[str], fanout: int = 4) -> SetSystem:
    sets = {frozenset(labels)} | {frozenset([x]) for x in labels}
    todo = [list(labels)]
    while todo:
        part = todo.pop()
        if len(part) < 3:
            continue
        rng.shuffle(part)
        k = rng.randint(2, min(fanout, len(part)))
        cuts = sorted(rng.sample(range(1, len(part)), k - 1))
        for lo, hi in zip([0] + cuts, cuts + [len(part)]):
            piece = part[lo:hi]
            sets.add(frozenset(piece))
            todo.append(piece)
    return SetSystem.of(sets, labels)


def _children_sets(sys: SetSystem, m: frozenset) -> list[frozenset]:
    below = [c for c in sys.members if c < m]
    return [c for c in below if not any(c < d for d in below)]


def random_galled_system(rng: random.Random, labels: list[str], attempts: int = 8) -> SetSystem:
    """A hierarchy with unions of sibling clusters added while the result stays galled-tree-like."""
    sys = random_hierarchy(rng, labels, fanout=6)
    for _ in range(attempts):
        parents = [m for m in sys.sorted_members() if len(_children_sets(sys, m)) >= 3]
        if not parents:
            break
        kids = sorted(_children_sets(sys, rng.choice(parents)), key=sorted)
        a, b, c = rng.sample(kids, 3)
        new = {a | b} if rng.random() < 0.5 else {a | b, b | c}
        cand = SetSystem(sys.ground, sys.members | new)
        if classify_structure(cand).galled_tree_like:
            sys = cand
    return sys


def random_n3o_system(rng: random.Random, labels: list[str], attempts: int = 8) -> SetSystem:
    sys = random_grounded_system(rng, labels, 0, with_ground=1.0)
    for _ in range(attempts):
        if len(labels) < 2:
            break
        cand = SetSystem(sys.ground, sys.members | {frozenset(rng.sample(labels, rng.randint(2, len(labels))))})
        if classify_structure(cand).n3o:
            sys = cand
    return sys


def _system_for(rng: random.Random, flavor: str, labels: list[str]) -> SetSystem:
    if flavor == "tree_like_system":
        return random_hierarchy(rng, labels)
    if flavor == "galled_tree_like_system":
        return random_galled_system(rng, labels)
    if flavor == "n3o_system":
        return random_n3o_system(rng, labels)
    if flavor == "grounded_system":
        return random_grounded_system(rng, labels, rng.randint(0, 2 * len(labels)))
    raise InfeasibleParamsError(f"{flavor!r} is not a set-system flavor")


def gen_system(params: GenParams) -> SetSystem:
    if params.flavor in DAG_FLAVORS:
        return cluster_system(gen_dag(params))
    rng = random.Random(params.seed)
    return _system_for(rng, params.flavor, leaf_labels(rng.randint(*params.leaf_count)))


def property_dag(rng: random.Random, labels: list[str], index: SizeIndex, max_vertices: int,
                 base: SetSystem | None = None, keep: Callable[[Dag], bool] | None = None) -> Dag:
    """A DAG with the I-lca-property: Hasse diagram of a pre-I-ary system, then mutated."""
    for _ in range(50):
        sys = base if base is not None else make_pre_i_ary(
            random_grounded_system(rng, labels, rng.randint(0, len(labels))), index)
        if len(sys) <= max_vertices:
            break
    else:
        sys = make_pre_i_ary(SetSystem.of([[x] for x in labels], labels), index)
    dag = hasse_dag(sys)
    room = max(0, max_vertices - len(dag.vertices))

    def ok(d):
        return has_i_lca_property(d, index) and (keep is None or keep(d))

    return mutate(rng, dag, rng.randint(0, room + 2), max_vertices, ok)


def pcc_dag(rng: random.Random, n_leaves: int, n_internal: int, density: float,
            max_vertices: int) -> Dag:
    if rng.random() < 0.5:
        for _ in range(40):
            d = random_dag(rng, n_leaves, n_internal, density)
            if is_pcc(d):
                return d
    labels = leaf_labels(n_leaves)
    dag = hasse_dag(random_grounded_system(rng, labels, rng.randint(0, n_leaves + 2)))
    for _ in range(rng.randint(0, 3)):
        dag = add_random_shortcut(rng, dag)
    return dag


def gen_dag(params: GenParams) -> Dag:
    """Deterministic DAG of the requested flavor."""
    rng = random.Random(params.seed)
    n = rng.randint(*params.leaf_count)
    m = rng.randint(*params.internal_vertices)
    m = max(0, min(m, params.max_vertices - n))
    if params.flavor == "arbitrary_dag":
        return random_dag(rng, n, m, params.edge_density)
    if params.flavor == "pcc_dag":
        return pcc_dag(rng, n, m, params.edge_density, params.max_vertices)
    if params.flavor == "property_dag":
        index = SizeIndex.one(params.sizes or (1, 2))
        return property_dag(rng, leaf_labels(n), index, params.max_vertices)
    return hasse_dag(_system_for(rng, params.flavor, leaf_labels(n)))


# -- laws -------------------------------------------------------------------

@dataclass
class Instance:
    dag: Dag | None = None
    system: SetSystem | None = None
    sizes: SizeIndex = field(default_factory=lambda: SizeIndex.one((1,)))
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out: dict = {"sizes": list(self.sizes.sizes)}
        if self.dag is not None:
            out["dag"] = dag_to_document(self.dag)
        if self.system is not None:
            out["system"] = system_to_document(self.system)
        if self.extra:
            out["extra"] = {k: sorted(v) if isinstance(v, (set, frozenset)) else v
                            for k, v in self.extra.items()}
        return out


@dataclass(frozen=True)
class Law:
    make: Callable[[random.Random, GenParams], Instance]
    check: Callable[[Instance], str | None]
    flavor: str
    max_vertices: int | None = None


def _draw(rng: random.Random, params: GenParams) -> tuple[int, int]:
    n = rng.randint(*params.leaf_count)
    m = rng.randint(*params.internal_vertices)
    return n, max(0, min(m, params.max_vertices - n))


def _non_lca(dag: Dag, index: SizeIndex) -> frozenset:
    return i_lca_vertices(dag, index)[1]


def _random_subset(rng: random.Random, items) -> frozenset:
    items = sorted(items, key=repr)
    if not items:
        return frozenset()
    chosen = [x for x in items if rng.random() < 0.5]
    return frozenset(chosen or [rng.choice(items)])


def _fail_report(rep) -> str | None:
    if rep.all_pass:
        return None
    bad = [k for k in ("s0", "s1", "s2", "s3", "s4") if not getattr(rep, k)]
    return f"preservation failed: {bad} witnesses={rep.as_dict()['witnesses']}"


def _make_arbitrary_with_w(rng, params):
    n, m = _draw(rng, params)
    dag = random_dag(rng, n, m, params.edge_density)
    index = random_index(rng, n)
    return Instance(dag=dag, sizes=index, extra={"W": _random_subset(rng, _non_lca(dag, index))})


def _check_removal_preserves(inst: Instance) -> str | None:
    g, index = inst.dag, inst.sizes
    w_all = _non_lca(g, index)
    w = frozenset(inst.extra.get("W", ())) & set(g.vertices)
    if not w <= w_all:
        return None
    msg = _fail_report(verify_preservation(g, ominus(g, w), index))
    if msg:
        return f"W={sorted(w, key=repr)}: {msg}"
    full = ominus(g, w_all)
    msg = _fail_report(verify_preservation(g, full, index))
    if msg:
        return f"full W: {msg}"
    if not is_i_lca_relevant(full, index):
        return "G minus all non-lca vertices is not I-lca-relevant"
    return None


def _make_pcc(rng, params):
    n, m = _draw(rng, params)
    dag = pcc_dag(rng, n, m, params.edge_density, params.max_vertices)
    return Instance(dag=dag, sizes=random_index(rng, len(dag.ground)))


def _check_pcc_property_iff_pre_ary(inst):
    g, index = inst.dag, inst.sizes
    if not is_pcc(g):
        return None
    prop = has_i_lca_property(g, index)
    pre = is_pre_i_ary(cluster_system(g), index)
    if prop != pre:
        return f"lca-property={prop} but pre-I-ary={pre}"
    return None


def _make_grounded_system(rng, params):
    n = rng.randint(*params.leaf_count)
    labels = leaf_labels(n)
    index = random_index(rng, n)
    sys = random_grounded_system(rng, labels, rng.randint(0, 2 * n))
    mode = rng.randrange(3)
    if mode >= 1:
        sys = make_pre_i_ary(sys, index)
    if mode == 2:
        sys = ic_members(sys, index)
    return Instance(system=sys, sizes=index)


def _check_hasse_property_iff_pre_ary(inst):
    sys, index = inst.system, inst.sizes
    if not validate_system(sys).grounded:
        return None
    g = hasse_dag(sys)
    if cluster_system(g) != sys:
        return "Hasse realization has the wrong clusters"
    prop = has_i_lca_property(g, index)
    if is_pre_i_ary(sys, index) != prop:
        return f"pre-I-ary={not prop} but Hasse lca-property={prop}"
    ary = is_i_ary(sys, index)
    if ary != (prop and is_i_lca_relevant(g, index)):
        return f"I-ary={ary} disagrees with Hasse property+relevance"
    return None


def _make_property(rng, params):
    n = rng.randint(*params.leaf_count)
    n = min(n, params.max_vertices)
    index = random_index(rng, n)
    dag = property_dag(rng, leaf_labels(n), index, params.max_vertices)
    return Instance(dag=dag, sizes=index)


def _check_simplify_characterization(inst):
    g, index = inst.dag, inst.sizes
    if not has_i_lca_property(g, index):
        return None
    try:
        res = simplify(g, index)
    except ContractViolation as exc:
        return str(exc)
    if not res.uniqueness_certified:
        return "simplify did not certify an input that has the lca-property"
    for name, h in (("G-W", res.reduced), ("(G-W)^-", res.reduced_shortcut_free)):
        msg = _fail_report(verify_preservation(g, h, index))
        if msg:
            return f"{name}: {msg}"
        if not is_i_lca_relevant(h, index) or not has_i_lca_property(h, index):
            return f"{name} is not I-lca-relevant with the lca-property"
    if not is_i_ary(cluster_system(res.reduced), index):
        return "reduced clusters are not I-ary"
    return None


def _make_small_property(rng, params):
    return _make_property(rng, replace(params, max_vertices=min(params.max_vertices, 10)))


def _admissible(g: Dag, h: Dag, index: SizeIndex) -> bool:
    return is_i_lca_relevant(h, index) and verify_preservation(g, h, index).all_pass


def _check_uniqueness(inst):
    g, index = inst.dag, inst.sizes
    if not has_i_lca_property(g, index):
        return None
    w = _non_lca(g, index)
    inner = [v for v in g.vertices if v not in g.labels]
    hits, hits_sf = [], []
    for r in range(len(inner) + 1):
        for cand in combinations(inner, r):
            h = ominus(g, cand)
            if _admissible(g, h, index):
                hits.append(frozenset(cand))
            if _admissible(g, remove_shortcuts(h), index):
                hits_sf.append(frozenset(cand))
    if hits != [w]:
        return f"admissible sets {[sorted(x, key=repr) for x in hits]} != [W={sorted(w, key=repr)}]"
    if hits_sf != [w]:
        return f"shortcut-free admissible sets {[sorted(x, key=repr) for x in hits_sf]} != [W]"
    return None


def _make_shaped(kind: str):
    def make(rng, params):
        n = max(2, rng.randint(*params.leaf_count))
        labels = leaf_labels(n)
        base = random_hierarchy(rng, labels) if kind == "tree" else random_galled_system(rng, labels)
        k = rng.randint(2, classify_structure(base).kappa)
        index = random_index(rng, n, must=k)
        flag = "tree_like" if kind == "tree" else "galled_tree_like"

        def keep(d):
            rep = classify_structure(cluster_system(d))
            kap = rep.kappa
            return getattr(rep, flag) and kap is not None and k <= kap

        dag = property_dag(rng, labels, index, max(params.max_vertices, len(base) + 2), base=base, keep=keep)
        return Instance(dag=dag, sizes=index, extra={"k": k})
    return make


def _check_shape(kind: str):
    def check(inst):
        g, index = inst.dag, inst.sizes
        clusters = cluster_system(g)
        rep = classify_structure(clusters)
        ok_k = rep.kappa is not None and any(1 < k <= rep.kappa for k in index.sizes)
        hyp = rep.tree_like if kind == "tree" else rep.galled_tree_like
        if not (hyp and ok_k and has_i_lca_property(g, index)):
            return None
        res = simplify(g, index)
        out = res.reduced_shortcut_free
        shape = recognize_shape(out)
        if cluster_system(out) != clusters:
            return "simplified DAG lost clusters"
        if not is_phylogenetic(out):
            return "simplified DAG is not phylogenetic"
        if kind == "tree" and not shape.tree:
            return f"simplified DAG is not a tree: {shape.witnesses.get('tree')}"
        if kind == "galled" and not shape.galled_tree:
            return f"simplified DAG is not a galled tree: {shape.witnesses.get('galled_tree')}"
        return None
    return check


def _make_system(flavor):
    def make(rng, params):
        n = rng.randint(*params.leaf_count)
        return Instance(system=_system_for(rng, flavor, leaf_labels(n)),
                        sizes=random_index(rng, n))
    return make


def _check_hasse_shape(kind):
    def check(inst):
        rep = classify_structure(inst.system)
        hyp = rep.tree_like if kind == "tree" else rep.galled_tree_like
        if not hyp:
            return None
        shape = recognize_shape(hasse_dag(inst.system))
        if kind == "tree" and not shape.tree:
            return f"Hasse diagram of a hierarchy is not a tree: {shape.witnesses.get('tree')}"
        if not shape.galled_tree:
            return f"Hasse diagram is not a galled tree: {shape.witnesses.get('galled_tree')}"
        if shape.tree != rep.tree_like:
            return "tree shape disagrees with tree-likeness"
        return None
    return check


def _make_arbitrary(rng, params):
    n, m = _draw(rng, params)
    dag = random_dag(rng, n, m, params.edge_density)
    return Instance(dag=dag, sizes=random_index(rng, n), extra={"perm_seed": rng.randrange(2**32)})


def _check_shortcut_removal(inst):
    g = inst.dag
    h = remove_shortcuts(g)
    if set(h.vertices) != set(g.vertices):
        return "vertex set changed"
    if shortcuts(h):
        return f"shortcut {shortcuts(h)[0]} survived"
    if remove_shortcuts(h) != h:
        return "not idempotent"
    if cluster_map(h) != cluster_map(g):
        return "clusters changed"
    for u in g.vertices:
        for v in g.vertices:
            if leq(g, u, v) != leq(h, u, v):
                return f"order changed on ({u!r}, {v!r})"
    rng = random.Random(inst.extra.get("perm_seed", 0))
    one = g
    while True:
        cuts = shortcuts(one)
        if not cuts:
            break
        one = delete_edge(one, rng.choice(cuts))
    if one != h:
        return "removing shortcuts one at a time gave a different DAG"
    return None


def _make_with_shortcut(rng, params):
    relevant = rng.random() < 0.5
    for _ in range(10):
        n, m = _draw(rng, params)
        dag = random_dag(rng, n, m, params.edge_density)
        index = random_index(rng, n)
        if relevant:
            dag = ominus(dag, _non_lca(dag, index))
        dag = add_random_shortcut(rng, dag)
        cuts = shortcuts(dag)
        if cuts:
            break
    extra = {"edge": list(rng.choice(cuts))} if cuts else {}
    return Instance(dag=dag, sizes=index, extra=extra)


def _check_shortcut_deletion_preserves(inst):
    g, index = inst.dag, inst.sizes
    edge = tuple(inst.extra.get("edge", ()))
    if edge not in set(shortcuts(g)):
        return None
    h = delete_edge(g, edge)
    msg = _fail_report(verify_preservation(g, h, index))
    if msg:
        return msg
    if is_i_lca_relevant(g, index) and not is_i_lca_relevant(h, index):
        return "deleting a shortcut destroyed I-lca-relevance"
    return None


def _check_property_connected(inst):
    g, index = inst.dag, inst.sizes
    if len(index.effective(len(g.ground))) > 1 and has_i_lca_property(g, index):
        w = connectivity_witness(g)
        if w is not None:
            return f"disconnected: {w}"
    return None


def _make_property_with_w(rng, params):
    inst = _make_property(rng, params)
    inst.extra["W"] = _random_subset(rng, _non_lca(inst.dag, inst.sizes))
    return inst


def _check_removal_keeps_property(inst):
    g, index = inst.dag, inst.sizes
    w = frozenset(inst.extra.get("W", ())) & set(g.vertices)
    if not has_i_lca_property(g, index) or not w <= _non_lca(g, index):
        return None
    if not has_i_lca_property(ominus(g, w), index):
        return "G minus W lost the lca-property"
    return None


def _check_relevant_property_ary(inst):
    g, index = inst.dag, inst.sizes
    for h in (g, ominus(g, _non_lca(g, index))):
        if is_i_lca_relevant(h, index) and has_i_lca_property(h, index):
            if not is_i_ary(cluster_system(h), index):
                return "relevant DAG with the lca-property has a non-I-ary cluster system"
    return None


def _check_property_pre_ary(inst):
    g, index = inst.dag, inst.sizes
    if has_i_lca_property(g, index) and not is_pre_i_ary(cluster_system(g), index):
        return "cluster system of a DAG with the lca-property is not pre-I-ary"
    return None


def _make_n3o_dag(rng, params):
    n, m = _draw(rng, params)
    dag = None
    if rng.random() < 0.5:
        for _ in range(30):
            d = random_dag(rng, n, m, params.edge_density)
            if classify_structure(cluster_system(d)).n3o:
                dag = d
                break
    if dag is None:
        labels = leaf_labels(n)
        base = hasse_dag(random_n3o_system(rng, labels))
        dag = mutate(rng, base, rng.randint(0, 4), params.max_vertices,
                     lambda d: classify_structure(cluster_system(d)).n3o)
    kap = classify_structure(cluster_system(dag)).kappa
    must = rng.randint(2, kap) if kap else None
    return Instance(dag=dag, sizes=random_index(rng, len(dag.ground), must=must))


def _check_n3o_levels(inst):
    g = inst.dag
    if not classify_structure(cluster_system(g)).n3o:
        return None
    gaps = level_gaps(g)
    if gaps:
        v = min(gaps, key=repr)
        return f"vertex {v!r} is an lca at some size >= 2 but not at sizes {gaps[v]}"
    return None


def _check_n3o_all_ic(inst):
    g, index = inst.dag, inst.sizes
    sys = cluster_system(g)
    rep = classify_structure(sys)
    if not (rep.n3o and rep.non_trivial and any(1 < k <= rep.kappa for k in index.sizes)):
        return None
    got = ic_members(sys, index)
    if got != sys:
        missing = sorted(sorted(m) for m in sys.members - got.members)
        return f"clusters without an (I-C) witness: {missing}"
    return None


def _make_relevant(rng, params):
    n, m = _draw(rng, params)
    dag = random_dag(rng, n, m, params.edge_density)
    index = random_index(rng, n)
    dag = ominus(dag, _non_lca(dag, index))
    for _ in range(rng.randint(0, 3)):
        dag = add_random_shortcut(rng, dag)
    return Instance(dag=dag, sizes=index)


def _check_relevant_regular(inst):
    g, index = inst.dag, inst.sizes
    if is_i_lca_relevant(g, index) and not is_regular(remove_shortcuts(g)):
        return "shortcut-free relevant DAG is not regular"
    return None


def _check_hasse_is_clean(inst):
    sys = inst.system
    h = hasse_dag(sys)
    if shortcuts(h):
        return "Hasse diagram has a shortcut"
    if not is_pcc(h):
        return "Hasse diagram violates PCC"
    if validate_system(sys).grounded:
        if cluster_system(h) != sys:
            return "relabeled Hasse diagram has the wrong clusters"
        if not is_regular(h) or not is_phylogenetic(h):
            return "Hasse diagram of a grounded system is not regular and phylogenetic"
    return None


def ominus_sequential(dag: Dag, order) -> frozenset:
    """Edge set after removing ``order`` one vertex at a time, on raw edge sets."""
    edges = set(dag.edges)
    for v in order:
        ins = [p for p, q in edges if q == v]
        outs = [q for p, q in edges if p == v]
        edges = {(p, q) for p, q in edges if v not in (p, q)} | {(p, q) for p in ins for q in outs}
    return frozenset(edges)


def _make_order(rng, params):
    inst = _make_arbitrary(rng, params)
    inner = [v for v in inst.dag.vertices if v not in inst.dag.labels]
    w = [v for v in inner if rng.random() < 0.5]
    inst.extra = {"W": w, "perm_seed": rng.randrange(2**32)}
    return inst


def _check_order(inst):
    g = inst.dag
    w = [v for v in inst.extra.get("W", []) if v in g.index and v not in g.labels]
    direct = ominus(g, w).edges
    rng = random.Random(inst.extra.get("perm_seed", 0))
    for _ in range(2):
        perm = list(w)
        rng.shuffle(perm)
        seq = ominus_sequential(g, perm)
        if seq != direct:
            return f"order {perm} gives {sorted(seq ^ direct)} difference"
    return None


LAWS: dict[str, Law] = {
    "removal_preserves": Law(_make_arbitrary_with_w, _check_removal_preserves, "arbitrary_dag"),
    "pcc_property_iff_pre_ary": Law(_make_pcc, _check_pcc_property_iff_pre_ary, "pcc_dag"),
    "hasse_property_iff_pre_ary": Law(_make_grounded_system, _check_hasse_property_iff_pre_ary, "grounded_system"),
    "simplify_characterization": Law(_make_property, _check_simplify_characterization, "property_dag"),
    "simplify_uniqueness": Law(_make_small_property, _check_uniqueness, "property_dag", 10),
    "hasse_tree": Law(_make_system("tree_like_system"), _check_hasse_shape("tree"), "tree_like_system"),
    "hasse_galled_tree": Law(_make_system("galled_tree_like_system"), _check_hasse_shape("galled"),
                          "galled_tree_like_system"),
    "simplify_to_tree": Law(_make_shaped("tree"), _check_shape("tree"), "property_dag"),
    "simplify_to_galled_tree": Law(_make_shaped("galled"), _check_shape("galled"), "property_dag"),
    "shortcut_removal": Law(_make_arbitrary, _check_shortcut_removal, "arbitrary_dag"),
    "hasse_is_clean": Law(_make_system("grounded_system"), _check_hasse_is_clean, "grounded_system"),
    "shortcut_deletion_preserves": Law(_make_with_shortcut, _check_shortcut_deletion_preserves, "arbitrary_dag"),
    "property_connected": Law(_make_property, _check_property_connected, "property_dag"),
    "removal_keeps_property": Law(_make_property_with_w, _check_removal_keeps_property, "property_dag"),
    "relevant_property_ary": Law(_make_property, _check_relevant_property_ary, "property_dag"),
    "n3o_levels": Law(_make_n3o_dag, _check_n3o_levels, "n3o_system"),
    "n3o_all_ic": Law(_make_n3o_dag, _check_n3o_all_ic, "n3o_system"),
    "property_pre_ary": Law(_make_property, _check_property_pre_ary, "property_dag"),
    "relevant_regular": Law(_make_relevant, _check_relevant_regular, "arbitrary_dag"),
    "ominus_order": Law(_make_order, _check_order, "arbitrary_dag"),
}


# -- runner -----------------------------------------------------------------

@dataclass
class LawResult:
    law: str
    trials: int = 0
    passed: int = 0
    failed: int = 0
    seconds: float = 0.0
    counterexample: dict | None = None

    def as_dict(self) -> dict:
        return {
            "law": self.law,
            "trials": self.trials,
            "passed": self.passed,
            "failed": self.failed,
            "seconds": round(self.seconds, 3),
            "counterexample": self.counterexample,
        }


@dataclass
class CorpusReport:
    results: dict[str, LawResult]

    @property
    def ok(self) -> bool:
        return all(r.failed == 0 for r in self.results.values())

    def as_dict(self, timings: bool = True) -> dict:
        out = {}
        for name, r in self.results.items():
            d = r.as_dict()
            if not timings:
                d.pop("seconds")
            out[name] = d
        return {"ok": self.ok, "laws": out}


def _run_check(law: Law, inst: Instance) -> str | None:
    try:
        return law.check(inst)
    except ContractViolation as exc:
        return f"contract violation: {exc}"
    except InputError as exc:
        return f"unexpected input error: {type(exc).__name__}: {exc}"


def _drop_vertex(dag: Dag, v) -> Dag | None:
    """``dag`` without ``v``: plain deletion if valid, otherwise bridged removal."""
    try:
        return Dag([x for x in dag.vertices if x != v], {e for e in dag.edges if v not in e},
                   {x: lab for x, lab in dag.labels.items() if x != v})
    except InputError:
        pass
    try:
        return ominus(dag, [v])
    except InputError:
        return None


def _shrink_candidates(inst: Instance):
    if inst.dag is not None and len(inst.dag.vertices) > 1:
        for v in inst.dag.vertices:
            d = _drop_vertex(inst.dag, v)
            if d is not None:
                yield replace(inst, dag=d)
    if inst.system is not None:
        sys = inst.system
        for m in sys.sorted_members():
            if len(m) > 1:
                yield replace(inst, system=SetSystem(sys.ground, sys.members - {m}))
        if len(sys.ground) > 1:
            for x in sorted(sys.ground):
                members = {m - {x} for m in sys.members} - {frozenset()}
                yield replace(inst, system=SetSystem(sys.ground - {x}, members))


def shrink(law: Law, inst: Instance, budget: int = 200) -> Instance:
    """Greedy vertex/member removal while the law still fails."""
    for _ in range(budget):
        for cand in _shrink_candidates(inst):
            if _run_check(law, cand) is not None:
                inst = cand
                break
        else:
            return inst
    return inst


def check_corpus(laws, params: GenParams | None = None, trials: int = 100) -> CorpusReport:
    """Run each named law on ``trials`` generated instances."""
    params = params or GenParams()
    unknown = [name for name in laws if name not in LAWS]
    if unknown:
        raise InputError(f"unknown laws: {unknown}; known: {sorted(LAWS)}")
    results = {}
    for name in laws:
        law = LAWS[name]
        lp = params if law.max_vertices is None else replace(
            params, max_vertices=min(params.max_vertices, law.max_vertices))
        res = LawResult(name)
        start = time.perf_counter()
        for trial in range(trials):
            rng = random.Random(f"{params.seed}/{name}/{trial}")
            inst = law.make(rng, lp)
            msg = _run_check(law, inst)
            res.trials += 1
            if msg is None:
                res.passed += 1
                continue
            res.failed += 1
            if res.counterexample is None:
                small = shrink(law, inst)
                res.counterexample = {
                    "trial": trial,
                    "params": lp.as_dict(),
                    "message": _run_check(law, small) or msg,
                    "original": inst.as_dict(),
                    "instance": small.as_dict(),
                }
        res.seconds = time.perf_counter() - start
        results[name] = res
    return CorpusReport(results)


def all_laws() -> list[str]:
    return list(LAWS)


__all__ = [
    "FLAVORS",
    "GenParams",
    "CorpusReport",
    "LawResult",
    "LAWS",
    "gen_dag",
    "gen_system",
    "check_corpus",
    "ominus_sequential",
    "all_laws",
]
