"""Brute-force reference implementations used to cross-check the package.

They work on raw vertex/edge/label data and share no code with ``lcadag``.
Everything here enumerates paths or subsets directly, so it is only fit for
tiny instances.
"""

from itertools import combinations


def adjacency(vertices, edges):
    out = {v: [] for v in vertices}
    for u, w in edges:
        out[u].append(w)
    return out


def all_paths(vertices, edges, u, w):
    """Every directed u..w path as a vertex list (u == w gives the trivial path)."""
    adj = adjacency(vertices, edges)
    found = []

    def walk(path):
        if path[-1] == w:
            found.append(list(path))
            return
        for c in adj[path[-1]]:
            walk(path + [c])

    walk([u])
    return found


def reaches(vertices, edges, u, w):
    return bool(all_paths(vertices, edges, u, w))


def leaf_clusters(vertices, edges, labels):
    return {v: frozenset(labels[x] for x in labels if reaches(vertices, edges, v, x)) for v in vertices}


def lca_set(vertices, edges, labels, names):
    leaves = [x for x in labels if labels[x] in names]
    common = [v for v in vertices if all(reaches(vertices, edges, v, x) for x in leaves)]
    return frozenset(v for v in common
                     if not any(u != v and reaches(vertices, edges, v, u) for u in common))


def shortcuts(vertices, edges):
    return {(u, w) for u, w in edges
            if any(len(p) > 2 for p in all_paths(vertices, edges, u, w))}


def ominus_edges(vertices, edges, removed):
    """Edge p -> q for kept p, q joined by a path whose interior lies in ``removed``."""
    removed = set(removed)
    kept = [v for v in vertices if v not in removed]
    out = set()
    for p in kept:
        for q in kept:
            if p == q:
                continue
            for path in all_paths(vertices, edges, p, q):
                if all(x in removed for x in path[1:-1]):
                    out.add((p, q))
                    break
    return out


def subsets(ground, sizes):
    ground = sorted(ground)
    for k in sorted(sizes):
        if k <= len(ground):
            yield from (frozenset(c) for c in combinations(ground, k))


def minimal_supersets(members, a):
    sup = [m for m in members if a <= m]
    return {m for m in sup if not any(o < m for o in sup)}


def pre_ary(members, ground, sizes):
    return all(len(minimal_supersets(members, a)) == 1 for a in subsets(ground, sizes))


def ic_members(members, ground, sizes):
    out = set()
    for a in subsets(ground, sizes):
        mins = minimal_supersets(members, a)
        if len(mins) == 1:
            out |= mins
    return out


def covers(members):
    return {(b, a) for a in members for b in members
            if a < b and not any(a < c < b for c in members)}


def i_lca_vertices(vertices, edges, labels, sizes):
    ground = set(labels.values())
    hit = set()
    for a in subsets(ground, sizes):
        got = lca_set(vertices, edges, labels, a)
        if len(got) == 1:
            hit |= got
    return hit
