"""Set systems on a finite ground set and the predicates defined on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import InputError
from .sizes import SizeIndex, enumerate_subsets


def set_key(s: Iterable[str]) -> tuple:
    """Canonical order for label sets: by size, then lexicographic labels."""
    items = tuple(sorted(s))
    return (len(items), items)


def fmt_set(s: Iterable[str]) -> str:
    return "{" + ",".join(sorted(s)) + "}"


def overlap(m: frozenset, n: frozenset) -> bool:
    inter = m & n
    return bool(inter) and inter != m and inter != n


@dataclass(frozen=True)
class SetSystem:
    ground: frozenset[str]
    members: frozenset[frozenset[str]]

    def __post_init__(self):
        ground = frozenset(self.ground)
        members = frozenset(frozenset(m) for m in self.members)
        if not ground:
            raise InputError("ground set must be nonempty")
        for m in members:
            if not m <= ground:
                raise InputError(f"member {fmt_set(m)} is not a subset of the ground set")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, sets: Iterable[Iterable[str]], ground: Iterable[str] | None = None) -> "SetSystem":
        members = [frozenset(s) for s in sets]
        if ground is None:
            ground = frozenset().union(*members)
        return cls(frozenset(ground), frozenset(members))

    @classmethod
    def powerset(cls, ground: Iterable[str]) -> "SetSystem":
        """All nonempty subsets of ``ground``."""
        labels = sorted(ground)
        return cls.of(
            (c for k in range(1, len(labels) + 1) for c in combinations(labels, k)), labels
        )

    def sorted_members(self) -> list[frozenset[str]]:
        return sorted(self.members, key=set_key)

    def without(self, *sets: Iterable[str]) -> "SetSystem":
        drop = {frozenset(s) for s in sets}
        return SetSystem(self.ground, self.members - drop)

    def __contains__(self, s) -> bool:
        return frozenset(s) in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted_members())

    def __repr__(self):
        return f"SetSystem({' '.join(fmt_set(m) for m in self.sorted_members())})"


class SystemFlags(NamedTuple):
    grounded: bool
    clustering: bool


def validate_system(sys: SetSystem) -> SystemFlags:
    grounded = frozenset() not in sys.members and all(
        frozenset([x]) in sys.members for x in sys.ground
    )
    return SystemFlags(grounded, grounded and sys.ground in sys.members)


def minimal_supersets(sys: SetSystem, subset: Iterable[str]) -> list[frozenset[str]]:
    """Inclusion-minimal members containing ``subset``, in canonical order."""
    a = frozenset(subset)
    if not a:
        raise InputError("subset must be nonempty")
    if not a <= sys.ground:
        raise InputError(f"{fmt_set(a)} is not a subset of the ground set")
    sups = [m for m in sys.members if a <= m]
    return sorted((m for m in sups if not any(o < m for o in sups)), key=set_key)


def pre_i_ary_witness(sys: SetSystem, index: SizeIndex) -> frozenset[str] | None:
    """First A in X(I) without a unique minimal superset, or None."""
    for a in enumerate_subsets(sys.ground, index):
        if len(minimal_supersets(sys, a)) != 1:
            return frozenset(a)
    return None


def is_pre_i_ary(sys: SetSystem, index: SizeIndex) -> bool:
    return pre_i_ary_witness(sys, index) is None


def ic_witnesses(sys: SetSystem, index: SizeIndex) -> dict[frozenset[str], frozenset[str]]:
    """Map each member satisfying (I-C) to the first A in X(I) certifying it."""
    found: dict[frozenset[str], frozenset[str]] = {}
    for a in enumerate_subsets(sys.ground, index):
        mins = minimal_supersets(sys, a)
        if len(mins) == 1 and mins[0] not in found:
            found[mins[0]] = frozenset(a)
    return found


def ic_members(sys: SetSystem, index: SizeIndex) -> SetSystem:
    """The subsystem of members that are the unique minimal superset of some A in X(I)."""
    return SetSystem(sys.ground, frozenset(ic_witnesses(sys, index)))


def is_i_ary(sys: SetSystem, index: SizeIndex) -> bool:
    return is_pre_i_ary(sys, index) and ic_members(sys, index).members == sys.members


def covering_pairs(members: Iterable[frozenset[str]]) -> set[tuple[frozenset, frozenset]]:
    """Pairs (A, B) with B a proper subset of A and no member strictly between."""
    ordered = sorted(set(members), key=set_key)
    pairs = set()
    for i, a in enumerate(ordered):
        below = [b for b in ordered[:i] if b < a]
        for b in below:
            if not any(b < c for c in below):
                pairs.add((a, b))
    return pairs


@dataclass
class StructureReport:
    clustering: bool
    tree_like: bool
    n3o: bool
    prop_l: bool
    closed: bool
    galled_tree_like: bool
    non_trivial: bool
    kappa: int | None
    witnesses: dict[str, object] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "clustering": self.clustering,
            "tree_like": self.tree_like,
            "n3o": self.n3o,
            "prop_l": self.prop_l,
            "closed": self.closed,
            "galled_tree_like": self.galled_tree_like,
            "non_trivial": self.non_trivial,
            "kappa": self.kappa,
            "witnesses": {k: _jsonable(v) for k, v in self.witnesses.items()},
        }


def _jsonable(w):
    if isinstance(w, frozenset):
        return sorted(w)
    if isinstance(w, (tuple, list)):
        return [_jsonable(x) for x in w]
    return w


def kappa(sys: SetSystem) -> int | None:
    sizes = [len(m) for m in sys.members if len(m) > 1]
    return min(sizes) if sizes else None


def classify_structure(sys: SetSystem) -> StructureReport:
    """Evaluate tree-like, (N3O), (L), closed and galled-tree-like.

    tree_like and galled_tree_like are only granted to clustering systems,
    since both notions are defined for clustering systems.
    """
    ms = sys.sorted_members()
    w: dict[str, object] = {}
    clustering = validate_system(sys).clustering
    if not clustering:
        w["clustering"] = "missing singleton or ground set, or contains the empty set"

    overlaps = {(i, j) for i, j in combinations(range(len(ms)), 2) if overlap(ms[i], ms[j])}

    def ov(i, j):
        return (min(i, j), max(i, j)) in overlaps

    no_overlap = not overlaps
    if overlaps:
        i, j = min(overlaps)
        w["tree_like"] = (ms[i], ms[j])
    elif not clustering:
        w["tree_like"] = w["clustering"]

    n3o = True
    for i, j in sorted(overlaps):
        k = next((k for k in range(j + 1, len(ms)) if ov(i, k) and ov(j, k)), None)
        if k is not None:
            n3o = False
            w["n3o"] = (ms[i], ms[j], ms[k])
            break

    prop_l = True
    for c1 in range(len(ms)):
        partners = [j for j in range(len(ms)) if j != c1 and ov(c1, j)]
        bad = next(
            ((a, b) for a, b in combinations(partners, 2) if ms[c1] & ms[a] != ms[c1] & ms[b]), None
        )
        if bad is not None:
            prop_l = False
            w["prop_l"] = (ms[c1], ms[bad[0]], ms[bad[1]])
            break

    closed = True
    for a, b in combinations(ms, 2):
        inter = a & b
        if inter and inter not in sys.members:
            closed = False
            w["closed"] = (a, b)
            break

    galled = clustering and closed and prop_l and n3o
    if not galled and "galled_tree_like" not in w:
        w["galled_tree_like"] = [k for k, ok in
                                 (("clustering", clustering), ("closed", closed), ("prop_l", prop_l), ("n3o", n3o))
                                 if not ok]
    k = kappa(sys)
    if k is None:
        w["non_trivial"] = "all members are singletons"
    return StructureReport(
        clustering=clustering,
        tree_like=clustering and no_overlap,
        n3o=n3o,
        prop_l=prop_l,
        closed=closed,
        galled_tree_like=galled,
        non_trivial=k is not None,
        kappa=k,
        witnesses=w,
    )
