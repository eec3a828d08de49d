"""Cardinality index sets and the enumeration of X(I)."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

from .errors import InputError, ResourceLimitError

DEFAULT_CAP = 10**7
CAP_ENV = "LCADAG_MAX_SUBSETS"


def subset_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_CAP


@dataclass(frozen=True)
class SizeIndex:
    """A set of permitted subset cardinalities.

    With ``requires_one`` the index plays the role of an I-one set, which must
    contain 1. Sizes larger than the ground set simply contribute no subsets.
    """

    sizes: tuple[int, ...]
    requires_one: bool = False

    def __post_init__(self):
        sizes = tuple(sorted(set(self.sizes)))
        if not sizes:
            raise InputError("size index must be nonempty")
        if any(not isinstance(k, int) or k < 1 for k in sizes):
            raise InputError(f"sizes must be positive integers, got {sizes}")
        if self.requires_one and sizes[0] != 1:
            raise InputError("an I-one size index must contain 1")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def one(cls, sizes: Iterable[int]) -> "SizeIndex":
        return cls(tuple(sizes), requires_one=True)

    @classmethod
    def parse(cls, text: str, requires_one: bool = True) -> tuple["SizeIndex", bool]:
        """Parse ``"1,2"`` or ``"1-3"`` style lists.

        Returns the index and whether 1 had to be added.
        """
        sizes: set[int] = set()
        for part in filter(None, (p.strip() for p in text.split(","))):
            m = re.fullmatch(r"(\d+)\s*-\s*(\d+)", part)
            if m:
                lo, hi = int(m.group(1)), int(m.group(2))
                if lo > hi:
                    raise InputError(f"empty size range {part!r}")
                sizes.update(range(lo, hi + 1))
            elif part.isdigit():
                sizes.add(int(part))
            else:
                raise InputError(f"bad size token {part!r}")
        added = requires_one and 1 not in sizes
        if added:
            sizes.add(1)
        return cls(tuple(sizes), requires_one=requires_one), added

    def __contains__(self, k) -> bool:
        return k in self.sizes

    def __iter__(self):
        return iter(self.sizes)

    def effective(self, n: int) -> tuple[int, ...]:
        return tuple(k for k in self.sizes if k <= n)

    def count(self, n: int) -> int:
        return sum(comb(n, k) for k in self.effective(n))

    def __str__(self):
        return "{" + ",".join(map(str, self.sizes)) + "}"


def enumerate_subsets(ground: Iterable[str], index: SizeIndex, cap: int | None = None) -> Iterator[tuple[str, ...]]:
    """Yield X(I): sizes ascending, each size in lexicographic order of sorted labels.

    Raises ResourceLimitError up front if the total would exceed ``cap``.
    """
    labels = sorted(ground)
    cap = subset_cap() if cap is None else cap
    total = index.count(len(labels))
    if total > cap:
        raise ResourceLimitError(total, cap)
    for k in index.effective(len(labels)):
        yield from combinations(labels, k)
