"""Compositions, partitions and subsets of ``[n-1]``.

Compositions and partitions are plain tuples of positive ints.  Subsets of
``[n-1] = {1, ..., n-1}`` are bitmasks with bit ``i - 1`` standing for
``i``; :class:`IndexSet` pairs such a mask with its ambient ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import WeightError


@dataclass(frozen=True, order=True)
class IndexSet:
    n: int
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> max(self.n - 1, 0):
            raise ValueError(f"mask {self.mask:b} is not a subset of [{self.n - 1}]")

    @classmethod
    def of(cls, n, members):
        mask = 0
        for i in members:
            if not 1 <= i <= n - 1:
                raise ValueError(f"{i} is not in [{n - 1}]")
            mask |= 1 << (i - 1)
        return cls(n, mask)

    @property
    def members(self):
        return tuple(i + 1 for i in range(max(self.n - 1, 0)) if self.mask >> i & 1)

    def __len__(self):
        return bin(self.mask).count("1")

    def __contains__(self, i):
        return 1 <= i <= self.n - 1 and bool(self.mask >> (i - 1) & 1)

    def __repr__(self):
        return f"IndexSet({self.n}, {set(self.members) or '{}'})"


def check_composition(alpha):
    alpha = tuple(alpha)
    if any(not isinstance(a, int) or a < 1 for a in alpha):
        raise ValueError(f"{alpha} is not a composition")
    return alpha


def mask_of(alpha):
    """Bitmask of the partial sums of ``alpha`` (all but the last)."""
    mask = 0
    total = 0
    for part in alpha[:-1]:
        total += part
        mask |= 1 << (total - 1)
    return mask


def comp_of_mask(mask, n):
    parts = []
    last = 0
    for i in range(1, n):
        if mask >> (i - 1) & 1:
            parts.append(i - last)
            last = i
    if n:
        parts.append(n - last)
    return tuple(parts)


def set_of(alpha):
    alpha = check_composition(alpha)
    return IndexSet(sum(alpha), mask_of(alpha))


def comp_of(index_set):
    return comp_of_mask(index_set.mask, index_set.n)


def refines(alpha, beta):
    """True when ``alpha`` is finer than ``beta``."""
    if sum(alpha) != sum(beta):
        raise WeightError(f"{alpha} and {beta} have different weights")
    a, b = mask_of(alpha), mask_of(beta)
    return a & b == b


def opposite(alpha):
    return tuple(reversed(alpha))


def opposite_mask(mask, n):
    out = 0
    for i in range(1, n):
        if mask >> (i - 1) & 1:
            out |= 1 << (n - i - 1)
    return out


def opposite_set(index_set):
    return IndexSet(index_set.n, opposite_mask(index_set.mask, index_set.n))


def reverse(listing):
    return tuple(reversed(listing))


def compositions(n):
    """All compositions of ``n``: fewer parts first, then reverse-lex."""
    if n == 0:
        return [()]
    comps = [comp_of_mask(mask, n) for mask in range(1 << (n - 1))]
    return sorted(comps, key=lambda c: (len(c), tuple(-p for p in c)))


def partitions(n, largest=None):
    """Partitions of ``n`` in reverse-lex order."""
    if largest is None:
        largest = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        out.extend((first,) + rest for rest in partitions(n - first, first))
    return out


def sort_to_partition(alpha):
    return tuple(sorted(alpha, reverse=True))


def set_compositions(elements):
    """Ordered set partitions of ``elements``; each block is a sorted tuple."""
    elements = tuple(sorted(elements))
    if not elements:
        return [()]
    out = []
    for size in range(1, len(elements) + 1):
        for block in combinations(elements, size):
            rest = [e for e in elements if e not in block]
            out.extend((block,) + tail for tail in set_compositions(rest))
    return sorted(out, key=lambda sc: (len(sc), sc))


def set_partitions(elements):
    """Unordered set partitions; blocks sorted, first block holds the minimum."""
    elements = list(elements)
    if not elements:
        return [()]
    first, rest = elements[0], elements[1:]
    out = []
    for size in range(len(rest) + 1):
        for others in combinations(rest, size):
            block = (first,) + others
            remaining = [e for e in rest if e not in others]
            out.extend((block,) + tail for tail in set_partitions(remaining))
    return out


def composition_type(set_composition):
    return tuple(len(block) for block in set_composition)
