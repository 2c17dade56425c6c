"""Border points of listings, pluckings, mountains and the map to mountain sums.

A plucking on ``[n-1]`` is an upward closed family of subsets; here it is
kept as an indicator ``bytes`` of length ``2**(n-1)`` indexed by bitmask
(bit ``i - 1`` stands for ``i``).  Listings are 0-based tuples.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

from . import kernels
from .comb import IndexSet, opposite_mask
from .errors import LengthError, NotMember, SizeError
from .poset import (
    Poset,
    _bits,
    canonical_form,
    cartesian_product,
    dual,
    poset_from_key,
)

MAX_PLUCKING_SIZE = 12


def _check_size(n):
    if n > MAX_PLUCKING_SIZE:
        raise SizeError(f"plucking operations are limited to {MAX_PLUCKING_SIZE} elements")


def _width(n):
    return max(n - 1, 0)


def _mask(S, n):
    if isinstance(S, IndexSet):
        if S.n != n:
            raise ValueError(f"subset of [{S.n - 1}] used with [{n - 1}]")
        return S.mask
    if isinstance(S, int):
        if S < 0 or S >> _width(n):
            raise ValueError(f"mask {S:b} is not a subset of [{n - 1}]")
        return S
    return IndexSet.of(n, S).mask


@dataclass(frozen=True)
class Plucking:
    n: int
    fam: bytes

    def __post_init__(self):
        m = _width(self.n)
        if len(self.fam) != 1 << m:
            raise ValueError(f"family needs {1 << m} indicator bytes")
        top = (1 << m) - 1
        if not self.fam[top]:
            raise ValueError("a plucking contains the full set")
        for s in range(1 << m):
            if not self.fam[s]:
                continue
            for b in _bits(top & ~s):
                if not self.fam[s | 1 << b]:
                    raise ValueError("family is not upward closed")

    @classmethod
    def from_masks(cls, n, masks):
        fam = bytearray(1 << _width(n))
        for s in masks:
            fam[_mask(s, n)] = 1
        return cls(n, bytes(fam))

    @classmethod
    def from_sets(cls, n, sets):
        """Family given explicitly by 1-based member lists; must already be a plucking."""
        return cls.from_masks(n, [IndexSet.of(n, s).mask for s in sets])

    @classmethod
    def from_minimal(cls, n, generators):
        """Upward closure of ``generators`` (masks, IndexSets or member lists)."""
        gens = [_mask(g, n) for g in generators]
        if not gens:
            raise ValueError("a plucking is nonempty")
        fam = bytearray(1 << _width(n))
        for s in range(1 << _width(n)):
            if any(s & g == g for g in gens):
                fam[s] = 1
        return cls(n, bytes(fam))

    @classmethod
    def power_set(cls, n):
        return cls(n, b"\x01" * (1 << _width(n)))

    @property
    def width(self):
        return _width(self.n)

    @property
    def top(self):
        return (1 << self.width) - 1

    def masks(self):
        return [s for s, inside in enumerate(self.fam) if inside]

    def sets(self):
        return [IndexSet(self.n, s) for s in self.masks()]

    def __contains__(self, S):
        return bool(self.fam[_mask(S, self.n)])

    def __len__(self):
        return sum(self.fam)

    def __repr__(self):
        mins = ", ".join(str(set(s.members) or "{}") for s in minimal_sets(self))
        return f"Plucking({self.n}; minimal {mins})"


COUNTEREXAMPLE_PLUCKING = Plucking.from_sets(5, [
    {1, 2}, {1, 3}, {2, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}, {1, 2, 3, 4},
])
"""Complete plucking on [4] with vanishing chi; no listing of any poset produces it."""


def _check_listing(P, listing):
    listing = tuple(listing)
    if len(listing) != P.n or sorted(listing) != list(range(P.n)):
        raise LengthError(f"expected a listing of range({P.n}), got {listing}")
    return listing


def comp_of_listing(P, listing):
    """Plucking of all border-point sets of ``listing``."""
    _check_size(P.n)
    listing = _check_listing(P, listing)
    return Plucking(P.n, kernels.plucking(P.n, P.up, listing))


def _minimal_masks(A):
    out = []
    for s in A.masks():
        if not any(A.fam[s & ~(1 << b)] for b in _bits(s)):
            out.append(s)
    return out


def minimal_sets(A):
    return sorted((IndexSet(A.n, s) for s in _minimal_masks(A)),
                  key=lambda S: (len(S), S.members))


def minimal_union(A):
    return kernels.minimal_union(A.fam, A.width)


def is_complete(A):
    return minimal_union(A) == A.top


def chi_at(A, S):
    """Signed count of members below ``S``."""
    s = _mask(S, A.n)
    if not A.fam[s]:
        raise NotMember(f"{IndexSet(A.n, s)} is not in the plucking")
    total = 0
    sub = s
    size = bin(s).count("1")
    while True:
        if A.fam[sub]:
            total += -1 if (size - bin(sub).count("1")) & 1 else 1
        if sub == 0:
            break
        sub = (sub - 1) & s
    return total


def chi(A):
    return kernels.chi_full(A.fam, A.width)


def chi_table(A):
    """``chi_at`` for every subset at once (zero off the family)."""
    g = kernels.chi_transform(A.fam, A.width)
    return [v if A.fam[s] else 0 for s, v in enumerate(g)]


def vanishing_check(A, S):
    """True when ``S`` has an element outside every minimal set (so chi vanishes there)."""
    s = _mask(S, A.n)
    if not A.fam[s]:
        raise NotMember(f"{IndexSet(A.n, s)} is not in the plucking")
    return bool(s & ~minimal_union(A))


# -- reversing listings --------------------------------------------------------

def _reversing_chunk(args):
    n, up, first = args
    return kernels.reversing(n, up, first)


def reversing_with_chi(P, jobs=1):
    """Pairs ``(listing, chi)`` for every reversing listing, lexicographic.

    With ``jobs > 1`` the listing space is split by first element and the
    chunks are concatenated in order, so the output does not depend on it.
    """
    _check_size(P.n)
    up = list(P.up)
    if jobs <= 1 or P.n < 2:
        return kernels.reversing(P.n, up)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunks = pool.map(_reversing_chunk, [(P.n, up, f) for f in range(P.n)])
        return [pair for chunk in chunks for pair in chunk]


def reversing_listings(P, jobs=1):
    return [listing for listing, _ in reversing_with_chi(P, jobs)]


def zeta1(P, jobs=1):
    return sum(c for _, c in reversing_with_chi(P, jobs))


# -- mountains -----------------------------------------------------------------

@dataclass(frozen=True)
class Mountain:
    poset: Poset

    def __post_init__(self):
        if len(self.poset.maximal()) != 1:
            raise ValueError("a mountain has exactly one maximal element")

    @cached_property
    def depths(self):
        """Edge length of a longest chain from each element up to the top."""
        up = self.poset.up
        depth = [0] * self.poset.n
        # anything above p has strictly fewer elements above it
        for p in sorted(range(self.poset.n), key=lambda v: bin(up[v]).count("1")):
            depth[p] = 1 + max((depth[q] for q in _bits(up[p])), default=-1)
        return tuple(depth)

    @cached_property
    def fvector(self):
        counts = [0] * (max(self.depths) + 1)
        for d in self.depths:
            counts[d] += 1
        return tuple(counts)

    @property
    def key(self):
        return canonical_form(self.poset)


def mountain_from_plucking(A):
    """The family ordered by inclusion; ``[n-1]`` is its top."""
    members = A.masks()
    index = {s: i for i, s in enumerate(members)}
    rows = []
    for s in members:
        row = 0
        for t in members:
            if t != s and t & s == s:
                row |= 1 << index[t]
        rows.append(row)
    return Mountain(Poset(len(members), tuple(rows)))


def f_vector(M):
    return M.fvector


def chi_mountain(M):
    return sum(-1 if d & 1 else 1 for d in M.depths)


def chi_from_fvector(f):
    return sum(-v if i & 1 else v for i, v in enumerate(f))


def _mountain_of_key(key):
    return Mountain(poset_from_key(key))


@dataclass(frozen=True)
class MountainSum:
    """Formal integer combination of isomorphism classes of mountains."""

    terms: tuple = ()

    @classmethod
    def from_counts(cls, counts):
        return cls(tuple(sorted((k, v) for k, v in counts.items() if v)))

    @classmethod
    def of(cls, mountain, multiplicity=1):
        return cls.from_counts({mountain.key: multiplicity})

    @property
    def counts(self):
        return dict(self.terms)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        counts = self.counts
        for k, v in other.terms:
            counts[k] = counts.get(k, 0) + v
        return MountainSum.from_counts(counts)

    def __mul__(self, other):
        """Bilinear extension of the Cartesian product of classes."""
        counts = {}
        for k1, v1 in self.terms:
            P1 = poset_from_key(k1)
            for k2, v2 in other.terms:
                key = canonical_form(cartesian_product(P1, poset_from_key(k2)))
                counts[key] = counts.get(key, 0) + v1 * v2
        return MountainSum.from_counts(counts)

    def chi(self):
        return sum(v * chi_mountain(_mountain_of_key(k)) for k, v in self.terms)

    def to_json(self):
        return [{"fvector": list(_mountain_of_key(k).fvector), "multiplicity": v, "key": k}
                for k, v in self.terms]

    @classmethod
    def from_json(cls, data):
        return cls.from_counts({item["key"]: item["multiplicity"] for item in data})

    def __repr__(self):
        if not self.terms:
            return "MountainSum(0)"
        return "MountainSum(" + " + ".join(f"{v}*[{k}]" for k, v in self.terms) + ")"


ONE_POINT = MountainSum.of(Mountain(Poset(1, (0,))))


def phi(P, jobs=1):
    """Sum of the mountain classes of the pluckings of all reversing listings."""
    keys = {}
    counts = {}
    for listing in reversing_listings(P, jobs):
        fam = kernels.plucking(P.n, P.up, listing)
        key = keys.get(fam)
        if key is None:
            key = keys[fam] = mountain_from_plucking(Plucking(P.n, fam)).key
        counts[key] = counts.get(key, 0) + 1
    return MountainSum.from_counts(counts)


# -- duality and realizability -------------------------------------------------

def listings_with_border_set(P, S):
    """All listings for which ``S`` is a set of border points."""
    _check_size(P.n)
    s = _mask(S, P.n)
    return {w for w in permutations(range(P.n)) if kernels.plucking(P.n, P.up, w)[s]}


def comp_duality_check(P, S):
    """Border sets of ``P`` and of its dual agree after reversing listings and ``S``."""
    s = _mask(S, P.n)
    left = listings_with_border_set(P, s)
    right = {w[::-1] for w in listings_with_border_set(dual(P), opposite_mask(s, P.n))}
    return left == right


def realizability_necessary(A):
    """Local conditions every plucking coming from a listing satisfies."""
    mins = _minimal_masks(A)
    common = A.top
    for M in mins:
        common &= M
    m = A.width

    def forces(pattern, bit):
        return not any(M & pattern == pattern for M in mins) or common >> bit & 1

    if m >= 2:
        if not forces(0b11, 0):
            return False
        if not forces(0b11 << (m - 2), m - 1):
            return False
    for l in range(2, m):
        # {l-1, l, l+1} sits at bits l-2 .. l
        if not forces(0b111 << (l - 2), l - 1):
            return False
    return True


__all__ = [
    "MAX_PLUCKING_SIZE",
    "Plucking",
    "COUNTEREXAMPLE_PLUCKING",
    "comp_of_listing",
    "minimal_sets",
    "minimal_union",
    "is_complete",
    "chi_at",
    "chi",
    "chi_table",
    "vanishing_check",
    "reversing_with_chi",
    "reversing_listings",
    "zeta1",
    "Mountain",
    "mountain_from_plucking",
    "f_vector",
    "chi_mountain",
    "chi_from_fvector",
    "MountainSum",
    "ONE_POINT",
    "phi",
    "listings_with_border_set",
    "comp_duality_check",
    "realizability_necessary",
]
