"""Finite posets and digraphs on ``range(n)``.

A poset is stored as its strict order: ``up[i]`` is the bitmask of every
``j`` with ``i < j``.  Labels are 0-based everywhere in the Python API; the
text format is 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from . import kernels
from .errors import CycleError, LengthError, SizeError

#: bound for operations running through the compiled kernels
MAX_KERNEL_SIZE = 16
#: canonical labelling stays practical well beyond this, but nothing needs more
MAX_CANONICAL_SIZE = 256


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _close(n, up):
    """Transitive closure of bitmask rows (Warshall)."""
    rows = list(up)
    for k in range(n):
        bit = 1 << k
        row_k = rows[k]
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= row_k
    return rows


@dataclass(frozen=True)
class Poset:
    n: int
    up: tuple

    def __post_init__(self):
        if len(self.up) != self.n:
            raise ValueError("need one row per element")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.up):
            if row & ~full:
                raise IndexError(f"row {i} mentions an element outside range({self.n})")
            if row >> i & 1:
                raise CycleError(f"element {i} is below itself")
        for i, row in enumerate(self.up):
            for j in _bits(row):
                if self.up[j] >> i & 1:
                    raise CycleError(f"{i} and {j} are each below the other")
                if self.up[j] & ~row:
                    raise ValueError("relation is not transitive")

    def less(self, i, j):
        return bool(self.up[i] >> j & 1)

    def comparable(self, i, j):
        return bool((self.up[i] | self.down[i]) >> j & 1)

    @cached_property
    def down(self):
        rows = [0] * self.n
        for i, row in enumerate(self.up):
            for j in _bits(row):
                rows[j] |= 1 << i
        return tuple(rows)

    def pairs(self):
        """All strict relations ``(i, j)`` with ``i < j`` in the poset."""
        return [(i, j) for i in range(self.n) for j in _bits(self.up[i])]

    def minimal(self):
        return [i for i in range(self.n) if not self.down[i]]

    def maximal(self):
        return [i for i in range(self.n) if not self.up[i]]

    def __len__(self):
        return self.n

    def __repr__(self):
        rel = ", ".join(f"{i}<{j}" for i, j in self.pairs())
        return f"Poset({self.n}; {rel})"


def from_relations(n, pairs):
    """Poset generated by ``pairs`` (0-based); the closure is taken."""
    up = [0] * n
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"pair ({i}, {j}) outside range({n})")
        if i == j:
            raise CycleError(f"loop at {i}")
        up[i] |= 1 << j
    rows = _close(n, up)
    for i in range(n):
        if rows[i] >> i & 1:
            raise CycleError(f"relations force a cycle through {i}")
    return Poset(n, tuple(rows))


poset_from_covers = from_relations


def chain(n):
    return Poset(n, tuple(((1 << n) - 1) ^ ((1 << (i + 1)) - 1) for i in range(n)))


def antichain(n):
    return Poset(n, (0,) * n)


trivial = antichain
EMPTY = Poset(0, ())


def dual(P):
    return Poset(P.n, P.down)


def restrict(P, subset):
    """Induced subposet on ``subset``, relabelled order-preservingly."""
    keep = sorted(set(subset))
    index = {v: k for k, v in enumerate(keep)}
    rows = []
    for v in keep:
        row = 0
        for w in _bits(P.up[v]):
            if w in index:
                row |= 1 << index[w]
        rows.append(row)
    return Poset(len(keep), tuple(rows))


restrict_standardize = restrict


def ordinal_sum(*posets):
    """Stack the posets bottom to top."""
    rows = []
    offset = 0
    total = sum(P.n for P in posets)
    for P in posets:
        above = ((1 << total) - 1) ^ ((1 << (offset + P.n)) - 1)
        rows.extend((row << offset) | above for row in P.up)
        offset += P.n
    return Poset(total, tuple(rows))


def disjoint_union(*posets):
    rows = []
    offset = 0
    for P in posets:
        rows.extend(row << offset for row in P.up)
        offset += P.n
    return Poset(offset, tuple(rows))


def cartesian_product(P, Q):
    """Componentwise order on pairs; ``(a, b)`` gets label ``a * |Q| + b``."""
    rows = []
    for a in range(P.n):
        up_a = P.up[a] | 1 << a
        for b in range(Q.n):
            up_b = Q.up[b] | 1 << b
            row = 0
            for c in _bits(up_a):
                for d in _bits(up_b):
                    if c != a or d != b:
                        row |= 1 << (c * Q.n + d)
            rows.append(row)
    return Poset(P.n * Q.n, tuple(rows))


# -- linear extensions -------------------------------------------------------

def _check_kernel_size(n):
    if n > MAX_KERNEL_SIZE:
        raise SizeError(f"{n} elements exceeds the bound {MAX_KERNEL_SIZE}")


def zeta(P):
    """Number of linear extensions."""
    _check_kernel_size(P.n)
    return kernels.count_extensions(P.n, P.up)


def linear_extensions(P):
    """All linear extensions in lexicographic order."""
    down = P.down
    out = []
    prefix = []

    def extend(placed):
        if len(prefix) == P.n:
            out.append(tuple(prefix))
            return
        for x in range(P.n):
            if not placed >> x & 1 and down[x] & ~placed == 0:
                prefix.append(x)
                extend(placed | 1 << x)
                prefix.pop()

    extend(0)
    return out


def is_linear_extension(P, listing):
    if len(listing) != P.n or sorted(listing) != list(range(P.n)):
        raise LengthError(f"expected a listing of range({P.n}), got {listing}")
    seen = 0
    for x in listing:
        # something already placed lies above x
        if P.up[x] & seen:
            return False
        seen |= 1 << x
    return True


def height(P):
    """Length (number of covering steps) of a longest chain; -1 when empty."""
    return longest_chain_size(P) - 1


def longest_chain_size(P):
    best = [1] * P.n
    for x in _topological_order(P):
        for y in _bits(P.down[x]):
            best[x] = max(best[x], best[y] + 1)
    return max(best, default=0)


def _topological_order(P):
    # i < j implies down[i] is a proper subset of down[j]
    return sorted(range(P.n), key=lambda x: bin(P.down[x]).count("1"))


# -- graphs ------------------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def adjacent(self, i, j):
        return (min(i, j), max(i, j)) in self.edges

    def neighbours(self, i):
        return {b if a == i else a for a, b in self.edges if i in (a, b)}


def make_graph(n, edges):
    norm = set()
    for a, b in edges:
        if a == b:
            raise ValueError("graphs have no loops")
        norm.add((min(a, b), max(a, b)))
    return Graph(n, frozenset(norm))


def incomparability_graph(P):
    return make_graph(P.n, [(i, j) for i, j in combinations(range(P.n), 2)
                            if not P.comparable(i, j)])


def is_chain_set(P, elems):
    return all(P.comparable(a, b) for a, b in combinations(elems, 2))


def ab_witness(P, a, b):
    """Elements inducing a copy of ``C_a + C_b``, or None."""
    if a < 1 or b < 1:
        raise ValueError("chain sizes must be positive")
    for first in combinations(range(P.n), a):
        if not is_chain_set(P, first):
            continue
        free = [x for x in range(P.n)
                if x not in first and not any(P.comparable(x, y) for y in first)]
        for second in combinations(free, b):
            if is_chain_set(P, second):
                return first + second
    return None


def is_ab_free(P, a, b):
    return ab_witness(P, a, b) is None


def incomparability_number(P):
    """Size of a largest antichain."""
    for k in range(P.n, 0, -1):
        for sub in combinations(range(P.n), k):
            if all(not P.comparable(x, y) for x, y in combinations(sub, 2)):
                return k
    return 0


def irreducible_factorization(P):
    """Factors ``[P_1, ..., P_k]`` with ``P`` isomorphic to their ordinal sum.

    The split points do not depend on the labelling; when ``P`` is labelled
    so that each factor occupies a consecutive block, the ordinal sum of the
    factors is ``P`` itself.
    """
    order = sorted(range(P.n), key=lambda x: (bin(P.down[x]).count("1"), x))
    factors = []
    start = 0
    lower = 0
    for k in range(1, P.n + 1):
        lower |= 1 << order[k - 1]
        if k == P.n:
            break
        upper = ((1 << P.n) - 1) ^ lower
        if all(P.up[x] & upper == upper for x in _bits(lower)):
            factors.append(order[start:k])
            start = k
    if P.n:
        factors.append(order[start:])
    return [restrict(P, block) for block in factors]


def is_irreducible(P):
    return P.n > 0 and len(irreducible_factorization(P)) == 1


# -- isomorphism ---------------------------------------------------------------

def _refine(n, up, down, colours):
    """Coarsest equitable refinement of ``colours`` (label-invariant ranks)."""
    count = len(set(colours))
    while True:
        sigs = [
            (colours[v],
             tuple(sorted(colours[w] for w in _bits(up[v]))),
             tuple(sorted(colours[w] for w in _bits(down[v]))))
            for v in range(n)
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        colours = [ranks[s] for s in sigs]
        if len(ranks) == count:
            return colours
        count = len(ranks)


def _encode(n, up, order):
    pos = [0] * n
    for new, old in enumerate(order):
        pos[old] = new
    rows = []
    for old in order:
        row = 0
        for w in _bits(up[old]):
            row |= 1 << pos[w]
        rows.append(row)
    return tuple(rows)


def _initial_colours(n, up, down):
    base = [(bin(down[v]).count("1"), bin(up[v]).count("1")) for v in range(n)]
    ranks = {s: r for r, s in enumerate(sorted(set(base)))}
    return _refine(n, up, down, [ranks[s] for s in base])


def _canonical_rows(n, up, down):
    twin = {}
    for v in range(n):
        twin.setdefault((up[v], down[v]), v)
    rep = [twin[(up[v], down[v])] for v in range(n)]
    best = None

    def search(colours):
        nonlocal best
        cells = {}
        for v, c in enumerate(colours):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1 and (target is None or len(cells[c]) < len(target)):
                target = cells[c]
        if target is None:
            order = sorted(range(n), key=colours.__getitem__)
            code = _encode(n, up, order)
            if best is None or code < best:
                best = code
            return
        tried = set()
        for v in target:
            # swapping twins is an automorphism fixing every earlier choice
            if rep[v] in tried:
                continue
            tried.add(rep[v])
            split = [2 * c + (0 if w == v else 1) for w, c in enumerate(colours)]
            search(_refine(n, up, down, split))

    search(_initial_colours(n, up, down))
    return best


def canonical_rows(P):
    if P.n > MAX_CANONICAL_SIZE:
        raise SizeError(f"canonical form limited to {MAX_CANONICAL_SIZE} elements")
    if P.n == 0:
        return ()
    return _canonical_rows(P.n, P.up, P.down)


def canonical_poset(P):
    return Poset(P.n, canonical_rows(P))


def canonical_form(P):
    """Relabelling-invariant key ``"<n>:<hex>"`` of the strict order matrix."""
    rows = canonical_rows(P)
    bits = 0
    for i, row in enumerate(rows):
        bits |= row << (i * P.n)
    return f"{P.n}:{bits:x}"


def poset_from_key(key):
    n_text, hex_text = key.split(":")
    n = int(n_text)
    bits = int(hex_text, 16)
    mask = (1 << n) - 1
    return Poset(n, tuple((bits >> (i * n)) & mask for i in range(n)))


def is_isomorphic(P, Q):
    return P.n == Q.n and canonical_rows(P) == canonical_rows(Q)


def automorphism_count(P):
    """Number of permutations preserving the order (backtracking search)."""
    n = P.n
    if n > MAX_KERNEL_SIZE:
        raise SizeError(f"automorphism search limited to {MAX_KERNEL_SIZE} elements")
    if n == 0:
        return 1
    up, down = P.up, P.down
    colours = _initial_colours(n, up, down)
    image = [-1] * n
    used = [False] * n
    count = 0

    def place(v):
        nonlocal count
        if v == n:
            count += 1
            return
        for w in range(n):
            if used[w] or colours[w] != colours[v]:
                continue
            ok = True
            for u in range(v):
                if (up[v] >> u & 1) != (up[w] >> image[u] & 1) or \
                        (down[v] >> u & 1) != (down[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                place(v + 1)
                used[w] = False
        image[v] = -1

    place(0)
    return count


def relabel(P, perm):
    """Poset with ``perm[i] < perm[j]`` whenever ``i < j`` in ``P``."""
    rows = [0] * P.n
    for i in range(P.n):
        for j in _bits(P.up[i]):
            rows[perm[i]] |= 1 << perm[j]
    return Poset(P.n, tuple(rows))


# -- digraphs ------------------------------------------------------------------

@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset

    def rows(self):
        up = [0] * self.n
        for i, j in self.edges:
            up[i] |= 1 << j
        return up


def make_digraph(n, edges):
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"edge ({i}, {j}) outside range({n})")
    return Digraph(n, frozenset(edges))


def transitive_closure(D):
    rows = _close(D.n, D.rows())
    return Digraph(D.n, frozenset((i, j) for i in range(D.n) for j in _bits(rows[i])))


def is_acyclic(D):
    """True when there is no directed cycle of length two or more."""
    up = [row & ~(1 << i) for i, row in enumerate(D.rows())]
    rows = _close(D.n, up)
    return all(not rows[i] >> i & 1 for i in range(D.n))


def zeta_digraph(D):
    """Listings with no later vertex pointing to an earlier one.

    A loop ``(v, v)`` never relates two distinct positions, so it does not
    constrain anything; any longer directed cycle leaves no valid listing.
    """
    _check_kernel_size(D.n)
    up = D.rows()
    for i in range(D.n):
        up[i] &= ~(1 << i)
    return kernels.count_extensions(D.n, up)


def digraph_of(P):
    return Digraph(P.n, frozenset(P.pairs()))


def poset_of_digraph(D):
    """The poset whose strict order is the closure of an acyclic ``D``."""
    if not is_acyclic(D):
        raise CycleError("digraph has a directed cycle")
    return from_relations(D.n, [(i, j) for i, j in D.edges if i != j])


# -- text format ---------------------------------------------------------------

def parse(text):
    """Parse one or more ``poset``/``digraph`` blocks (1-based labels)."""
    items = []
    header = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if header is None:
            if len(words) != 2 or words[0] not in ("poset", "digraph"):
                raise ValueError(f"line {lineno}: expected 'poset <n>' or 'digraph <n>'")
            header = (words[0], int(words[1]))
            pairs = []
        elif words == ["end"]:
            kind, n = header
            pairs0 = [(i - 1, j - 1) for i, j in pairs]
            items.append(from_relations(n, pairs0) if kind == "poset"
                         else make_digraph(n, pairs0))
            header = None
        else:
            if len(words) != 2:
                raise ValueError(f"line {lineno}: expected '<i> <j>'")
            i, j = int(words[0]), int(words[1])
            if not (1 <= i <= header[1] and 1 <= j <= header[1]):
                raise IndexError(f"line {lineno}: label outside 1..{header[1]}")
            pairs.append((i, j))
    if header is not None:
        raise ValueError("missing 'end'")
    return items


def format_poset(P):
    lines = [f"poset {P.n}"]
    lines += [f"{i + 1} {j + 1}" for i, j in P.pairs()]
    lines.append("end")
    return "\n".join(lines) + "\n"


def format_digraph(D):
    lines = [f"digraph {D.n}"]
    lines += [f"{i + 1} {j + 1}" for i, j in sorted(D.edges)]
    lines.append("end")
    return "\n".join(lines) + "\n"
