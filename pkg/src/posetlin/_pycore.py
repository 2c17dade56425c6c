"""Pure-Python reference kernels.

Every function here has a twin with the same signature in ``_core.pyx``.
Posets are passed as ``up`` lists: ``up[i]`` is the bitmask of all ``j``
with ``i <_P j``.  A plucking on ``m = n - 1`` border points is a
``bytes`` object of length ``2**m`` with ``fam[I] == 1`` iff ``I`` belongs
to the family.
"""
from itertools import permutations

BACKEND = "python"


def _down_masks(n, up):
    down = [0] * n
    for i in range(n):
        row = up[i]
        for j in range(n):
            if row >> j & 1:
                down[j] |= 1 << i
    return down


def count_extensions(n, up):
    down = _down_masks(n, up)
    full = (1 << n) - 1
    ways = {0: 1}
    # process ideals by size so each is complete before it is extended
    frontier = {0}
    for _ in range(n):
        nxt = set()
        for s in frontier:
            w = ways[s]
            for x in range(n):
                bit = 1 << x
                if not s & bit and down[x] & ~s == 0:
                    t = s | bit
                    ways[t] = ways.get(t, 0) + w
                    nxt.add(t)
        frontier = nxt
    return ways.get(full, 0) if n else 1


def subset_zeta(n, up):
    table = [0] * (1 << n)
    table[0] = 1
    for s in range(1, 1 << n):
        total = 0
        rest = s
        while rest:
            low = rest & -rest
            x = low.bit_length() - 1
            if up[x] & s == 0:
                total += table[s ^ low]
            rest ^= low
        table[s] = total
    return table


def m_coefficients(n, up):
    if n == 0:
        return [1]
    zeta = subset_zeta(n, up)
    full = (1 << n) - 1
    by_size = [[] for _ in range(n + 1)]
    for s in range(1 << n):
        by_size[bin(s).count("1")].append(s)
    out = [0] * (1 << (n - 1))

    def grow(f, used, mask):
        # f maps subsets of size `used` to weighted counts of block chains
        for a in range(1, n - used + 1):
            size = used + a
            g = {}
            for s in by_size[size]:
                total = 0
                for t, w in f.items():
                    if t & s == t:
                        total += w * zeta[s ^ t]
                if total:
                    g[s] = total
            if size == n:
                out[mask] = g.get(full, 0)
            elif g:
                grow(g, size, mask | 1 << (size - 1))

    grow({0: 1}, 0, 0)
    return out


def plucking(n, up, listing):
    m = n - 1 if n else 0
    intervals = []
    for a in range(n):
        ua = listing[a]
        for b in range(a + 1, n):
            if up[listing[b]] >> ua & 1:
                # listing[b] <_P listing[a]: some cut must separate them
                intervals.append(((1 << b) - 1) ^ ((1 << a) - 1))
    fam = bytearray(1 << m)
    for i in range(1 << m):
        for mask in intervals:
            if not i & mask:
                break
        else:
            fam[i] = 1
    return bytes(fam)


def chi_transform(fam, m):
    g = list(fam)
    for b in range(m):
        bit = 1 << b
        for s in range(1 << m):
            if s & bit:
                g[s] -= g[s ^ bit]
    return g


def chi_full(fam, m):
    top = (1 << m) - 1
    total = 0
    for s, inside in enumerate(fam):
        if inside:
            total += -1 if bin(top ^ s).count("1") & 1 else 1
    return total


def minimal_union(fam, m):
    union = 0
    for s, inside in enumerate(fam):
        if not inside:
            continue
        rest = s
        minimal = True
        while rest:
            low = rest & -rest
            if fam[s ^ low]:
                minimal = False
                break
            rest ^= low
        if minimal:
            union |= s
    return union


def _listings(n, first):
    if first < 0:
        return permutations(range(n))
    rest = [x for x in range(n) if x != first]
    return ((first,) + tail for tail in permutations(rest))


def reversing(n, up, first=-1):
    """Reversing listings with their chi values; ``first >= 0`` fixes the head."""
    m = n - 1 if n else 0
    top = (1 << m) - 1
    down = _down_masks(n, up)
    out = []
    for listing in _listings(n, first):
        # a reversing listing never starts at a minimal or ends at a maximal element
        if n > 1 and (not down[listing[0]] or not up[listing[-1]]):
            continue
        fam = plucking(n, up, listing)
        if minimal_union(fam, m) == top:
            out.append((tuple(listing), chi_full(fam, m)))
    return out


def plucking_buckets(n, up):
    buckets = {}
    for listing in permutations(range(n)):
        fam = plucking(n, up, listing)
        buckets[fam] = buckets.get(fam, 0) + 1
    return buckets


def f_direct(n, up):
    m = n - 1 if n else 0
    out = [0] * (1 << m)
    for listing in permutations(range(n)):
        fam = plucking(n, up, listing)
        chi = chi_transform(fam, m)
        for s in range(1 << m):
            if fam[s]:
                out[s] += chi[s]
    return out
