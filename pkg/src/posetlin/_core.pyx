# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; signatures mirror ``_pycore``.

Counts are bounded by n! with n <= 16, which fits in a signed 64-bit
integer, so plain ``long long`` arithmetic cannot overflow here.
"""
from libc.stdlib cimport malloc, calloc, free

BACKEND = "cython"

ctypedef long long i64
ctypedef unsigned int u32

cdef extern from *:
    int __builtin_popcount(unsigned int) nogil


cdef inline int popcount(u32 x) noexcept nogil:
    return __builtin_popcount(x)


cdef int _load_up(int n, object up, u32 *rows) except -1:
    cdef int i
    if n > 16:
        raise ValueError("compiled kernels support at most 16 elements")
    for i in range(n):
        rows[i] = <u32>up[i]
    return 0


cdef inline bint _next_perm(int *a, int n) noexcept nogil:
    cdef int i = n - 2, j, t
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while a[j] <= a[i]:
        j -= 1
    t = a[i]; a[i] = a[j]; a[j] = t
    i += 1
    j = n - 1
    while i < j:
        t = a[i]; a[i] = a[j]; a[j] = t
        i += 1
        j -= 1
    return True


def count_extensions(int n, up):
    cdef u32 rows[16]
    cdef u32 down[16]
    cdef int i, j, x
    cdef u32 s, full, bit
    cdef i64 *ways
    cdef i64 w, result
    if n == 0:
        return 1
    _load_up(n, up, rows)
    for i in range(n):
        down[i] = 0
    for i in range(n):
        for j in range(n):
            if (rows[i] >> j) & 1:
                down[j] |= (1u << i)
    full = (1u << n) - 1
    ways = <i64 *>calloc(<size_t>1 << n, sizeof(i64))
    if ways == NULL:
        raise MemoryError()
    try:
        ways[0] = 1
        # every superset is numerically larger, so one ascending pass suffices
        for s in range(full):
            w = ways[s]
            if w == 0:
                continue
            for x in range(n):
                bit = 1u << x
                if not (s & bit) and (down[x] & ~s) == 0:
                    ways[s | bit] += w
        result = ways[full]
    finally:
        free(ways)
    return result


cdef void _subset_zeta(int n, u32 *rows, i64 *table) noexcept nogil:
    cdef u32 s, rest, low
    cdef int x
    cdef i64 total
    table[0] = 1
    for s in range(1, 1u << n):
        total = 0
        rest = s
        while rest:
            low = rest & (~rest + 1)
            x = __builtin_popcount(low - 1)
            if (rows[x] & s) == 0:
                total += table[s ^ low]
            rest ^= low
        table[s] = total


def subset_zeta(int n, up):
    cdef u32 rows[16]
    cdef i64 *table
    cdef u32 s
    _load_up(n, up, rows)
    table = <i64 *>malloc((<size_t>1 << n) * sizeof(i64))
    if table == NULL:
        raise MemoryError()
    try:
        _subset_zeta(n, rows, table)
        out = [table[s] for s in range(1u << n)]
    finally:
        free(table)
    return out


cdef void _grow(int n, i64 *zeta, i64 **levels, int depth, int used,
                u32 mask, i64 *out) noexcept nogil:
    cdef i64 *f = levels[depth]
    cdef i64 *g = levels[depth + 1]
    cdef int a, size
    cdef u32 s, b, full = (1u << n) - 1
    cdef i64 total
    cdef bint any_nonzero
    for a in range(1, n - used + 1):
        size = used + a
        any_nonzero = False
        for s in range(full + 1):
            if popcount(s) != size:
                g[s] = 0
                continue
            total = 0
            # enumerate submasks b of s that form the new block of size a
            b = s
            while True:
                if popcount(b) == a and f[s ^ b] != 0:
                    total += f[s ^ b] * zeta[b]
                if b == 0:
                    break
                b = (b - 1) & s
            g[s] = total
            if total:
                any_nonzero = True
        if size == n:
            out[mask] = g[full]
        elif any_nonzero:
            _grow(n, zeta, levels, depth + 1, size, mask | (1u << (size - 1)), out)


def m_coefficients(int n, up):
    cdef u32 rows[16]
    cdef i64 *zeta
    cdef i64 *out
    cdef i64 **levels
    cdef int d
    cdef u32 i
    cdef size_t width
    if n == 0:
        return [1]
    _load_up(n, up, rows)
    width = <size_t>1 << n
    zeta = <i64 *>malloc(width * sizeof(i64))
    out = <i64 *>calloc(<size_t>1 << (n - 1), sizeof(i64))
    levels = <i64 **>calloc(n + 1, sizeof(i64 *))
    if zeta == NULL or out == NULL or levels == NULL:
        free(zeta); free(out); free(levels)
        raise MemoryError()
    try:
        for d in range(n + 1):
            levels[d] = <i64 *>calloc(width, sizeof(i64))
            if levels[d] == NULL:
                raise MemoryError()
        _subset_zeta(n, rows, zeta)
        levels[0][0] = 1
        with nogil:
            _grow(n, zeta, levels, 0, 0, 0, out)
        result = [out[i] for i in range(1u << (n - 1))]
    finally:
        for d in range(n + 1):
            free(levels[d])
        free(levels); free(zeta); free(out)
    return result


cdef int _plucking(int n, u32 *rows, int *listing, unsigned char *fam) noexcept nogil:
    cdef u32 intervals[120]
    cdef int k = 0, a, b, m
    cdef u32 i, top
    m = n - 1 if n > 0 else 0
    for a in range(n):
        for b in range(a + 1, n):
            if (rows[listing[b]] >> listing[a]) & 1:
                intervals[k] = ((1u << b) - 1) ^ ((1u << a) - 1)
                k += 1
    top = 1u << m
    for i in range(top):
        fam[i] = 1
        for a in range(k):
            if (i & intervals[a]) == 0:
                fam[i] = 0
                break
    return m


cdef int _load_listing(int n, object listing, int *out) except -1:
    cdef int i
    if len(listing) != n:
        raise ValueError("listing length does not match poset size")
    for i in range(n):
        out[i] = <int>listing[i]
    return 0


def plucking(int n, up, listing):
    cdef u32 rows[16]
    cdef int perm[16]
    cdef int m
    _load_up(n, up, rows)
    _load_listing(n, listing, perm)
    m = n - 1 if n > 0 else 0
    buf = bytearray(1 << m)
    cdef unsigned char[::1] view = buf
    _plucking(n, rows, perm, &view[0])
    return bytes(buf)


cdef i64 _chi_full(const unsigned char *fam, int m) noexcept nogil:
    cdef u32 s, top = (1u << m) - 1
    cdef i64 total = 0
    for s in range(top + 1):
        if fam[s]:
            if popcount(top ^ s) & 1:
                total -= 1
            else:
                total += 1
    return total


cdef u32 _minimal_union(const unsigned char *fam, int m) noexcept nogil:
    cdef u32 s, rest, low, union = 0
    cdef bint minimal
    for s in range(1u << m):
        if not fam[s]:
            continue
        rest = s
        minimal = True
        while rest:
            low = rest & (~rest + 1)
            if fam[s ^ low]:
                minimal = False
                break
            rest ^= low
        if minimal:
            union |= s
    return union


def chi_transform(fam, int m):
    cdef i64 *g
    cdef u32 s, bit
    cdef int b
    cdef const unsigned char[::1] view = fam
    g = <i64 *>malloc((<size_t>1 << m) * sizeof(i64))
    if g == NULL:
        raise MemoryError()
    try:
        for s in range(1u << m):
            g[s] = view[s]
        for b in range(m):
            bit = 1u << b
            for s in range(1u << m):
                if s & bit:
                    g[s] -= g[s ^ bit]
        out = [g[s] for s in range(1u << m)]
    finally:
        free(g)
    return out


def chi_full(fam, int m):
    cdef const unsigned char[::1] view = fam
    return _chi_full(&view[0], m)


def minimal_union(fam, int m):
    cdef const unsigned char[::1] view = fam
    return _minimal_union(&view[0], m)


def reversing(int n, up, int first=-1):
    cdef u32 rows[16]
    cdef u32 down[16]
    cdef int perm[16]
    cdef int i, j, k, m, start
    cdef u32 top
    _load_up(n, up, rows)
    if first >= n:
        raise ValueError("first element out of range")
    m = n - 1 if n > 0 else 0
    top = (1u << m) - 1
    for i in range(n):
        down[i] = 0
    for i in range(n):
        for j in range(n):
            if (rows[i] >> j) & 1:
                down[j] |= (1u << i)
    buf = bytearray(1 << m)
    cdef unsigned char[::1] fam = buf
    start = 0
    k = 0
    if first >= 0:
        perm[0] = first
        start = 1
        k = 1
    for i in range(n):
        if i != first:
            perm[k] = i
            k += 1
    out = []
    while True:
        # a reversing listing never starts at a minimal or ends at a maximal element
        if n < 2 or (down[perm[0]] != 0 and rows[perm[n - 1]] != 0):
            _plucking(n, rows, perm, &fam[0])
            if _minimal_union(&fam[0], m) == top:
                out.append((tuple([perm[i] for i in range(n)]), _chi_full(&fam[0], m)))
        if n - start < 2 or not _next_perm(perm + start, n - start):
            break
    return out


def plucking_buckets(int n, up):
    cdef u32 rows[16]
    cdef int perm[16]
    cdef int i, m
    _load_up(n, up, rows)
    m = n - 1 if n > 0 else 0
    buf = bytearray(1 << m)
    cdef unsigned char[::1] fam = buf
    for i in range(n):
        perm[i] = i
    buckets = {}
    while True:
        _plucking(n, rows, perm, &fam[0])
        key = bytes(buf)
        buckets[key] = buckets.get(key, 0) + 1
        if n < 2 or not _next_perm(perm, n):
            break
    return buckets


def f_direct(int n, up):
    cdef u32 rows[16]
    cdef int perm[16]
    cdef int i, m, b
    cdef u32 s, bit, width
    cdef i64 *g
    cdef i64 *acc
    _load_up(n, up, rows)
    m = n - 1 if n > 0 else 0
    width = 1u << m
    buf = bytearray(width)
    cdef unsigned char[::1] fam = buf
    g = <i64 *>malloc(width * sizeof(i64))
    acc = <i64 *>calloc(width, sizeof(i64))
    if g == NULL or acc == NULL:
        free(g); free(acc)
        raise MemoryError()
    try:
        for i in range(n):
            perm[i] = i
        while True:
            _plucking(n, rows, perm, &fam[0])
            for s in range(width):
                g[s] = fam[s]
            for b in range(m):
                bit = 1u << b
                for s in range(width):
                    if s & bit:
                        g[s] -= g[s ^ bit]
            for s in range(width):
                if fam[s]:
                    acc[s] += g[s]
            if n < 2 or not _next_perm(perm, n):
                break
        out = [acc[s] for s in range(width)]
    finally:
        free(g); free(acc)
    return out
