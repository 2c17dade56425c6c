"""The linear function ``L_P`` of a poset and its expansions.

``L_P`` sums, over ordered set partitions ``(P_1, ..., P_k)`` of the ground
set, the product of the linear-extension counts of the blocks times
``M_(|P_1|, ..., |P_k|)``.  Besides the generic basis changes, this module
carries the closed formulas for the p-, s- and e-coefficients together with
the combinatorial objects they count.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial

from . import kernels
from .comb import comp_of_mask, partitions, set_compositions, set_partitions
from .errors import EmptyError, NotApplicable, WeightError
from .poset import (
    _bits,
    ab_witness,
    incomparability_graph,
    is_linear_extension,
    longest_chain_size,
    restrict,
    zeta,
)
from .symfunc import (
    QsymElement,
    SymElement,
    change_basis,
    check_degree,
    detect_symmetric,
    principal_specialization,
)


@lru_cache(maxsize=4096)
def linear_function(P):
    """``L_P`` in the M basis (subset dynamic programme in the kernels)."""
    check_degree(P.n)
    coeffs = kernels.m_coefficients(P.n, P.up)
    return QsymElement(P.n, "M", {comp_of_mask(mask, P.n): c for mask, c in enumerate(coeffs)})


def linear_function_by_set_compositions(P):
    """``L_P`` straight from the sum over ordered set partitions.

    Exponential in a worse way than :func:`linear_function`; kept as an
    independent reference for small posets.
    """
    out = Counter()
    for blocks in set_compositions(range(P.n)):
        weight = 1
        for block in blocks:
            weight *= zeta(restrict(P, block))
        out[tuple(len(b) for b in blocks)] += weight
    return QsymElement(P.n, "M", dict(out))


def linear_function_sym(P):
    """``L_P`` in the m basis."""
    return detect_symmetric(linear_function(P))


def expand(P, basis):
    """``L_P`` in any of the bases M, F, m, p, e, h, s."""
    if basis in ("M", "F"):
        return linear_function(P).to_basis(basis)
    return change_basis(linear_function_sym(P), basis)


def _blocks_are_extensions(P, listing, alpha):
    start = 0
    for part in alpha:
        block = listing[start:start + part]
        seen = 0
        for x in block:
            if P.up[x] & seen:
                return False
            seen |= 1 << x
        start += part
    return True


def sigma_count(P, alpha):
    """Number of listings cut by ``alpha`` into linear extensions of the blocks."""
    alpha = tuple(alpha)
    if sum(alpha) != P.n:
        raise WeightError(f"{alpha} is not a composition of {P.n}")
    return sum(1 for listing in permutations(range(P.n)) if _blocks_are_extensions(P, listing, alpha))


def f_coefficients_direct(P):
    """F-expansion via signed sums over the border-point families of all listings."""
    check_degree(P.n)
    coeffs = kernels.f_direct(P.n, P.up)
    return QsymElement(P.n, "F", {comp_of_mask(mask, P.n): c for mask, c in enumerate(coeffs)})


def p_coeff_special(P):
    """The coefficients of ``p_(1,...,1)`` and ``p_(2,1,...,1)`` as given by their closed forms."""
    if P.n == 0:
        raise EmptyError("needs a nonempty poset")
    return 1, len(incomparability_graph(P).edges)


# -- (2+2)-free posets ----------------------------------------------------------

def _require_free(P, a, b):
    witness = ab_witness(P, a, b)
    if witness is not None:
        raise NotApplicable(f"poset is not ({a}+{b})-free", witness)


def is_antichain_set(P, block):
    return all(not P.comparable(x, y) for x, y in combinations(block, 2))


def stable_partitions(P):
    """Set partitions of the ground set into antichains."""
    return [blocks for blocks in set_partitions(range(P.n))
            if all(is_antichain_set(P, b) for b in blocks)]


def zeta_22free(P):
    _require_free(P, 2, 2)
    return sum(_prod(factorial(len(b) - 1) for b in blocks) for blocks in stable_partitions(P))


def _prod(values):
    out = 1
    for v in values:
        out *= v
    return out


def clique_cycle_permutations(G):
    """Permutations whose cycles are all cliques of ``G``, with their cycle types.

    Permutations are tuples ``perm`` with ``perm[v]`` the image of ``v``.
    """
    n = G.n
    adj = [0] * n
    for a, b in G.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    out = []
    perm = [None] * n

    def build(free, lengths):
        if not free:
            out.append((tuple(perm), tuple(sorted(lengths, reverse=True))))
            return
        v = (free & -free).bit_length() - 1
        candidates = [w for w in _bits(free & adj[v])]
        for size in range(len(candidates) + 1):
            for others in combinations(candidates, size):
                if not all(adj[x] >> y & 1 for x, y in combinations(others, 2)):
                    continue
                used = 1 << v
                for w in others:
                    used |= 1 << w
                for order in permutations(others):
                    cycle = (v,) + order
                    for i, x in enumerate(cycle):
                        perm[x] = cycle[(i + 1) % len(cycle)]
                    build(free & ~used, lengths + [len(cycle)])
                for x in (v,) + others:
                    perm[x] = None

    build((1 << n) - 1, [])
    return out


def p_expansion_22free(P):
    """p-expansion as the multiset of cycle types of clique-cycle permutations."""
    _require_free(P, 2, 2)
    types = Counter(t for _, t in clique_cycle_permutations(incomparability_graph(P)))
    return SymElement(P.n, "p", dict(types))


# -- Schur coefficients --------------------------------------------------------

def p_tableaux(P, shape):
    """Fillings of ``shape`` whose rows are linear extensions of their entries
    and whose columns increase strictly in ``P``."""
    shape = tuple(shape)
    if sum(shape) != P.n:
        raise WeightError(f"shape {shape} does not have {P.n} cells")
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    grid = [[None] * length for length in shape]
    out = []

    def fill(k, used):
        if k == len(cells):
            out.append(tuple(tuple(row) for row in grid))
            return
        r, c = cells[k]
        row_mask = 0
        for x in grid[r][:c]:
            row_mask |= 1 << x
        for x in range(P.n):
            if used >> x & 1:
                continue
            # an earlier entry of the row above x breaks the row
            if P.up[x] & row_mask:
                continue
            if r > 0 and not P.less(grid[r - 1][c], x):
                continue
            grid[r][c] = x
            fill(k + 1, used | 1 << x)
            grid[r][c] = None

    fill(0, 0)
    return out


def s_expansion_21free(P):
    """Schur expansion by counting P-tableaux; requires a (2+1)-free poset."""
    _require_free(P, 2, 1)
    out = {}
    for lam in partitions(P.n):
        count = len(p_tableaux(P, lam))
        if count:
            out[lam] = count
    return SymElement(P.n, "s", out)


def _permutation_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def s_coefficients_generic(P):
    """Schur coefficients from the alternating sum over shifted shapes.

    ``[s_lam] L_P = sum_pi sgn(pi) [M_{pi(lam)}] L_P`` where
    ``pi(lam)_j = lam_{pi(j)} - pi(j) + j``; zero parts are dropped and a
    negative part kills the term.
    """
    L = linear_function(P)
    out = {}
    for lam in partitions(P.n):
        k = len(lam)
        total = 0
        for pi in permutations(range(k)):
            seq = [lam[pi[j]] - pi[j] + j for j in range(k)]
            if min(seq, default=0) < 0:
                continue
            total += _permutation_sign(pi) * L[tuple(p for p in seq if p > 0)]
        if total:
            out[lam] = total
    return SymElement(P.n, "s", out)


def schur_height(P):
    """Largest ``l(lam)`` with ``[s_lam] L_P`` nonzero, predicted as the number
    of elements in a longest chain."""
    return longest_chain_size(P)


# -- elementary basis ------------------------------------------------------------

def e_expansion(P):
    return change_basis(linear_function_sym(P), "e")


def suffix_mask(n, i):
    """Bitmask of ``{i+1, ..., n-1}``."""
    return ((1 << (n - 1)) - 1) ^ ((1 << i) - 1) if n else 0


def e_levelsum_check(P, k):
    """``(sum of [e_lam] L_P over l(lam) = k, the signed suffix-sum formula)``."""
    n = P.n
    if not 1 <= k <= max(n, 1):
        raise ValueError(f"level {k} outside 1..{n}")
    lhs = sum(c for lam, c in e_expansion(P).coeffs.items() if len(lam) == k)
    direct = f_coefficients_direct(P)
    rhs = 0
    for i in range(max(k - 1, 0), n):
        coeff = direct[comp_of_mask(suffix_mask(n, i), n)]
        rhs += (-1) ** (i - k + 1) * comb(i, k - 1) * coeff
    return lhs, rhs


def linear_polynomial(P):
    return principal_specialization(linear_function(P))


__all__ = [
    "linear_function",
    "linear_function_by_set_compositions",
    "linear_function_sym",
    "expand",
    "sigma_count",
    "f_coefficients_direct",
    "p_coeff_special",
    "stable_partitions",
    "zeta_22free",
    "clique_cycle_permutations",
    "p_expansion_22free",
    "p_tableaux",
    "s_expansion_21free",
    "s_coefficients_generic",
    "schur_height",
    "e_expansion",
    "e_levelsum_check",
    "linear_polynomial",
]
