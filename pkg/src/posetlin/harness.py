"""Exhaustive poset enumeration, theorem-check suites and conjecture scans.

Every suite is a pure function of the enumerated posets, so reports are
reproducible.  Work is sharded by a stable hash of each poset's key and the
merged results are sorted, which keeps reports identical for any job count.
"""
from __future__ import annotations

import json
import random
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import permutations
from math import factorial

from . import kernels
from .borderpoints import (
    comp_of_listing,
    chi_at,
    chi_mountain,
    comp_duality_check,
    is_complete,
    mountain_from_plucking,
    phi,
    realizability_necessary,
    reversing_with_chi,
    vanishing_check,
)
from .errors import SizeError, UnknownSuite
from .linfun import (
    e_levelsum_check,
    expand,
    f_coefficients_direct,
    linear_function,
    linear_polynomial,
    p_expansion_22free,
    s_coefficients_generic,
    s_expansion_21free,
    zeta_22free,
)
from .poset import (
    EMPTY,
    Poset,
    _bits,
    antichain,
    automorphism_count,
    canonical_form,
    canonical_poset,
    dual,
    incomparability_graph,
    irreducible_factorization,
    is_ab_free,
    is_isomorphic,
    make_digraph,
    ordinal_sum,
    transitive_closure,
    zeta,
    zeta_digraph,
)
from .symfunc import detect_symmetric, qsym_antipode, qsym_product

MAX_LABELED = 7
MAX_ISO = 8
MAX_CONJECTURE = 6


# -- enumeration ---------------------------------------------------------------

def _closed_sets(P, rows):
    """Subsets closed under ``rows`` (``rows = P.down`` gives down-sets)."""
    out = []
    for s in range(1 << P.n):
        if all(rows[x] & ~s == 0 for x in _bits(s)):
            out.append(s)
    return out


def _labeled(n):
    if n == 0:
        yield EMPTY
        return
    for P in _labeled(n - 1):
        k = P.n
        ideals = _closed_sets(P, P.down)
        filters = _closed_sets(P, P.up)
        for D in ideals:
            # every element of D must already lie below every element of U
            below_all = (1 << k) - 1
            for d in _bits(D):
                below_all &= P.up[d]
            for U in filters:
                if U & ~below_all or U & D:
                    continue
                rows = [row | (1 << k if D >> i & 1 else 0)
                        for i, row in enumerate(P.up)]
                rows.append(U)
                yield Poset(k + 1, tuple(rows))


def _iso(n):
    if n == 0:
        return [EMPTY]
    seen = {}
    for P in _iso(n - 1):
        k = P.n
        # removing a maximal element always leaves a smaller poset
        for D in _closed_sets(P, P.down):
            rows = [row | (1 << k if D >> i & 1 else 0) for i, row in enumerate(P.up)]
            rows.append(0)
            Q = canonical_poset(Poset(k + 1, tuple(rows)))
            seen.setdefault(canonical_form(Q), Q)
    return [seen[key] for key in sorted(seen)]


def enumerate_posets(n, up_to_iso=False):
    """All posets on ``range(n)``, or one canonical representative per class."""
    bound = MAX_ISO if up_to_iso else MAX_LABELED
    if n < 0 or n > bound:
        raise SizeError(f"enumeration supports 0 <= n <= {bound}")
    if up_to_iso:
        return iter(_iso(n))
    return _labeled(n)


def raw_key(P):
    """Key of the labelled order matrix (no canonicalisation)."""
    bits = 0
    for i, row in enumerate(P.up):
        bits |= row << (i * P.n)
    return f"{P.n}:{bits:x}"


# -- per-poset checks ----------------------------------------------------------
# each check returns a list of (check id, details) failures

def _check_duality(P):
    out = []
    L = linear_function(P)
    if L != linear_function(dual(P)):
        out.append(("dual", "L_P differs from L of the dual"))
    try:
        detect_symmetric(L)
    except ValueError as exc:
        out.append(("symmetric", str(exc)))
    return out


def _check_f_direct(P):
    if f_coefficients_direct(P) != linear_function(P):
        return [("f-direct", "signed border-point sum differs from M to F conversion")]
    return []


def _check_p_special(P):
    if P.n == 0:
        return []
    p = expand(P, "p")
    out = []
    if p[(1,) * P.n] != 1:
        out.append(("p-ones", f"coefficient {p[(1,) * P.n]}"))
    if P.n >= 2:
        want = len(incomparability_graph(P).edges)
        got = p[(2,) + (1,) * (P.n - 2)]
        if got != want:
            out.append(("p-two", f"coefficient {got}, incomparable pairs {want}"))
    return out


def _check_22free(P):
    if not is_ab_free(P, 2, 2):
        return []
    out = []
    if zeta_22free(P) != zeta(P):
        out.append(("zeta", f"{zeta_22free(P)} != {zeta(P)}"))
    if P.n and p_expansion_22free(P) != expand(P, "p"):
        out.append(("p-expansion", "cycle-type count differs from basis change"))
    return out


def _check_21free(P):
    if not is_ab_free(P, 2, 1) or P.n == 0:
        return []
    tableaux = s_expansion_21free(P)
    out = []
    if tableaux.coeffs != s_coefficients_generic(P).coeffs:
        out.append(("tableaux-generic", "tableau counts differ from alternating sum"))
    if tableaux != expand(P, "s"):
        out.append(("tableaux-basis", "tableau counts differ from basis change"))
    return out


def _check_e_levelsum(P):
    out = []
    for k in range(1, P.n + 1):
        lhs, rhs = e_levelsum_check(P, k)
        if lhs != rhs:
            out.append((f"level-{k}", f"{lhs} != {rhs}"))
    return out


def _brute_digraph_count(n, edges):
    count = 0
    for w in permutations(range(n)):
        pos = {v: i for i, v in enumerate(w)}
        if all(pos[a] <= pos[b] for a, b in edges):
            count += 1
    return count


def _check_digraph(P):
    out = []
    covers = [(i, j) for i in range(P.n) for j in _bits(P.up[i])
              if not any(P.up[k] >> j & 1 for k in _bits(P.up[i]))]
    D = make_digraph(P.n, covers)
    if zeta_digraph(D) != zeta(P):
        out.append(("covers", "cover digraph count differs"))
    closure = transitive_closure(D)
    if set(closure.edges) != set(P.pairs()):
        out.append(("closure", "closure of covers is not the order"))
    return out


def _brute_reversing(P):
    return [w for w in permutations(range(P.n)) if is_complete(comp_of_listing(P, w))]


def _check_zeta1(P):
    out = []
    pairs = reversing_with_chi(P)
    listings = [w for w, _ in pairs]
    if listings != _brute_reversing(P):
        out.append(("rev", "pruned enumeration differs from brute force"))
    z1 = sum(c for _, c in pairs)
    sign = -1 if P.n & 1 else 1
    anti = qsym_antipode(linear_function(dual(P)))
    f_empty = anti.to_basis("F")[(P.n,)] if P.n else anti.to_basis("F")[()]
    if f_empty != sign * z1:
        out.append(("antipode", f"[F_empty] S(L_dual) = {f_empty}, zeta1 = {z1}"))
    if linear_polynomial(dual(P))(-1) != sign * z1:
        out.append(("reciprocity", f"l_dual(-1) = {linear_polynomial(dual(P))(-1)}"))
    for w in listings:
        if P.n > 1 and (not P.down[w[0]] or not P.up[w[-1]]):
            out.append(("ends", f"{w} starts minimal or ends maximal"))
    factors = irreducible_factorization(P)
    if any(F.n >= 2 and is_isomorphic(F, antichain(F.n)) for F in factors) and listings:
        out.append(("trivial-factor", "antichain factor but reversing listings exist"))
    return out


def _check_phi(P):
    z1 = sum(c for _, c in reversing_with_chi(P))
    got = phi(P).chi()
    return [] if got == z1 else [("chi", f"chi(phi) = {got}, zeta1 = {z1}")]


def _check_parity(P):
    if is_ab_free(P, 2, 2) and not reversing_with_chi(P) and zeta(P) % 2:
        return [("parity", f"zeta = {zeta(P)} is odd")]
    return []


def _check_comp_duality(P):
    m = max(P.n - 1, 0)
    bad = [s for s in range(1 << m) if not comp_duality_check(P, s)]
    return [("comp-duality", f"subset mask {s:b}") for s in bad]


def _check_realizability(P):
    out = []
    m = max(P.n - 1, 0)
    for w in permutations(range(P.n)):
        A = comp_of_listing(P, w)
        if not realizability_necessary(A):
            out.append(("necessary", f"listing {w}"))
        mountain_chi = chi_mountain(mountain_from_plucking(A))
        if mountain_chi != kernels.chi_full(A.fam, m):
            out.append(("chi-depth", f"listing {w}"))
        table = kernels.chi_transform(A.fam, m)
        for s in range(1 << m):
            if not A.fam[s]:
                continue
            if table[s] != chi_at(A, s):
                out.append(("chi-at", f"listing {w} subset {s:b}"))
            if vanishing_check(A, s) and table[s] != 0:
                out.append(("vanishing", f"listing {w} subset {s:b}"))
    return out


CHECKS = {
    "duality": _check_duality,
    "f-direct": _check_f_direct,
    "p-special": _check_p_special,
    "22free": _check_22free,
    "21free": _check_21free,
    "e-levelsum": _check_e_levelsum,
    "digraph-closure": _check_digraph,
    "zeta1": _check_zeta1,
    "phi": _check_phi,
    "parity": _check_parity,
    "comp-duality": _check_comp_duality,
    "realizability": _check_realizability,
}

PAIR_SUITES = ("multiplicativity",)
SUITES = tuple(sorted(set(CHECKS) | set(PAIR_SUITES)))


# -- pair checks ---------------------------------------------------------------

def _check_pair(pair):
    P, Q = pair
    PQ = ordinal_sum(P, Q)
    out = []
    if linear_function(PQ) != qsym_product(linear_function(P), linear_function(Q)):
        out.append(("L-product", "L of the ordinal sum is not the product"))
    z = [sum(c for _, c in reversing_with_chi(X)) for X in (P, Q, PQ)]
    if z[2] != z[0] * z[1]:
        out.append(("zeta1-product", f"{z[2]} != {z[0]} * {z[1]}"))
    if phi(PQ) != phi(P) * phi(Q):
        out.append(("phi-product", "phi of the ordinal sum is not the product"))
    return out


# -- reports -------------------------------------------------------------------

@dataclass
class VerificationReport:
    suite: str
    n_min: int
    n_max: int
    universe: str
    posets_checked: int
    counts: dict
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self):
        return not self.failures

    def to_dict(self, timing=True):
        data = asdict(self)
        data["counts"] = {str(k): v for k, v in sorted(self.counts.items())}
        data["failures"] = [list(f) for f in self.failures]
        data["passed"] = self.passed
        if not timing:
            data.pop("elapsed")
        return data


@dataclass
class ConjectureReport:
    conjecture: int
    n_min: int
    n_max: int
    instances_checked: int
    posets_checked: int
    counterexamples: list = field(default_factory=list)
    seed: int = 0
    elapsed: float = 0.0

    def to_dict(self, timing=True):
        data = asdict(self)
        data["counterexamples"] = [list(c) for c in self.counterexamples]
        if not timing:
            data.pop("elapsed")
        return data


def write_jsonl(report, path):
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(report.to_dict(), sort_keys=True) + "\n")


# -- sharded execution ---------------------------------------------------------

def shard_of(key, jobs):
    return zlib.crc32(key.encode()) % jobs


def _run_shard(args):
    name, items = args
    check = _check_pair if name in PAIR_SUITES else CHECKS[name]
    out = []
    for key, item in items:
        for check_id, details in check(item):
            out.append((key, check_id, details))
    return out


def _sharded(name, items, jobs):
    """Run ``name`` over ``(key, item)`` pairs; results sorted by key."""
    if jobs <= 1:
        failures = _run_shard((name, items))
    else:
        shards = [[] for _ in range(jobs)]
        for key, item in items:
            shards[shard_of(key, jobs)].append((key, item))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            failures = [f for part in pool.map(_run_shard, [(name, s) for s in shards]) for f in part]
    return sorted(failures)


def _universe(n_max, universe):
    if universe == "auto":
        universe = "labeled" if n_max <= 4 else "iso"
    if universe not in ("labeled", "iso"):
        raise ValueError(f"unknown universe {universe!r}")
    return universe


def run_suite(suite, n_max, jobs=1, universe="auto", n_min=0):
    """Run one named check over every poset with ``n_min <= n <= n_max``.

    ``universe`` is ``"labeled"``, ``"iso"`` or ``"auto"`` (labelled posets
    up to four elements, isomorphism classes beyond).  The multiplicativity
    suite ranges over ordinal sums of classes with total size at most ``n_max``.
    """
    if suite not in SUITES:
        raise UnknownSuite(suite)
    start = time.perf_counter()
    universe = _universe(n_max, universe)
    iso = universe == "iso"
    counts = {}
    items = []
    if suite in PAIR_SUITES:
        classes = {k: list(enumerate_posets(k, True)) for k in range(1, n_max)}
        for a in range(1, n_max):
            for b in range(1, n_max - a + 1):
                if a + b < max(n_min, 2):
                    continue
                for P in classes[a]:
                    for Q in classes[b]:
                        items.append((f"{canonical_form(P)}|{canonical_form(Q)}", (P, Q)))
                        counts[a + b] = counts.get(a + b, 0) + 1
        universe = "iso-pairs"
    else:
        for n in range(n_min, n_max + 1):
            key = canonical_form if iso else raw_key
            batch = [(key(P), P) for P in enumerate_posets(n, iso)]
            counts[n] = len(batch)
            items.extend(batch)
    failures = _sharded(suite, items, jobs)
    return VerificationReport(suite, n_min, n_max, universe, len(items), counts,
                              failures, time.perf_counter() - start)


# -- random digraphs -----------------------------------------------------------

def random_acyclic_digraph(rng, n, density=0.4):
    """Edges respect a hidden random order, plus occasional loops."""
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density:
                edges.add((order[a], order[b]))
    if n and rng.random() < 0.2:
        v = rng.randrange(n)
        edges.add((v, v))
    return make_digraph(n, edges)


def digraph_closure_sample(count=1000, n_max=6, seed=0):
    """Failures of ``zeta(D) == zeta(D_c)`` and of ``zeta(D)`` against brute force."""
    rng = random.Random(seed)
    failures = []
    for t in range(count):
        n = rng.randint(0, n_max)
        D = random_acyclic_digraph(rng, n)
        plain = [(a, b) for a, b in D.edges if a != b]
        z = zeta_digraph(D)
        zc = zeta_digraph(transitive_closure(D))
        brute = _brute_digraph_count(n, plain)
        if not z == zc == brute:
            failures.append((t, sorted(D.edges), z, zc, brute))
    return failures


# -- conjectures ---------------------------------------------------------------

def _conj1_shard(items):
    out = []
    instances = 0
    for key, P in items:
        for w, c in reversing_with_chi(P):
            instances += 1
            if c == 0:
                out.append((key, [x + 1 for x in w], c))
    return instances, out


def _conj2_shard(items):
    out = []
    instances = 0
    for key, P in items:
        buckets = kernels.plucking_buckets(P.n, P.up)
        sizes = list(buckets.values())
        instances += len(sizes)
        total = sum(sizes)
        if total != factorial(P.n):
            raise AssertionError(f"{key}: bucket sizes sum to {total}, not {P.n}!")
        autos = automorphism_count(P)
        smallest = min(sizes)
        if autos > smallest:
            raise AssertionError(f"{key}: {autos} automorphisms exceed bucket size {smallest}")
        if autos != smallest:
            out.append((key, autos, smallest))
    return instances, out


def _conjecture(cid, n_max, jobs, n_min):
    if n_max > MAX_CONJECTURE:
        raise SizeError(f"conjecture scans support n <= {MAX_CONJECTURE}")
    start = time.perf_counter()
    items = [(canonical_form(P), P) for n in range(n_min, n_max + 1)
             for P in enumerate_posets(n, True)]
    worker = _conj1_shard if cid == 1 else _conj2_shard
    if jobs <= 1:
        parts = [worker(items)]
    else:
        shards = [[] for _ in range(jobs)]
        for key, P in items:
            shards[shard_of(key, jobs)].append((key, P))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(worker, shards))
    instances = sum(p[0] for p in parts)
    found = sorted((tuple(c) for p in parts for c in p[1]), key=repr)
    return ConjectureReport(cid, n_min, n_max, instances, len(items),
                            [list(c) for c in found], 0, time.perf_counter() - start)


def conjecture1_search(n_max, jobs=1, n_min=0):
    """Reversing listings whose plucking has vanishing chi (one class per iso type).

    Counterexample listings are reported with 1-based labels.
    """
    return _conjecture(1, n_max, jobs, n_min)


def conjecture2_search(n_max, jobs=1, n_min=0):
    """Posets whose smallest plucking bucket differs from the automorphism count."""
    return _conjecture(2, n_max, jobs, n_min)


# -- scans ---------------------------------------------------------------------

def rev_scan(n_max, n_min=1):
    """Rows ``(key, n, |Rev|, zeta1, phi summary)`` over isomorphism classes."""
    rows = []
    for n in range(n_min, n_max + 1):
        for P in enumerate_posets(n, True):
            pairs = reversing_with_chi(P)
            summary = " + ".join(f"{v}*{k}" for k, v in phi(P).terms) or "0"
            rows.append((canonical_form(P), n, len(pairs), sum(c for _, c in pairs), summary))
    return rows


def format_tsv(rows, header=("key", "n", "rev", "zeta1", "phi")):
    lines = ["\t".join(header)]
    lines += ["\t".join(str(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


__all__ = [
    "SUITES",
    "enumerate_posets",
    "raw_key",
    "run_suite",
    "VerificationReport",
    "ConjectureReport",
    "write_jsonl",
    "shard_of",
    "random_acyclic_digraph",
    "digraph_closure_sample",
    "conjecture1_search",
    "conjecture2_search",
    "rev_scan",
    "format_tsv",
]
