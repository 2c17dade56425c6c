"""Acceptance criteria 1-12.

Each test prints one PASS/FAIL line with its wall time; run with ``-s`` or
look for the lines in the terminal output (they bypass capture).
"""
import random
import time
from math import factorial

import pytest

from posetlin.borderpoints import (
    COUNTEREXAMPLE_PLUCKING,
    Plucking,
    chi,
    chi_at,
    comp_of_listing,
    is_complete,
    minimal_sets,
    phi,
    reversing_listings,
    zeta1,
)
from posetlin.comb import compositions
from posetlin.harness import conjecture1_search, conjecture2_search, enumerate_posets
from posetlin.linfun import (
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
from posetlin.poset import (
    antichain,
    chain,
    dual,
    incomparability_graph,
    is_ab_free,
    make_digraph,
    ordinal_sum,
    transitive_closure,
    zeta,
    zeta_digraph,
)
from posetlin.harness import random_acyclic_digraph
from posetlin.symfunc import (
    Polynomial,
    QsymElement,
    change_basis,
    detect_symmetric,
    qsym_product,
)

from conftest import EX1, TWO_CHAINS, TWO_PLUS_ONE, brute_zeta


@pytest.fixture
def criterion(capsys):
    """Run a criterion body under a time limit and print its verdict."""
    def run(number, limit, body):
        start = time.perf_counter()
        error = None
        try:
            body()
        except AssertionError as exc:
            error = exc
        elapsed = time.perf_counter() - start
        ok = error is None and elapsed < limit
        why = "" if ok else (f" ({error})" if error else f" (over {limit}s)")
        with capsys.disabled():
            print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'} "
                  f"in {elapsed:.2f}s, limit {limit}s{why}")
        if error is not None:
            raise error
        assert elapsed < limit, f"criterion {number} took {elapsed:.1f}s"
    return run


def iso_upto(n_max, n_min=0):
    for n in range(n_min, n_max + 1):
        yield from enumerate_posets(n, True)


def test_criterion_01(criterion):
    def body():
        p = expand(TWO_CHAINS, "p")
        assert p.coeffs == {(1, 1, 1, 1): 1, (2, 1, 1): 4, (2, 2): 2, (4,): -1}
    criterion(1, 1, body)


def test_criterion_02(criterion):
    def body():
        s = expand(TWO_PLUS_ONE, "s")
        assert s.coeffs == {(3,): 3, (2, 1): 2, (1, 1, 1): -1}
    criterion(2, 1, body)


def test_criterion_03(criterion):
    def body():
        m1 = QsymElement.monomial((1,))
        for n in range(7):
            assert linear_function(chain(n)).to_basis("M") == (m1 ** n).to_basis("M")
            assert linear_polynomial(chain(n)) == Polynomial.monomial(n)
        for n in range(1, 6):
            want = QsymElement(n, "M", {a: factorial(n) for a in compositions(n)})
            assert linear_function(antichain(n)).to_basis("M") == want
    criterion(3, 5, body)


def test_criterion_04(criterion):
    def body():
        A = COUNTEREXAMPLE_PLUCKING
        assert sorted(sorted(S.members) for S in A.sets()) == sorted(sorted(S) for S in [
            {1, 2}, {1, 3}, {2, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}, {1, 2, 3, 4}])
        assert is_complete(A) and chi(A) == 0
        for n in range(1, 7):
            B = Plucking.power_set(n)
            for mask in range(1 << (n - 1)):
                assert chi_at(B, mask) == (0 if mask else 1)
    criterion(4, 1, body)


def test_criterion_05(criterion):
    def body():
        def mins(P, listing):
            A = comp_of_listing(P, [x - 1 for x in listing])
            return sorted(sorted(S.members) for S in minimal_sets(A))
        assert mins(EX1, (1, 4, 2, 3)) == [[2], [3]]
        assert mins(TWO_CHAINS, (4, 3, 2, 1)) == [[1, 3], [2]]
    criterion(5, 1, body)


def _property_universe():
    for n in range(5):
        yield from enumerate_posets(n)
    yield from enumerate_posets(5, True)


def test_criterion_06(criterion):
    def body():
        checked = 0
        for P in _property_universe():
            L = linear_function(P)
            assert L == linear_function(dual(P))
            detect_symmetric(L)
            assert f_coefficients_direct(P) == L
            if P.n:
                p = expand(P, "p")
                assert p[(1,) * P.n] == 1
                if P.n >= 2:
                    assert p[(2,) + (1,) * (P.n - 2)] == len(incomparability_graph(P).edges)
            for k in range(1, P.n + 1):
                lhs, rhs = e_levelsum_check(P, k)
                assert lhs == rhs, (P, k)
            checked += 1
        assert checked == 1 + 1 + 3 + 19 + 219 + 63
        classes = {k: list(enumerate_posets(k, True)) for k in range(1, 6)}
        for a in range(1, 6):
            for b in range(1, 7 - a):
                for P in classes[a]:
                    for Q in classes[b]:
                        got = linear_function(ordinal_sum(P, Q))
                        assert got == qsym_product(linear_function(P), linear_function(Q))
    criterion(6, 120, body)


def test_criterion_07(criterion):
    def body():
        small = [P for P in iso_upto(5) if is_ab_free(P, 2, 2)]
        six = [P for P in enumerate_posets(6, True) if is_ab_free(P, 2, 2)]
        sample = random.Random(2024).sample(six, 200)
        for P in small + sample:
            assert zeta_22free(P) == brute_zeta(P)
            if P.n:
                assert p_expansion_22free(P) == change_basis(detect_symmetric(linear_function(P)), "p")
    criterion(7, 300, body)


def test_criterion_08(criterion):
    def body():
        classes = [P for P in iso_upto(5, 1) if is_ab_free(P, 2, 1)]
        assert classes
        for P in classes:
            assert s_expansion_21free(P).coeffs == s_coefficients_generic(P).coeffs
    criterion(8, 120, body)


def test_criterion_09(criterion):
    def body():
        for n in range(7):
            assert zeta1(chain(n)) == 1
        for n in range(2, 7):
            assert zeta1(antichain(n)) == 0
            assert phi(antichain(n)).is_zero()
        small = list(iso_upto(3, 1))
        for P in small:
            for Q in small:
                PQ = ordinal_sum(P, Q)
                assert zeta1(PQ) == zeta1(P) * zeta1(Q)
                assert phi(PQ) == phi(P) * phi(Q)
        for P in iso_upto(5):
            z = zeta1(P)
            assert phi(P).chi() == z
            assert linear_polynomial(dual(P))(-1) == (-1) ** P.n * z
    criterion(9, 300, body)


def test_criterion_10(criterion):
    def body():
        rng = random.Random(10)
        for _ in range(1000):
            n = rng.randint(0, 6)
            D = random_acyclic_digraph(rng, n)
            assert zeta_digraph(D) == zeta_digraph(transitive_closure(D))
            assert zeta_digraph(D) == zeta_digraph(make_digraph(n, D.edges))
    criterion(10, 60, body)


def test_criterion_11(criterion):
    def body():
        hits = 0
        for P in iso_upto(5):
            if is_ab_free(P, 2, 2) and not reversing_listings(P):
                hits += 1
                assert zeta(P) % 2 == 0, P
        assert hits > 0
    criterion(11, 120, body)


def test_criterion_12(criterion):
    def body():
        for search in (conjecture1_search, conjecture2_search):
            first = search(5).to_dict(timing=False)
            assert search(5).to_dict(timing=False) == first
            assert search(5, jobs=2).to_dict(timing=False) == first
            assert first["posets_checked"] == 1 + 1 + 2 + 5 + 16 + 63
    criterion(12, 900, body)
