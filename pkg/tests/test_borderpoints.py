import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from posetlin.borderpoints import (
    COUNTEREXAMPLE_PLUCKING,
    ONE_POINT,
    Mountain,
    MountainSum,
    Plucking,
    chi,
    chi_at,
    chi_from_fvector,
    chi_mountain,
    chi_table,
    comp_duality_check,
    comp_of_listing,
    f_vector,
    is_complete,
    minimal_sets,
    mountain_from_plucking,
    phi,
    realizability_necessary,
    reversing_listings,
    reversing_with_chi,
    vanishing_check,
    zeta1,
)
from posetlin.comb import IndexSet
from posetlin.errors import LengthError, NotMember
from posetlin.harness import enumerate_posets
from posetlin.linfun import linear_function, linear_polynomial
from posetlin.poset import (
    Poset,
    antichain,
    chain,
    dual,
    irreducible_factorization,
    is_ab_free,
    is_isomorphic,
    ordinal_sum,
    zeta,
)
from posetlin.symfunc import qsym_antipode

from conftest import EX1, KITE, TWO_CHAINS, posets


def members(sets):
    return [set(S.members) for S in sets]


def _brute_family(P, w):
    """Border-point sets straight from the definition."""
    n = P.n
    out = set()
    # the empty poset still has the single empty set of border points
    for k in range(max(n, 1)):
        for cut in itertools.combinations(range(1, n), k):
            edges = [0, *cut, n]
            blocks = [w[edges[t]:edges[t + 1]] for t in range(len(edges) - 1)]
            if all(not P.less(b[j], b[i]) for b in blocks
                   for i in range(len(b)) for j in range(i + 1, len(b))):
                out.add(frozenset(cut))
    return out


@st.composite
def pluckings(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    m = n - 1
    gens = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=1, max_size=4))
    return Plucking.from_minimal(n, gens)


def test_extension_gives_power_set():
    A = comp_of_listing(EX1, (0, 1, 2, 3))
    assert A == Plucking.power_set(4)


def test_worked_border_sets():
    assert members(minimal_sets(comp_of_listing(EX1, (0, 3, 1, 2)))) == [{2}, {3}]
    assert members(minimal_sets(comp_of_listing(TWO_CHAINS, (3, 2, 1, 0)))) == [{2}, {1, 3}]


def test_listing_validation():
    with pytest.raises(LengthError):
        comp_of_listing(EX1, (0, 1, 2))


@given(posets(max_n=5), st.data())
def test_comp_of_listing_brute(P, data):
    w = tuple(data.draw(st.permutations(range(P.n))))
    A = comp_of_listing(P, w)
    assert {frozenset(S.members) for S in A.sets()} == _brute_family(P, w)


def test_minimal_sets_examples():
    assert members(minimal_sets(Plucking.power_set(4))) == [set()]
    assert is_complete(Plucking.power_set(1))
    assert not is_complete(Plucking.power_set(3))
    K = COUNTEREXAMPLE_PLUCKING
    assert members(minimal_sets(K)) == [{1, 2}, {1, 3}, {2, 4}]
    assert is_complete(K)
    A = Plucking.from_minimal(3, [[1]])
    assert members(minimal_sets(A)) == [{1}] and not is_complete(A)


def test_chi_examples():
    A = Plucking.power_set(5)
    assert chi_at(A, 0) == 1
    assert all(chi_at(A, s) == 0 for s in range(1, 16))
    assert chi(COUNTEREXAMPLE_PLUCKING) == 0
    with pytest.raises(NotMember):
        chi_at(Plucking.from_minimal(3, [[1]]), IndexSet.of(3, [2]))


def test_vanishing_examples():
    A = Plucking.from_minimal(3, [[1]])
    assert vanishing_check(A, A.top) and chi(A) == 0
    assert not vanishing_check(COUNTEREXAMPLE_PLUCKING, COUNTEREXAMPLE_PLUCKING.top)
    P = Plucking.power_set(4)
    assert all(vanishing_check(P, s) for s in range(1, 8))
    with pytest.raises(NotMember):
        vanishing_check(COUNTEREXAMPLE_PLUCKING, 0)


def test_validation():
    with pytest.raises(ValueError):
        Plucking.from_masks(3, [0b01])  # misses the full set
    with pytest.raises(ValueError):
        Plucking.from_masks(3, [0b00, 0b11])  # holds the empty set but not {1}
    assert Plucking.from_masks(3, [0b11]).masks() == [3]


@given(pluckings())
def test_chi_identities(A):
    table = chi_table(A)
    for s in A.masks():
        assert table[s] == chi_at(A, s)
        # chi of the mountain below s, by depth
        lower = [t for t in A.masks() if t & s == t]
        index = {t: i for i, t in enumerate(lower)}
        rows = tuple(sum(1 << index[u] for u in lower if u != t and u & t == t) for t in lower)
        assert chi_mountain(Mountain(Poset(len(lower), rows))) == chi_at(A, s)
        if vanishing_check(A, s):
            assert chi_at(A, s) == 0
    M = mountain_from_plucking(A)
    assert chi_mountain(M) == chi_from_fvector(f_vector(M)) == chi(A)


def test_vanishing_on_listing_pluckings():
    for n in range(1, 5):
        for P in enumerate_posets(n):
            for w in itertools.permutations(range(n)):
                A = comp_of_listing(P, w)
                for s in A.masks():
                    if vanishing_check(A, s):
                        assert chi_at(A, s) == 0


def test_mountain_examples():
    one = mountain_from_plucking(Plucking.from_masks(3, [0b11]))
    assert f_vector(one) == (1,) and chi_mountain(one) == 1
    cube = mountain_from_plucking(Plucking.power_set(3))
    assert f_vector(cube) == (1, 2, 1) and chi_mountain(cube) == 0
    K = mountain_from_plucking(COUNTEREXAMPLE_PLUCKING)
    assert f_vector(K) == (1, 4, 3) and chi_mountain(K) == 0
    with pytest.raises(ValueError):
        Mountain(antichain(2))


def test_reversing_examples():
    for n in range(2, 6):
        assert reversing_listings(antichain(n)) == []
        assert reversing_listings(chain(n)) == [tuple(range(n - 1, -1, -1))]
        assert zeta1(chain(n)) == 1 and zeta1(antichain(n)) == 0
        assert phi(antichain(n)).is_zero()
        assert phi(chain(n)) == ONE_POINT
    assert reversing_listings(KITE) == []


def _brute_rev(P):
    return [w for w in itertools.permutations(range(P.n)) if is_complete(comp_of_listing(P, w))]


@pytest.mark.parametrize("n", range(0, 6))
def test_reversing_matches_brute(n):
    for P in enumerate_posets(n, True):
        listings = reversing_listings(P)
        assert listings == _brute_rev(P)
        for w in listings:
            if n > 1:
                assert P.down[w[0]] and P.up[w[-1]]


def _pairs(limit=3):
    small = [P for n in range(limit + 1) for P in enumerate_posets(n, True)]
    return [(P, Q) for P in small for Q in small]


def test_zeta1_and_phi_multiplicative():
    for P, Q in _pairs():
        PQ = ordinal_sum(P, Q)
        assert zeta1(PQ) == zeta1(P) * zeta1(Q)
        assert phi(PQ) == phi(P) * phi(Q)


@pytest.mark.parametrize("n", range(0, 6))
def test_zeta1_identities(n):
    for P in enumerate_posets(n, True):
        z1 = zeta1(P)
        assert phi(P).chi() == z1
        sign = (-1) ** n
        assert linear_polynomial(dual(P))(-1) == sign * z1
        anti = qsym_antipode(linear_function(dual(P))).to_basis("F")
        assert anti[(n,) if n else ()] == sign * z1


@pytest.mark.parametrize("n", range(2, 7))
def test_trivial_factor_corollary(n):
    for P in enumerate_posets(n, True):
        factors = irreducible_factorization(P)
        if any(F.n >= 2 and is_isomorphic(F, antichain(F.n)) for F in factors):
            assert reversing_listings(P) == []


@pytest.mark.parametrize("n", range(1, 6))
def test_parity_corollary(n):
    for P in enumerate_posets(n, True):
        if is_ab_free(P, 2, 2) and not reversing_listings(P):
            assert zeta(P) % 2 == 0


def test_comp_duality():
    for P in enumerate_posets(3):
        assert all(comp_duality_check(P, s) for s in range(4))
    assert comp_duality_check(chain(2), IndexSet.of(2, [1]))
    assert comp_duality_check(TWO_CHAINS, IndexSet.of(4, [1, 3]))


def test_realizability():
    assert not realizability_necessary(COUNTEREXAMPLE_PLUCKING)
    assert realizability_necessary(Plucking.from_masks(5, [0b1111]))
    for P in enumerate_posets(4):
        for w in itertools.permutations(range(4)):
            assert realizability_necessary(comp_of_listing(P, w))


def test_mountain_sum_algebra():
    total = phi(TWO_CHAINS)
    assert total.chi() == zeta1(TWO_CHAINS)
    assert (total + MountainSum()).terms == total.terms
    assert ONE_POINT * total == total
    data = json.loads(json.dumps(total.to_json()))
    assert MountainSum.from_json(data) == total
    assert all(set(item) == {"fvector", "multiplicity", "key"} for item in data)


def test_parallel_rev_matches():
    assert reversing_with_chi(TWO_CHAINS, jobs=2) == reversing_with_chi(TWO_CHAINS)
