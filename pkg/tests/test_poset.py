import itertools
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from posetlin.errors import CycleError, LengthError, SizeError
from posetlin.poset import (
    EMPTY,
    Poset,
    antichain,
    automorphism_count,
    canonical_form,
    cartesian_product,
    chain,
    digraph_of,
    disjoint_union,
    dual,
    format_digraph,
    format_poset,
    from_relations,
    height,
    incomparability_graph,
    irreducible_factorization,
    is_ab_free,
    is_acyclic,
    is_irreducible,
    is_isomorphic,
    is_linear_extension,
    linear_extensions,
    longest_chain_size,
    make_digraph,
    ordinal_sum,
    parse,
    poset_from_key,
    relabel,
    restrict,
    transitive_closure,
    zeta,
    zeta_digraph,
)

from conftest import EX1, KITE, SIX, TWO_CHAINS, TWO_PLUS_ONE, brute_zeta, posets, rel


def test_covers_closure():
    assert rel(2, [(1, 2)]) == chain(2)
    assert TWO_CHAINS.pairs() == [(0, 2), (1, 3)]
    assert is_isomorphic(disjoint_union(chain(2), chain(2)), TWO_CHAINS)
    assert rel(3, [(1, 2), (2, 3)]).less(0, 2)


def test_cycle_rejected():
    with pytest.raises(CycleError):
        rel(3, [(1, 2), (2, 3), (3, 1)])


def test_label_out_of_range():
    with pytest.raises(IndexError):
        from_relations(2, [(0, 2)])


def test_non_transitive_rejected():
    with pytest.raises(ValueError):
        Poset(3, (0b010, 0b100, 0))


def test_dual():
    assert dual(chain(2)).pairs() == [(1, 0)]
    assert is_isomorphic(dual(TWO_CHAINS), TWO_CHAINS)
    assert dual(antichain(3)) == antichain(3)


def test_restrict():
    assert restrict(EX1, [0, 3, 1]) == rel(3, [(1, 2), (1, 3)])
    assert restrict(EX1, range(4)) == EX1
    assert restrict(EX1, []) == EMPTY


def test_ordinal_sum():
    assert ordinal_sum(chain(1), chain(1)) == chain(2)
    assert ordinal_sum(antichain(2), chain(1)) == rel(3, [(1, 3), (2, 3)])
    assert ordinal_sum(EMPTY, EX1) == EX1


def test_disjoint_union():
    assert disjoint_union(chain(2), chain(1)).pairs() == [(0, 1)]
    assert disjoint_union(EMPTY, EX1) == EX1


def test_cartesian_product():
    assert is_isomorphic(cartesian_product(chain(1), EX1), EX1)
    diamond = cartesian_product(chain(2), chain(2))
    assert is_isomorphic(diamond, rel(4, [(1, 2), (1, 3), (2, 4), (3, 4)]))


@given(posets(max_n=3, min_n=1), posets(max_n=3, min_n=1))
def test_product_of_mountains(P, Q):
    top = chain(1)
    P, Q = ordinal_sum(P, top), ordinal_sum(Q, top)
    assert len(cartesian_product(P, Q).maximal()) == 1


def test_zeta_examples():
    assert zeta(chain(5)) == 1
    assert zeta(antichain(5)) == 120
    assert zeta(TWO_PLUS_ONE) == 3
    assert zeta(TWO_CHAINS) == 6
    assert zeta(EMPTY) == 1


def test_linear_extensions_sorted():
    exts = linear_extensions(TWO_PLUS_ONE)
    assert exts == sorted(exts) and len(exts) == 3


def test_is_linear_extension():
    assert is_linear_extension(chain(2), (0, 1))
    assert not is_linear_extension(chain(2), (1, 0))
    assert not is_linear_extension(EX1, (0, 3, 1, 2))
    with pytest.raises(LengthError):
        is_linear_extension(chain(2), (0,))


def test_incomparability_graph():
    assert not incomparability_graph(chain(4)).edges
    assert len(incomparability_graph(antichain(4)).edges) == 6
    assert incomparability_graph(TWO_CHAINS).edges == {(0, 1), (0, 3), (1, 2), (2, 3)}


def test_ab_free():
    assert not is_ab_free(TWO_CHAINS, 2, 2)
    assert not is_ab_free(TWO_PLUS_ONE, 2, 1)
    assert is_ab_free(chain(4), 2, 2)


def test_factorization_examples():
    assert irreducible_factorization(chain(4)) == [chain(1)] * 4
    factors = irreducible_factorization(SIX)
    assert [F.n for F in factors] == [3, 2, 1]
    assert factors[0] == rel(3, [(1, 3)])
    assert is_isomorphic(factors[1], antichain(2))
    assert irreducible_factorization(KITE) == [KITE]
    assert is_irreducible(KITE)
    assert irreducible_factorization(EMPTY) == []


def test_automorphisms():
    assert automorphism_count(antichain(4)) == 24
    assert automorphism_count(chain(4)) == 1
    assert automorphism_count(TWO_CHAINS) == 2


def _brute_automorphisms(P):
    return sum(1 for p in itertools.permutations(range(P.n)) if relabel(P, p) == P)


@given(posets(max_n=5))
def test_automorphisms_brute(P):
    assert automorphism_count(P) == _brute_automorphisms(P)


@given(posets(max_n=5), st.data())
def test_canonical_form_invariant(P, data):
    perm = data.draw(st.permutations(range(P.n)))
    Q = relabel(P, list(perm))
    assert canonical_form(Q) == canonical_form(P)
    assert is_isomorphic(poset_from_key(canonical_form(P)), P)


def _brute_canonical(P):
    return min(tuple(relabel(P, p).up) for p in itertools.permutations(range(P.n)))


@given(posets(max_n=5), posets(max_n=5))
def test_canonical_separates(P, Q):
    same = P.n == Q.n and _brute_canonical(P) == _brute_canonical(Q)
    assert is_isomorphic(P, Q) == same


@given(posets(max_n=6))
def test_core_invariants(P):
    assert dual(dual(P)) == P
    assert zeta(P) == zeta(dual(P)) == brute_zeta(P)
    factors = irreducible_factorization(P)
    assert all(is_irreducible(F) for F in factors)
    if factors:
        assert is_isomorphic(ordinal_sum(*factors), P)


@given(posets(max_n=3), posets(max_n=3))
def test_zeta_multiplicative(P, Q):
    assert zeta(ordinal_sum(P, Q)) == zeta(P) * zeta(Q)


def test_heights():
    assert longest_chain_size(chain(3)) == 3 and height(chain(3)) == 2
    assert longest_chain_size(EMPTY) == 0


def test_size_bound():
    with pytest.raises(SizeError):
        zeta(antichain(17))


def test_digraph_examples():
    D = make_digraph(3, [(0, 1), (1, 2)])
    assert (0, 2) in transitive_closure(D).edges
    assert zeta_digraph(D) == zeta_digraph(transitive_closure(D)) == 1
    cycle = make_digraph(3, [(0, 1), (1, 2), (2, 0)])
    assert not is_acyclic(cycle) and zeta_digraph(cycle) == 0


def test_digraph_loop_ignored():
    D = make_digraph(2, [(0, 0)])
    assert is_acyclic(D)
    assert zeta_digraph(D) == 2


@given(posets(max_n=5))
def test_digraph_of_poset(P):
    assert zeta_digraph(digraph_of(P)) == zeta(P)


def test_text_format_roundtrip():
    text = "# comment\nposet 4\n1 3\n2 4\nend\ndigraph 2\n1 2\n2 1\nend\n"
    P, D = parse(text)
    assert P == TWO_CHAINS
    assert parse(format_poset(P)) == [P]
    assert parse(format_digraph(D)) == [D]


@pytest.mark.parametrize("text", ["poset 2\n1 2\n", "graph 2\nend\n", "poset 2\n1\nend\n"])
def test_text_format_errors(text):
    with pytest.raises(ValueError):
        parse(text)


def test_text_format_label_range():
    with pytest.raises(IndexError):
        parse("poset 2\n1 3\nend\n")


def test_antichain_zeta_factorial():
    for n in range(7):
        assert zeta(antichain(n)) == factorial(n)
