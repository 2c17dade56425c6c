import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from posetlin.poset import (
    antichain,
    chain,
    disjoint_union,
    from_relations,
    ordinal_sum,
    relabel,
)

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rel(n, pairs):
    """Poset from 1-based relations, as written in the text format."""
    return from_relations(n, [(i - 1, j - 1) for i, j in pairs])


TWO_CHAINS = rel(4, [(1, 3), (2, 4)])
TWO_PLUS_ONE = disjoint_union(antichain(1), chain(2))
EX1 = rel(4, [(1, 2), (1, 3), (1, 4), (3, 4)])
KITE = rel(4, [(1, 4), (2, 4)])
# 1 < 3 with 2 free, then an antichain {4, 5}, then a top 6
SIX = ordinal_sum(rel(3, [(1, 3)]), antichain(2), chain(1))


@st.composite
def posets(draw, max_n=6, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = [p for p in itertools.combinations(range(n), 2) if draw(st.booleans())]
    P = from_relations(n, pairs)
    perm = draw(st.permutations(range(n)))
    return relabel(P, list(perm))


def brute_zeta(P):
    return sum(1 for w in itertools.permutations(range(P.n))
               if all(not P.less(w[j], w[i]) for i in range(P.n) for j in range(i + 1, P.n)))


@pytest.fixture(params=["python", "cython"])
def backend(request):
    if request.param == "python":
        from posetlin import _pycore
        return _pycore
    core = pytest.importorskip("posetlin._core")
    return core
