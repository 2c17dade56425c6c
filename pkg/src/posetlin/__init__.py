"""Linear-extension invariants of finite posets.

The main objects are the quasisymmetric function ``L_P`` built from counts
of linear extensions, its expansions in the classical bases, and the
border-point pluckings of listings together with the characters built on
them.  The hot loops live in a compiled extension with a pure-Python
fallback; :data:`BACKEND` names the one in use.
"""
from .kernels import BACKEND
from .poset import (
    Poset, Digraph, chain, antichain, from_relations, dual, ordinal_sum,
    disjoint_union, cartesian_product, zeta, zeta_digraph, parse,
    canonical_form, irreducible_factorization, automorphism_count,
)
from .symfunc import QsymElement, SymElement, change_basis
from .linfun import linear_function, expand, linear_polynomial
from .borderpoints import (
    Plucking, Mountain, MountainSum, comp_of_listing, minimal_sets, is_complete,
    chi, chi_at, reversing_listings, zeta1, phi,
)
from .harness import enumerate_posets, run_suite, conjecture1_search, conjecture2_search

__version__ = "0.1.0"
