"""Brute-force evaluations used as independent references in the tests."""
import itertools
from fractions import Fraction
from math import prod


def eval_monomial_qsym(alpha, xs):
    """``M_alpha`` at the point ``xs`` by summing over increasing index tuples."""
    return sum(prod(xs[i] ** a for i, a in zip(idx, alpha))
               for idx in itertools.combinations(range(len(xs)), len(alpha)))


def eval_qsym(x, xs):
    from posetlin.symfunc import f_to_m
    xm = f_to_m(x) if x.basis == "F" else x
    return sum(c * eval_monomial_qsym(alpha, xs) for alpha, c in xm.coeffs.items())


def power(k, xs):
    return sum(v ** k for v in xs)


def elementary(k, xs):
    return sum(prod(c) for c in itertools.combinations(xs, k))


def complete(k, xs):
    return sum(prod(c) for c in itertools.combinations_with_replacement(xs, k))


def _det(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inv * prod(rows[i][perm[i]] for i in range(n))
    return total


def schur(lam, xs):
    """Bialternant formula; ``xs`` must be pairwise distinct."""
    k = len(xs)
    lam = list(lam) + [0] * (k - len(lam))
    if len(lam) > k:
        return 0
    num = _det([[x ** (lam[j] + k - 1 - j) for j in range(k)] for x in xs])
    den = _det([[x ** (k - 1 - j) for j in range(k)] for x in xs])
    return Fraction(num, den)


def eval_basis(basis, lam, xs):
    if basis == "m":
        seen = set(itertools.permutations(lam))
        return sum(eval_monomial_qsym(a, xs) for a in seen)
    if basis == "p":
        return prod(power(k, xs) for k in lam)
    if basis == "e":
        return prod(elementary(k, xs) for k in lam)
    if basis == "h":
        return prod(complete(k, xs) for k in lam)
    if basis == "s":
        return schur(lam, xs)
    raise ValueError(basis)


def eval_sym(x, xs):
    return sum(c * eval_basis(x.basis, lam, xs) for lam, c in x.coeffs.items())
