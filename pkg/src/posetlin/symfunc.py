"""Exact quasisymmetric and symmetric functions of bounded degree.

Quasisymmetric elements live in the monomial (``"M"``) or fundamental
(``"F"``) basis, keyed by compositions.  Symmetric elements use one of
``"m"``, ``"p"``, ``"e"``, ``"h"``, ``"s"`` keyed by partitions.  The
monomial bases are canonical; everything else is converted on demand
through cached exact transition matrices.
"""
from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .comb import comp_of_mask, mask_of, partitions, sort_to_partition
from .errors import DegreeError, NotSymmetric, SizeError

QSYM_BASES = ("M", "F")
SYM_BASES = ("m", "p", "e", "h", "s")


def _degree_bound():
    raw = os.environ.get("POSETLIN_MAX_DEGREE")
    if raw is None:
        return 10
    value = int(raw)
    if not 0 <= value <= 12:
        raise ValueError("POSETLIN_MAX_DEGREE must lie in 0..12")
    return value


DEGREE_BOUND = _degree_bound()


def check_degree(n):
    if n > DEGREE_BOUND:
        raise SizeError(f"degree {n} exceeds the bound {DEGREE_BOUND}")


def _normalise(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def _clean(coeffs):
    return {k: _normalise(v) for k, v in coeffs.items() if v != 0}


def _format_coeff(value):
    return str(value)


def _parse_coeff(text):
    return _normalise(Fraction(text))


# -- polynomials ----------------------------------------------------------------

class Polynomial:
    """Univariate polynomial with exact coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = [_normalise(Fraction(c)) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def monomial(cls, k, coeff=1):
        return cls([0] * k + [coeff])

    @classmethod
    def binomial(cls, k):
        """``C(m, k) = m (m - 1) ... (m - k + 1) / k!`` as a polynomial in ``m``."""
        poly = cls([1])
        for j in range(k):
            poly = poly * cls([-j, 1])
        return poly * Fraction(1, factorial(k))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, value):
        total = 0
        for c in reversed(self.coeffs):
            total = total * value + c
        return _normalise(Fraction(total))

    def __add__(self, other):
        other = _as_poly(other)
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def coefficient(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            var = "" if k == 0 else ("m" if k == 1 else f"m^{k}")
            if var and c == 1:
                terms.append(var)
            elif var and c == -1:
                terms.append(f"-{var}")
            else:
                terms.append(f"{c}{'*' if var else ''}{var}")
        return " + ".join(reversed(terms)).replace("+ -", "- ")

    def to_json(self):
        return [_format_coeff(c) for c in self.coeffs]


def _as_poly(value):
    return value if isinstance(value, Polynomial) else Polynomial([value])


# -- quasisymmetric functions ------------------------------------------------

class QsymElement:
    """Homogeneous quasisymmetric function of a fixed degree."""

    __slots__ = ("degree", "basis", "coeffs")

    def __init__(self, degree, basis, coeffs=None):
        if basis not in QSYM_BASES:
            raise ValueError(f"unknown QSym basis {basis!r}")
        coeffs = _clean({tuple(k): v for k, v in (coeffs or {}).items()})
        for alpha in coeffs:
            if sum(alpha) != degree or any(a < 1 for a in alpha):
                raise ValueError(f"{alpha} is not a composition of {degree}")
        self.degree = degree
        self.basis = basis
        self.coeffs = coeffs

    @classmethod
    def monomial(cls, alpha, coeff=1):
        alpha = tuple(alpha)
        return cls(sum(alpha), "M", {alpha: coeff})

    @classmethod
    def fundamental(cls, alpha, coeff=1):
        alpha = tuple(alpha)
        return cls(sum(alpha), "F", {alpha: coeff})

    @classmethod
    def fundamental_set(cls, n, mask, coeff=1):
        return cls(n, "F", {comp_of_mask(mask, n): coeff})

    @classmethod
    def one(cls):
        return cls(0, "M", {(): 1})

    def __getitem__(self, alpha):
        return self.coeffs.get(tuple(alpha), 0)

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def is_zero(self):
        return not self.coeffs

    def to_basis(self, basis):
        if basis == self.basis:
            return self
        return m_to_f(self) if basis == "F" else f_to_m(self)

    def _binary(self, other, sign):
        if not isinstance(other, QsymElement):
            return NotImplemented
        if self.is_zero():
            return other if sign > 0 else -other
        if other.is_zero():
            return self
        if other.degree != self.degree:
            raise DegreeError("cannot add elements of different degree")
        other = other.to_basis(self.basis)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + sign * v
        return QsymElement(self.degree, self.basis, out)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return QsymElement(self.degree, self.basis, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, QsymElement):
            return qsym_product(self, other)
        return QsymElement(self.degree, self.basis, {k: v * other for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __pow__(self, k):
        out = QsymElement.one()
        for _ in range(k):
            out = qsym_product(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, QsymElement):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.degree == other.degree and self.coeffs == other.to_basis(self.basis).coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*{self.basis}{k}" for k, v in self.items())

    def to_json(self):
        return {
            "degree": self.degree,
            "basis": self.basis,
            "terms": [{"index": list(k), "coeff": _format_coeff(v)} for k, v in self.items()],
        }


def f_to_m(x):
    """Rewrite an F-basis element in the M basis: ``F_I = sum_{J >= I} M_J``."""
    if x.basis == "M":
        return x
    n = x.degree
    m = max(n - 1, 0)
    top = (1 << m) - 1
    out = {}
    for alpha, c in x.coeffs.items():
        base = mask_of(alpha)
        free = top ^ base
        sub = free
        while True:
            key = comp_of_mask(base | sub, n)
            out[key] = out.get(key, 0) + c
            if sub == 0:
                break
            sub = (sub - 1) & free
    return QsymElement(n, "M", out)


def m_to_f(x):
    """Rewrite an M-basis element in the F basis by inclusion-exclusion."""
    if x.basis == "F":
        return x
    n = x.degree
    m = max(n - 1, 0)
    top = (1 << m) - 1
    out = {}
    for alpha, c in x.coeffs.items():
        base = mask_of(alpha)
        free = top ^ base
        sub = free
        while True:
            key = comp_of_mask(base | sub, n)
            sign = -1 if bin(sub).count("1") & 1 else 1
            out[key] = out.get(key, 0) + sign * c
            if sub == 0:
                break
            sub = (sub - 1) & free
    return QsymElement(n, "F", out)


@lru_cache(maxsize=None)
def _quasi_shuffle(alpha, beta):
    if not alpha:
        return {beta: 1}
    if not beta:
        return {alpha: 1}
    out = {}
    for head, rest in (
        (alpha[0], _quasi_shuffle(alpha[1:], beta)),
        (beta[0], _quasi_shuffle(alpha, beta[1:])),
        (alpha[0] + beta[0], _quasi_shuffle(alpha[1:], beta[1:])),
    ):
        for tail, c in rest.items():
            key = (head,) + tail
            out[key] = out.get(key, 0) + c
    return out


def qsym_product(x, y):
    """Product of two quasisymmetric functions, computed in the M basis."""
    if x.is_zero() or y.is_zero():
        return QsymElement(x.degree + y.degree, "M")
    x, y = f_to_m(x), f_to_m(y)
    out = {}
    for a, ca in x.coeffs.items():
        for b, cb in y.coeffs.items():
            for key, c in _quasi_shuffle(a, b).items():
                out[key] = out.get(key, 0) + c * ca * cb
    return QsymElement(x.degree + y.degree, "M", out)


def qsym_antipode(x):
    """Antipode, via ``S(F_I) = (-1)^n F_{complement of I^op}``."""
    basis = x.basis
    fx = m_to_f(x)
    n = fx.degree
    top = (1 << max(n - 1, 0)) - 1
    sign = -1 if n & 1 else 1
    out = {}
    for alpha, c in fx.coeffs.items():
        key = comp_of_mask(top ^ mask_of(alpha[::-1]), n)
        out[key] = out.get(key, 0) + sign * c
    return QsymElement(n, "F", out).to_basis(basis)


def rearrangements(lam):
    return sorted(set(permutations(lam)))


def detect_symmetric(x):
    """The m-expansion of ``x``, or :class:`NotSymmetric` with a witness pair."""
    xm = f_to_m(x)
    out = {}
    seen = set()
    for alpha, _ in xm.items():
        lam = sort_to_partition(alpha)
        if lam in seen:
            continue
        seen.add(lam)
        arrangements = rearrangements(lam)
        ref = xm[arrangements[0]]
        for beta in arrangements[1:]:
            if xm[beta] != ref:
                raise NotSymmetric((arrangements[0], beta))
        out[lam] = ref
    return SymElement(xm.degree, "m", out)


# -- symmetric functions -----------------------------------------------------

class SymElement:
    """Homogeneous symmetric function in one of the bases m, p, e, h, s."""

    __slots__ = ("degree", "basis", "coeffs")

    def __init__(self, degree, basis, coeffs=None):
        if basis not in SYM_BASES:
            raise ValueError(f"unknown Sym basis {basis!r}")
        coeffs = _clean({tuple(k): v for k, v in (coeffs or {}).items()})
        for lam in coeffs:
            if sum(lam) != degree or list(lam) != sorted(lam, reverse=True) or 0 in lam:
                raise ValueError(f"{lam} is not a partition of {degree}")
        self.degree = degree
        self.basis = basis
        self.coeffs = coeffs

    @classmethod
    def basis_element(cls, basis, lam, coeff=1):
        lam = tuple(lam)
        return cls(sum(lam), basis, {lam: coeff})

    def __getitem__(self, lam):
        return self.coeffs.get(tuple(lam), 0)

    def items(self):
        order = {lam: i for i, lam in enumerate(partitions(self.degree))}
        return sorted(self.coeffs.items(), key=lambda kv: order[kv[0]])

    def is_zero(self):
        return not self.coeffs

    def to_basis(self, basis):
        return change_basis(self, basis)

    def to_qsym(self):
        """Expansion in the M basis of QSym."""
        xm = change_basis(self, "m")
        out = {}
        for lam, c in xm.coeffs.items():
            for alpha in rearrangements(lam):
                out[alpha] = c
        return QsymElement(self.degree, "M", out)

    def _binary(self, other, sign):
        if not isinstance(other, SymElement):
            return NotImplemented
        if other.degree != self.degree and not (self.is_zero() or other.is_zero()):
            raise DegreeError("cannot add elements of different degree")
        other = change_basis(other, self.basis)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + sign * v
        return SymElement(self.degree, self.basis, out)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return SymElement(self.degree, self.basis, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, scalar):
        return SymElement(self.degree, self.basis, {k: v * scalar for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymElement):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return (self.degree == other.degree
                and self.coeffs == change_basis(other, self.basis).coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*{self.basis}{k}" for k, v in self.items())

    def to_json(self):
        return {
            "degree": self.degree,
            "basis": self.basis,
            "terms": [{"index": list(k), "coeff": _format_coeff(v)} for k, v in self.items()],
        }


def from_json(data):
    basis = data["basis"]
    coeffs = {tuple(t["index"]): _parse_coeff(t["coeff"]) for t in data["terms"]}
    cls = QsymElement if basis in QSYM_BASES else SymElement
    return cls(data["degree"], basis, coeffs)


@lru_cache(maxsize=None)
def _power_count(parts, targets):
    """Maps sending each part to a target slot with slot sums ``targets``."""
    if not parts:
        return 1 if not any(targets) else 0
    head, rest = parts[0], parts[1:]
    total = 0
    for j, t in enumerate(targets):
        if t >= head:
            nxt = targets[:j] + (t - head,) + targets[j + 1:]
            total += _power_count(rest, nxt)
    return total


def _distribute(amount, caps, limit):
    """Vectors ``v <= caps`` summing to ``amount`` with entries at most ``limit``."""
    if not caps:
        if amount == 0:
            yield ()
        return
    for first in range(min(amount, caps[0], limit), -1, -1):
        for tail in _distribute(amount - first, caps[1:], limit):
            yield (first,) + tail


@lru_cache(maxsize=None)
def _matrix_count(rows, cols, zero_one):
    """Matrices with given row and column sums (0/1 entries when ``zero_one``)."""
    if not rows:
        return 1 if not any(cols) else 0
    limit = 1 if zero_one else rows[0]
    total = 0
    for vec in _distribute(rows[0], cols, limit):
        nxt = tuple(c - v for c, v in zip(cols, vec))
        total += _matrix_count(rows[1:], nxt, zero_one)
    return total


def _jacobi_trudi_terms(lam):
    """Signed h-indices ``(sign, partition)`` of the determinant for ``s_lam``."""
    k = len(lam)
    terms = []
    chosen = []
    used = [False] * k

    def pick(i, sign):
        if i == k:
            seq = [lam[r] - r + chosen[r] for r in range(k)]
            terms.append((sign, sort_to_partition(p for p in seq if p > 0)))
            return
        # parity of the partial permutation, counted as inversions on the fly
        for j in range(k):
            if used[j] or lam[i] - i + j < 0:
                continue
            inv = sum(1 for c in chosen if c > j)
            used[j] = True
            chosen.append(j)
            pick(i + 1, sign * (-1) ** inv)
            chosen.pop()
            used[j] = False

    pick(0, 1)
    merged = {}
    for sign, mu in terms:
        merged[mu] = merged.get(mu, 0) + sign
    return {mu: c for mu, c in merged.items() if c}


@lru_cache(maxsize=None)
def to_m_matrix(basis, n):
    """``{lam: {mu: [m_mu] b_lam}}`` for every partition ``lam`` of ``n``."""
    check_degree(n)
    parts = partitions(n)
    table = {}
    for lam in parts:
        if basis == "m":
            row = {lam: 1}
        elif basis == "p":
            row = {mu: _power_count(lam, mu) for mu in parts}
        elif basis == "e":
            row = {mu: _matrix_count(lam, mu, True) for mu in parts}
        elif basis == "h":
            row = {mu: _matrix_count(lam, mu, False) for mu in parts}
        elif basis == "s":
            h = to_m_matrix("h", n)
            row = {}
            for nu, c in _jacobi_trudi_terms(lam).items():
                for mu, v in h[nu].items():
                    row[mu] = row.get(mu, 0) + c * v
        else:
            raise ValueError(f"unknown Sym basis {basis!r}")
        table[lam] = {mu: v for mu, v in row.items() if v}
    return table


def _invert(matrix, keys):
    """Exact inverse of a square matrix given as nested dicts over ``keys``."""
    size = len(keys)
    a = [[Fraction(matrix[r].get(c, 0)) for c in keys] + [Fraction(int(i == j)) for j in range(size)]
         for i, r in enumerate(keys)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            raise ArithmeticError("transition matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(size):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return {keys[i]: {keys[j]: a[i][size + j] for j in range(size) if a[i][size + j] != 0}
            for i in range(size)}


@lru_cache(maxsize=None)
def from_m_matrix(basis, n):
    """``{mu: {lam: [b_lam] m_mu}}``, the inverse transition."""
    parts = partitions(n)
    return _invert(to_m_matrix(basis, n), parts)


def expand_in_monomials(basis, lam):
    lam = tuple(lam)
    return SymElement(sum(lam), "m", to_m_matrix(basis, sum(lam))[lam])


def change_basis(x, target):
    if target not in SYM_BASES:
        raise ValueError(f"unknown Sym basis {target!r}")
    if x.basis == target:
        return x
    n = x.degree
    m_coeffs = {}
    if x.basis == "m":
        m_coeffs = dict(x.coeffs)
    else:
        table = to_m_matrix(x.basis, n)
        for lam, c in x.coeffs.items():
            for mu, v in table[lam].items():
                m_coeffs[mu] = m_coeffs.get(mu, 0) + c * v
    if target == "m":
        return SymElement(n, "m", m_coeffs)
    inverse = from_m_matrix(target, n)
    out = {}
    for mu, c in m_coeffs.items():
        if c == 0:
            continue
        for lam, v in inverse[mu].items():
            out[lam] = out.get(lam, 0) + c * v
    return SymElement(n, target, out)


def omega_involution(x):
    xp = change_basis(x, "p")
    out = {lam: (-1) ** (sum(lam) - len(lam)) * c for lam, c in xp.coeffs.items()}
    return change_basis(SymElement(x.degree, "p", out), x.basis)


def scalar_product(x, y):
    """Bilinear form with ``<m_lam, h_mu> = delta``."""
    if x.degree != y.degree:
        raise DegreeError("scalar product of different degrees")
    xm = change_basis(x, "m")
    yh = change_basis(y, "h")
    return _normalise(Fraction(sum(c * yh[lam] for lam, c in xm.coeffs.items())))


# -- specialisations ---------------------------------------------------------

def principal_specialization(x):
    """``x(1, ..., 1, 0, ...)`` with ``m`` ones, as a polynomial in ``m``."""
    if isinstance(x, SymElement):
        x = x.to_qsym()
    xm = f_to_m(x)
    poly = Polynomial()
    for alpha, c in xm.coeffs.items():
        poly = poly + Polynomial.binomial(len(alpha)) * c
    return poly


def reciprocity_check(x, m):
    """Both sides of ``ps(x)(-m) = ps(S x)(m)``."""
    return principal_specialization(x)(-m), principal_specialization(qsym_antipode(x))(m)


def phi_detector(x):
    """Linear map with ``F_{{i+1..n-1}} -> t (t-1)^i`` and other ``F_I -> 0``.

    The result is a polynomial in ``t``.  ``I`` empty is the suffix with
    ``i = n - 1``.
    """
    if isinstance(x, SymElement):
        x = x.to_qsym()
    fx = m_to_f(x)
    n = fx.degree
    if n == 0:
        return Polynomial([fx[()]])
    top = (1 << (n - 1)) - 1
    out = Polynomial()
    for alpha, c in fx.coeffs.items():
        mask = mask_of(alpha)
        size = bin(mask).count("1")
        i = n - 1 - size
        # the suffix {i+1, ..., n-1} sets bits i .. n-2
        if mask == top ^ ((1 << i) - 1):
            out = out + Polynomial([0, 1]) * Polynomial([-1, 1]) ** i * c
    return out
