"""Tropical polynomials: finite maps from exponent vectors to finite scalars.

The empty map is the polynomial infinity, a first-class value (it is the
additive identity and evaluates to infinity everywhere).  Stored
coefficients are never infinite; absence encodes infinity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import monomials as mon
from .errors import DegenerateInputError, DimensionError, InputError
from .semiring import INF, Trop, dot


class TropPoly:
    """A tropical polynomial in num_vars variables."""

    __slots__ = ("num_vars", "_terms")

    def __init__(self, num_vars: int, terms: Mapping[tuple, Trop] | Iterable = ()):
        if num_vars < 1:
            raise InputError("a polynomial needs at least one variable")
        self.num_vars = num_vars
        data: dict[tuple, Trop] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for u, c in items:
            u = tuple(int(e) for e in u)
            if len(u) != num_vars:
                raise DimensionError("exponent %r has wrong length for %d variables" % (u, num_vars))
            if any(e < 0 for e in u):
                raise InputError("negative exponent in %r" % (u,))
            if not isinstance(c, Trop):
                c = Trop(c)
            if c.is_inf:
                continue
            prev = data.get(u)
            data[u] = c if prev is None else prev + c
        self._terms = data

    # Constructors ---------------------------------------------------------

    @classmethod
    def infinity(cls, num_vars: int) -> "TropPoly":
        return cls(num_vars, {})

    @classmethod
    def monomial(cls, num_vars: int, u, coeff=Trop(0)) -> "TropPoly":
        return cls(num_vars, {tuple(u): coeff})

    @classmethod
    def constant(cls, num_vars: int, coeff) -> "TropPoly":
        return cls(num_vars, {(0,) * num_vars: coeff})

    # Basic views ----------------------------------------------------------

    @property
    def is_inf(self) -> bool:
        return not self._terms

    def support(self) -> list[tuple]:
        return mon.sort_canonical(self._terms.keys())

    def terms(self) -> list[tuple]:
        """(exponent, coefficient) pairs in canonical order."""
        return [(u, self._terms[u]) for u in self.support()]

    def coeff(self, u) -> Trop:
        return self._terms.get(tuple(u), INF)

    def degree(self) -> int:
        if not self._terms:
            raise DegenerateInputError("the infinity polynomial has no degree")
        return max(sum(u) for u in self._terms)

    def min_support_degree(self) -> int:
        if not self._terms:
            raise DegenerateInputError("the infinity polynomial has no degree")
        return min(sum(u) for u in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(u) for u in self._terms}
        return len(degs) <= 1

    def __eq__(self, other) -> bool:
        return (isinstance(other, TropPoly) and self.num_vars == other.num_vars
                and self._terms == other._terms)

    def __hash__(self) -> int:
        return hash((self.num_vars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if self.is_inf:
            return "TropPoly(inf)"
        bits = []
        for u, c in self.terms():
            m = mon.label(u)
            if m == "1":
                bits.append(str(c))
            elif c == Trop(0):
                bits.append(m)
            else:
                bits.append("(%s)*%s" % (c, m))
        return "TropPoly(%s)" % " + ".join(bits)

    # Semiring operations ----------------------------------------------------

    def __add__(self, other: "TropPoly") -> "TropPoly":
        if self.num_vars != other.num_vars:
            raise DimensionError("variable counts differ")
        data = dict(self._terms)
        for u, c in other._terms.items():
            prev = data.get(u)
            data[u] = c if prev is None else prev + c
        return TropPoly(self.num_vars, data)

    def __mul__(self, other: "TropPoly") -> "TropPoly":
        if self.num_vars != other.num_vars:
            raise DimensionError("variable counts differ")
        data: dict[tuple, Trop] = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = mon.mul(u, v)
                c = a * b
                prev = data.get(w)
                data[w] = c if prev is None else prev + c
        return TropPoly(self.num_vars, data)

    def scale(self, c) -> "TropPoly":
        if not isinstance(c, Trop):
            c = Trop(c)
        if c.is_inf:
            return TropPoly.infinity(self.num_vars)
        return TropPoly(self.num_vars, {u: a * c for u, a in self._terms.items()})

    def times_monomial(self, v) -> "TropPoly":
        v = tuple(v)
        return TropPoly(self.num_vars, {mon.mul(u, v): a for u, a in self._terms.items()})

    def __pow__(self, n: int) -> "TropPoly":
        if n < 0:
            raise InputError("negative power")
        out = TropPoly.constant(self.num_vars, Trop(0))
        for _ in range(n):
            out = out * self
        return out

    # Evaluation and initial forms -------------------------------------------

    def _min_terms(self, w: Sequence[Trop]):
        """(value, set of argmin exponents); no precondition on w."""
        if len(w) != self.num_vars:
            raise DimensionError("point has %d coordinates, polynomial has %d variables"
                                 % (len(w), self.num_vars))
        best = INF
        argmin: set[tuple] = set()
        for u, a in self._terms.items():
            v = a * dot(w, u)
            if v.is_inf:
                continue
            if best.is_inf or v < best:
                best = v
                argmin = {u}
            elif v == best:
                argmin.add(u)
        return best, argmin

    def evaluate(self, w: Sequence[Trop]) -> Trop:
        """min over the support of coeff + w.u; infinity for empty support."""
        return self._min_terms(w)[0]

    def initial_form(self, w: Sequence[Trop]) -> frozenset:
        """Monomials attaining the minimum; empty marker when the value is infinite.

        Requires w not identically infinite.
        """
        if all(wi.is_inf for wi in w):
            raise InputError("initial form needs a weight with a finite coordinate")
        value, argmin = self._min_terms(w)
        if value.is_inf:
            return frozenset()
        return frozenset(argmin)

    def min_twice(self, w: Sequence[Trop]) -> bool:
        """Membership of w in the tropical hypersurface of this polynomial."""
        value, argmin = self._min_terms(w)
        return value.is_inf or len(argmin) >= 2

    # Structural operations ----------------------------------------------------

    def homogenize(self) -> "TropPoly":
        """Add a new first variable filling every term up to the top degree."""
        if self.is_inf:
            raise DegenerateInputError("cannot homogenize the infinity polynomial")
        d = self.degree()
        data = {(d - sum(u),) + u: a for u, a in self._terms.items()}
        return TropPoly(self.num_vars + 1, data)

    def dehomogenize(self) -> "TropPoly":
        """Substitute 0 for the first variable (left inverse of homogenize)."""
        if self.num_vars < 2:
            raise InputError("need at least two variables to dehomogenize")
        data: dict[tuple, Trop] = {}
        for u, a in self._terms.items():
            v = u[1:]
            prev = data.get(v)
            data[v] = a if prev is None else prev + a
        return TropPoly(self.num_vars - 1, data)

    def strip_sigma(self, sigma) -> "TropPoly":
        """Drop every term divisible by a variable with index in sigma."""
        sigma = frozenset(sigma)
        bad = [i for i in sigma if i < 0 or i >= self.num_vars]
        if bad:
            raise InputError("sigma indices %r out of range" % (bad,))
        data = {u: a for u, a in self._terms.items() if not mon.uses_sigma(u, sigma)}
        return TropPoly(self.num_vars, data)


# Univariate factorization ------------------------------------------------------


def _univariate_coeffs(f: TropPoly) -> dict[int, Trop]:
    if f.num_vars != 1:
        raise InputError("expected a univariate polynomial")
    if f.is_inf:
        raise DegenerateInputError("expected a nonempty univariate polynomial")
    return {u[0]: a for u, a in f._terms.items()}


def least_coefficients(f: TropPoly) -> TropPoly:
    """The smallest-coefficient polynomial defining the same function.

    c_j is the minimum of b_j and all chord interpolations
    (b_i*(k-j) + b_k*(j-i)) / (k-i) over i < j < k with finite b_i, b_k;
    the extreme coefficients are unchanged.
    """
    b = _univariate_coeffs(f)
    top = max(b)
    finite = sorted(b)
    out: dict[tuple, Trop] = {}
    for j in range(top + 1):
        best = b.get(j, INF)
        for i in finite:
            if i >= j:
                break
            for k in finite:
                if k <= j:
                    continue
                chord = Trop(Fraction(b[i].value * (k - j) + b[k].value * (j - i), k - i))
                best = best + chord
        if not best.is_inf:
            out[(j,)] = best
    return TropPoly(1, out)


def tropical_roots(f: TropPoly) -> list[tuple[Fraction, int]]:
    """Finite tropical roots with multiplicities, sorted by root value.

    A root is a point where the univariate minimum is attained at least
    twice; its multiplicity is the gap between the extreme attaining
    exponents.  The multiplicities plus the lowest support exponent sum to
    the top exponent.
    """
    g = least_coefficients(f)
    c = _univariate_coeffs(g)
    low, high = min(c), max(c)
    roots: list[tuple[Fraction, int]] = []
    j = low
    while j < high:
        # slopes are nondecreasing after least_coefficients; one run = one root
        slope = c[j + 1].value - c[j].value
        k = j + 1
        while k < high and c[k + 1].value - c[k].value == slope:
            k += 1
        roots.append((-slope, k - j))
        j = k
    roots.sort(key=lambda rm: rm[0])
    assert sum(m for _, m in roots) + low == high
    return roots


def poly_from_roots(leading: Trop, roots, x_power: int = 0) -> TropPoly:
    """Expand leading * prod (x + a_i)^{m_i} * x^{x_power}."""
    out = TropPoly(1, {(x_power,): leading})
    for a, m in roots:
        factor = TropPoly(1, {(1,): Trop(0), (0,): Trop(a)})
        for _ in range(m):
            out = out * factor
    return out
