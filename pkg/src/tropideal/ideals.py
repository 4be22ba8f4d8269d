"""Degree-truncated tropical ideals.

A truncated ideal is a compatible tower of valuated matroids M_0, ..., M_D
where M_d lives on the canonical list of degree-d monomials.  Everything
here is explicit about the truncation degree D; results describe the
ideal up to degree D only.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import monomials as mon
from .config import Budget
from .errors import (DimensionError, InputError, InvariantViolationError,
                     OutOfRangeError)
from .matroids import VMatroid, circuits, contract, initial_matroid, is_vector
from .polynomials import TropPoly
from .semiring import INF, Trop, all_infinite, dot, weight_sigma


# Classical-side input ------------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class Valuation:
    """Trivial or p-adic valuation of the rationals."""

    kind: str = "trivial"
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("trivial", "padic"):
            raise InputError("valuation kind must be 'trivial' or 'padic'")
        if self.kind == "padic" and not _is_prime(self.p):
            raise InputError("p-adic valuation needs a prime, got %r" % (self.p,))

    def of(self, q: Fraction) -> Trop:
        if q == 0:
            return INF
        if self.kind == "trivial":
            return Trop(0)

        def vp(n: int) -> int:
            n = abs(n)
            count = 0
            while n % self.p == 0:
                n //= self.p
                count += 1
            return count

        return Trop(vp(q.numerator) - vp(q.denominator))


class QPoly:
    """A polynomial with exact rational coefficients (classical side)."""

    __slots__ = ("num_vars", "coeffs")

    def __init__(self, num_vars: int, coeffs):
        self.num_vars = num_vars
        data: dict[tuple, Fraction] = {}
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        for u, c in items:
            u = tuple(int(e) for e in u)
            if len(u) != num_vars:
                raise DimensionError("exponent %r has wrong length" % (u,))
            c = Fraction(c)
            if c == 0:
                continue
            data[u] = data.get(u, Fraction(0)) + c
        self.coeffs = {u: c for u, c in data.items() if c != 0}

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        if self.is_zero:
            raise InputError("the zero polynomial has no degree")
        return max(sum(u) for u in self.coeffs)

    def is_homogeneous(self) -> bool:
        return len({sum(u) for u in self.coeffs}) <= 1

    def times_monomial(self, v) -> "QPoly":
        v = tuple(v)
        return QPoly(self.num_vars, {mon.mul(u, v): c for u, c in self.coeffs.items()})

    def __mul__(self, other: "QPoly") -> "QPoly":
        data: dict[tuple, Fraction] = {}
        for u, a in self.coeffs.items():
            for v, b in other.coeffs.items():
                w = mon.mul(u, v)
                data[w] = data.get(w, Fraction(0)) + a * b
        return QPoly(self.num_vars, data)

    def __sub__(self, other: "QPoly") -> "QPoly":
        data = dict(self.coeffs)
        for u, c in other.coeffs.items():
            data[u] = data.get(u, Fraction(0)) - c
        return QPoly(self.num_vars, data)

    def trop(self, valuation: Valuation) -> TropPoly:
        return TropPoly(self.num_vars, {u: valuation.of(c) for u, c in self.coeffs.items()})

    def __repr__(self) -> str:
        bits = ["%s*%s" % (c, mon.label(u)) for u, c in sorted(self.coeffs.items(), key=lambda t: mon.grlex_key(t[0]))]
        return "QPoly(%s)" % " + ".join(bits) if bits else "QPoly(0)"


@dataclass(frozen=True)
class ClassicalInput:
    generators: tuple
    valuation: Valuation

    def __post_init__(self):
        if not self.generators:
            raise InputError("need at least one generator")
        nv = {g.num_vars for g in self.generators}
        if len(nv) != 1:
            raise InputError("generators use different variable counts")
        for g in self.generators:
            if g.is_zero:
                raise InputError("zero generator")
            if not g.is_homogeneous():
                raise InputError("inhomogeneous generator %r" % (g,))

    @property
    def num_vars(self) -> int:
        return self.generators[0].num_vars


# The truncated ideal -------------------------------------------------------------


class TruncIdeal:
    """Layers M_0 .. M_D of valuated matroids on the degree-d monomials."""

    __slots__ = ("num_vars", "degree_bound", "layers", "mode")

    def __init__(self, num_vars: int, layers: Sequence[VMatroid], mode: str = "rational"):
        if num_vars < 1:
            raise InputError("need at least one variable")
        if mode not in ("rational", "boolean"):
            raise InputError("mode must be 'rational' or 'boolean'")
        if not layers:
            raise InputError("need at least the degree-0 layer")
        self.num_vars = num_vars
        self.degree_bound = len(layers) - 1
        self.layers = tuple(layers)
        self.mode = mode
        for d, M in enumerate(self.layers):
            expected = tuple(mon.monomials_of_degree(num_vars, d))
            if M.ground != expected:
                raise InputError("layer %d is not on the canonical degree-%d monomials" % (d, d))
        if mode == "boolean":
            for d, M in enumerate(self.layers):
                if any(v != 0 for _, v in M.valuation_items()):
                    raise InputError("boolean layer %d carries nonzero values" % (d,))

    def layer(self, d: int) -> VMatroid:
        if d < 0 or d > self.degree_bound:
            raise OutOfRangeError("degree %d outside truncation 0..%d" % (d, self.degree_bound))
        return self.layers[d]

    def hilbert(self, d: int) -> int:
        """The rank of the degree-d layer."""
        return self.layer(d).rank

    def __eq__(self, other) -> bool:
        return (isinstance(other, TruncIdeal) and self.num_vars == other.num_vars
                and self.mode == other.mode and self.layers == other.layers)

    def __hash__(self) -> int:
        return hash((self.num_vars, self.mode, self.layers))

    def __repr__(self) -> str:
        return "TruncIdeal(vars=%d, D=%d, mode=%s)" % (self.num_vars, self.degree_bound, self.mode)


def hilbert(I: TruncIdeal, d: int) -> int:
    return I.hilbert(d)


# Exact linear algebra for tropicalization ----------------------------------------


def _rref(rows: list[list[Fraction]]) -> tuple[list[int], list[list[Fraction]]]:
    """Reduced row echelon form with leftmost-column pivoting; exact."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots, rows[:r]


def _det(matrix: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = -det
        det *= m[c][c]
        inv = m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / inv
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
    return det


def _layer_from_row_space(ground: Sequence[tuple], pivots: list[int],
                          reduced: list[list[Fraction]], valuation: Valuation,
                          budget: Budget) -> VMatroid:
    """The valuated matroid dual to the column matroid of a reduced row basis.

    The dual valuation of a set S of columns is the valuation of the maximal
    minor on S; for the matroid itself, p(B) is read off the complementary
    minor.  With the rows in reduced echelon form [I | A] (up to a column
    permutation), the maximal minor on the complement of B equals, up to
    sign, the minor of A on rows indexed by pivot columns inside B and
    columns indexed by free columns outside B.  Signs do not affect
    valuations.
    """
    N = len(ground)
    k = len(pivots)
    if k == 0:
        return VMatroid(ground, N, {(1 << N) - 1: 0})
    free = [c for c in range(N) if c not in set(pivots)]
    if not free:
        return VMatroid(ground, 0, {0: 0})
    # A-block: row i corresponds to pivot column pivots[i]
    A = [[reduced[i][c] for c in free] for i in range(k)]
    row_of_pivot = {p: i for i, p in enumerate(pivots)}
    col_of_free = {c: j for j, c in enumerate(free)}
    corank = N - k
    budget.charge(math.comb(N, corank), "tropicalization minors")
    val: dict[int, Fraction] = {}
    pivset = set(pivots)
    for B in itertools.combinations(range(N), corank):
        Bset = set(B)
        sub_rows = [row_of_pivot[c] for c in B if c in pivset]
        sub_cols = [col_of_free[c] for c in free if c not in Bset]
        if len(sub_rows) != len(sub_cols):
            continue  # cannot happen: |B| = |free|
        d = _det([[A[i][j] for j in sub_cols] for i in sub_rows])
        v = valuation.of(d)
        if not v.is_inf:
            mask = 0
            for c in B:
                mask |= 1 << c
            val[mask] = v.value
    return VMatroid(ground, corank, val)


def tropicalize(inp: ClassicalInput, D: int, cap: int | None = None) -> TruncIdeal:
    """Tropicalization of a classical homogeneous ideal, truncated at degree D.

    For each degree d the Macaulay matrix of all monomial multiples of the
    generators is row reduced exactly; the layer matroid is dual to the
    column matroid of the row space, with the valuation of each maximal
    minor as the dual value.
    """
    if D < 0:
        raise InputError("truncation degree must be nonnegative")
    nv = inp.num_vars
    budget = Budget(cap)
    layers = []
    for d in range(D + 1):
        ground = tuple(mon.monomials_of_degree(nv, d))
        index = {u: i for i, u in enumerate(ground)}
        rows: list[list[Fraction]] = []
        for g in inp.generators:
            dg = g.degree()
            if dg > d:
                continue
            for u in mon.monomials_of_degree(nv, d - dg):
                shifted = g.times_monomial(u)
                row = [Fraction(0)] * len(ground)
                for v, c in shifted.coeffs.items():
                    row[index[v]] = c
                rows.append(row)
        pivots, reduced = _rref(rows)
        layers.append(_layer_from_row_space(ground, pivots, reduced, inp.valuation, budget))
    return TruncIdeal(nv, layers, mode="rational")


# Direct constructions -------------------------------------------------------------


def point_ideal(a: Sequence[Trop], D: int, cap: int | None = None) -> TruncIdeal:
    """The homogeneous ideal of the point a: binomial circuits in every degree.

    The degree-d layer has rank one; the valuation of the singleton {x^u}
    is a.u (with infinity * 0 = 0), so the circuits are the binomials
    (a.v) x^u + (a.u) x^v, degenerating to monomials where a.u is infinite.
    Compatibility of the resulting tower is verified, not assumed.
    """
    a = tuple(x if isinstance(x, Trop) else Trop(x) for x in a)
    if all_infinite(a):
        raise InputError("the all-infinity point is not a point of projective space")
    if D < 0:
        raise InputError("truncation degree must be nonnegative")
    layers = []
    for d in range(D + 1):
        ground = tuple(mon.monomials_of_degree(len(a), d))
        val = {}
        for i, u in enumerate(ground):
            v = dot(a, u)
            if not v.is_inf:
                val[1 << i] = v.value
        layers.append(VMatroid(ground, 1, val))
    I = TruncIdeal(len(a), layers, mode="rational")
    witness = check_compatibility(I, cap=cap)
    if witness is not None:
        raise InvariantViolationError("point ideal failed compatibility: %r" % (witness,))
    return I


def nonrealizable_ideal(n: int, D: int, cap: int | None = None) -> TruncIdeal:
    """A tower whose degree-d layer has rank d+1 and 0/infinity values.

    A (d+1)-subset B of the degree-d monomials gets value 0 exactly when,
    for every k <= d, no degree-k monomial divides more than d-k+1 elements
    of B.  Requires at least three variables (n >= 2).
    """
    if n < 2:
        raise InputError("need n >= 2")
    if D < 0:
        raise InputError("truncation degree must be nonnegative")
    budget = Budget(cap)
    nv = n + 1
    divisor_lists = {k: mon.monomials_of_degree(nv, k) for k in range(1, D + 1)}
    layers = []
    for d in range(D + 1):
        ground = tuple(mon.monomials_of_degree(nv, d))
        budget.charge(math.comb(len(ground), d + 1), "nonrealizable layer")
        val = {}
        for B in itertools.combinations(range(len(ground)), d + 1):
            mons = [ground[i] for i in B]
            ok = True
            for k in range(1, d + 1):
                limit = d - k + 1
                for v in divisor_lists[k]:
                    count = sum(1 for u in mons if mon.divides(v, u))
                    if count > limit:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                mask = 0
                for i in B:
                    mask |= 1 << i
                val[mask] = Fraction(0)
        layers.append(VMatroid(ground, d + 1, val))
    return TruncIdeal(nv, layers, mode="rational")


# Compatibility --------------------------------------------------------------------


@dataclass(frozen=True)
class CompatibilityWitness:
    degree: int
    variable: int
    U: tuple
    V: tuple

    def __repr__(self) -> str:
        return ("CompatibilityWitness(d=%d, x%d, U=%s, V=%s)"
                % (self.degree, self.variable,
                   [mon.label(u) for u in self.U], [mon.label(v) for v in self.V]))


def check_compatibility(I: TruncIdeal, cap: int | None = None) -> Optional[CompatibilityWitness]:
    """None when consecutive layers are compatible, else a witness.

    The criterion: for every degree d < D, variable x_i, (r_d+1)-subset U of
    the degree-d monomials and (r_{d+1}-1)-subset V of the degree-(d+1)
    monomials, the minimum over x^u in x_i U \\ V of
    p_d(U - x^u/x_i) + p_{d+1}(V + x^u) is infinite or attained twice.
    """
    budget = Budget(cap)
    for d in range(I.degree_bound):
        Md, Mn = I.layers[d], I.layers[d + 1]
        gd, gn = Md.ground, Mn.ground
        next_index = {u: i for i, u in enumerate(gn)}
        rd, rn = Md.rank, Mn.rank
        if rd + 1 > len(gd) or rn - 1 < 0:
            continue
        count = math.comb(len(gd), rd + 1) * math.comb(len(gn), max(rn - 1, 0)) * I.num_vars
        budget.charge(count, "compatibility degree %d" % d)
        vd, vn = Md._val, Mn._val
        for i in range(I.num_vars):
            shift = [next_index[mon.times_var(u, i)] for u in gd]
            for U in itertools.combinations(range(len(gd)), rd + 1):
                umask = 0
                for j in U:
                    umask |= 1 << j
                # p_d(U - j) per removed element, and the shifted positions
                removed = [vd.get(umask ^ (1 << j)) for j in U]
                lifted = [shift[j] for j in U]
                for V in itertools.combinations(range(len(gn)), rn - 1):
                    vmask = 0
                    for j in V:
                        vmask |= 1 << j
                    best = None
                    count_min = 0
                    for pos in range(len(U)):
                        t = lifted[pos]
                        if (vmask >> t) & 1:
                            continue  # x^u already in V
                        pd = removed[pos]
                        if pd is None:
                            continue
                        pn = vn.get(vmask | (1 << t))
                        if pn is None:
                            continue
                        total = pd + pn
                        if best is None or total < best:
                            best, count_min = total, 1
                        elif total == best:
                            count_min += 1
                    if best is not None and count_min < 2:
                        return CompatibilityWitness(
                            d, i,
                            tuple(gd[j] for j in U),
                            tuple(gn[j] for j in V))
    return None


# Membership, initial ideals, comparison -------------------------------------------


def contains(I: TruncIdeal, f: TropPoly, cap: int | None = None) -> bool:
    """Membership of a homogeneous polynomial in the truncated ideal."""
    if f.num_vars != I.num_vars:
        raise InputError("polynomial has %d variables, ideal has %d" % (f.num_vars, I.num_vars))
    if f.is_inf:
        return True
    if not f.is_homogeneous():
        raise InputError("membership needs a homogeneous polynomial")
    d = f.degree()
    M = I.layer(d)
    vec = tuple(f.coeff(u) for u in M.ground)
    return is_vector(M, vec, cap=cap)


def _initial_layers(I: TruncIdeal, w: Sequence[Trop], cap: int | None = None) -> list[VMatroid]:
    sigma = weight_sigma(w)
    layers = []
    for d in range(I.degree_bound + 1):
        M = I.layers[d]
        ground = M.ground
        sigma_mons = [u for u in ground if mon.uses_sigma(u, sigma)]
        C = contract(M, sigma_mons)
        what = [dot(w, u) for u in C.ground]
        assert all(not t.is_inf for t in what)
        N = initial_matroid(C, [t.value for t in what], cap=cap)
        extra = set(sigma_mons)
        bases = [set(B) | extra for B in N.bases_as_sets()]
        layers.append(VMatroid.from_bases(ground, bases))
    return layers


def initial_ideal(I: TruncIdeal, w: Sequence[Trop], cap: int | None = None) -> TruncIdeal:
    """The Boolean tower of initial matroids with respect to the weight w.

    In each degree the monomials supported on the infinite coordinates of w
    are contracted away, the rest is degenerated by the induced weight
    w.u, and the contracted monomials return as coloops.
    """
    w = tuple(x if isinstance(x, Trop) else Trop(x) for x in w)
    if len(w) != I.num_vars:
        raise DimensionError("weight has %d coordinates, ideal has %d variables"
                             % (len(w), I.num_vars))
    if all_infinite(w):
        raise InputError("initial ideal needs a weight with a finite coordinate")
    return TruncIdeal(I.num_vars, _initial_layers(I, w, cap=cap), mode="boolean")


def boolean_image(I: TruncIdeal) -> TruncIdeal:
    """Forget coefficients: finite values become 0, layerwise."""
    layers = [VMatroid.from_bases(M.ground, M.basis_masks()) for M in I.layers]
    return TruncIdeal(I.num_vars, layers, mode="boolean")


@dataclass(frozen=True)
class CompareReport:
    relation: str  # equal | subset | superset | incomparable
    hilbert_left: tuple
    hilbert_right: tuple
    equal_through_degree: int
    first_difference: Optional[int]


def compare(I: TruncIdeal, J: TruncIdeal, cap: int | None = None) -> CompareReport:
    """Layerwise comparison of two truncations of the same shape.

    Inclusion is tested by circuit containment (circuits generate each
    layer; the tie criterion is the membership oracle).  Inclusion with
    identical Hilbert functions forces equality, which is asserted.
    """
    if I.num_vars != J.num_vars or I.degree_bound != J.degree_bound:
        raise InputError("ideals have different shapes")
    if I.mode != J.mode:
        raise InputError("ideals have different coefficient modes")
    D = I.degree_bound

    def included(A: TruncIdeal, B: TruncIdeal) -> bool:
        for d in range(D + 1):
            MB = B.layers[d]
            for H in circuits(A.layers[d], cap=cap):
                if not is_vector(MB, H, cap=cap):
                    return False
        return True

    hv_i = tuple(I.hilbert(d) for d in range(D + 1))
    hv_j = tuple(J.hilbert(d) for d in range(D + 1))
    equal_layers = [I.layers[d] == J.layers[d] for d in range(D + 1)]
    equal_through = -1
    for d in range(D + 1):
        if not equal_layers[d]:
            break
        equal_through = d
    first_diff = next((d for d in range(D + 1) if not equal_layers[d]), None)

    inc_ij = included(I, J)
    inc_ji = included(J, I)
    if inc_ij and inc_ji:
        if not all(equal_layers):
            raise InvariantViolationError("mutual inclusion without layer equality")
        relation = "equal"
    elif inc_ij:
        if hv_i == hv_j:
            raise InvariantViolationError(
                "strict inclusion with identical Hilbert functions contradicts layer rigidity")
        relation = "subset"
    elif inc_ji:
        if hv_i == hv_j:
            raise InvariantViolationError(
                "strict inclusion with identical Hilbert functions contradicts layer rigidity")
        relation = "superset"
    else:
        relation = "incomparable"
    return CompareReport(relation, hv_i, hv_j, equal_through, first_diff)


# Affine truncations and homogenization ---------------------------------------------


class AffineTruncIdeal:
    """Layers on the monomials of degree at most d, for d = 0 .. D."""

    __slots__ = ("num_vars", "degree_bound", "layers", "mode")

    def __init__(self, num_vars: int, layers: Sequence[VMatroid], mode: str = "rational"):
        self.num_vars = num_vars
        self.degree_bound = len(layers) - 1
        self.layers = tuple(layers)
        self.mode = mode
        for d, M in enumerate(self.layers):
            expected = tuple(mon.monomials_up_to_degree(num_vars, d))
            if M.ground != expected:
                raise InputError("affine layer %d is not on the canonical monomials" % (d,))

    def __repr__(self) -> str:
        return "AffineTruncIdeal(vars=%d, D=%d)" % (self.num_vars, self.degree_bound)


def affine_point_ideal(a: Sequence[Trop], D: int) -> AffineTruncIdeal:
    """All polynomials of degree <= d vanishing tropically at the point a."""
    a = tuple(x if isinstance(x, Trop) else Trop(x) for x in a)
    layers = []
    for d in range(D + 1):
        ground = tuple(mon.monomials_up_to_degree(len(a), d))
        val = {}
        for i, u in enumerate(ground):
            v = dot(a, u)
            if not v.is_inf:
                val[1 << i] = v.value
        layers.append(VMatroid(ground, 1, val))
    return AffineTruncIdeal(len(a), layers)


def affine_unit_ideal(num_vars: int, D: int) -> AffineTruncIdeal:
    layers = []
    for d in range(D + 1):
        ground = tuple(mon.monomials_up_to_degree(num_vars, d))
        layers.append(VMatroid(ground, 0, {0: 0}))
    return AffineTruncIdeal(num_vars, layers)


def single_circuit_matroid(ground: Sequence, vector) -> VMatroid:
    """The matroid whose only circuit is the given vector on its support.

    Elements outside the support are coloops; the bases are the complements
    of single support elements, valued by the vector coordinate there.
    """
    ground = tuple(ground)
    coords = [vector[i] if isinstance(vector[i], Trop) else Trop(vector[i]) for i in range(len(ground))]
    if all(c.is_inf for c in coords):
        raise InputError("the vector must have nonempty support")
    full = (1 << len(ground)) - 1
    val = {full ^ (1 << i): c.value for i, c in enumerate(coords) if not c.is_inf}
    return VMatroid(ground, len(ground) - 1, val)


def affine_principal_truncation(f: TropPoly) -> AffineTruncIdeal:
    """Affine truncation at D = deg f whose top layer is the single circuit f."""
    if f.is_inf:
        raise InputError("need a nonempty polynomial")
    D = f.degree()
    layers = []
    for d in range(D):
        ground = tuple(mon.monomials_up_to_degree(f.num_vars, d))
        layers.append(VMatroid(ground, len(ground), {(1 << len(ground)) - 1: 0}))
    ground = tuple(mon.monomials_up_to_degree(f.num_vars, D))
    vec = tuple(f.coeff(u) for u in ground)
    layers.append(single_circuit_matroid(ground, vec))
    return AffineTruncIdeal(f.num_vars, layers)


def homogenize_ideal(affine: AffineTruncIdeal) -> TruncIdeal:
    """Projective tower induced by the bijection f -> x_0^(d - deg f) f.

    The canonical order on the degree-at-most-d monomials in n variables
    agrees with the canonical order on the degree-d monomials in n+1
    variables under that bijection, so layers relabel index-for-index.
    """
    nv = affine.num_vars + 1
    layers = []
    for d in range(affine.degree_bound + 1):
        M = affine.layers[d]
        ground = tuple(mon.monomials_of_degree(nv, d))
        for idx, u in enumerate(M.ground):
            expected = (d - sum(u),) + u
            if ground[idx] != expected:
                raise InvariantViolationError("homogenization bijection misaligned")
        layers.append(VMatroid(ground, M.rank, dict(M.valuation_items())))
    return TruncIdeal(nv, layers, mode=affine.mode)
