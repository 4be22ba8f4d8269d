"""Exact rational polyhedral cells and complexes in stratified space.

A cell lives in one stratum (the points whose infinite coordinates are
exactly sigma) and is stored as a closed system of exact rational
equalities and inequalities over the finite coordinates, plus an opaque
label.  Feasibility, relative-interior points and dimensions come from
Fourier-Motzkin elimination with midpoint back-substitution; everything
is exact, there is no floating point and no perturbation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .config import Budget
from .errors import InputError, InvariantViolationError
from .polynomials import TropPoly
from .semiring import Trop

Row = tuple  # (coeffs: tuple[Fraction, ...], rhs: Fraction)


def _fracs(xs) -> tuple:
    return tuple(Fraction(x) for x in xs)


def canonical_row(coeffs, rhs, equality: bool = False) -> Row:
    """Integer-cleared primitive form; equalities get a fixed sign."""
    coeffs = _fracs(coeffs)
    rhs = Fraction(rhs)
    denoms = [c.denominator for c in coeffs] + [rhs.denominator]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(c * lcm) for c in coeffs] + [int(rhs * lcm)]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    if equality:
        lead = next((v for v in ints if v != 0), 0)
        if lead < 0:
            ints = [-v for v in ints]
    return (tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1]))


# Core exact linear programming ------------------------------------------------------


def _gauss_equalities(eqs: Sequence[Row], m: int):
    """RREF of the equality system; None when inconsistent.

    Returns a list of (pivot_column, coeffs, rhs) with unit pivots and the
    pivot columns cleared from all other rows.
    """
    rows = [(list(c), Fraction(r)) for c, r in eqs]
    pivots: list[tuple[int, list, Fraction]] = []
    used: set[int] = set()
    for coeffs, rhs in rows:
        coeffs = coeffs[:]
        # reduce by existing pivots
        for col, prow, prhs in pivots:
            f = coeffs[col]
            if f:
                coeffs = [a - f * b for a, b in zip(coeffs, prow)]
                rhs = rhs - f * prhs
        col = next((c for c in range(m) if coeffs[c] != 0), None)
        if col is None:
            if rhs != 0:
                return None
            continue
        pv = coeffs[col]
        coeffs = [a / pv for a in coeffs]
        rhs = rhs / pv
        for j, (pcol, prow, prhs) in enumerate(pivots):
            f = prow[col]
            if f:
                pivots[j] = (pcol, [a - f * b for a, b in zip(prow, coeffs)], prhs - f * rhs)
        pivots.append((col, coeffs, rhs))
        used.add(col)
    return pivots


def _substitute(ineq, pivots):
    coeffs, rhs, strict = ineq
    coeffs = list(coeffs)
    rhs = Fraction(rhs)
    for col, prow, prhs in pivots:
        f = coeffs[col]
        if f:
            coeffs = [a - f * b for a, b in zip(coeffs, prow)]
            rhs = rhs - f * prhs
    return coeffs, rhs, strict


def _direction_key(coeffs, rhs):
    """Scale by a positive rational so the coefficient vector is primitive integer."""
    lcm = 1
    for c in coeffs:
        d = c.denominator
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(c * lcm) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return None, rhs
    scale = Fraction(lcm, g)
    return tuple(v // g for v in ints), rhs * scale


def _dedupe(ineqs):
    """Keep the tightest constraint per direction; detect constant violations.

    Returns None when a constant row is violated.
    """
    best: dict[tuple, tuple[Fraction, bool]] = {}
    for coeffs, rhs, strict in ineqs:
        prim, prhs = _direction_key(coeffs, rhs)
        if prim is None:
            if prhs < 0 or (strict and prhs == 0):
                return None
            continue
        old = best.get(prim)
        if old is None or prhs < old[0] or (prhs == old[0] and strict and not old[1]):
            best[prim] = (prhs, strict)
    return [(list(Fraction(c) for c in k), v[0], v[1]) for k, v in best.items()]


def _fm_eliminate(ineqs, var: int):
    """One Fourier-Motzkin step; returns (kept, combined) or None if infeasible."""
    pos, neg, zero = [], [], []
    for row in ineqs:
        c = row[0][var]
        (pos if c > 0 else neg if c < 0 else zero).append(row)
    out = list(zero)
    for pc, prhs, pstrict in pos:
        a1 = pc[var]
        for nc, nrhs, nstrict in neg:
            a2 = -nc[var]
            coeffs = [a2 * x + a1 * y for x, y in zip(pc, nc)]
            rhs = a2 * prhs + a1 * nrhs
            out.append((coeffs, rhs, pstrict or nstrict))
    return _dedupe(out)


_BIAS_PICKS = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 7), Fraction(3, 5))


def fm_solve(m: int, eqs: Sequence[Row], ineqs, bias: int = 0) -> Optional[tuple]:
    """An exact feasible point of a mixed strict/non-strict system, or None.

    For a closed system the returned point lies in the relative interior:
    equalities are eliminated first and each remaining variable is chosen
    inside the relative interior of its feasible interval.
    """
    pivots = _gauss_equalities(eqs, m)
    if pivots is None:
        return None
    pivot_cols = {c for c, _, _ in pivots}
    free = [c for c in range(m) if c not in pivot_cols]
    rows = _dedupe(_substitute(iq, pivots) for iq in _normalize_ineqs(ineqs, m))
    if rows is None:
        return None
    levels = []
    for v in free:
        levels.append((v, rows))
        rows = _fm_eliminate(rows, v)
        if rows is None:
            return None
    pick = _BIAS_PICKS[bias % len(_BIAS_PICKS)]
    values: dict[int, Fraction] = {}
    for v, lrows in reversed(levels):
        lower: Optional[tuple[Fraction, bool]] = None
        upper: Optional[tuple[Fraction, bool]] = None
        for coeffs, rhs, strict in lrows:
            a = coeffs[v]
            if a == 0:
                continue
            rest = rhs - sum(coeffs[j] * values[j] for j in values if coeffs[j] != 0 and j != v)
            bound = rest / a
            if a > 0:
                if upper is None or bound < upper[0] or (bound == upper[0] and strict):
                    upper = (bound, strict)
            else:
                if lower is None or bound > lower[0] or (bound == lower[0] and strict):
                    lower = (bound, strict)
        if lower is None and upper is None:
            values[v] = Fraction(bias)
        elif lower is None:
            values[v] = upper[0] - 1 - bias
        elif upper is None:
            values[v] = lower[0] + 1 + bias
        elif lower[0] < upper[0]:
            values[v] = lower[0] + (upper[0] - lower[0]) * pick
        elif lower[0] == upper[0] and not lower[1] and not upper[1]:
            values[v] = lower[0]
        else:
            return None
    for col, prow, prhs in pivots:
        values[col] = prhs - sum(prow[j] * values[j] for j in values if j != col and prow[j] != 0)
    return tuple(values[c] for c in range(m))


def _normalize_ineqs(ineqs, m):
    out = []
    for item in ineqs:
        if len(item) == 2:
            coeffs, rhs = item
            strict = False
        else:
            coeffs, rhs, strict = item
        coeffs = list(_fracs(coeffs))
        if len(coeffs) != m:
            raise InputError("inequality row has wrong width")
        out.append((coeffs, Fraction(rhs), bool(strict)))
    return out


def _rank(rows: Sequence, m: int) -> int:
    mat = [list(_fracs(r)) for r in rows]
    rank = 0
    for c in range(m):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][c] != 0:
                f = mat[i][c] / mat[rank][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


# Cells and complexes ------------------------------------------------------------------


class Cell:
    """A closed polyhedron inside one stratum, with a label.

    Rows are (coeffs, rhs) over the cell's free coordinates; equality rows
    mean a.w = b, inequality rows a.w <= b.  Relative interiors are
    derived, never stored as strict systems.
    """

    __slots__ = ("ambient", "sigma", "free", "eqs", "ineqs", "label",
                 "_relint", "_tight", "_dim", "_solved")

    def __init__(self, ambient: int, sigma, eqs, ineqs, label=None, free=None):
        self.ambient = ambient
        self.sigma = frozenset(sigma)
        if any(i < 0 or i >= ambient for i in self.sigma):
            raise InputError("sigma indices out of range")
        self.free = tuple(free) if free is not None else tuple(
            i for i in range(ambient) if i not in self.sigma)
        m = len(self.free)
        self.eqs = tuple(canonical_row(c, r, equality=True) for c, r in eqs)
        self.ineqs = tuple(canonical_row(c, r) for c, r in ineqs)
        for c, _ in itertools.chain(self.eqs, self.ineqs):
            if len(c) != m:
                raise InputError("row width %d does not match %d free coordinates" % (len(c), m))
        self.label = label
        self._relint = None
        self._tight = None
        self._dim = None
        self._solved = False

    def _solve(self):
        if self._solved:
            return
        self._solved = True
        m = len(self.free)
        p = fm_solve(m, self.eqs, [(c, r, False) for c, r in self.ineqs])
        self._relint = p
        if p is None:
            return
        tight = frozenset(i for i, (c, r) in enumerate(self.ineqs)
                          if sum(a * x for a, x in zip(c, p)) == r)
        self._tight = tight
        rows = [c for c, _ in self.eqs] + [self.ineqs[i][0] for i in tight]
        self._dim = m - _rank(rows, m)

    def relint_point(self) -> Optional[tuple]:
        self._solve()
        return self._relint

    def second_interior_point(self, bias: int = 1) -> Optional[tuple]:
        m = len(self.free)
        return fm_solve(m, self.eqs, [(c, r, False) for c, r in self.ineqs], bias=bias)

    def dim(self) -> Optional[int]:
        self._solve()
        return self._dim

    def is_empty(self) -> bool:
        return self.relint_point() is None

    def contains_closed(self, point: Sequence[Fraction]) -> bool:
        point = _fracs(point)
        if len(point) != len(self.free):
            raise InputError("point has wrong dimension")
        for c, r in self.eqs:
            if sum(a * x for a, x in zip(c, point)) != r:
                return False
        for c, r in self.ineqs:
            if sum(a * x for a, x in zip(c, point)) > r:
                return False
        return True

    def contains_relint(self, point: Sequence[Fraction]) -> bool:
        self._solve()
        if self._relint is None:
            return False
        point = _fracs(point)
        for c, r in self.eqs:
            if sum(a * x for a, x in zip(c, point)) != r:
                return False
        for i, (c, r) in enumerate(self.ineqs):
            v = sum(a * x for a, x in zip(c, point))
            if i in self._tight:
                if v != r:
                    return False
            elif v >= r:
                return False
        return True

    def relint_system(self):
        """Equalities and strict rows whose solutions are exactly the relative interior."""
        self._solve()
        if self._relint is None:
            return None
        eqs = list(self.eqs)
        strict = []
        for i, row in enumerate(self.ineqs):
            if i in self._tight:
                eqs.append(row)
            else:
                strict.append((row[0], row[1], True))
        return eqs, strict

    def __repr__(self) -> str:
        return "Cell(sigma=%s, dim=%s, label=%r)" % (sorted(self.sigma), self.dim(), self.label)


def feasible_dim(cell: Cell) -> Optional[int]:
    """None when the closed system is empty, else the affine-hull dimension."""
    return None if cell.is_empty() else cell.dim()


@dataclass
class PolyComplex:
    """Per-stratum cell lists; within a stratum the relative interiors are disjoint."""

    ambient: int
    strata: dict = field(default_factory=dict)  # frozenset -> list[Cell]
    quotiented: bool = False

    def all_cells(self):
        for sigma in sorted(self.strata, key=lambda s: (len(s), sorted(s))):
            for cell in self.strata[sigma]:
                yield cell

    def stratum(self, sigma) -> list:
        return self.strata.get(frozenset(sigma), [])

    def cell_count(self) -> int:
        return sum(len(v) for v in self.strata.values())


# Normal complexes --------------------------------------------------------------------


def _tie_system(terms, T):
    rep = min(T)
    urep, crep = terms[rep]
    eqs = []
    for t in sorted(T):
        if t == rep:
            continue
        u, c = terms[t]
        eqs.append((tuple(Fraction(a - b) for a, b in zip(urep, u)), Fraction(c - crep)))
    ineqs = []
    for v, (u, c) in enumerate(terms):
        if v in T:
            continue
        ineqs.append((tuple(Fraction(a - b) for a, b in zip(urep, u)), Fraction(c - crep)))
    return eqs, ineqs


def _tie_at(terms, point):
    best = None
    arg = set()
    for i, (u, c) in enumerate(terms):
        v = c + sum(Fraction(e) * x for e, x in zip(u, point))
        if best is None or v < best:
            best, arg = v, {i}
        elif v == best:
            arg.add(i)
    return frozenset(arg)


def normal_complex(f: TropPoly, sigma=(), cap: int | None = None) -> PolyComplex:
    """Cells of constant initial form of f inside the given stratum.

    Cells are labeled by their tie sets (the monomials attaining the
    minimum on the relative interior).  Enumeration walks the face
    structure of the regular subdivision induced by the coefficients:
    full-dimensional cells are seeded from single terms and boundary cells
    found by tightening one term at a time and closing under the implied
    ties at a relative-interior witness.  Never enumerates all subsets of
    the support.
    """
    sigma = frozenset(sigma)
    ambient = f.num_vars
    free = tuple(i for i in range(ambient) if i not in sigma)
    stripped = f.strip_sigma(sigma)
    if stripped != f:
        raise InputError("normal_complex expects a polynomial with no terms in the stratum's "
                         "infinite variables; apply strip_sigma first")
    budget = Budget(cap)
    complex_ = PolyComplex(ambient, {sigma: []})
    cells = complex_.strata[sigma]
    if f.is_inf:
        cells.append(Cell(ambient, sigma, [], [], label="inf"))
        return complex_
    merged: dict[tuple, Fraction] = {}
    for u, c in f.terms():
        proj = tuple(u[i] for i in free)
        cv = c.value
        if proj not in merged or cv < merged[proj]:
            merged[proj] = cv
    terms = sorted(merged.items())
    full_exp = {proj: tuple(0 if i in sigma else proj[free.index(i)] for i in range(ambient))
                for proj, _ in terms}

    def label_of(T):
        return frozenset(full_exp[terms[t][0]] for t in T)

    discovered: dict[frozenset, Cell] = {}
    queue: list[frozenset] = []

    def register(point):
        T = _tie_at(terms, point)
        if T in discovered:
            return
        eqs, ineqs = _tie_system(terms, T)
        cell = Cell(ambient, sigma, eqs, ineqs, label=label_of(T))
        discovered[T] = cell
        queue.append(T)

    for i in range(len(terms)):
        budget.charge(1, "normal complex seeds")
        eqs, ineqs = _tie_system(terms, {i})
        p = fm_solve(len(free), eqs, [(c, r, False) for c, r in ineqs])
        if p is not None:
            register(p)
    while queue:
        T = queue.pop()
        for v in range(len(terms)):
            if v in T:
                continue
            budget.charge(1, "normal complex refinement")
            eqs, ineqs = _tie_system(terms, set(T) | {v})
            p = fm_solve(len(free), eqs, [(c, r, False) for c, r in ineqs])
            if p is not None:
                register(p)
    cells.extend(discovered[T] for T in sorted(discovered, key=sorted))
    return complex_


# Refinement --------------------------------------------------------------------------


def _locate(cells: Sequence[Cell], point) -> Optional[int]:
    for i, cell in enumerate(cells):
        if cell.contains_relint(point):
            return i
    return None


def refine(complexes: Sequence[PolyComplex], cap: int | None = None) -> PolyComplex:
    """Common refinement: intersections of one cell per input complex.

    Each nonempty intersection is keyed by the unique tuple of input cells
    whose relative interiors contain its witness point, which both removes
    duplicates and gives the concatenated label.
    """
    if not complexes:
        raise InputError("refine needs at least one complex")
    first = complexes[0]
    if len(complexes) == 1:
        return first
    for other in complexes[1:]:
        if other.ambient != first.ambient or other.quotiented != first.quotiented:
            raise InputError("refine needs complexes over the same ambient space")
        if set(other.strata) != set(first.strata):
            raise InputError("refine needs complexes over the same strata")
    budget = Budget(cap)
    out = PolyComplex(first.ambient, {}, quotiented=first.quotiented)
    for sigma in first.strata:
        lists = [c.strata[sigma] for c in complexes]
        found: dict[tuple, Cell] = {}
        for combo in itertools.product(*lists):
            budget.charge(1, "refinement pairs")
            eqs = [row for cell in combo for row in cell.eqs]
            ineqs = [(c, r, False) for cell in combo for (c, r) in cell.ineqs]
            m = len(combo[0].free)
            p = fm_solve(m, eqs, ineqs)
            if p is None:
                continue
            located = tuple(_locate(lst, p) for lst in lists)
            if any(i is None for i in located):
                raise InvariantViolationError("refinement point escaped the input complexes")
            if located in found:
                continue
            reps = [lists[i][j] for i, j in enumerate(located)]
            cell = Cell(first.ambient, sigma,
                        [row for rep in reps for row in rep.eqs],
                        [row for rep in reps for row in rep.ineqs],
                        label=tuple(rep.label for rep in reps),
                        free=combo[0].free)
            found[located] = cell
        out.strata[sigma] = [found[k] for k in sorted(found)]
    return out


# Lineality quotient -------------------------------------------------------------------


def quotient_lineality(C: PolyComplex) -> PolyComplex:
    """Rewrite every cell modulo the all-ones direction of its stratum.

    Requires each cell to be invariant under that line (all row sums 0);
    the last finite coordinate is normalized to 0 and dropped.
    """
    if C.quotiented:
        raise InputError("complex is already quotiented")
    out = PolyComplex(C.ambient, {}, quotiented=True)
    for sigma, cells in C.strata.items():
        new_cells = []
        for cell in cells:
            if len(cell.free) == 0:
                raise InputError("cannot quotient a zero-dimensional stratum")
            for c, _ in itertools.chain(cell.eqs, cell.ineqs):
                if sum(c) != 0:
                    raise InvariantViolationError(
                        "cell in stratum %s is not invariant under the all-ones line"
                        % (sorted(sigma),))
            new_cells.append(Cell(
                C.ambient, sigma,
                [(c[:-1], r) for c, r in cell.eqs],
                [(c[:-1], r) for c, r in cell.ineqs],
                label=cell.label,
                free=cell.free[:-1]))
        out.strata[sigma] = new_cells
    return out


# Point membership helpers -------------------------------------------------------------


def weight_to_cell_coords(cell: Cell, w: Sequence[Trop], quotiented: bool) -> Optional[tuple]:
    """Coordinates of an ambient weight inside the cell's chart, or None.

    None when the weight's infinite coordinates do not match the cell's
    stratum.  In a quotiented complex the last finite coordinate is
    subtracted from the others and dropped.
    """
    if len(w) != cell.ambient:
        raise InputError("weight has wrong length")
    sig = frozenset(i for i, x in enumerate(w) if x.is_inf)
    if sig != cell.sigma:
        return None
    if not quotiented:
        return tuple(w[i].value for i in cell.free)
    full_free = tuple(i for i in range(cell.ambient) if i not in cell.sigma)
    last = w[full_free[-1]].value
    return tuple(w[i].value - last for i in full_free[:-1])
