"""Groebner complexes, varieties, tropical bases and Nullstellensatz certificates.

The weight space of a truncated ideal decomposes, stratum by stratum, into
cells on which every degenerated layer is constant.  Each stratum's
decomposition is the common refinement of the normal complexes of one
polynomial per degree; cells carry the tower of degenerated layers at an
exact interior witness as their fingerprint.  Everything is reported for
the truncation only.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import monomials as mon
from .errors import (DegenerateInputError, InputError,
                     InvariantViolationError, SizeGuardError)
from .ideals import TruncIdeal, _initial_layers
from .matroids import (VMatroid, contract, fundamental_circuit,
                       lex_min_basis_of_subset)
from .polyhedra import (Cell, PolyComplex, fm_solve, normal_complex,
                        quotient_lineality, refine)
from .polynomials import TropPoly
from .semiring import INF, Trop


def groebner_poly(I: TruncIdeal, d: int, sigma=(), cap: int | None = None) -> TropPoly:
    """The stratum polynomial whose normal complex cuts out the degree-d cells.

    Terms are indexed by the bases of the layer contracted by the monomials
    supported on sigma; the term of a basis B has coefficient p(B) and
    exponent the sum of the remaining monomials.  Equal exponents merge by
    minimum.
    """
    sigma = frozenset(sigma)
    M = I.layer(d)
    sigma_mons = [u for u in M.ground if mon.uses_sigma(u, sigma)]
    C = contract(M, sigma_mons)
    if not C.basis_masks():
        raise DegenerateInputError("contracted layer has no basis")
    nonsigma = [u for u in M.ground if not mon.uses_sigma(u, sigma)]
    total = tuple(sum(u[i] for u in nonsigma) for i in range(I.num_vars))
    pairs = []
    for mask, p in C.valuation_items():
        used = tuple(0 for _ in range(I.num_vars))
        acc = list(total)
        rest = mask
        while rest:
            low = rest & -rest
            idx = low.bit_length() - 1
            u = C.ground[idx]
            acc = [a - e for a, e in zip(acc, u)]
            rest ^= low
        pairs.append((tuple(acc), Trop(p)))
    return TropPoly(I.num_vars, pairs)


@dataclass
class GroebnerCell:
    """One refinement cell with its interior witness and layer fingerprint."""

    cell: Cell
    witness: tuple            # ambient weight, infinite on the stratum
    fingerprint: tuple        # per degree: frozenset of basis masks
    in_variety: bool

    def fingerprint_digest(self) -> str:
        payload = ";".join(
            ",".join(format(m, "x") for m in sorted(layer)) for layer in self.fingerprint)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _fingerprint(layers: Sequence[VMatroid]) -> tuple:
    return tuple(frozenset(M.basis_masks()) for M in layers)


def _has_loop(layers: Sequence[VMatroid]) -> bool:
    for M in layers:
        union = 0
        for m in M.basis_masks():
            union |= m
        if union != (1 << len(M.ground)) - 1:
            return True
    return False


@dataclass
class GroebnerComplex:
    ideal: TruncIdeal
    strata: dict  # frozenset sigma -> list[GroebnerCell]

    def all_cells(self):
        for sigma in sorted(self.strata, key=lambda s: (len(s), sorted(s))):
            for gc in self.strata[sigma]:
                yield sigma, gc

    def fingerprint_classes(self, sigma=None) -> dict:
        """Cells grouped by fingerprint; cells are never geometrically merged."""
        classes: dict = {}
        for s, gc in self.all_cells():
            if sigma is not None and s != frozenset(sigma):
                continue
            classes.setdefault(gc.fingerprint, []).append((s, gc))
        return classes

    def cell_count(self) -> int:
        return sum(len(v) for v in self.strata.values())


def _witness_weight(ambient: int, sigma, cell: Cell) -> tuple:
    p = cell.relint_point()
    coords = dict(zip(cell.free, p))
    return tuple(INF if i in sigma else Trop(coords[i]) for i in range(ambient))


def groebner_complex(I: TruncIdeal, cap: int | None = None) -> GroebnerComplex:
    """Stratified cell decomposition of weight space at truncation level.

    Per stratum this is the common refinement of the normal complexes of
    the degree-d stratum polynomials for all d up to the bound; each cell
    is fingerprinted by degenerating the ideal at an exact interior
    witness.  Cells with equal fingerprints are reported grouped, never
    merged.
    """
    nv = I.num_vars
    strata: dict = {}
    for size in range(nv + 1):
        for sig in itertools.combinations(range(nv), size):
            sigma = frozenset(sig)
            complexes = []
            for d in range(I.degree_bound + 1):
                try:
                    F = groebner_poly(I, d, sigma, cap=cap)
                    complexes.append(normal_complex(F, sigma, cap=cap))
                except SizeGuardError as exc:
                    raise SizeGuardError("degree %d, stratum %s: %s"
                                         % (d, sorted(sigma), exc))
            try:
                refined = refine(complexes, cap=cap)
            except SizeGuardError as exc:
                raise SizeGuardError("stratum %s: %s" % (sorted(sigma), exc))
            out = []
            for cell in refined.stratum(sigma):
                w = _witness_weight(nv, sigma, cell)
                layers = _initial_layers(I, w, cap=cap)
                out.append(GroebnerCell(cell, w, _fingerprint(layers),
                                        in_variety=not _has_loop(layers)))
            strata[sigma] = out
    return GroebnerComplex(I, strata)


# Varieties -----------------------------------------------------------------------


@dataclass
class VarietySubcomplex:
    ideal: TruncIdeal
    presentation: str                  # affine | projective
    strata: dict                       # sigma -> list[GroebnerCell]
    quotiented: bool

    def all_cells(self):
        for sigma in sorted(self.strata, key=lambda s: (len(s), sorted(s))):
            for gc in self.strata[sigma]:
                yield sigma, gc

    def in_variety_cells(self):
        return [(s, gc) for s, gc in self.all_cells() if gc.in_variety]

    def cell_count(self) -> int:
        return sum(len(v) for v in self.strata.values())


def variety(I: TruncIdeal, presentation: str = "projective",
            complex_: GroebnerComplex | None = None, cap: int | None = None) -> VarietySubcomplex:
    """Cells whose degenerated layers are monomial-free, affine or projective.

    The affine presentation keeps all strata of the ambient stratified
    space including the all-infinite point; the projective one drops that
    point and rewrites every cell modulo the all-ones line.
    """
    if presentation not in ("affine", "projective"):
        raise InputError("presentation must be 'affine' or 'projective'")
    G = complex_ if complex_ is not None else groebner_complex(I, cap=cap)
    nv = I.num_vars
    full = frozenset(range(nv))
    if presentation == "affine":
        return VarietySubcomplex(I, "affine", dict(G.strata), quotiented=False)
    strata = {}
    for sigma, gcs in G.strata.items():
        if sigma == full:
            continue
        wrapped = PolyComplex(nv, {sigma: [gc.cell for gc in gcs]})
        quotient = quotient_lineality(wrapped)
        cells = quotient.stratum(sigma)
        strata[sigma] = [GroebnerCell(cells[i], gc.witness, gc.fingerprint, gc.in_variety)
                         for i, gc in enumerate(gcs)]
    return VarietySubcomplex(I, "projective", strata, quotiented=True)


def variety_supports_equal(V1: VarietySubcomplex, V2: VarietySubcomplex) -> bool:
    """Exact set equality of the two varieties' supports, cell by cell.

    The support of V1 is covered by V2 iff no in-variety cell of V1 meets
    the relative interior of an out-of-variety cell of V2; that meeting is
    a mixed strict feasibility problem, decided exactly.
    """
    if V1.presentation != V2.presentation or set(V1.strata) != set(V2.strata):
        return False

    def covered(A: VarietySubcomplex, B: VarietySubcomplex) -> bool:
        for sigma, gcs in A.strata.items():
            bad = [gc.cell for gc in B.strata[sigma] if not gc.in_variety]
            for gc in gcs:
                if not gc.in_variety:
                    continue
                P = gc.cell
                for R in bad:
                    rsys = R.relint_system()
                    if rsys is None:
                        continue
                    eqs = list(P.eqs) + rsys[0]
                    ineqs = [(c, r, False) for c, r in P.ineqs] + rsys[1]
                    if fm_solve(len(P.free), eqs, ineqs) is not None:
                        return False
        return True

    return covered(V1, V2) and covered(V2, V1)


# Tropical bases --------------------------------------------------------------------


def tropical_basis(I: TruncIdeal, complex_: GroebnerComplex | None = None,
                   cap: int | None = None) -> list[TropPoly]:
    """A finite set of ideal elements whose hypersurfaces cut out the variety.

    Every cell whose fingerprint has a loop contributes the fundamental
    circuit of the smallest loop monomial over the lexicographically
    smallest degenerated basis; on that cell the circuit's minimum is
    attained only at the loop, so its hypersurface misses the cell.
    """
    G = complex_ if complex_ is not None else groebner_complex(I, cap=cap)
    polys = []
    seen = set()
    for sigma, gc in G.all_cells():
        if gc.in_variety:
            continue
        d = next(dd for dd, layer in enumerate(gc.fingerprint)
                 if _layer_loops(layer, len(I.layers[dd].ground)))
        M = I.layers[d]
        ground = M.ground
        loops_mask = _layer_loops(gc.fingerprint[d], len(ground))
        loop_idx = (loops_mask & -loops_mask).bit_length() - 1
        sigma_mons = [u for u in ground if mon.uses_sigma(u, sigma)]
        BA = lex_min_basis_of_subset(M, sigma_mons)
        sigma_mask = 0
        for u in sigma_mons:
            sigma_mask |= 1 << M.index_of(u)
        layer_basis = min(gc.fingerprint[d], key=_mask_indices)
        B = (layer_basis & ~sigma_mask) | BA
        if M.value_mask(B) is None:
            raise InvariantViolationError("degenerated basis is not a basis of the layer")
        H = fundamental_circuit(M, B, ground[loop_idx])
        f = TropPoly(I.num_vars, {u: H[i] for i, u in enumerate(ground)})
        if f not in seen:
            seen.add(f)
            polys.append(f)
    polys.sort(key=lambda f: (f.degree(), [(u, str(c)) for u, c in f.terms()]))
    return polys


def _mask_indices(mask: int) -> tuple:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _layer_loops(basis_masks, nelems: int) -> int:
    union = 0
    for m in basis_masks:
        union |= m
    return ((1 << nelems) - 1) & ~union


# Nullstellensatz --------------------------------------------------------------------


@dataclass
class Certificate:
    """Outcome of the emptiness test: exactly one branch is populated."""

    kind: str                      # unit | nonempty | inconclusive
    degree: Optional[int] = None   # unit branch: all degree-d monomials in the ideal
    witness_sigma: Optional[frozenset] = None
    witness_cell: Optional[GroebnerCell] = None
    truncation: int = 0


def nullstellensatz(I: TruncIdeal, cap: int | None = None) -> Certificate:
    """Unit certificate, nonempty-variety witness, or honest inconclusive.

    If some degree at or below the truncation bound has every monomial in
    the ideal, the ideal contains that power of the irrelevant ideal and
    the variety is empty.  Otherwise an in-variety cell of the projective
    variety is returned when one exists.  Neither condition can be decided
    past the truncation, so the remaining case is reported as inconclusive
    rather than forced.
    """
    for d in range(I.degree_bound + 1):
        M = I.layers[d]
        if _layer_loops(frozenset(M.basis_masks()), len(M.ground)) == (1 << len(M.ground)) - 1:
            return Certificate("unit", degree=d, truncation=I.degree_bound)
    V = variety(I, "projective", cap=cap)
    hits = V.in_variety_cells()
    if hits:
        sigma, gc = hits[0]
        return Certificate("nonempty", witness_sigma=sigma, witness_cell=gc,
                           truncation=I.degree_bound)
    return Certificate("inconclusive", truncation=I.degree_bound)
