"""JSON (de)serialization for every core type.

Rationals travel as canonical reduced 'p/q' strings ('p' when q = 1),
never as floats; 'inf' appears only where a scalar field admits it.
Inside polynomial term lists infinity is encoded by absence, so 'inf'
coefficients are rejected there.  All emitted lists are canonically
sorted, which makes serialization deterministic.
"""

from __future__ import annotations

from fractions import Fraction

from . import monomials as mon
from .errors import ParseError
from .groebner import Certificate, GroebnerCell, GroebnerComplex, VarietySubcomplex
from .ideals import ClassicalInput, QPoly, TruncIdeal, Valuation
from .matroids import OrdMatroid, VMatroid
from .polyhedra import Cell, PolyComplex
from .polynomials import TropPoly
from .semiring import Trop


def _frac_str(x: Fraction) -> str:
    return str(Fraction(x))


def _parse_frac(text) -> Fraction:
    t = Trop.parse(text)
    if t.is_inf:
        raise ParseError("'inf' is not allowed here")
    return t.value


def _expect(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError("missing %r in %s" % (key, where))
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError("%r in %s has the wrong type" % (key, where))
    return value


# Tropical polynomials --------------------------------------------------------------


def poly_to_json(f: TropPoly) -> dict:
    return {"vars": f.num_vars,
            "terms": [{"exp": list(u), "coeff": str(c)} for u, c in f.terms()]}


def poly_from_json(obj) -> TropPoly:
    nv = _expect(obj, "vars", int, "polynomial")
    terms = {}
    for i, item in enumerate(_expect(obj, "terms", list, "polynomial")):
        exp = _expect(item, "exp", list, "term %d" % i)
        coeff = _expect(item, "coeff", None, "term %d" % i)
        if coeff == "inf":
            raise ParseError("term %d: absence encodes infinity; 'inf' is not allowed" % i)
        terms[tuple(exp)] = Trop(_parse_frac(coeff))
    return TropPoly(nv, terms)


def qpoly_from_json(obj) -> QPoly:
    nv = _expect(obj, "vars", int, "generator")
    coeffs = {}
    for i, item in enumerate(_expect(obj, "terms", list, "generator")):
        exp = _expect(item, "exp", list, "generator term %d" % i)
        coeffs[tuple(exp)] = _parse_frac(_expect(item, "coeff", None, "generator term %d" % i))
    return QPoly(nv, coeffs)


def qpoly_to_json(g: QPoly) -> dict:
    items = sorted(g.coeffs.items(), key=lambda t: mon.grlex_key(t[0]))
    return {"vars": g.num_vars,
            "terms": [{"exp": list(u), "coeff": _frac_str(c)} for u, c in items]}


def classical_input_from_json(obj) -> ClassicalInput:
    gens = tuple(qpoly_from_json(g) for g in _expect(obj, "generators", list, "input"))
    val = _expect(obj, "valuation", dict, "input")
    kind = _expect(val, "type", str, "valuation")
    p = val.get("p", 0)
    return ClassicalInput(gens, Valuation(kind, p))


def classical_input_to_json(inp: ClassicalInput) -> dict:
    val = {"type": inp.valuation.kind}
    if inp.valuation.kind == "padic":
        val["p"] = inp.valuation.p
    return {"generators": [qpoly_to_json(g) for g in inp.generators], "valuation": val}


# Weights ---------------------------------------------------------------------------


def weight_from_json(items) -> tuple:
    if not isinstance(items, list):
        raise ParseError("a weight is a JSON list")
    return tuple(Trop.parse(x) for x in items)


def weight_to_json(w) -> list:
    return [str(x) for x in w]


# Matroids --------------------------------------------------------------------------


def _ground_label(e) -> str:
    return mon.label(e) if isinstance(e, tuple) else str(e)


def vmatroid_to_json(M: VMatroid, boolean: bool = False) -> dict:
    out = {"ground": [_ground_label(e) for e in M.ground], "rank": M.rank}
    if boolean:
        out["bases"] = [sorted(_mask_indices(m)) for m in M.basis_masks()]
    else:
        out["valuation"] = [{"set": sorted(_mask_indices(m)), "val": _frac_str(v)}
                            for m, v in M.valuation_items()]
    return out


def ordmatroid_to_json(M: OrdMatroid) -> dict:
    return {"ground": [_ground_label(e) for e in M.ground], "rank": M.rank,
            "bases": sorted(sorted(_mask_indices(m)) for m in M.bases)}


def _mask_indices(mask: int) -> list:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def vmatroid_from_json(obj, ground=None) -> VMatroid:
    labels = _expect(obj, "ground", list, "matroid")
    if ground is None:
        ground = tuple(labels)
    if len(ground) != len(labels):
        raise ParseError("ground size mismatch")
    rank = _expect(obj, "rank", int, "matroid")
    n = len(ground)
    if "valuation" in obj:
        val = {}
        for i, item in enumerate(obj["valuation"]):
            idxs = _expect(item, "set", list, "valuation entry %d" % i)
            if any(not isinstance(j, int) or j < 0 or j >= n for j in idxs):
                raise ParseError("valuation entry %d has bad indices" % i)
            mask = 0
            for j in idxs:
                mask |= 1 << j
            val[mask] = _parse_frac(_expect(item, "val", None, "valuation entry %d" % i))
        return VMatroid(ground, rank, val)
    if "bases" in obj:
        masks = []
        for i, idxs in enumerate(obj["bases"]):
            mask = 0
            for j in idxs:
                if not isinstance(j, int) or j < 0 or j >= n:
                    raise ParseError("basis %d has bad indices" % i)
                mask |= 1 << j
            masks.append(mask)
        M = VMatroid.from_bases(ground, masks)
        if M.rank != rank:
            raise ParseError("declared rank %d but bases have size %d" % (rank, M.rank))
        return M
    raise ParseError("matroid needs 'valuation' or 'bases'")


# Truncated ideals ------------------------------------------------------------------


def ideal_to_json(I: TruncIdeal) -> dict:
    return {"vars": I.num_vars, "degree_bound": I.degree_bound, "mode": I.mode,
            "layers": [vmatroid_to_json(M, boolean=(I.mode == "boolean"))
                       for M in I.layers]}


def ideal_from_json(obj) -> TruncIdeal:
    nv = _expect(obj, "vars", int, "ideal")
    D = _expect(obj, "degree_bound", int, "ideal")
    mode = obj.get("mode", "rational")
    layer_objs = _expect(obj, "layers", list, "ideal")
    if len(layer_objs) != D + 1:
        raise ParseError("degree_bound %d but %d layers" % (D, len(layer_objs)))
    layers = []
    for d, lobj in enumerate(layer_objs):
        ground = tuple(mon.monomials_of_degree(nv, d))
        labels = [_ground_label(u) for u in ground]
        if _expect(lobj, "ground", list, "layer %d" % d) != labels:
            raise ParseError("layer %d ground is not the canonical degree-%d list" % (d, d))
        layers.append(vmatroid_from_json(lobj, ground=ground))
    return TruncIdeal(nv, layers, mode=mode)


# Complexes -------------------------------------------------------------------------


def _row_to_json(row) -> list:
    coeffs, rhs = row
    return [_frac_str(c) for c in coeffs] + [_frac_str(rhs)]


def _label_to_json(label):
    if label is None or isinstance(label, str):
        return label
    if isinstance(label, frozenset):
        return sorted(mon.label(u) for u in label)
    if isinstance(label, tuple):
        return [_label_to_json(x) for x in label]
    return repr(label)


def cell_to_json(cell: Cell) -> dict:
    return {"sigma": sorted(cell.sigma),
            "eq": [_row_to_json(r) for r in cell.eqs],
            "ineq": [_row_to_json(r) for r in cell.ineqs],
            "label": _label_to_json(cell.label),
            "dim": cell.dim()}


def cell_to_text(cell: Cell) -> str:
    names = ["w%d" % i for i in cell.free]

    def side(coeffs):
        bits = []
        for c, nm in zip(coeffs, names):
            if c == 0:
                continue
            if c == 1:
                bits.append("+%s" % nm)
            elif c == -1:
                bits.append("-%s" % nm)
            else:
                bits.append("%+s*%s" % (_frac_str(c), nm))
        return " ".join(bits) if bits else "0"

    lines = ["stratum sigma=%s dim=%s" % (sorted(cell.sigma), cell.dim())]
    for c, r in cell.eqs:
        lines.append("  %s = %s" % (side(c), _frac_str(r)))
    for c, r in cell.ineqs:
        lines.append("  %s <= %s" % (side(c), _frac_str(r)))
    return "\n".join(lines)


def complex_to_json(C: PolyComplex) -> dict:
    strata = []
    for sigma in sorted(C.strata, key=lambda s: (len(s), sorted(s))):
        strata.append({"sigma": sorted(sigma),
                       "cells": [cell_to_json(c) for c in C.strata[sigma]]})
    return {"ambient": C.ambient, "quotiented": C.quotiented, "strata": strata}


def _gcell_to_json(gc: GroebnerCell, verbose: bool) -> dict:
    out = cell_to_json(gc.cell)
    out["witness"] = weight_to_json(gc.witness)
    out["fingerprint"] = gc.fingerprint_digest()
    out["in_variety"] = gc.in_variety
    if verbose:
        out["fingerprint_full"] = [sorted(sorted(_mask_indices(m)) for m in layer)
                                   for layer in gc.fingerprint]
    return out


def groebner_complex_to_json(G: GroebnerComplex, verbose: bool = False) -> dict:
    strata = []
    for sigma in sorted(G.strata, key=lambda s: (len(s), sorted(s))):
        strata.append({"sigma": sorted(sigma),
                       "cells": [_gcell_to_json(gc, verbose) for gc in G.strata[sigma]]})
    classes: dict[str, list] = {}
    for sigma, gc in G.all_cells():
        classes.setdefault(gc.fingerprint_digest(), []).append(
            [sorted(sigma), G.strata[sigma].index(gc)])
    return {"ambient": G.ideal.num_vars, "degree_bound": G.ideal.degree_bound,
            "strata": strata,
            "classes": [{"fingerprint": k, "cells": v}
                        for k, v in sorted(classes.items())]}


def variety_to_json(V: VarietySubcomplex, verbose: bool = False) -> dict:
    strata = []
    for sigma in sorted(V.strata, key=lambda s: (len(s), sorted(s))):
        strata.append({"sigma": sorted(sigma),
                       "cells": [_gcell_to_json(gc, verbose) for gc in V.strata[sigma]]})
    return {"ambient": V.ideal.num_vars, "presentation": V.presentation,
            "quotiented": V.quotiented, "strata": strata}


def certificate_to_json(cert: Certificate) -> dict:
    out = {"kind": cert.kind, "truncation": cert.truncation}
    if cert.kind == "unit":
        out["degree"] = cert.degree
    if cert.kind == "nonempty":
        out["witness_sigma"] = sorted(cert.witness_sigma)
        out["witness_cell"] = _gcell_to_json(cert.witness_cell, verbose=False)
    return out


def round_trip(value):
    """parse(serialize(value)); the identity on canonical forms."""
    if isinstance(value, TropPoly):
        return poly_from_json(poly_to_json(value))
    if isinstance(value, TruncIdeal):
        return ideal_from_json(ideal_to_json(value))
    if isinstance(value, VMatroid):
        return vmatroid_from_json(vmatroid_to_json(value))
    if isinstance(value, QPoly):
        return qpoly_from_json(qpoly_to_json(value))
    if isinstance(value, ClassicalInput):
        return classical_input_from_json(classical_input_to_json(value))
    if isinstance(value, tuple):
        return weight_from_json(weight_to_json(value))
    raise ParseError("no serialization for %r" % (type(value).__name__,))
