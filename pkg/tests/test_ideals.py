import itertools
import random
from fractions import Fraction

import pytest

from tropideal.errors import InputError, OutOfRangeError
from tropideal.ideals import (ClassicalInput, QPoly,
                              TruncIdeal, Valuation, affine_point_ideal,
                              affine_principal_truncation, affine_unit_ideal,
                              boolean_image, check_compatibility, compare,
                              contains, homogenize_ideal, initial_ideal,
                              nonrealizable_ideal, point_ideal,
                              single_circuit_matroid, tropicalize)
from tropideal.matroids import VMatroid, circuits, is_vector
from tropideal.monomials import monomials_of_degree
from tropideal.polynomials import TropPoly
from tropideal.semiring import INF, Trop


# Test-local oracles ---------------------------------------------------------------


def macaulay_rank(gens, d):
    """Independent exact rank of the degree-d Macaulay matrix (test-local Gauss)."""
    nv = gens[0].num_vars
    cols = monomials_of_degree(nv, d)
    col_index = {u: i for i, u in enumerate(cols)}
    rows = []
    for g in gens:
        dg = g.degree()
        if dg > d:
            continue
        for u in monomials_of_degree(nv, d - dg):
            shifted = g.times_monomial(u)
            row = [Fraction(0)] * len(cols)
            for v, c in shifted.coeffs.items():
                row[col_index[v]] = c
            rows.append(row)
    rank = 0
    for c in range(len(cols)):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][c] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def compatible_by_circuit_push(I):
    """Oracle: x_i times every circuit of M_d must be a vector of M_{d+1}."""
    for d in range(I.degree_bound):
        nxt = I.layers[d + 1]
        order = {u: i for i, u in enumerate(nxt.ground)}
        for i in range(I.num_vars):
            for H in circuits(I.layers[d]):
                coords = {u: INF for u in nxt.ground}
                for j, u in enumerate(I.layers[d].ground):
                    shifted = u[:i] + (u[i] + 1,) + u[i + 1:]
                    coords[shifted] = H[j]
                vec = tuple(coords[u] for u in nxt.ground)
                if not is_vector(nxt, vec):
                    return False
    return True


def linear_x_plus_y():
    return ClassicalInput((QPoly(2, {(1, 0): 1, (0, 1): 1}),), Valuation("trivial"))


# tropicalize ---------------------------------------------------------------------


def test_tropicalize_x_plus_y():
    I = tropicalize(linear_x_plus_y(), 2)
    assert I.hilbert(0) == 1 and I.hilbert(1) == 1 and I.hilbert(2) == 1
    M1 = I.layers[1]
    assert M1.rank == 1
    assert M1.value(frozenset({(1, 0)})) == Trop(0)
    assert M1.value(frozenset({(0, 1)})) == Trop(0)
    M2 = I.layers[2]
    assert M2.rank == 1
    for u in monomials_of_degree(2, 2):
        assert M2.value(frozenset({u})) == Trop(0)


def test_tropicalize_unit_ideal():
    one = ClassicalInput((QPoly(2, {(0, 0): 1}),), Valuation("trivial"))
    I = tropicalize(one, 1)
    for d in range(2):
        assert I.hilbert(d) == 0
        assert I.layers[d].underlying().loops() == monomials_of_degree(2, d)


def test_tropicalize_rejects_bad_input():
    with pytest.raises(InputError):
        ClassicalInput((QPoly(2, {(1, 0): 1, (0, 0): 1}),), Valuation("trivial"))
    with pytest.raises(InputError):
        Valuation("padic", 6)
    with pytest.raises(InputError):
        ClassicalInput((QPoly(2, {}),), Valuation("trivial"))


def lambda_family(lam, nv=4):
    # <x - z - w, y - z - lam*w> in variables x, y, z, w
    g1 = QPoly(nv, {(1, 0, 0, 0): 1, (0, 0, 1, 0): -1, (0, 0, 0, 1): -1})
    g2 = QPoly(nv, {(0, 1, 0, 0): 1, (0, 0, 1, 0): -1, (0, 0, 0, 1): -lam})
    return ClassicalInput((g1, g2), Valuation("trivial"))


def test_lambda_family_dependence_at_two():
    X = [(2, 0, 0, 0), (0, 1, 1, 0), (0, 0, 0, 2)]  # x^2, yz, w^2
    for lam, dependent in ((1, False), (2, True), (3, False)):
        I = tropicalize(lambda_family(lam), 2)
        M2 = I.layers[2]
        assert M2.rank == 3
        is_basis = not M2.value(frozenset(X)).is_inf
        assert is_basis == (not dependent)


def test_lambda_family_hilbert():
    I = tropicalize(lambda_family(2), 3)
    for d in range(4):
        assert I.hilbert(d) == d + 1


# point ideals ---------------------------------------------------------------------


def test_point_ideal_binomial_circuits():
    I = point_ideal((Trop(0), Trop(0)), 2)
    M2 = I.layers[2]
    assert M2.rank == 1
    supports = set()
    for H in circuits(M2):
        assert all(c == Trop(0) or c.is_inf for c in H)
        supports.add(frozenset(i for i, c in enumerate(H) if not c.is_inf))
    assert supports == {frozenset({0, 1}), frozenset({0, 2}), frozenset({1, 2})}


def test_point_ideal_with_infinite_coordinate():
    I = point_ideal((Trop(0), INF), 1)
    M1 = I.layers[1]
    assert M1.underlying().loops() == [(0, 1)]
    assert M1.bases_as_sets() == [frozenset({(1, 0)})]


def test_point_ideal_valued_circuit():
    I = point_ideal((Trop(0), Trop(3)), 1)
    assert circuits(I.layers[1]) == [(Trop(3), Trop(0))]


def test_point_ideal_rejects_all_infinite():
    with pytest.raises(InputError):
        point_ideal((INF, INF), 1)


def test_point_ideal_matches_padic_tropicalization():
    # the ideal of the point (1 : 5) tropicalizes to the ideal of (0, 1)
    J = ClassicalInput((QPoly(2, {(1, 0): 5, (0, 1): -1}),), Valuation("padic", 5))
    assert tropicalize(J, 3).layers == point_ideal((Trop(0), Trop(1)), 3).layers


# the divisibility-valued tower ------------------------------------------------------


def test_nonrealizable_degree_one_uniform():
    I = nonrealizable_ideal(2, 1)
    M1 = I.layers[1]
    assert M1.rank == 2
    assert len(M1.basis_masks()) == 3  # all 2-subsets of the three variables


def test_nonrealizable_divisibility_exclusion():
    I = nonrealizable_ideal(2, 2)
    B = [(2, 0, 0), (1, 1, 0), (1, 0, 1)]  # x0 divides all three
    assert I.layers[2].value(frozenset(B)).is_inf


def test_nonrealizable_independent_cubes():
    I = nonrealizable_ideal(2, 3)
    X = [(3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 1)]
    assert not I.layers[3].value(frozenset(X)).is_inf


def test_nonrealizable_line_circuit():
    I = nonrealizable_ideal(2, 1)
    assert circuits(I.layers[1]) == [(Trop(0), Trop(0), Trop(0))]


def test_nonrealizable_circuit_description():
    # circuits are minimal sets C with |C| > d - deg(gcd C) + 1
    I = nonrealizable_ideal(2, 3)
    for d in (2, 3):
        ground = I.layers[d].ground

        def too_big(idxs):
            mons = [ground[i] for i in idxs]
            gcd = tuple(min(u[j] for u in mons) for j in range(3))
            return len(mons) > d - sum(gcd) + 1

        expected = set()
        for size in range(2, d + 3):
            for C in itertools.combinations(range(len(ground)), size):
                if not too_big(C):
                    continue
                minimal = True
                for sub_size in range(2, len(C)):
                    if any(too_big(sub) for sub in itertools.combinations(C, sub_size)):
                        minimal = False
                        break
                if minimal:
                    expected.add(frozenset(C))
        got = {frozenset(i for i, c in enumerate(H) if not c.is_inf)
               for H in circuits(I.layers[d])}
        assert got == expected


def test_nonrealizable_rejects_small_n():
    with pytest.raises(InputError):
        nonrealizable_ideal(1, 2)


# compatibility ---------------------------------------------------------------------


def test_compatibility_point_and_nonrealizable():
    assert check_compatibility(point_ideal((Trop(0), Trop(0)), 3)) is None
    assert check_compatibility(nonrealizable_ideal(2, 3)) is None


def test_compatibility_cross_checked_by_circuit_push():
    for I in (point_ideal((Trop(0), Trop(3)), 2), nonrealizable_ideal(2, 2),
              tropicalize(linear_x_plus_y(), 2)):
        assert check_compatibility(I) is None
        assert compatible_by_circuit_push(I)


def test_compatibility_failure_detected():
    # degree-1 layer of <x + y>, degree-2 layer missing the vector x^2 + y^2
    m0 = VMatroid(monomials_of_degree(2, 0), 1, {frozenset({(0, 0)}): 0})
    m1 = VMatroid(monomials_of_degree(2, 1), 1,
                  {frozenset({(1, 0)}): 0, frozenset({(0, 1)}): 0})
    vec = (Trop(0), Trop(0), INF)  # x^2 + x*y only
    m2 = single_circuit_matroid(monomials_of_degree(2, 2), vec)
    broken = TruncIdeal(2, [m0, m1, m2])
    witness = check_compatibility(broken)
    assert witness is not None and witness.degree == 1
    assert not compatible_by_circuit_push(broken)


# hilbert, membership ---------------------------------------------------------------


def test_hilbert_out_of_range():
    I = point_ideal((Trop(0), Trop(0)), 2)
    with pytest.raises(OutOfRangeError):
        I.hilbert(3)


def cubic_products():
    x, y, z = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    lin = QPoly(3, {x: 1, y: 1, z: 1})
    quad = QPoly(3, {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1})
    g = lin * quad
    xy = QPoly(3, {x: 1, y: 1})
    xz = QPoly(3, {x: 1, z: 1})
    yz = QPoly(3, {y: 1, z: 1})
    gp = xy * xz * yz
    return g, gp


def quartic_witness_polynomial():
    g, gp = cubic_products()
    extra = QPoly(3, {(1, 0, 0): 1, (0, 1, 0): -1, (0, 0, 1): -1})
    f = (gp * extra).trop(Valuation("trivial"))
    assert set(f.support()) == {
        (3, 1, 0), (3, 0, 1), (1, 3, 0), (0, 3, 1), (1, 0, 3), (0, 1, 3),
        (1, 2, 1), (1, 1, 2), (0, 2, 2)}
    assert all(c == Trop(0) for _, c in f.terms())
    return f


def test_same_variety_membership_discrepancy():
    g, gp = cubic_products()
    I = tropicalize(ClassicalInput((g,), Valuation("trivial")), 4)
    Ip = tropicalize(ClassicalInput((gp,), Valuation("trivial")), 4)
    f = quartic_witness_polynomial()
    assert contains(Ip, f)
    assert not contains(I, f)
    assert contains(I, TropPoly.infinity(3))
    report = compare(I, Ip)
    assert report.relation == "incomparable"
    assert report.equal_through_degree == 3
    assert report.first_difference == 4
    assert report.hilbert_left == report.hilbert_right


def test_contains_rejects_inhomogeneous():
    I = point_ideal((Trop(0), Trop(0)), 2)
    with pytest.raises(InputError):
        contains(I, TropPoly(2, {(1, 0): Trop(0), (0, 0): Trop(0)}))


# initial ideals --------------------------------------------------------------------


def test_initial_ideal_of_line():
    I = tropicalize(ClassicalInput(
        (QPoly(3, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}),), Valuation("trivial")), 1)
    J = initial_ideal(I, (Trop(0), Trop(0), Trop(1)))
    assert J.mode == "boolean"
    lay = J.layers[1]
    assert lay.underlying().circuits() == [frozenset({(1, 0, 0), (0, 1, 0)})]
    K = initial_ideal(I, (Trop(0), Trop(1), Trop(2)))
    assert K.layers[1].underlying().loops() == [(1, 0, 0)]
    Z = initial_ideal(I, (Trop(0), Trop(0), Trop(0)))
    assert Z.layers[1] == boolean_image(I).layers[1]


def test_initial_ideal_rejects_all_infinite():
    I = point_ideal((Trop(0), Trop(0)), 1)
    with pytest.raises(InputError):
        initial_ideal(I, (INF, INF))


def test_initial_ideal_with_infinite_weight_coordinates():
    I = point_ideal((Trop(0), INF), 2)
    J = initial_ideal(I, (Trop(0), INF))
    # the point itself lies in the variety: no loops in any layer
    for d in range(3):
        assert J.layers[d].underlying().loops() == []
    K = initial_ideal(I, (Trop(0), Trop(0)))
    assert (0, 1) in K.layers[1].underlying().loops()


def test_hilbert_preserved_under_initial(run_count=10):
    rng = random.Random(42)
    I = tropicalize(lambda_family(3), 3)
    for _ in range(run_count):
        w = tuple(Trop(rng.randint(-9, 9)) for _ in range(4))
        J = initial_ideal(I, w)
        for d in range(4):
            assert J.hilbert(d) == I.hilbert(d)


def test_initial_commutes_with_tropicalization_principal():
    # classical oracle: a single generator is a universal Groebner basis,
    # so the initial ideal is generated by the initial form of the generator
    rng = random.Random(99)
    for _ in range(8):
        coeffs = {}
        for u in monomials_of_degree(3, 2):
            if rng.random() < 0.7:
                coeffs[u] = Fraction(rng.randint(-4, 4))
        g = QPoly(3, coeffs)
        if g.is_zero or not g.is_homogeneous():
            continue
        I = tropicalize(ClassicalInput((g,), Valuation("trivial")), 3)
        w = tuple(Trop(rng.randint(-3, 3)) for _ in range(3))
        wvals = [x.value for x in w]
        best = min(sum(wi * ui for wi, ui in zip(wvals, u)) for u in g.coeffs)
        in_g = QPoly(3, {u: c for u, c in g.coeffs.items()
                         if sum(wi * ui for wi, ui in zip(wvals, u)) == best})
        lhs = initial_ideal(I, w)
        rhs = boolean_image(tropicalize(ClassicalInput((in_g,), Valuation("trivial")), 3))
        assert lhs.layers == rhs.layers


def test_initial_commutes_with_tropicalization_linear():
    # classical oracle: circuits of a linear ideal form a universal Groebner basis
    rng = random.Random(7)
    nv = 3
    for _ in range(6):
        forms = []
        for _ in range(2):
            coeffs = {}
            for i in range(nv):
                c = rng.randint(-3, 3)
                if c:
                    coeffs[tuple(1 if j == i else 0 for j in range(nv))] = Fraction(c)
            if coeffs:
                forms.append(QPoly(nv, coeffs))
        if not forms or macaulay_rank(forms, 1) != len(forms):
            continue
        I = tropicalize(ClassicalInput(tuple(forms), Valuation("trivial")), 2)
        w = tuple(Trop(rng.randint(-3, 3)) for _ in range(nv))
        wv = [x.value for x in w]
        # circuits of the row space via the degree-1 matroid of I itself would be
        # circular; enumerate supports by brute-force elimination instead
        circuit_polys = []
        vectors = [[g.coeffs.get(tuple(1 if j == i else 0 for j in range(nv)), Fraction(0))
                    for i in range(nv)] for g in forms]
        for size in range(2, nv + 1):
            for S in itertools.combinations(range(nv), size):
                rows = [r[:] for r in vectors]
                for c in [i for i in range(nv) if i not in S]:
                    piv = next((r for r in range(len(rows)) if rows[r][c] != 0), None)
                    if piv is None:
                        continue
                    pivrow = rows[piv]
                    rows = [[a - (row[c] / pivrow[c]) * b for a, b in zip(row, pivrow)]
                            for r, row in enumerate(rows) if r != piv]
                for row in rows:
                    supp = frozenset(i for i in range(nv) if row[i] != 0)
                    if supp == frozenset(S):
                        if not any(set(p) < supp for p in
                                   [q[0] for q in circuit_polys]):
                            circuit_polys.append((supp, row))
        minimal = [t for t in circuit_polys
                   if not any(o[0] < t[0] for o in circuit_polys)]
        gens = []
        seen = set()
        for supp, row in minimal:
            if supp in seen:
                continue
            seen.add(supp)
            best = min(wv[i] for i in supp)
            init = {tuple(1 if j == i else 0 for j in range(nv)): row[i]
                    for i in supp if wv[i] == best}
            gens.append(QPoly(nv, init))
        lhs = initial_ideal(I, w)
        rhs = boolean_image(tropicalize(ClassicalInput(tuple(gens), Valuation("trivial")), 2))
        assert lhs.layers == rhs.layers


def test_initial_layer_cycles_are_supports_of_degenerated_circuits():
    # the support of the degeneration of any layer circuit is a cycle of the
    # corresponding boolean layer
    rng = random.Random(77)
    for I in (point_ideal((Trop(0), Trop(3)), 2),
              tropicalize(linear_x_plus_y(), 2)):
        for _ in range(10):
            w = tuple(Trop(rng.randint(-5, 5)) for _ in range(I.num_vars))
            J = initial_ideal(I, w)
            for d in range(I.degree_bound + 1):
                M = I.layers[d]
                under = J.layers[d].underlying()
                for H in circuits(M):
                    f = TropPoly(I.num_vars, {u: H[i] for i, u in enumerate(M.ground)})
                    supp = f.initial_form(w)
                    assert under.is_cycle(supp)


def test_boolean_image_preserves_ranks_and_compatibility():
    I = point_ideal((Trop(0), Trop(3), Trop(1)), 2)
    B = boolean_image(I)
    assert B.mode == "boolean"
    for d in range(3):
        assert B.hilbert(d) == I.hilbert(d)
    assert check_compatibility(B) is None


# compare ---------------------------------------------------------------------------


def test_compare_equal():
    I = point_ideal((Trop(0), Trop(0)), 2)
    J = point_ideal((Trop(0), Trop(0)), 2)
    assert compare(I, J).relation == "equal"


def test_compare_shape_mismatch():
    I = point_ideal((Trop(0), Trop(0)), 2)
    J = point_ideal((Trop(0), Trop(0)), 1)
    with pytest.raises(InputError):
        compare(I, J)


# homogenization --------------------------------------------------------------------


def test_homogenize_affine_point():
    A = affine_point_ideal((Trop(0),), 3)
    assert homogenize_ideal(A).layers == point_ideal((Trop(0), Trop(0)), 3).layers


def test_homogenize_affine_unit():
    H = homogenize_ideal(affine_unit_ideal(2, 2))
    for d in range(3):
        assert H.hilbert(d) == 0
        assert H.layers[d].underlying().loops() == monomials_of_degree(3, d)


def test_homogenize_single_circuit():
    f = TropPoly(1, {(2,): Trop(0), (0,): Trop(1)})  # x^2 + 1
    H = homogenize_ideal(affine_principal_truncation(f))
    top = H.layers[2]
    ftilde = f.homogenize()
    expected = tuple(ftilde.coeff(u) for u in top.ground)
    assert circuits(top) == [top.canonicalize_vector(expected)]


def test_hilbert_matches_macaulay_corank():
    rng = random.Random(5)
    cases = [linear_x_plus_y(),
             ClassicalInput(cubic_products()[:1], Valuation("trivial")),
             lambda_family(2)]
    for inp in cases:
        I = tropicalize(inp, 3)
        for d in range(4):
            nmon = len(monomials_of_degree(inp.num_vars, d))
            assert I.hilbert(d) == nmon - macaulay_rank(list(inp.generators), d)
