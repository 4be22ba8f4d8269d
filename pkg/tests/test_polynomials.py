import random
from fractions import Fraction

import pytest

from tropideal.errors import DegenerateInputError, DimensionError, InputError
from tropideal.monomials import (grlex_key, label, monomials_of_degree,
                                 monomials_up_to_degree, parse_label)
from tropideal.polynomials import TropPoly
from tropideal.semiring import INF, Trop


def T(*pairs, nvars=None):
    nvars = nvars if nvars is not None else len(pairs[0][0])
    return TropPoly(nvars, {u: Trop(c) for u, c in pairs})


def test_monomial_order_is_graded_lex():
    assert monomials_of_degree(3, 2)[:3] == [(2, 0, 0), (1, 1, 0), (1, 0, 1)]
    assert monomials_of_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]
    ms = monomials_up_to_degree(2, 2)
    assert ms == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert ms == sorted(ms, key=grlex_key)


def test_monomial_labels_round_trip():
    assert label((2, 0, 1)) == "x0^2*x2"
    assert label((0, 0)) == "1"
    for u in monomials_of_degree(3, 3):
        assert parse_label(label(u), 3) == u


def test_terms_drop_infinite_coefficients():
    f = TropPoly(2, {(1, 0): Trop(1), (0, 1): INF})
    assert f.support() == [(1, 0)]
    assert TropPoly.infinity(2).is_inf


def test_eval_examples():
    # direct term-by-term: min(0 + 2w, 0) at w = 1 is min(2, 0) = 0
    f = T(((2,), 0), ((0,), 0))
    assert f.evaluate((Trop(1),)) == Trop(0)
    assert TropPoly.infinity(1).evaluate((Trop(5),)) == INF
    g = T(((1, 0), 0), ((0, 1), 0))
    assert g.evaluate((INF, Trop(3))) == Trop(3)
    with pytest.raises(DimensionError):
        f.evaluate((Trop(1), Trop(2)))


def test_initial_form_examples():
    f = T(((2,), 0), ((0,), 0))
    assert f.initial_form((Trop(1),)) == frozenset({(0,)})
    g = T(((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0))
    assert g.initial_form((Trop(0), Trop(0), Trop(0))) == frozenset({(1, 0, 0), (0, 1, 0), (0, 0, 1)})
    h = T(((1, 0), 0), ((0, 1), 0))
    assert h.initial_form((INF, Trop(0))) == frozenset({(0, 1)})
    with pytest.raises(InputError):
        h.initial_form((INF, INF))


def test_min_twice_examples():
    f = T(((1, 0), 0), ((0, 1), 0), ((0, 0), 0))
    assert f.min_twice((Trop(0), Trop(0)))
    # min(1, 2, 0) = 0 attained once
    assert not f.min_twice((Trop(1), Trop(2)))
    assert TropPoly.infinity(2).min_twice((Trop(1), Trop(1)))


def test_homogenize_examples():
    f = T(((2,), 0), ((0,), 0))
    assert f.homogenize() == T(((0, 2), 0), ((2, 0), 0))
    g = T(((1, 0), 0), ((0, 1), 0), ((0, 0), 0))
    assert g.homogenize() == T(((0, 1, 0), 0), ((0, 0, 1), 0), ((1, 0, 0), 0))
    h = T(((2,), 1), ((1,), 0))
    assert h.homogenize() == T(((0, 2), 1), ((1, 1), 0))
    with pytest.raises(DegenerateInputError):
        TropPoly.infinity(1).homogenize()


def test_homogenize_then_dehomogenize_round_trip():
    rng = random.Random(7)
    for _ in range(50):
        terms = {}
        for _ in range(rng.randint(1, 6)):
            u = (rng.randint(0, 3), rng.randint(0, 3))
            terms[u] = Trop(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        f = TropPoly(2, terms)
        assert f.homogenize().dehomogenize() == f


def test_strip_sigma_examples():
    f = T(((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0))
    assert f.strip_sigma({0}) == T(((0, 1, 0), 0), ((0, 0, 1), 0))
    g = T(((1, 1), 0), ((0, 2), 0))
    assert g.strip_sigma({0}) == T(((0, 2), 0), nvars=2)
    assert T(((2, 0), 0), nvars=2).strip_sigma({0}).is_inf


def test_initial_form_of_combination():
    # when a*f and b*g have the same finite value at w, initial forms unite
    rng = random.Random(11)
    for _ in range(100):
        terms_f = {(rng.randint(0, 3), rng.randint(0, 3)): Trop(rng.randint(-5, 5)) for _ in range(3)}
        terms_g = {(rng.randint(0, 3), rng.randint(0, 3)): Trop(rng.randint(-5, 5)) for _ in range(3)}
        f, g = TropPoly(2, terms_f), TropPoly(2, terms_g)
        w = (Trop(Fraction(rng.randint(-4, 4), rng.randint(1, 3))), Trop(rng.randint(-4, 4)))
        fv, gv = f.evaluate(w), g.evaluate(w)
        if fv.is_inf or gv.is_inf:
            continue
        # pick a, b with a + f(w) = b + g(w) = 0
        a = Trop(-fv.value)
        b = Trop(-gv.value)
        combo = f.scale(a) + g.scale(b)
        assert combo.initial_form(w) == f.initial_form(w) | g.initial_form(w)


def test_initial_form_of_variable_multiple():
    rng = random.Random(13)
    for _ in range(100):
        terms = {(rng.randint(0, 3), rng.randint(0, 3)): Trop(rng.randint(-5, 5)) for _ in range(4)}
        f = TropPoly(2, terms)
        w = (Trop(rng.randint(-4, 4)), Trop(rng.randint(-4, 4)))
        i = rng.randint(0, 1)
        shifted = f.times_monomial((1, 0) if i == 0 else (0, 1))
        expected = frozenset(
            (u[0] + (1 - i * 1), u[1]) if i == 0 else (u[0], u[1] + 1)
            for u in f.initial_form(w)
        )
        assert shifted.initial_form(w) == expected


def test_product_and_sum_are_exact():
    f = T(((1, 0), Fraction(1, 3)), ((0, 1), 0))
    g = T(((1, 0), 0), ((0, 0), Fraction(-1, 3)))
    fg = f * g
    assert fg.coeff((2, 0)) == Trop(Fraction(1, 3))
    assert fg.coeff((1, 1)) == Trop(0)
    assert fg.coeff((1, 0)) == Trop(0)  # min(1/3 - 1/3, ...) merged
    assert fg.coeff((0, 1)) == Trop(Fraction(-1, 3))
    assert (f + g).coeff((1, 0)) == Trop(0)
