import random
from fractions import Fraction

import pytest

from tropideal.errors import DimensionError, ParseError
from tropideal.semiring import INF, Trop, dot, tsum, weight_sigma


def rand_scalar(rng):
    if rng.random() < 0.2:
        return INF
    return Trop(Fraction(rng.randint(-50, 50), rng.randint(1, 9)))


def test_identities():
    a = Trop(Fraction(3, 2))
    assert a + INF == a
    assert INF + a == a
    assert a * Trop(0) == a
    assert a * INF == INF
    assert INF * INF == INF


def test_order_infinity_largest():
    assert Trop(5) < INF
    assert not INF < Trop(5)
    assert INF <= INF
    assert max(Trop(1), INF) == INF


def test_semiring_laws_randomized():
    rng = random.Random(20240517)
    for _ in range(500):
        a, b, c = (rand_scalar(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a + a == a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_tsum_empty_is_infinity():
    assert tsum([]) == INF
    assert tsum([Trop(2), Trop(-1), INF]) == Trop(-1)


def test_dot_convention():
    # infinity times zero exponent contributes nothing
    assert dot((INF, Trop(3)), (0, 1)) == Trop(3)
    assert dot((INF, Trop(3)), (1, 1)) == INF
    assert dot((Trop(Fraction(1, 2)), Trop(1)), (2, 3)) == Trop(4)
    with pytest.raises(DimensionError):
        dot((Trop(1),), (1, 2))


def test_weight_sigma():
    assert weight_sigma((Trop(0), INF, Trop(2))) == frozenset({1})


def test_parse_and_format():
    assert Trop.parse("3/4") == Trop(Fraction(3, 4))
    assert Trop.parse("-2") == Trop(-2)
    assert Trop.parse("inf") == INF
    assert Trop.parse(7) == Trop(7)
    assert str(Trop(Fraction(6, 4))) == "3/2"
    assert str(INF) == "inf"
    for bad in ("1.5", "x", "", None, 1.5, True):
        with pytest.raises(ParseError):
            Trop.parse(bad)
