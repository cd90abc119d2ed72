import math
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from amn.configuration import (Configuration, bottleneck_distance_sq, canonical_torus, ground_distance_sq,
                               monic_polynomial, parse_rational, sqrt_decimal, to_svg)
from amn.errors import CardinalityMismatch, SpaceMismatch


def conf(space, *pts):
    return Configuration.build(space, [((Fraction(a), Fraction(b)), 1) for a, b in pts])


coord = st.fractions(min_value=-3, max_value=3, max_denominator=6)
points = st.lists(st.tuples(coord, coord), min_size=0, max_size=5)


def brute_bottleneck(c1, c2):
    xs, ys = c1.multiset(), c2.multiset()
    if not xs:
        return Fraction(0)
    return min(max(ground_distance_sq(x, y, c1.space) for x, y in zip(xs, perm)) for perm in permutations(ys))


def test_single_points():
    d = bottleneck_distance_sq(conf("plane", (0, 0)), conf("plane", (3, 4)))
    assert d == 25
    assert sqrt_decimal(d) == "5.000000000000"
    assert sqrt_decimal(Fraction(2)) == "1.414213562373"
    assert sqrt_decimal(Fraction(0)) == "0.000000000000"


def test_torus_identification():
    a = conf("torus", ("0.9", "0.2"))
    b = conf("torus", ("-0.1", "-0.8"))
    assert a == b
    assert bottleneck_distance_sq(a, b) == 0
    assert canonical_torus(Fraction(-1, 10), Fraction(-8, 10)) == (Fraction(9, 10), Fraction(2, 10))


def test_mismatch_errors():
    with pytest.raises(SpaceMismatch):
        bottleneck_distance_sq(conf("plane", (0, 0)), conf("torus", (0, 0)))
    with pytest.raises(CardinalityMismatch):
        bottleneck_distance_sq(conf("plane", (0, 0)), conf("plane"))


def test_rejects_floats():
    with pytest.raises(TypeError):
        parse_rational(0.5)
    assert parse_rational("0.25") == Fraction(1, 4)


def test_multiplicities_merge():
    c = Configuration.build("plane", [((0, 1), 1), ((0, 1), 2), ((2, 2), 1)])
    assert c.cardinality == 4 and c.max_multiplicity() == 3


@given(points, st.sampled_from(["plane", "torus"]), st.data())
@settings(max_examples=80, deadline=None)
def test_bottleneck_matches_brute_force(pts, space, data):
    others = data.draw(st.lists(st.tuples(coord, coord), min_size=len(pts), max_size=len(pts)))
    a, b = conf(space, *pts), conf(space, *others)
    d = bottleneck_distance_sq(a, b)
    assert d == brute_bottleneck(a, b)
    assert d == bottleneck_distance_sq(b, a)


@given(points, st.sampled_from(["plane", "torus"]))
@settings(max_examples=40, deadline=None)
def test_distance_zero_on_self_and_round_trip(pts, space):
    a = conf(space, *pts)
    again = Configuration.from_json(a.to_json(degree=0, field="Q"))
    assert again == a
    assert bottleneck_distance_sq(a, again) == 0


def test_torus_distance_uses_diagonal_shift():
    d = ground_distance_sq((Fraction(0), Fraction(0)), (Fraction(9, 10), Fraction(9, 10)), "torus")
    assert d == Fraction(2, 100)
    assert math.isclose(float(ground_distance_sq((0, 0), (Fraction(1, 2), 0), "torus")), 0.25)


def test_polynomial():
    c = conf("plane", (0, 2))
    # z - 2i
    assert monic_polynomial(c) == [(0, -2), (1, 0)]
    c = conf("plane", (1, 0), (-1, 0))
    assert monic_polynomial(c) == [(-1, 0), (0, 0), (1, 0)]


def test_svg_marks_points():
    svg = to_svg([("r=0", conf("plane", (0, 2)))])
    assert svg.startswith("<svg") and svg.count("<circle") == 1
