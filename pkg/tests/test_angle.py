from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from amn import corpus
from amn.angle import (AngleMap, angle_distance_sup, angle_stability_check, betti_relation_check, cut,
                       default_thetas, delta_angle, is_degenerate, jordan_via_relation, laurent_boundary,
                       laurent_boundary_entries,
                       novikov_summary, unroll, validate_angle_map)
from amn.complex import betti_numbers
from amn.configuration import bottleneck_distance_sq
from amn.errors import ClassMismatch, CocycleViolation, DegenerateClass, MissingWinding, ValidationError
from amn.linalg import FieldSpec, Q

F2 = FieldSpec(2)
ANGLE = corpus.angle_builders()
SMALL = ["circle_w1", "circle_hex_w1", "circle_w2", "wedge_mixed"]


def cells(cs):
    return sorted((tuple(c.q.to_json()), c.k) for c in cs)


def test_validation():
    K, m = corpus.circle_from_point()
    validate_angle_map(K, m)
    with pytest.raises(ValidationError):
        validate_angle_map(K, AngleMap.build([0, 0], {}))
    with pytest.raises(MissingWinding):
        validate_angle_map(K, m, explicit=[e for e, _ in m.windings])
    tri = corpus.full_triangle()
    with pytest.raises(CocycleViolation):
        validate_angle_map(tri, AngleMap.build([0, 0, 0], {(0, 1): 1}))
    with pytest.raises(CocycleViolation):
        AngleMap.build([0, 0], [((0, 1), 1), ((1, 0), 1)])


def test_degenerate_class():
    K = corpus.hollow_triangle()
    m = AngleMap.build([0, 0, 0], {})
    assert is_degenerate(K, m)
    with pytest.raises(DegenerateClass):
        novikov_summary(K, m)
    with pytest.raises(DegenerateClass):
        delta_angle(K, m, 0)
    assert not is_degenerate(*corpus.circle_from_point())


def test_circle_winding_one():
    K, m = ANGLE["circle_w1"]
    s = novikov_summary(K, m)
    assert s.betti == [0, 0]
    assert cells(s.cells(0)) == [((-1, 1), 1)]
    for th in default_thetas(m):
        assert cells(jordan_via_relation(K, m, th, 0)) == [((-1, 1), 1)]
    assert delta_angle(K, m, 0).config.points == ()


def test_circle_winding_two_has_two_cells():
    K, m = ANGLE["circle_w2"]
    s = novikov_summary(K, m)
    assert cells(s.cells(0)) == [((-1, 1), 1), ((1, 1), 1)]
    assert betti_numbers(K)[0] == 1


def test_golden_jordan_cells():
    s = novikov_summary(*ANGLE["torus_projection"])
    assert cells(s.cells(0)) == cells(s.cells(1)) == [((-1, 1), 1)]
    s = novikov_summary(*ANGLE["klein"], Q)
    assert cells(s.cells(1)) == [((1, 1), 1)]
    s = novikov_summary(*ANGLE["shear_torus"], Q)
    assert cells(s.cells(1)) == [((-1, 1), 2)]
    s = novikov_summary(*ANGLE["fibonacci_torus"], Q)
    assert cells(s.cells(1)) == [((-1, 1, 1), 1)]


def test_wedge_has_a_torus_point():
    K, m = ANGLE["wedge_mixed"]
    assert novikov_summary(K, m).betti == [0, 1]
    conf = delta_angle(K, m, 1).config
    assert conf.space == "torus"
    assert conf.points == (((Fraction(1, 2), Fraction(0)), 1),)


@pytest.mark.parametrize("name", ["torus_projection", "shear_torus", "klein"])
def test_laurent_boundary_squares_to_zero(name):
    K, m = ANGLE[name]
    d1 = laurent_boundary_entries(K, m, 1)
    for col in laurent_boundary_entries(K, m, 2):
        acc = Counter()
        for mid, (s2, e2) in col.items():
            for row, (s1, e1) in d1[mid].items():
                acc[row, e1 + e2] += s1 * s2
        assert not any(acc.values())
    assert laurent_boundary(K, m, 2).cols == K.count(2)


def test_unroll_is_a_cover_piece():
    K, m = ANGLE["circle_w1"]
    lift = unroll(K, m, 2)
    assert lift.complex.vertex_count == 3 * 5
    assert betti_numbers(lift.complex) == [1, 0]


def test_cut_level_and_band():
    K, m = ANGLE["circle_hex_w1"]
    c = cut(K, m, Fraction(1, 12))
    assert all(c.map.values[v] == Fraction(1, 12) for v in c.level_labels)
    assert c.level.vertex_count == 1
    rep = c.representation(0)
    assert (rep.V_dim, rep.W_dim) == (1, 1)


@pytest.mark.parametrize("name", list(ANGLE))
@pytest.mark.parametrize("fld", [Q, F2])
def test_routes_agree_and_betti_relation(name, fld):
    K, m = ANGLE[name]
    s = novikov_summary(K, m, fld)
    for r in range(K.dim + 1):
        for th in default_thetas(m):
            assert cells(jordan_via_relation(K, m, th, r, fld)) == cells(s.cells(r))
    assert all(row["ok"] for row in betti_relation_check(K, m, fld))
    chi = sum((-1) ** r * b for r, b in enumerate(betti_numbers(K, fld)))
    assert s.euler() == chi


@given(st.sampled_from(SMALL), st.lists(st.integers(0, 11), min_size=6, max_size=6), st.sampled_from([Q, F2]))
@settings(max_examples=25, deadline=None)
def test_cardinality_and_support_random_values(name, raw, fld):
    K, m = ANGLE[name]
    m = AngleMap(tuple(Fraction(x, 12) for x in raw[:K.vertex_count]), m.windings)
    s = novikov_summary(K, m, fld)
    base = {x % 1 for x in m.values}
    for r in range(K.dim + 1):
        conf = delta_angle(K, m, r, fld=fld).config
        assert conf.cardinality == s.degrees[r].free_rank
        assert all(a % 1 in base and b % 1 in base for a, b in conf.support())


@given(st.sampled_from(SMALL), st.lists(st.integers(0, 11), min_size=6, max_size=6),
       st.lists(st.integers(-3, 3), min_size=6, max_size=6))
@settings(max_examples=25, deadline=None)
def test_angle_stability(name, raw, noise):
    K, m = ANGLE[name]
    m1 = AngleMap(tuple(Fraction(x, 12) for x in raw[:K.vertex_count]), m.windings)
    m2 = AngleMap(tuple(v + Fraction(e, 48) for v, e in zip(m1.values, noise)), m.windings)
    for r in range(K.dim + 1):
        assert angle_stability_check(K, m1, m2, r)["ok"]


def test_angle_distance_and_class_mismatch():
    K, m = ANGLE["circle_w1"]
    shifted = AngleMap(tuple(v + Fraction(1, 10) for v in m.values), m.windings)
    assert angle_distance_sup(K, m, shifted) == Fraction(1, 10)
    K2, m2 = ANGLE["circle_hex_w1"]
    with pytest.raises(ClassMismatch):
        angle_distance_sup(K2, m2, AngleMap(m2.values, ()))


def test_angle_duality_on_torus():
    K, m = ANGLE["torus_projection"]
    confs = [delta_angle(K, m, r).config for r in range(3)]
    for r in range(3):
        assert confs[r] == confs[2 - r].swapped()
    assert bottleneck_distance_sq(confs[0], confs[0]) == 0
