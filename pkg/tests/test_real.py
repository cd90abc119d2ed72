from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from amn import corpus
from amn.complex import PLMap, betti_numbers
from amn.configuration import Configuration
from amn.errors import DegreeOutOfRange
from amn.linalg import FieldSpec, Q, intersect
from amn.real import Box, box_measure, delta_config, epsilon_f, hat_delta, hat_hat_config, level_images

F2 = FieldSpec(2)
SMALL = ["edge", "hollow_triangle", "full_triangle", "circle6"]
MANIFOLDS = ["sphere_octahedron", "torus7", "torus_grid"]


def builder(name):
    return corpus.real_builders()[name][0]


def as_dict(conf: Configuration) -> dict:
    return {p: m for p, m in conf.points}


values = st.lists(st.integers(0, 4), min_size=12, max_size=12)


def test_hollow_triangle_example():
    K = corpus.hollow_triangle()
    f = PLMap.of([0, 1, 2])
    assert as_dict(delta_config(K, f, 0)) == {(0, 2): 1}
    assert as_dict(delta_config(K, f, 1)) == {(2, 0): 1}


def test_edge_example():
    assert as_dict(delta_config(corpus.edge(), PLMap.of([0, 1]), 0)) == {(0, 1): 1}


@pytest.mark.parametrize("name", ["torus7", "sphere_octahedron", "rp2"])
def test_constant_map_sits_on_the_diagonal(name):
    K = builder(name)
    f = PLMap.of([3] * K.vertex_count)
    for r, b in enumerate(betti_numbers(K, F2)):
        conf = delta_config(K, f, r, F2)
        assert as_dict(conf) == ({(3, 3): b} if b else {})


def test_degree_out_of_range():
    with pytest.raises(DegreeOutOfRange):
        level_images(corpus.edge(), PLMap.of([0, 1]), 2)


def test_box_rejects_degenerate():
    with pytest.raises(ValueError):
        Box.of(1, 1, 0, 2)
    assert Box.of(0, 1, 2, 3).contains(1, 2)
    assert not Box.of(0, 1, 2, 3).contains(0, 2)


@given(st.sampled_from(SMALL + ["torus7", "rp2"]), values, st.sampled_from([Q, F2]))
@settings(max_examples=60, deadline=None)
def test_cardinality_and_support(name, vals, fld):
    K = builder(name)
    f = PLMap.of(vals[:K.vertex_count])
    cands = set(f.values)
    for r, b in enumerate(betti_numbers(K, fld)):
        conf = delta_config(K, f, r, fld)
        assert conf.cardinality == b
        assert all(x in cands and y in cands for x, y in conf.support())


@given(st.sampled_from(SMALL), values, st.sampled_from([0, 2]))
@settings(max_examples=40, deadline=None)
def test_matches_brute_force_oracle(oracle, name, vals, p):
    K = builder(name)
    f = PLMap.of(vals[:K.vertex_count])
    simp = oracle.closure([s for lv in K.simplices for s in lv])
    for r in range(K.dim + 1):
        mine = as_dict(delta_config(K, f, r, FieldSpec(p)))
        assert mine == oracle.real_delta(simp, list(f.values), r, p)


@given(st.sampled_from(SMALL + ["torus7"]), values,
       st.lists(st.integers(-1, 6), min_size=5, max_size=5, unique=True))
@settings(max_examples=60, deadline=None)
def test_box_additivity(name, vals, cuts):
    K = builder(name)
    f = PLMap.of(vals[:K.vertex_count])
    a1, a, a2, b, b2 = sorted(Fraction(c) for c in cuts[:3]) + sorted(Fraction(c) for c in cuts[3:])
    for r in range(K.dim + 1):
        whole = box_measure(K, f, r, Box(a1, a2, b, b2))
        assert whole == box_measure(K, f, r, Box(a1, a, b, b2)) + box_measure(K, f, r, Box(a, a2, b, b2))
        whole = box_measure(K, f, r, Box(b, b2, a1, a2))
        assert whole == box_measure(K, f, r, Box(b, b2, a1, a)) + box_measure(K, f, r, Box(b, b2, a, a2))


@given(st.sampled_from(MANIFOLDS), values, st.sampled_from([Q, F2]))
@settings(max_examples=20, deadline=None)
def test_poincare_duality(name, vals, fld):
    K = builder(name)
    f = PLMap.of(vals[:K.vertex_count])
    n = K.dim
    confs = [delta_config(K, f, r, fld) for r in range(n + 1)]
    for r in range(n + 1):
        assert confs[r] == confs[n - r].swapped()


@given(st.sampled_from(SMALL + MANIFOLDS), values)
@settings(max_examples=40, deadline=None)
def test_hat_hat_orthogonal_direct_sum(name, vals):
    K = builder(name)
    f = PLMap.of(vals[:K.vertex_count])
    for r in range(K.dim + 1):
        hh = hat_hat_config(K, f, r, Q)
        assert hh.pairwise_orthogonal()
        assert hh.is_direct_sum()
        dims = {p: s.dim for p, s in hh.points}
        assert dims == as_dict(delta_config(K, f, r, Q))


def test_hat_delta_lies_in_F():
    K = corpus.torus7()
    f = PLMap.of(range(7))
    li = level_images(K, f, 1, Q)
    for (a, b), m in li.grid().items():
        S = hat_delta(K, f, 1, a, b)
        assert S.dim == m
        assert intersect(S, li.F(a, b)) == S


def test_epsilon_f():
    assert epsilon_f(PLMap.of([0, 2, 5, 5])) == 2
    assert epsilon_f(PLMap.of([1, 1])) is None
