from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st
from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from amn import corpus
from amn.complex import (PLMap, betti_numbers, boundary_matrix, cone, cut_at_level, euler_characteristic,
                         full_subcomplex, homology, induced_homology_map, validate)
from amn.errors import BadVertexIndex, DegreeOutOfRange, NotFaceClosed
from amn.linalg import FieldSpec, Q, rank

F2, F3 = FieldSpec(2), FieldSpec(3)


def oracle_betti(K, p):
    """Betti numbers from sympy ranks of dense boundary matrices."""
    dom = QQ if p == 0 else GF(p)
    ranks = {}
    for r in range(1, K.dim + 1):
        M = boundary_matrix(K, r, FieldSpec(p)).to_lists()
        if M and M[0]:
            ranks[r] = DomainMatrix([[dom.convert(int(x) if p else x) for x in row] for row in M],
                                    (len(M), len(M[0])), dom).rank()
        else:
            ranks[r] = 0
    return [K.count(r) - ranks.get(r, 0) - ranks.get(r + 1, 0) for r in range(K.dim + 1)]


@st.composite
def complexes(draw, max_vertices=6):
    n = draw(st.integers(1, max_vertices))
    faces = list(combinations(range(n), 2)) + list(combinations(range(n), 3))
    chosen = draw(st.lists(st.sampled_from(faces), max_size=8, unique=True)) if len(faces) else []
    return validate(n, chosen)


def test_validate_closes_faces():
    K = validate(3, [(2, 0, 1)])
    assert K.count(0) == 3 and K.count(1) == 3 and K.count(2) == 1
    with pytest.raises(NotFaceClosed):
        validate(3, [(0, 1, 2)], auto_close=False)
    with pytest.raises(BadVertexIndex):
        validate(2, [(0, 5)])


def test_standard_betti_numbers():
    assert betti_numbers(corpus.point()) == [1]
    assert betti_numbers(corpus.hollow_triangle()) == [1, 1]
    assert betti_numbers(corpus.octahedron()) == [1, 0, 1]
    assert betti_numbers(corpus.torus7()) == [1, 2, 1]
    assert betti_numbers(corpus.torus_grid()) == [1, 2, 1]
    assert betti_numbers(corpus.rp2(), Q) == [1, 0, 0]
    assert betti_numbers(corpus.rp2(), F2) == [1, 1, 1]
    assert betti_numbers(corpus.klein_bottle()[0], Q) == [1, 1, 0]
    assert betti_numbers(corpus.klein_bottle()[0], F2) == [1, 2, 1]


def test_torus_counts():
    K = corpus.torus7()
    assert (K.count(0), K.count(1), K.count(2)) == (7, 21, 14)
    assert euler_characteristic(K) == 0


@given(complexes(), st.sampled_from([0, 2, 3]))
@settings(max_examples=80, deadline=None)
def test_betti_matches_oracle(K, p):
    assert betti_numbers(K, FieldSpec(p)) == oracle_betti(K, p)


@given(complexes(), st.sampled_from([0, 2, 3]))
@settings(max_examples=60, deadline=None)
def test_euler_characteristic(K, p):
    chi = sum((-1) ** r * K.count(r) for r in range(K.dim + 1))
    assert euler_characteristic(K, FieldSpec(p)) == chi


@given(complexes())
@settings(max_examples=40, deadline=None)
def test_boundary_squares_to_zero(K):
    for r in range(2, K.dim + 1):
        prod = boundary_matrix(K, r - 1, Q) @ boundary_matrix(K, r, Q)
        assert prod.is_zero()


def test_boundary_degree_range():
    with pytest.raises(DegreeOutOfRange):
        boundary_matrix(corpus.edge(), 2)
    with pytest.raises(DegreeOutOfRange):
        boundary_matrix(corpus.edge(), 0)


def test_representatives_are_cycles_not_boundaries():
    K = corpus.torus7()
    H = homology(K, 1, Q)
    assert H.betti == 2
    d1 = boundary_matrix(K, 1, Q)
    for rep in H.representatives:
        v = [rep.get(j, 0) for j in range(K.count(1))]
        assert all(x == 0 for x in d1.apply(v))
        assert not H.is_boundary(rep)
    assert rank(H.representatives_matrix()) == 2


def test_cone_is_acyclic():
    b = betti_numbers(cone(corpus.torus7()))
    assert b[0] == 1 and all(x == 0 for x in b[1:])


def test_full_subcomplex_and_inclusion():
    K = corpus.hollow_triangle()
    sub, labels = full_subcomplex(K, lambda v: v != 2)
    assert betti_numbers(sub) == [1, 0]
    M = induced_homology_map(sub, K, 0, Q, list(labels))
    assert rank(M) == 1


def test_cut_at_level_triangle():
    K = corpus.full_triangle()
    f = PLMap.of([0, 1, 2])
    Kc, fc = cut_at_level(K, f, 1)
    assert Kc.count(0) == 4
    assert sum((-1) ** r * Kc.count(r) for r in range(Kc.dim + 1)) == 1
