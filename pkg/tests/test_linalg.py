from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import GF, QQ, Matrix as SMatrix
from sympy.polys.matrices import DomainMatrix

from amn.errors import AmbientMismatch, NotASubspace, OrthogonalUnsupportedField
from amn.linalg import (FieldSpec, Matrix, Q, Subspace, complement_in, image, induced_map_on_quotient, intersect,
                        inverse, matrix_power, nullspace, quotient_dim, rank, subspace_sum)

F2, F3, F5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)
FIELDS = [Q, F2, F3, F5]


def sympy_rank(rows, ncols, fld):
    if not rows or ncols == 0:
        return 0
    K = QQ if fld.p == 0 else GF(fld.p)
    return DomainMatrix([[K.convert(int(x) if fld.p else x) for x in r] for r in rows], (len(rows), ncols), K).rank()


@st.composite
def matrices(draw, max_dim=5, fields=FIELDS):
    fld = draw(st.sampled_from(fields))
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(1, max_dim))
    lo, hi = (-3, 3) if fld.p == 0 else (0, fld.p - 1)
    rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(fld, rows, c)


@st.composite
def subspace_pairs(draw):
    fld = draw(st.sampled_from(FIELDS))
    n = draw(st.integers(1, 5))
    lo, hi = (-2, 2) if fld.p == 0 else (0, fld.p - 1)
    vec = st.lists(st.integers(lo, hi), min_size=n, max_size=n)
    U = Subspace.span(fld, n, draw(st.lists(vec, max_size=4)))
    W = Subspace.span(fld, n, draw(st.lists(vec, max_size=4)))
    return U, W


def test_field_parse_and_arithmetic():
    assert FieldSpec.parse("q") == Q
    assert FieldSpec.parse("f5") == F5
    assert FieldSpec.parse("GF3") == F3
    with pytest.raises(ValueError):
        FieldSpec.parse("f4")
    assert F5.inv(2) == 3
    assert Q.div(Fraction(1), Fraction(1, 3)) == 3


def test_rank_small():
    assert rank(Matrix.from_rows(Q, [[1, 2], [2, 4]])) == 1
    assert rank(Matrix.from_rows(F2, [[1, 1], [1, 1]])) == 1
    assert rank(Matrix.from_rows(F3, [[1, 2], [2, 1]])) == 1
    assert rank(Matrix.from_rows(Q, [[1, 2], [2, 1]])) == 2


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rank_matches_sympy(m):
    assert rank(m) == sympy_rank(m.to_lists(), m.cols, m.field)


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_rank_nullity(m):
    ker = nullspace(m)
    assert ker.dim + rank(m) == m.cols
    for v in ker.basis:
        assert all(x == 0 for x in m.apply(v))
    assert image(m).dim == rank(m)


@given(subspace_pairs())
@settings(max_examples=150, deadline=None)
def test_dimension_formula(pair):
    U, W = pair
    S, I = subspace_sum(U, W), intersect(U, W)
    assert S.dim + I.dim == U.dim + W.dim
    assert I <= U and I <= W and U <= S and W <= S


@given(subspace_pairs())
@settings(max_examples=100, deadline=None)
def test_complement(pair):
    U, W = pair
    S = U + W
    C = complement_in(U, S)
    assert (C & U).dim == 0
    assert C + U == S
    assert quotient_dim(S, U) == C.dim


@given(subspace_pairs())
@settings(max_examples=80, deadline=None)
def test_orthogonal_complement_over_q(pair):
    U, W = pair
    if U.field.p:
        with pytest.raises(OrthogonalUnsupportedField):
            complement_in(U, U + W, inner="orthogonal")
        return
    S = U + W
    C = complement_in(U, S, inner="orthogonal")
    assert C.dim + U.dim == S.dim
    for c in C.basis:
        for u in U.basis:
            assert sum(a * b for a, b in zip(c, u)) == 0


def test_subspace_canonical_form():
    a = Subspace.span(Q, 3, [[1, 1, 0], [0, 1, 1]])
    b = Subspace.span(Q, 3, [[1, 2, 1], [2, 3, 1]])
    assert a == b
    assert a.contains([1, 0, -1])
    assert not a.contains([1, 0, 0])


def test_errors():
    with pytest.raises(AmbientMismatch):
        intersect(Subspace.zero(Q, 2), Subspace.zero(Q, 3))
    with pytest.raises(NotASubspace):
        complement_in(Subspace.full(Q, 2), Subspace.zero(Q, 2))


def test_inverse_and_power():
    m = Matrix.from_rows(Q, [[2, 1], [1, 1]])
    assert inverse(m) @ m == Matrix.identity(Q, 2)
    assert matrix_power(Matrix.from_rows(Q, [[1, 1], [0, 1]]), 5).to_lists() == [[1, 5], [0, 1]]
    inv_sym = SMatrix([[2, 1], [1, 1]]).inv()
    assert [[Fraction(int(x.p), int(x.q)) for x in inv_sym.row(i)] for i in range(2)] == inverse(m).to_lists()


def test_induced_map_on_quotient():
    f = Matrix.identity(Q, 3)
    U = Subspace.span(Q, 3, [[1, 0, 0]])
    M = induced_map_on_quotient(f, U, U)
    assert M.rows == M.cols == 2
    assert M == Matrix.identity(Q, 2)
