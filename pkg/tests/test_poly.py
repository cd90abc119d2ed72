from fractions import Fraction

import pytest
from flint import nmod_poly
from hypothesis import given, settings, strategies as st
from sympy import GF, QQ, Poly as SPoly, factor_list, symbols
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from amn.errors import ZeroPolynomial
from amn.linalg import FieldSpec, Q
from amn.poly import Poly, PolyMatrix, factor, is_irreducible, poly_gcd, snf

t = symbols("t")
F2, F3, F5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)


def P(fld, *cs):
    return Poly.from_coeffs(fld, cs)


def to_sympy(p: Poly):
    return sum((int(c) if p.field.p else c) * t ** i for i, c in enumerate(p.coeffs))


def monic_key(expr, fld):
    sp = SPoly(expr, t, modulus=fld.p) if fld.p else SPoly(expr, t, domain=QQ)
    sp = sp.monic()
    cs = list(reversed(sp.all_coeffs()))
    return [int(c) % fld.p for c in cs] if fld.p else [Fraction(int(c.p), int(c.q)) for c in cs]


@st.composite
def polys(draw, fld, max_deg=4):
    lo, hi = (-3, 3) if fld.p == 0 else (0, fld.p - 1)
    cs = draw(st.lists(st.integers(lo, hi), min_size=1, max_size=max_deg + 1))
    return Poly.from_coeffs(fld, cs)


def test_arithmetic():
    a = P(Q, -1, 1)            # t - 1
    b = P(Q, 1, 1)             # t + 1
    assert a * b == P(Q, -1, 0, 1)
    q, r = divmod(P(Q, -1, 0, 1), a)
    assert q == b and r.is_zero()
    assert poly_gcd(a * b, a * a) == a
    assert P(F2, 1, 1) * P(F2, 1, 1) == P(F2, 1, 0, 1)


@pytest.mark.parametrize("fld", [Q, F2, F3, F5])
def test_divmod_property(fld):
    @given(polys(fld), polys(fld))
    @settings(max_examples=60, deadline=None)
    def inner(a, b):
        if b.is_zero():
            return
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree
    inner()


def test_factor_examples():
    fs = factor(P(Q, -1, 0, 1))
    assert [(f.poly.to_json(), f.multiplicity) for f in fs] == [([-1, 1], 1), ([1, 1], 1)]
    fs = factor(P(F5, -1, 1) ** 3)
    assert [(f.poly.to_json(), f.multiplicity) for f in fs] == [([4, 1], 3)]
    assert len(factor(Poly.monomial(F2, 8) - Poly.t(F2))) == 4
    quartic = factor(P(Q, 1, 0, 0, 0, 1))
    assert len(quartic) == 1 and not quartic[0].verified
    with pytest.raises(ZeroPolynomial):
        factor(Poly(Q, ()))


@pytest.mark.parametrize("fld", [F2, F3, F5])
def test_factor_matches_sympy_fp(fld):
    @given(polys(fld, 6))
    @settings(max_examples=60, deadline=None)
    def inner(g):
        if g.degree < 1:
            return
        mine = sorted((tuple(f.poly.to_json()), f.multiplicity) for f in factor(g))
        facs = nmod_poly([int(c) for c in g.coeffs], fld.p).factor()[1]
        theirs = sorted((tuple(int(c) for c in q.coeffs()), k) for q, k in facs)
        assert mine == theirs
        prod = Poly.const(fld, 1)
        for f in factor(g):
            prod = prod * f.poly ** f.multiplicity
        assert prod == g.monic()
    inner()


def test_factor_matches_sympy_q():
    @given(polys(Q, 5))
    @settings(max_examples=80, deadline=None)
    def inner(g):
        if g.degree < 1:
            return
        mine = factor(g)
        prod = Poly.const(Q, 1)
        for f in mine:
            prod = prod * f.poly ** f.multiplicity
        assert prod == g.monic()
        _, facs = factor_list(to_sympy(g), t)
        theirs = sorted((tuple(monic_key(q, Q)), k) for q, k in facs if SPoly(q, t).degree() > 0)
        if all(f.verified for f in mine):
            assert sorted((tuple(f.poly.coeffs), f.multiplicity) for f in mine) == theirs
    inner()


def test_is_irreducible():
    assert is_irreducible(P(F2, 1, 1, 1))
    assert not is_irreducible(P(F2, 1, 0, 1))
    assert is_irreducible(P(F3, 1, 0, 1))


def test_snf_small():
    tt = Poly.t(Q)
    m = PolyMatrix.from_rows(Q, [[tt, Poly.const(Q, 1)], [Poly(Q, ()), tt]])
    res = snf(m, transforms=True)
    assert [d.to_json() for d in res.invariant_factors] == [[1], [0, 0, 1]]
    assert res.left @ m @ res.right == res.diagonal


@st.composite
def poly_matrices(draw, fld):
    r = draw(st.integers(1, 3))
    c = draw(st.integers(1, 3))
    rows = [[draw(polys(fld, 2)) for _ in range(c)] for _ in range(r)]
    return PolyMatrix.from_rows(fld, rows, c)


@pytest.mark.parametrize("fld", [Q, F2, F3])
def test_snf_matches_sympy(fld):
    @given(poly_matrices(fld))
    @settings(max_examples=40, deadline=None)
    def inner(m):
        res = snf(m, transforms=True)
        assert res.left @ m @ res.right == res.diagonal
        K = (QQ if not fld.p else GF(fld.p))[t]
        D = DomainMatrix([[K.from_sympy(to_sympy(x)) for x in row] for row in m.to_lists()], (m.rows, m.cols), K)
        theirs = [monic_key(K.to_sympy(d), fld) for d in invariant_factors(D) if not K.is_zero(d)]
        mine = [d.to_json() if fld.p else [Fraction(c) for c in d.coeffs] for d in res.invariant_factors]
        assert mine == theirs
        assert res.rank == len(theirs)
    inner()
