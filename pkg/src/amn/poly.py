"""Polynomials over an exact field, polynomial matrices, Smith normal form and factoring."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd
from typing import NamedTuple, Sequence

from .errors import ZeroPolynomial
from .linalg import FieldSpec


@dataclass(frozen=True)
class Poly:
    """Polynomial with coefficients in ascending degree; the zero polynomial has no coefficients."""

    field: FieldSpec
    coeffs: tuple

    @classmethod
    def from_coeffs(cls, field: FieldSpec, coeffs: Sequence) -> "Poly":
        c = [field(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        return cls(field, tuple(c))

    @classmethod
    def const(cls, field: FieldSpec, a) -> "Poly":
        return cls.from_coeffs(field, [a])

    @classmethod
    def t(cls, field: FieldSpec) -> "Poly":
        return cls(field, (field.zero, field.one))

    @classmethod
    def monomial(cls, field: FieldSpec, k: int, a=1) -> "Poly":
        return cls.from_coeffs(field, [0] * k + [a])

    @classmethod
    def from_roots(cls, field: FieldSpec, roots: Sequence) -> "Poly":
        out = cls.const(field, 1)
        for r in roots:
            out = out * cls.from_coeffs(field, [field.neg(field(r)), 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    @property
    def lc(self):
        return self.coeffs[-1]

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        f = self.field
        inv = f.inv(self.lc)
        return Poly(f, tuple(f.mul(c, inv) for c in self.coeffs))

    def __add__(self, other: "Poly") -> "Poly":
        f = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly.from_coeffs(f, [f.add(a[i] if i < len(a) else f.zero, b[i] if i < len(b) else f.zero)
                                    for i in range(n)])

    def __neg__(self) -> "Poly":
        f = self.field
        return Poly(f, tuple(f.neg(c) for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        f = self.field
        if not isinstance(other, Poly):
            other = Poly.const(f, other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(f, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly.from_coeffs(f, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(self.field, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return Poly(f, ()), self
        q = [f.zero] * (dq + 1)
        inv = f.inv(other.lc)
        b = other.coeffs
        nb = len(b)
        for k in range(dq, -1, -1):
            c = f.mul(r[k + nb - 1], inv)
            q[k] = c
            if c != 0:
                for j in range(nb):
                    r[k + j] = f.sub(r[k + j], f.mul(c, b[j]))
        return Poly.from_coeffs(f, q), Poly.from_coeffs(f, r[:nb - 1])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __call__(self, x):
        f = self.field
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def derivative(self) -> "Poly":
        f = self.field
        return Poly.from_coeffs(f, [f.mul(f(i), c) for i, c in enumerate(self.coeffs)][1:])

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    def to_json(self) -> list:
        return [self.field.to_json(c) for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mon and c == 1:
                terms.append(mon)
            else:
                terms.append(f"{c}{'*' if mon else ''}{mon}")
        return " + ".join(reversed(terms))

    def sort_key(self):
        return (self.degree, tuple(Fraction(c) for c in self.coeffs))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def powmod(base: Poly, e: int, mod: Poly) -> Poly:
    out = Poly.const(base.field, 1) % mod
    base = base % mod
    while e:
        if e & 1:
            out = (out * base) % mod
        base = (base * base) % mod
        e >>= 1
    return out


# ---------------------------------------------------------------- matrices

@dataclass(frozen=True)
class PolyMatrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples of Poly

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> "PolyMatrix":
        def conv(x):
            if isinstance(x, Poly):
                return x
            if isinstance(x, (list, tuple)):
                return Poly.from_coeffs(field, x)
            return Poly.const(field, x)
        ent = tuple(tuple(conv(x) for x in r) for r in rows)
        if cols is None:
            cols = len(ent[0]) if ent else 0
        return cls(field, len(ent), cols, ent)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "PolyMatrix":
        one, zero = Poly.const(field, 1), Poly(field, ())
        return cls(field, n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        zero = Poly(self.field, ())
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                s = zero
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a.coeffs and b.coeffs:
                        s = s + a * b
                row.append(s)
            out.append(tuple(row))
        return PolyMatrix(self.field, self.rows, other.cols, tuple(out))

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def to_lists(self) -> list[list[Poly]]:
        return [list(r) for r in self.entries]


class SNFResult(NamedTuple):
    invariant_factors: list  # monic Poly, divisibility chain
    rank: int
    left: PolyMatrix | None = None   # U with U @ A @ V = D
    diagonal: PolyMatrix | None = None
    right: PolyMatrix | None = None


def snf(m: PolyMatrix, transforms: bool = False) -> SNFResult:
    """Smith normal form over k[t].

    Pivot: nonzero entry of minimal degree in the active block, ties by lowest
    (row, col). Returns the monic nonzero invariant factors d_1 | d_2 | ... and
    the rank; with ``transforms`` also unimodular ``U``, ``V`` and ``D = U A V``.
    """
    f = m.field
    zero = Poly(f, ())
    A = m.to_lists()
    nr, nc = m.rows, m.cols
    U = PolyMatrix.identity(f, nr).to_lists() if transforms else None
    V = PolyMatrix.identity(f, nc).to_lists() if transforms else None

    def row_axpy(dst, src, q):  # row_dst -= q * row_src
        A[dst] = [a - q * b if b.coeffs else a for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a - q * b if b.coeffs else a for a, b in zip(U[dst], U[src])]

    def col_axpy(dst, src, q):  # col_dst -= q * col_src
        for row in A:
            if row[src].coeffs:
                row[dst] = row[dst] - row[src] * q
        if V is not None:
            for row in V:
                if row[src].coeffs:
                    row[dst] = row[dst] - row[src] * q

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    k = 0
    while k < min(nr, nc):
        while True:
            best = None
            for i in range(k, nr):
                for j in range(k, nc):
                    e = A[i][j]
                    if e.coeffs and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
            if best is None:
                break
            _, i, j = best
            if i != k:
                swap_rows(i, k)
            if j != k:
                swap_cols(j, k)
            piv = A[k][k]
            clean = True
            for i in range(k + 1, nr):
                if A[i][k].coeffs:
                    q, r = divmod(A[i][k], piv)
                    row_axpy(i, k, q)
                    clean = clean and r.is_zero()
            for j in range(k + 1, nc):
                if A[k][j].coeffs:
                    q, r = divmod(A[k][j], piv)
                    col_axpy(j, k, q)
                    clean = clean and r.is_zero()
            if not clean:
                continue
            bad = None
            for i in range(k + 1, nr):
                for j in range(k + 1, nc):
                    if A[i][j].coeffs and not (A[i][j] % piv).is_zero():
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # pull the offending row into the pivot row; next pass lowers the pivot degree
            one = Poly.const(f, 1)
            row_axpy(k, bad, -one)
        if best is None:
            break
        inv = f.inv(A[k][k].lc)
        A[k] = [a * inv for a in A[k]]
        if U is not None:
            U[k] = [a * inv for a in U[k]]
        k += 1
    factors = [A[i][i] for i in range(k)]
    if not transforms:
        return SNFResult(factors, k)
    return SNFResult(factors, k,
                     PolyMatrix(f, nr, nr, tuple(tuple(r) for r in U)),
                     PolyMatrix(f, nr, nc, tuple(tuple(r) for r in A)),
                     PolyMatrix(f, nc, nc, tuple(tuple(r) for r in V)))


# ---------------------------------------------------------------- factoring

class Factor(NamedTuple):
    poly: Poly          # monic
    multiplicity: int
    verified: bool = True


def _pth_root(g: Poly) -> Poly:
    p = g.field.p
    return Poly.from_coeffs(g.field, [g.coeffs[i] for i in range(0, len(g.coeffs), p)])


def _sqf_fp(g: Poly) -> list[tuple[Poly, int]]:
    """Square-free decomposition over F_p of a monic polynomial."""
    p = g.field.p
    out = []
    d = g.derivative()
    if d.is_zero():
        if g.degree <= 0:
            return []
        return [(h, m * p) for h, m in _sqf_fp(_pth_root(g))]
    c = poly_gcd(g, d)
    w = g // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac.monic(), i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        out.extend((h, m * p) for h, m in _sqf_fp(_pth_root(c.monic())))
    return out


def _ddf(g: Poly) -> list[tuple[Poly, int]]:
    f = g.field
    t = Poly.t(f)
    out = []
    h = t
    i = 1
    rest = g
    while rest.degree >= 2 * i:
        h = powmod(h, f.p, rest)
        d = poly_gcd(rest, h - t)
        if not d.is_one():
            out.append((d, i))
            rest = rest // d
            h = h % rest
        i += 1
    if rest.degree > 0:
        out.append((rest.monic(), rest.degree))
    return out


def _edf(g: Poly, d: int, rng: random.Random) -> list[Poly]:
    if g.degree == d:
        return [g.monic()]
    f = g.field
    p = f.p
    while True:
        a = Poly.from_coeffs(f, [rng.randrange(p) for _ in range(g.degree)])
        if a.degree < 1:
            continue
        if p == 2:
            b, acc = a, a
            for _ in range(d - 1):
                acc = (acc * acc) % g
                b = b + acc
        else:
            b = powmod(a, (p ** d - 1) // 2, g) - Poly.const(f, 1)
        h = poly_gcd(g, b)
        if 0 < h.degree < g.degree:
            return _edf(h, d, rng) + _edf(g // h, d, rng)


def is_irreducible(q: Poly) -> bool:
    """Rabin-style test over F_p: ``q`` has no factor over F_{p^d} for d <= deg/2."""
    f = q.field
    if not f.p:
        raise ValueError("is_irreducible is for prime fields")
    n = q.degree
    if n <= 0:
        return False
    q = q.monic()
    t = Poly.t(f)
    h = t
    for d in range(1, n // 2 + 1):
        h = powmod(h, f.p, q)
        if not poly_gcd(q, h - t).is_one():
            return False
    return True


def _factor_fp(g: Poly) -> list[Factor]:
    rng = random.Random(hash(g.coeffs) & 0xFFFFFFFF)
    out = []
    for sq, mult in _sqf_fp(g):
        for part, d in _ddf(sq):
            for q in _edf(part, d, rng):
                out.append(Factor(q, mult))
    return out


def _primitive_int(g: Poly) -> list[int]:
    """Integer primitive multiple of a rational polynomial."""
    den = 1
    for c in g.coeffs:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in g.coeffs]
    cont = 0
    for x in ints:
        cont = igcd(cont, x)
    return [x // cont for x in ints]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            out.append(n // i)
        i += 1
    return sorted(set(out))


def _rational_roots(g: Poly) -> list[Fraction]:
    ints = _primitive_int(g)
    roots = []
    if ints[0] == 0:
        # square-free input, so t divides g exactly once
        roots.append(Fraction(0))
        ints = ints[1:]
        g = Poly.from_coeffs(g.field, g.coeffs[1:])
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            for s in (1, -1):
                r = Fraction(s * a, b)
                if r not in roots and g(r) == 0:
                    roots.append(r)
    return sorted(roots)


def _certify_q(g: Poly) -> bool:
    """Certify irreducibility over Q of a polynomial with no rational roots."""
    if g.degree <= 3:
        return True
    ints = _primitive_int(g)
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        if ints[-1] % p == 0:
            continue
        fp = FieldSpec(p)
        red = Poly.from_coeffs(fp, ints)
        if poly_gcd(red, red.derivative()).is_one() and is_irreducible(red):
            return True
    return False


def _yun_q(g: Poly) -> list[tuple[Poly, int]]:
    out = []
    d = g.derivative()
    a = poly_gcd(g, d)
    b = g // a
    c = d // a
    i = 1
    while b.degree > 0:
        dd = c - b.derivative()
        h = poly_gcd(b, dd)
        if h.degree > 0:
            out.append((h.monic(), i))
        b = b // h
        c = dd // h
        i += 1
    return out


def _factor_q(g: Poly) -> list[Factor]:
    f = g.field
    out = []
    for sq, mult in _yun_q(g):
        rest = sq
        for r in _rational_roots(sq):
            lin = Poly.from_coeffs(f, [-r, 1])
            rest = rest // lin
            out.append(Factor(lin, mult))
        if rest.degree > 0:
            rest = rest.monic()
            out.append(Factor(rest, mult, _certify_q(rest)))
    return out


def factor(g: Poly) -> list[Factor]:
    """Factor into monic irreducibles with multiplicities (leading unit dropped).

    Over F_p the factorization is complete. Over Q square-free parts are split by
    rational roots; a leftover factor is marked ``verified=False`` unless its
    irreducibility can be certified (degree <= 3, or irreducible modulo a prime).
    """
    if g.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    g = g.monic()
    if g.degree == 0:
        return []
    res = _factor_fp(g) if g.field.p else _factor_q(g)
    merged: dict = {}
    for fac in res:
        key = fac.poly.coeffs
        if key in merged:
            old = merged[key]
            merged[key] = Factor(old.poly, old.multiplicity + fac.multiplicity, old.verified and fac.verified)
        else:
            merged[key] = fac
    return sorted(merged.values(), key=lambda x: (x.poly.sort_key(), x.multiplicity))
