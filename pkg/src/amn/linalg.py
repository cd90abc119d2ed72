"""Exact dense linear algebra over a prime field or the rationals.

Elements of Q are ``fractions.Fraction``; elements of F_p are ints in ``[0, p)``.
Subspaces are stored by the reduced row echelon form of a spanning set, so two
subspaces are equal iff their stored bases are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AmbientMismatch, NotASubspace, NotInvariant, OrthogonalUnsupportedField


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: ``p == 0`` is Q, otherwise F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        s = str(text).strip().lower()
        if s in ("q", "qq", "rationals"):
            return cls(0)
        if s.startswith("gf"):
            s = s[2:]
        elif s.startswith("f"):
            s = s[1:]
        try:
            return cls(int(s))
        except ValueError:
            raise ValueError(f"unknown field {text!r}") from None

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def __str__(self):
        return self.name

    # element construction and arithmetic
    def __call__(self, x):
        if self.p == 0:
            if isinstance(x, Fraction):
                return x
            return Fraction(x)
        if isinstance(x, int):
            return x % self.p
        q = Fraction(x)
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"{x} has no image in F{self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def add(self, a, b):
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p == 0 else (a * b) % self.p

    def neg(self, a):
        return -a if self.p == 0 else (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p == 0 else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        """All elements of a finite field (used by brute-force tests)."""
        if self.p == 0:
            raise ValueError("Q is infinite")
        return range(self.p)

    def to_json(self, a):
        if self.p:
            return a
        return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


Q = FieldSpec(0)


def _rref(rows: list[list], field: FieldSpec, ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of ``rows`` (copied). Returns nonzero rows and pivot columns."""
    rows = [list(r) for r in rows]
    p = field.p
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        if p:
            prow = [(x * inv) % p for x in rows[r]]
        else:
            prow = [x * inv for x in rows[r]]
        rows[r] = prow
        for i in range(nrows):
            if i != r:
                fct = rows[i][c]
                if fct != 0:
                    if p:
                        rows[i] = [(x - fct * y) % p for x, y in zip(rows[i], prow)]
                    else:
                        rows[i] = [x - fct * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match shape")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [tuple(field(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, tuple(rows))

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        columns = [tuple(c) for c in columns]
        entries = tuple(tuple(field(c[i]) for c in columns) for i in range(nrows))
        return cls(field, nrows, len(columns), entries)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, n, n, tuple(tuple(field.one if i == j else field.zero for j in range(n))
                                      for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      tuple(tuple(r[j] for r in self.entries) for j in range(self.cols)))

    def apply(self, v: Sequence) -> tuple:
        f = self.field
        out = []
        for r in self.entries:
            s = f.zero
            for a, b in zip(r, v):
                if a != 0 and b != 0:
                    s = s + a * b
            out.append(f(s) if f.p else s)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = other.columns()
        prod_cols = [self.apply(c) for c in cols]
        return Matrix.from_columns(self.field, prod_cols, self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(tuple(f.add(a, b) for a, b in zip(r, s))
                                                     for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(tuple(f.sub(a, b) for a, b in zip(r, s))
                                                     for r, s in zip(self.entries, other.entries)))

    def scale(self, c) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(tuple(f.mul(c, a) for a in r) for r in self.entries))

    def hstack(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      tuple(r + s for r, s in zip(self.entries, other.entries)))

    def vstack(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(rows), len(cols),
                      tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.entries]


def rank(m: Matrix) -> int:
    return len(_rref(m.to_lists(), m.field, m.cols)[1])


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    f = m.field
    aug = [list(r) + [f.one if i == j else f.zero for j in range(n)] for i, r in enumerate(m.entries)]
    red, piv = _rref(aug, f, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix(f, n, n, tuple(tuple(r[n:]) for r in red))


def matrix_power(m: Matrix, k: int) -> Matrix:
    out = Matrix.identity(m.field, m.rows)
    for _ in range(k):
        out = out @ m
    return out


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field**ambient_dim``; ``basis`` is in reduced row echelon form."""

    field: FieldSpec
    ambient_dim: int
    basis: tuple  # tuple of vectors (tuples)
    pivots: tuple = ()

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = [[field(x) for x in v] for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in ambient {ambient_dim}")
        red, piv = _rref(vecs, field, ambient_dim)
        return cls(field, ambient_dim, tuple(tuple(r) for r in red), tuple(piv))

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, tuple(tuple(field.one if i == j else field.zero for j in range(n))
                                   for i in range(n)), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Matrix:
        """Matrix whose columns are the canonical basis vectors."""
        return Matrix.from_columns(self.field, self.basis, self.ambient_dim)

    def reduce(self, v: Sequence) -> tuple:
        """Residual of ``v`` after eliminating the pivot coordinates of this subspace."""
        f = self.field
        v = list(v)
        for b, c in zip(self.basis, self.pivots):
            x = v[c]
            if x != 0:
                if f.p:
                    v = [(a - x * y) % f.p for a, y in zip(v, b)]
                else:
                    v = [a - x * y for a, y in zip(v, b)]
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def coordinates(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` (assumed to lie in the subspace) in the canonical basis."""
        if not self.contains(v):
            raise NotASubspace("vector not in subspace")
        return tuple(v[c] for c in self.pivots)

    def __le__(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def to_json(self) -> list:
        return [[self.field.to_json(x) for x in b] for b in self.basis]


def _check_ambient(u: Subspace, v: Subspace):
    if u.ambient_dim != v.ambient_dim or u.field != v.field:
        raise AmbientMismatch(f"ambient {u.ambient_dim}/{u.field} vs {v.ambient_dim}/{v.field}")


def image(m: Matrix) -> Subspace:
    return Subspace.span(m.field, m.rows, m.columns())


def nullspace(m: Matrix) -> Subspace:
    f = m.field
    red, piv = _rref(m.to_lists(), f, m.cols)
    free = [j for j in range(m.cols) if j not in set(piv)]
    vecs = []
    for j in free:
        v = [f.zero] * m.cols
        v[j] = f.one
        for row, c in zip(red, piv):
            v[c] = f.neg(row[j])
        vecs.append(v)
    return Subspace.span(f, m.cols, vecs)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    return Subspace.span(u.field, u.ambient_dim, list(u.basis) + list(v.basis))


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """Zassenhaus intersection."""
    _check_ambient(u, v)
    f, n = u.field, u.ambient_dim
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(f, n)
    z = [f.zero] * n
    rows = [list(b) + list(b) for b in u.basis] + [list(b) + z for b in v.basis]
    red, piv = _rref(rows, f, 2 * n)
    vecs = [r[n:] for r, c in zip(red, piv) if c >= n]
    return Subspace.span(f, n, vecs)


def complement_in(sub: Subspace, within: Subspace, inner: str = "any") -> Subspace:
    """A complement ``W`` of ``sub`` inside ``within``.

    ``inner="any"`` picks basis vectors of ``within`` greedily (pivot complement);
    ``inner="orthogonal"`` returns ``within`` intersected with the dot-product
    orthogonal of ``sub`` and is only available over Q.
    """
    _check_ambient(sub, within)
    if not sub <= within:
        raise NotASubspace("sub is not contained in within")
    f, n = sub.field, sub.ambient_dim
    if inner == "orthogonal":
        if not f.is_rational:
            raise OrthogonalUnsupportedField(f"orthogonal complement needs Q, got {f}")
        if sub.dim == 0:
            return within
        perp = nullspace(Matrix(f, sub.dim, n, sub.basis))
        return intersect(within, perp)
    if inner != "any":
        raise ValueError(f"unknown inner product mode {inner!r}")
    current = sub
    picked = []
    for b in within.basis:
        if not current.contains(b):
            picked.append(b)
            current = Subspace.span(f, n, list(current.basis) + [b])
    return Subspace.span(f, n, picked)


def quotient_dim(num: Subspace, den: Subspace) -> int:
    return num.dim - intersect(num, den).dim


def induced_map_on_quotient(f: Matrix, sub_src: Subspace, sub_dst: Subspace) -> Matrix:
    """Matrix of the map ``k^n/sub_src -> k^m/sub_dst`` induced by ``f``.

    Both quotients are coordinatized by the standard basis vectors at the
    non-pivot positions of the respective subspaces.
    """
    if sub_src.ambient_dim != f.cols or sub_dst.ambient_dim != f.rows:
        raise AmbientMismatch("subspace ambients do not match the map")
    for b in sub_src.basis:
        if not sub_dst.contains(f.apply(b)):
            raise NotInvariant("f does not map sub_src into sub_dst")
    fld = f.field
    src_free = [j for j in range(f.cols) if j not in set(sub_src.pivots)]
    dst_free = [i for i in range(f.rows) if i not in set(sub_dst.pivots)]
    cols = []
    for j in src_free:
        y = sub_dst.reduce(f.column(j))
        cols.append([y[i] for i in dst_free])
    return Matrix.from_columns(fld, cols, len(dst_free))
