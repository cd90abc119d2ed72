"""Linear relations, their regular part, and decomposition of G2 (Kronecker) representations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BookkeepingFailure, DimMismatch, InducedNotAutomorphism, SingularT
from .linalg import FieldSpec, Matrix, Subspace, complement_in, intersect, nullspace, rank, _rref
from .poly import Poly, PolyMatrix, factor, snf


@dataclass(frozen=True)
class LinearRelation:
    """Subspace of pairs ``(x, y)`` in ``k^dim x k^dim``."""

    dim: int
    graph: Subspace

    @property
    def field(self) -> FieldSpec:
        return self.graph.field

    @classmethod
    def from_pairs(cls, fld: FieldSpec, dim: int, pairs: Sequence[tuple]) -> "LinearRelation":
        return cls(dim, Subspace.span(fld, 2 * dim, [tuple(x) + tuple(y) for x, y in pairs]))

    @classmethod
    def identity(cls, fld: FieldSpec, n: int) -> "LinearRelation":
        return cls.graph_of(Matrix.identity(fld, n))

    @classmethod
    def graph_of(cls, m: Matrix) -> "LinearRelation":
        if m.rows != m.cols:
            raise DimMismatch("graph of a non-square matrix")
        n = m.rows
        eye = Matrix.identity(m.field, n)
        return cls.from_pairs(m.field, n, [(eye.column(j), m.column(j)) for j in range(n)])

    @classmethod
    def total(cls, fld: FieldSpec, n: int) -> "LinearRelation":
        return cls(n, Subspace.full(fld, 2 * n))

    def pairs(self) -> list[tuple]:
        n = self.dim
        return [(b[:n], b[n:]) for b in self.graph.basis]

    def inverse(self) -> "LinearRelation":
        return LinearRelation.from_pairs(self.field, self.dim, [(y, x) for x, y in self.pairs()])

    def domain(self) -> Subspace:
        return Subspace.span(self.field, self.dim, [x for x, _ in self.pairs()])

    def image(self) -> Subspace:
        return Subspace.span(self.field, self.dim, [y for _, y in self.pairs()])

    def kernel(self) -> Subspace:
        """``{x : (x, 0) in R}``."""
        fld, n = self.field, self.dim
        z = (fld.zero,) * n
        axis = Subspace.span(fld, 2 * n, [tuple(fld.one if i == j else fld.zero for i in range(n)) + z
                                          for j in range(n)])
        return Subspace.span(fld, n, [v[:n] for v in intersect(self.graph, axis).basis])

    def indeterminacy(self) -> Subspace:
        """``{y : (0, y) in R}``."""
        return self.inverse().kernel()

    def __matmul__(self, other: "LinearRelation") -> "LinearRelation":
        return compose(self, other)


def compose(R: LinearRelation, S: LinearRelation) -> LinearRelation:
    """``R o S = {(x, z) : (x, y) in S and (y, z) in R for some y}``."""
    if R.dim != S.dim or R.field != S.field:
        raise DimMismatch(f"relations of dims {R.dim} and {S.dim}")
    fld, n = R.field, R.dim
    sp, rp = S.pairs(), R.pairs()
    if not sp or not rp:
        return LinearRelation(n, Subspace.zero(fld, 2 * n))
    cols = [y for _, y in sp] + [tuple(fld.neg(c) for c in y) for y, _ in rp]
    ns = nullspace(Matrix.from_columns(fld, cols, n))
    out = []
    for coeffs in ns.basis:
        alpha, beta = coeffs[:len(sp)], coeffs[len(sp):]
        x = [fld.zero] * n
        z = [fld.zero] * n
        for c, (xi, _) in zip(alpha, sp):
            if c != 0:
                x = [fld.add(p, fld.mul(c, q)) for p, q in zip(x, xi)]
        for c, (_, zj) in zip(beta, rp):
            if c != 0:
                z = [fld.add(p, fld.mul(c, q)) for p, q in zip(z, zj)]
        out.append(tuple(x) + tuple(z))
    return LinearRelation(n, Subspace.span(fld, 2 * n, out))


def power(R: LinearRelation, k: int) -> LinearRelation:
    out = LinearRelation.identity(R.field, R.dim)
    for _ in range(k):
        out = compose(R, out)
    return out


@dataclass(frozen=True)
class G2Rep:
    """Two parallel maps ``a, b : V -> W``."""

    a: Matrix
    b: Matrix

    def __post_init__(self):
        if (self.a.rows, self.a.cols) != (self.b.rows, self.b.cols):
            raise DimMismatch("a and b must have the same shape")

    @property
    def field(self) -> FieldSpec:
        return self.a.field

    @property
    def V_dim(self) -> int:
        return self.a.cols

    @property
    def W_dim(self) -> int:
        return self.a.rows

    def swapped(self) -> "G2Rep":
        return G2Rep(self.b, self.a)

    def dual(self) -> "G2Rep":
        return G2Rep(self.a.T, self.b.T)

    def base_change(self, P: Matrix, Qm: Matrix) -> "G2Rep":
        return G2Rep(P @ self.a @ Qm, P @ self.b @ Qm)


def from_g2(rep: G2Rep) -> LinearRelation:
    """``{(x, y) : a x = b y}``."""
    fld, n = rep.field, rep.V_dim
    neg_b = rep.b.scale(fld.neg(fld.one))
    ker = nullspace(rep.a.hstack(neg_b))
    return LinearRelation(n, ker)


# ---------------------------------------------------------------- regular part

def _solve(cols: Sequence[tuple], v: Sequence, fld: FieldSpec) -> tuple:
    """Unique coefficients expressing ``v`` in the independent vectors ``cols``."""
    n = len(v)
    aug = [[c[i] for c in cols] + [v[i]] for i in range(n)]
    red, piv = _rref(aug, fld, len(cols) + 1)
    if len(cols) in piv:
        raise ValueError("vector not in span")
    x = [fld.zero] * len(cols)
    for row, c in zip(red, piv):
        x[c] = row[-1]
    return tuple(x)


@dataclass(frozen=True)
class RegularPart:
    T: Matrix
    dims: dict


def regular_part(R: LinearRelation) -> RegularPart:
    """Automorphism induced by ``R`` on ``(D & I) / ((N+ + N-) & D & I)``.

    ``D``, ``I`` are the stable domains/images of powers of ``R``; ``N+``, ``N-``
    the stable kernels/indeterminacies. Iteration is capped at ``dim + 1``.
    """
    fld, n = R.field, R.dim
    Rk = R
    D, I, Np, Nm = R.domain(), R.image(), R.kernel(), R.indeterminacy()
    stable = False
    for _ in range(n + 1):
        Rk = compose(R, Rk)
        D2, I2, Np2, Nm2 = Rk.domain(), Rk.image(), Rk.kernel(), Rk.indeterminacy()
        if (D2, I2, Np2, Nm2) == (D, I, Np, Nm):
            stable = True
            break
        D, I, Np, Nm = D2, I2, Np2, Nm2
    if not stable:
        raise InducedNotAutomorphism("chains did not stabilize within dim + 1 steps")
    U = intersect(D, I)
    Kn = intersect(Np + Nm, U)
    W = complement_in(Kn, U)
    m = W.dim
    basis = list(Kn.basis) + list(W.basis)
    k0 = Kn.dim

    def quot(u):
        return _solve(basis, u, fld)[k0:]

    UU = Subspace.span(fld, 2 * n, [tuple(u) + (fld.zero,) * n for u in U.basis]
                       + [(fld.zero,) * n + tuple(u) for u in U.basis])
    G = intersect(R.graph, UU)
    img = Subspace.span(fld, 2 * m, [quot(g[:n]) + quot(g[n:]) for g in G.basis])
    if img.dim != m or tuple(img.pivots) != tuple(range(m)):
        raise InducedNotAutomorphism("induced relation on the regular part is not a bijection")
    T = Matrix.from_columns(fld, [row[m:] for row in img.basis], m)
    if rank(T) != m:
        raise InducedNotAutomorphism("induced map on the regular part is singular")
    dims = {"domain": D.dim, "image": I.dim, "kernel": Np.dim, "indeterminacy": Nm.dim,
            "core": U.dim, "degenerate": Kn.dim, "regular": m}
    return RegularPart(T, dims)


# ---------------------------------------------------------------- Jordan cells

@dataclass(frozen=True)
class JordanCell:
    """Cell of size ``k`` for the monic irreducible ``q`` (eigenvalue ``-q(0)`` when linear)."""

    q: Poly
    k: int
    verified: bool = True

    @property
    def eigenvalue(self):
        if self.q.degree == 1:
            return self.q.field.neg(self.q.coeffs[0])
        return None

    def key(self) -> tuple:
        return (self.q.sort_key(), self.k)

    def to_json(self) -> dict:
        out = {"q": self.q.to_json(), "k": self.k}
        lam = self.eigenvalue
        if lam is not None:
            out["lambda"] = self.q.field.to_json(lam)
        if not self.verified:
            out["unverified"] = True
        return out


def cells_from_factors(factors: Sequence[Poly]) -> list[JordanCell]:
    cells = []
    for d in factors:
        if d.degree <= 0:
            continue
        for fac in factor(d):
            cells.append(JordanCell(fac.poly, fac.multiplicity, fac.verified))
    return sorted(cells, key=JordanCell.key)


def char_matrix(T: Matrix) -> PolyMatrix:
    """``t I - T`` over k[t]."""
    fld = T.field
    rows = []
    for i in range(T.rows):
        rows.append([Poly.from_coeffs(fld, [fld.neg(T[i, j]), 1 if i == j else 0]) for j in range(T.cols)])
    return PolyMatrix.from_rows(fld, rows, T.cols)


def jordan_cells_of(T: Matrix) -> list[JordanCell]:
    if T.rows != T.cols:
        raise SingularT("T must be square")
    if rank(T) != T.rows:
        raise SingularT("T is not invertible")
    if T.rows == 0:
        return []
    return cells_from_factors(snf(char_matrix(T)).invariant_factors)


# ---------------------------------------------------------------- Kronecker decomposition

@dataclass(frozen=True)
class Summand:
    """One indecomposable: ``rho+``/``rho-`` with index ``r``, or a Jordan cell."""

    type: str                 # "rho+", "rho-", "jordan", "jordan-zero", "jordan-infinity"
    r: int = 0
    cell: JordanCell | None = None

    @property
    def dims(self) -> tuple:
        if self.type == "rho+":
            return (self.r, self.r + 1)
        if self.type == "rho-":
            return (self.r + 1, self.r)
        d = self.cell.q.degree * self.cell.k if self.cell else self.r
        return (d, d)

    def key(self) -> tuple:
        order = ["rho+", "rho-", "jordan", "jordan-zero", "jordan-infinity"]
        return (order.index(self.type), self.r, self.cell.key() if self.cell else ())

    def to_json(self) -> dict:
        if self.type == "jordan":
            out = {"type": "jordan", "q": self.cell.q.to_json(), "k": self.cell.k}
            if not self.cell.verified:
                out["unverified"] = True
            return out
        if self.type in ("jordan-zero", "jordan-infinity"):
            return {"type": self.type, "k": self.r}
        return {"type": self.type, "r": self.r}


def _push(m: Matrix, S: Subspace) -> Subspace:
    return Subspace.span(m.field, m.rows, [m.apply(v) for v in S.basis])


def _pull(m: Matrix, S: Subspace) -> Subspace:
    """Preimage ``{v : m v in S}``."""
    fld = m.field
    ann = nullspace(Matrix.from_rows(fld, S.basis, m.rows)).basis if S.dim else \
        Subspace.full(fld, m.rows).basis
    if not ann:
        return Subspace.full(fld, m.cols)
    return nullspace(Matrix.from_rows(fld, ann, m.rows) @ m)


def _chain_dims(rep: G2Rep, upto: int) -> list[int]:
    """``c_n = dim {(v_0..v_n) : a v_i = b v_{i+1}}`` for ``n = 0..upto``.

    Recursion on the space ``E_n`` of possible last entries: a chain extends iff
    ``a v_n`` lies in ``im b``, and then by a coset of ``ker b``.
    """
    fld, V, W = rep.field, rep.V_dim, rep.W_dim
    if W == 0:
        return [(n + 1) * V for n in range(upto + 1)]
    ker_b = nullspace(rep.b).dim
    pre_im_b = _pull(rep.a, _push(rep.b, Subspace.full(fld, V)))
    E = Subspace.full(fld, V)
    out = [V]
    for _ in range(upto):
        out.append(out[-1] - E.dim + intersect(E, pre_im_b).dim + ker_b)
        E = _pull(rep.b, _push(rep.a, E))
    return out


def _minimal_indices(rep: G2Rep) -> tuple[int, dict]:
    """(number of rho- summands, {r >= 1: number of rho+(r)})."""
    N = rep.V_dim + rep.W_dim + 2
    c = _chain_dims(rep, N + 1)
    dc = [c[i + 1] - c[i] for i in range(len(c) - 1)]
    n_minus = dc[-1]
    plus = {}
    for n in range(len(dc) - 1):
        cnt = dc[n + 1] - dc[n]
        if cnt:
            plus[n + 1] = cnt
    return n_minus, plus


def _pencil_zero_blocks(a: Matrix, b: Matrix) -> list[int]:
    """Sizes of the eigenvalue-zero Jordan blocks of the pencil ``t b - a``."""
    fld = a.field
    rows = [[Poly.from_coeffs(fld, [fld.neg(a[i, j]), b[i, j]]) for j in range(a.cols)] for i in range(a.rows)]
    if not rows or a.cols == 0:
        return []
    res = snf(PolyMatrix.from_rows(fld, rows, a.cols))
    sizes = []
    for d in res.invariant_factors:
        k = 0
        while k < len(d.coeffs) and d.coeffs[k] == 0:
            k += 1
        if k:
            sizes.append(k)
    return sizes


def pencil_cells(rep: G2Rep) -> list[JordanCell]:
    """Nonzero finite Jordan cells from the Smith form of ``t b - a`` (cross-check route)."""
    fld = rep.field
    if rep.V_dim == 0 or rep.W_dim == 0:
        return []
    rows = [[Poly.from_coeffs(fld, [fld.neg(rep.a[i, j]), rep.b[i, j]]) for j in range(rep.V_dim)]
            for i in range(rep.W_dim)]
    res = snf(PolyMatrix.from_rows(fld, rows, rep.V_dim))
    stripped = []
    for d in res.invariant_factors:
        k = 0
        while d.coeffs[k] == 0:
            k += 1
        stripped.append(Poly.from_coeffs(fld, d.coeffs[k:]))
    return cells_from_factors(stripped)


def decompose_g2(rep: G2Rep) -> list[Summand]:
    """Indecomposable summands of a G2 representation, with dimension bookkeeping."""
    fld = rep.field
    n_minus, plus = _minimal_indices(rep)
    n_plus, minus = _minimal_indices(rep.dual())
    out: list[Summand] = []
    for r, cnt in plus.items():
        out += [Summand("rho+", r)] * cnt
    if n_plus - sum(plus.values()) < 0 or n_minus - sum(minus.values()) < 0:
        raise BookkeepingFailure("negative count of rho(0) summands")
    out += [Summand("rho+", 0)] * (n_plus - sum(plus.values()))
    for r, cnt in minus.items():
        out += [Summand("rho-", r)] * cnt
    out += [Summand("rho-", 0)] * (n_minus - sum(minus.values()))
    v_rho = sum(s.dims[0] for s in out)
    w_rho = sum(s.dims[1] for s in out)
    d_jordan = rep.V_dim - v_rho
    if d_jordan < 0 or rep.W_dim - w_rho != d_jordan:
        raise BookkeepingFailure(f"dims {rep.V_dim, rep.W_dim} vs minimal-index part {v_rho, w_rho}")
    regular = jordan_cells_of(regular_part(from_g2(rep)).T)
    zeros = _pencil_zero_blocks(rep.a, rep.b)
    infs = _pencil_zero_blocks(rep.b, rep.a)
    out += [Summand("jordan", 0, c) for c in regular]
    out += [Summand("jordan-zero", k) for k in zeros]
    out += [Summand("jordan-infinity", k) for k in infs]
    if sum(c.q.degree * c.k for c in regular) + sum(zeros) + sum(infs) != d_jordan:
        raise BookkeepingFailure("Jordan part does not fill the regular dimension")
    return sorted(out, key=Summand.key)


# ---------------------------------------------------------------- canonical blocks

def companion(q: Poly) -> Matrix:
    """Companion matrix of a monic polynomial (characteristic and minimal polynomial ``q``)."""
    fld = q.field
    n = q.degree
    rows = [[fld.zero] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = fld.one
    for i in range(n):
        rows[i][n - 1] = fld.neg(q.coeffs[i])
    return Matrix.from_rows(fld, rows, n)


def block_diag(blocks: Sequence[Matrix], fld: FieldSpec) -> Matrix:
    R = sum(b.rows for b in blocks)
    C = sum(b.cols for b in blocks)
    rows = [[fld.zero] * C for _ in range(R)]
    i0 = j0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                rows[i0 + i][j0 + j] = b[i, j]
        i0 += b.rows
        j0 += b.cols
    return Matrix(fld, R, C, tuple(tuple(r) for r in rows))


def summand_rep(s: Summand, fld: FieldSpec) -> G2Rep:
    """Canonical matrices of an indecomposable."""
    one, zero = fld.one, fld.zero
    if s.type == "rho+":
        r = s.r
        a = Matrix.from_rows(fld, [[one if i == j else zero for j in range(r)] for i in range(r + 1)], r)
        b = Matrix.from_rows(fld, [[one if i == j + 1 else zero for j in range(r)] for i in range(r + 1)], r)
        return G2Rep(a, b)
    if s.type == "rho-":
        r = s.r
        a = Matrix.from_rows(fld, [[one if i == j else zero for j in range(r + 1)] for i in range(r)], r + 1)
        b = Matrix.from_rows(fld, [[one if j == i + 1 else zero for j in range(r + 1)] for i in range(r)], r + 1)
        return G2Rep(a, b)
    if s.type == "jordan":
        M = companion(s.cell.q ** s.cell.k)
        return G2Rep(M, Matrix.identity(fld, M.rows))
    k = s.r
    N = Matrix.from_rows(fld, [[one if j == i + 1 else zero for j in range(k)] for i in range(k)], k)
    eye = Matrix.identity(fld, k)
    return G2Rep(N, eye) if s.type == "jordan-zero" else G2Rep(eye, N)


def direct_sum(reps: Sequence[G2Rep], fld: FieldSpec) -> G2Rep:
    return G2Rep(block_diag([r.a for r in reps], fld), block_diag([r.b for r in reps], fld))


def jordan_matrix(lam, k: int, fld: FieldSpec) -> Matrix:
    """``T(lam, k)``: ``lam`` on the diagonal, ones on the superdiagonal."""
    return Matrix.from_rows(fld, [[lam if i == j else (1 if j == i + 1 else 0) for j in range(k)]
                                  for i in range(k)], k)
