"""Brute-force oracle for the bundled corpus.

Everything expected is recomputed here without the package's linear algebra,
reductions or Smith form: homology dimensions come from python-flint ranks, sublevel
sets are exact (for each pair of levels the complex is subdivided along both
before subcomplexes are taken), and Novikov data comes from sympy's invariant factors over k[t].
Only the input triangulations are taken from ``amn.corpus``.

    python3 scripts/make_corpus.py            # rewrite src/amn/data/corpus.json
    python3 scripts/make_corpus.py --check    # compare against the committed file
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from flint import fmpz_mat, nmod_mat, nmod_poly
from sympy import GF, QQ, Poly, factor_list, symbols
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from amn import corpus

t = symbols("t")
OUT = Path(__file__).resolve().parents[1] / "src" / "amn" / "data" / "corpus.json"
FIELDS = {"q": 0, "f2": 2}
ANGLE_DELTA_K = 3
ANGLE_DELTA_MAX_VERTICES = 12


def fr(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def domain(p):
    return QQ if p == 0 else GF(p)


# ---------------------------------------------------------------- complexes

def closure(gens) -> set:
    out = set()
    for s in gens:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            out.update(combinations(s, k))
    return out


def subdivide_at(simplices: set, values: list, levels: list) -> tuple[set, list]:
    """Stellar edge splits until no edge crosses a level in its interior."""
    simplices, values = set(simplices), list(values)
    while True:
        hit = None
        for s in simplices:
            if len(s) != 2:
                continue
            u, v = s
            lo, hi = sorted((values[u], values[v]))
            inside = [c for c in levels if lo < c < hi]
            if inside:
                hit = (u, v, min(inside))
                break
        if hit is None:
            return simplices, values
        u, v, c = hit
        w = len(values)
        lam = (c - values[u]) / (values[v] - values[u])
        values.append(values[u] + lam * (values[v] - values[u]))
        new = set()
        for s in simplices:
            if u in s and v in s:
                new.add(tuple(sorted(set(s) - {v} | {w})))
                new.add(tuple(sorted(set(s) - {u} | {w})))
            else:
                new.add(s)
        simplices = closure(new)


def by_dim(simplices) -> dict:
    out: dict = {}
    for s in simplices:
        out.setdefault(len(s) - 1, []).append(s)
    for k in out:
        out[k].sort()
    return out


def boundary_rows(cells: dict, r: int) -> list:
    """Dense matrix of the boundary C_r -> C_{r-1}, as a list of rows."""
    rows_idx = {s: i for i, s in enumerate(cells.get(r - 1, []))}
    cols = cells.get(r, [])
    M = [[0] * len(cols) for _ in rows_idx]
    for j, s in enumerate(cols):
        for i in range(len(s)):
            M[rows_idx[s[:i] + s[i + 1:]]][j] = (-1) ** i
    return M


def _flint(rows: list, ncols: int, p: int):
    flat = [int(x) for row in rows for x in row]
    if p:
        return nmod_mat(len(rows), ncols, [x % p for x in flat], p)
    return fmpz_mat(len(rows), ncols, flat)


def rank_of(rows: list, ncols: int, p: int) -> int:
    """Exact rank; over Q the integer matrix is ranked fraction-free."""
    if not rows or ncols == 0:
        return 0
    return _flint(rows, ncols, p).rank()


def nullspace_rows(M: list, ncols: int, p: int) -> list:
    """Integer (or mod p) basis of the kernel of ``M``, one vector per row."""
    if ncols == 0:
        return []
    if not M:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    X, nullity = _flint(M, ncols, p).nullspace()
    return [[int(X[i, j]) for i in range(ncols)] for j in range(nullity)]


def betti(simplices, p: int) -> list:
    cells = by_dim(simplices)
    top = max(cells)
    out = []
    for r in range(top + 1):
        n = len(cells[r])
        rk_r = rank_of(boundary_rows(cells, r), n, p) if r > 0 else 0
        rk_up = rank_of(boundary_rows(cells, r + 1), len(cells.get(r + 1, [])), p) if r < top else 0
        out.append(n - rk_r - rk_up)
    return out


# ---------------------------------------------------------------- real oracle

def _pair_dim(simplices, values, r: int, p: int, a, b) -> int:
    """dim of im H_r(X_a) cap im H_r(X^b) inside H_r(X), on X cut exactly at the levels a and b."""
    sub, vals = subdivide_at(simplices, values, sorted({a, b}))
    cells = by_dim(sub)
    Cr = cells.get(r, [])
    n = len(Cr)
    if n == 0:
        return 0
    up = boundary_rows(cells, r + 1)
    B = [list(col) for col in zip(*up)] if up and up[0] else []
    dr = boundary_rows(cells, r) if r > 0 else []

    def cycles(keep) -> list:
        idx = [j for j, s in enumerate(Cr) if keep(s)]
        if not idx:
            return []
        if r == 0:
            ns = [[1 if i == j else 0 for j in range(len(idx))] for i in range(len(idx))]
        else:
            ns = nullspace_rows([[row[j] for j in idx] for row in dr], len(idx), p)
        out = []
        for z in ns:
            full = [0] * n
            for j, x in zip(idx, z):
                full[j] = x
            out.append(full)
        return out

    Za = cycles(lambda s: max(vals[v] for v in s) <= a)
    Zb = cycles(lambda s: min(vals[v] for v in s) >= b)
    dimB = rank_of(B, n, p)
    return rank_of(Za + B, n, p) + rank_of(Zb + B, n, p) - rank_of(Za + Zb + B, n, p) - dimB


def real_delta(simplices, values, r: int, p: int) -> dict:
    """delta_r from the full grid of F(a, b) = dim(I_a cap I^b) by inclusion-exclusion."""
    vals = [Fraction(v) for v in values]
    cands = sorted(set(vals))
    simp = closure(simplices)
    grid = {(a, b): _pair_dim(simp, vals, r, p, a, b) for a in cands for b in cands}

    def F(i, k):
        if i < 0 or k >= len(cands):
            return 0
        return grid[(cands[i], cands[k])]

    out = {}
    for i, a in enumerate(cands):
        for k, b in enumerate(cands):
            m = F(i, k) - F(i - 1, k) - F(i, k + 1) + F(i - 1, k + 1)
            assert m >= 0, "negative multiplicity"
            if m:
                out[(a, b)] = m
    return out


# ---------------------------------------------------------------- angle oracle

def windings(m) -> dict:
    w = {}
    for (u, v), x in m.windings:
        w[(u, v)] = x
        w[(v, u)] = -x
    return w


def omega(m, w, u, v):
    return w.get((u, v), 0)


def laurent_matrix(simplices, m, r: int, p: int):
    """Twisted boundary over k[t] (columns shifted by a power of t to clear negative exponents)."""
    cells = by_dim(simplices)
    rows_idx = {s: i for i, s in enumerate(cells[r - 1])}
    cols = cells[r]
    w = windings(m)
    R = domain(p)[t]
    entries = [[R(0)] * len(cols) for _ in rows_idx]
    for j, s in enumerate(cols):
        terms = []
        for i in range(len(s)):
            e = omega(m, w, s[0], s[1]) if i == 0 else 0
            terms.append((rows_idx[s[:i] + s[i + 1:]], (-1) ** i, e))
        low = min(e for _, _, e in terms)
        for i, sgn, e in terms:
            entries[i][j] = R(sgn * t ** (e - low))
    return DomainMatrix(entries, (len(rows_idx), len(cols)), R), R


def monic_coeffs(expr, p: int) -> list:
    P = Poly(expr, t, domain=domain(p))
    P = P.monic()
    cs = list(reversed(P.all_coeffs()))
    if p:
        return [int(c) % p for c in cs]
    return [fr(Fraction(int(c.p), int(c.q))) for c in cs]


def factor_monic(expr, p: int) -> list:
    """Irreducible factors with multiplicity; flint mod p (sympy's sort trips over nmod there)."""
    if not p:
        return [(q, k) for q, k in factor_list(expr, t)[1]]
    cs = [int(c) % p for c in reversed(Poly(expr, t, modulus=p).all_coeffs())]
    return [(sum(int(c) * t ** i for i, c in enumerate(q.coeffs())), k) for q, k in nmod_poly(cs, p).factor()[1]]


def novikov(simplices, m, p: int) -> dict:
    cells = by_dim(simplices)
    top = max(cells)
    ranks, factors = {}, {}
    for r in range(1, top + 1):
        D, R = laurent_matrix(simplices, m, r, p)
        inv = [f for f in invariant_factors(D) if not R.is_zero(f)]
        ranks[r] = len(inv)
        factors[r] = inv
    out = {"novikov_betti": [], "invariant_factors": [], "jordan": []}
    for r in range(top + 1):
        n = len(cells[r])
        nb = n - ranks.get(r, 0) - ranks.get(r + 1, 0)
        tors, cells_r = [], []
        for f in factors.get(r + 1, []):
            expr = R_expr(f, p)
            P = Poly(expr, t, domain=domain(p))
            while P.degree() > 0 and P.eval(0) == 0:
                P = Poly(P.as_expr() / t, t, domain=domain(p))
            if P.degree() <= 0:
                continue
            tors.append(monic_coeffs(P.as_expr(), p))
            for q, k in factor_monic(P.as_expr(), p):
                cells_r.append([monic_coeffs(q, p), k])
        cells_r.sort(key=lambda c: (len(c[0]), [str(x) for x in c[0]], c[1]))
        out["novikov_betti"].append(nb)
        out["invariant_factors"].append(tors)
        out["jordan"].append(cells_r)
    return out


def R_expr(f, p):
    R = domain(p)[t]
    return R.to_sympy(f)


def cover(X, m, K: int):
    """Full piece of the cyclic cover on levels -K..K, with lifted values."""
    w = windings(m)
    labels = [(v, n) for n in range(-K, K + 1) for v in range(X.vertex_count)]
    idx = {lab: i for i, lab in enumerate(labels)}
    gens = [(i,) for i in range(len(labels))]
    for level in X.simplices[1:]:
        for s in level:
            for n in range(-K - 3, K + 4):
                verts = [(v, n + omega(m, w, s[0], v)) for v in s]
                if all(lab in idx for lab in verts):
                    gens.append(tuple(sorted(idx[lab] for lab in verts)))
    vals = [m.values[v] + n for v, n in labels]
    return closure(gens), vals


def angle_delta(X, m, r: int, p: int, K: int) -> list:
    simp, vals = cover(X, m, K)
    d = real_delta(simp, vals, r, p)
    pts = []
    for (a, b), mult in d.items():
        if 0 <= a < 1:
            pts.append([fr(a), fr(b), mult])
    return sorted(pts, key=lambda x: (Fraction(x[0]), Fraction(x[1])))


# ---------------------------------------------------------------- driver

def all_simplices(K) -> list:
    return [s for level in K.simplices for s in level]


def maximal(K) -> list:
    faces = set()
    for s in all_simplices(K):
        for i in range(len(s)):
            if len(s) > 1:
                faces.add(s[:i] + s[i + 1:])
    return [list(s) for s in all_simplices(K) if s not in faces]


def build(verbose: bool = True) -> dict:
    data = {"real": {}, "angle": {}}
    for name, (K, f) in corpus.real_builders().items():
        t0 = time.time()
        simp = closure(all_simplices(K))
        entry = {"complex": {"vertices": K.vertex_count, "simplices": maximal(K)},
                 "values": [fr(v) for v in f.values], "expected": {}}
        for fname, p in FIELDS.items():
            b = betti(simp, p)
            deltas = []
            for r in range(len(b)):
                d = real_delta(simp, list(f.values), r, p)
                deltas.append(sorted([[fr(a), fr(c), mult] for (a, c), mult in d.items()],
                                     key=lambda x: (Fraction(x[0]), Fraction(x[1]))))
            entry["expected"][fname] = {"betti": b, "delta": deltas}
        data["real"][name] = entry
        if verbose:
            print(f"real {name}: {time.time() - t0:.1f}s", file=sys.stderr)
    for name, (K, m) in corpus.angle_builders().items():
        t0 = time.time()
        simp = closure(all_simplices(K))
        entry = {"complex": {"vertices": K.vertex_count, "simplices": maximal(K)},
                 "anglemap": {"values": [fr(v) for v in m.values],
                              "windings": [{"edge": list(e), "w": x} for e, x in m.windings]},
                 "expected": {}}
        for fname, p in FIELDS.items():
            exp = {"betti": betti(simp, p), **novikov(simp, m, p)}
            if K.vertex_count <= ANGLE_DELTA_MAX_VERTICES:
                d = [angle_delta(K, m, r, p, ANGLE_DELTA_K) for r in range(len(exp["betti"]))]
                again = [angle_delta(K, m, r, p, ANGLE_DELTA_K + 1) for r in range(len(exp["betti"]))]
                assert d == again, f"{name}: oracle window not stable at K={ANGLE_DELTA_K}"
                exp["delta"] = d
            entry["expected"][fname] = exp
        data["angle"][name] = entry
        if verbose:
            print(f"angle {name}: {time.time() - t0:.1f}s", file=sys.stderr)
    return data


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare with the committed corpus instead of writing")
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args(argv)
    text = json.dumps(build(), indent=1, sort_keys=True) + "\n"
    if args.check:
        same = args.out.read_text() == text
        print("corpus up to date" if same else "corpus differs from oracle output")
        return 0 if same else 1
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(text)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
