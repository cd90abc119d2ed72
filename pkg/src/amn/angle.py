"""Angle-valued PL maps: cyclic cover, Novikov homology, monodromy, cut representation, torus configurations.

Values are in turns (period 1). An angle map stores, per edge ``(u, v)``, an
integer winding ``w(u, v)`` such that the lift along the edge runs from
``values[u]`` to ``values[v] + w(u, v)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .complex import (PLMap, SimplicialComplex, _from_closed, full_subcomplex, homology, induced_map,
                      split_edge)
from .configuration import Configuration, bottleneck_distance_sq
from .errors import (ClassMismatch, CocycleViolation, DegenerateClass, DegreeOutOfRange, MissingWinding,
                     NotStabilized, ValidationError)
from .linalg import Q, FieldSpec, Matrix, rank
from .poly import Poly, PolyMatrix, snf
from .real import level_images
from .relations import G2Rep, JordanCell, cells_from_factors, from_g2, jordan_cells_of, regular_part

# rational bracket of pi used for exact comparisons against 2*pi*D
PI_LO = Fraction(314159265358979, 10 ** 14)
PI_HI = Fraction(314159265358980, 10 ** 14)


@dataclass(frozen=True)
class AngleMap:
    values: tuple     # Fraction per vertex, in turns
    windings: tuple   # sorted ((u, v), w) with u < v, nonzero w only

    @classmethod
    def build(cls, values: Sequence, windings: Mapping | Sequence = ()) -> "AngleMap":
        if isinstance(windings, Mapping):
            windings = windings.items()
        acc: dict = {}
        for (u, v), w in windings:
            u, v, w = int(u), int(v), int(w)
            if u == v:
                raise CocycleViolation(f"winding on degenerate edge ({u}, {v})")
            key, val = ((u, v), w) if u < v else ((v, u), -w)
            if key in acc and acc[key] != val:
                raise CocycleViolation(f"windings on edge {key} are not antisymmetric")
            acc[key] = val
        return cls(tuple(Fraction(x) for x in values), tuple(sorted((k, w) for k, w in acc.items() if w)))

    @cached_property
    def _w(self) -> dict:
        return dict(self.windings)

    def w(self, u: int, v: int) -> int:
        if u == v:
            return 0
        d = self._w
        return d.get((u, v), 0) if u < v else -d.get((v, u), 0)

    def lift_step(self, u: int, v: int) -> Fraction:
        """Change of the lifted value along the edge from ``u`` to ``v``."""
        return self.values[v] + self.w(u, v) - self.values[u]

    def normalized(self, X: SimplicialComplex) -> "AngleMap":
        """Same map with every value in ``[0, 1)``; windings on the edges of ``X`` adjusted."""
        s = [math.floor(x) for x in self.values]
        vals = [x - k for x, k in zip(self.values, s)]
        return AngleMap.build(vals, {(u, v): self.w(u, v) + s[v] - s[u] for (u, v) in X.edges()})

    def to_json(self) -> dict:
        from .configuration import fmt_rational
        return {"values": [fmt_rational(x) for x in self.values],
                "windings": [{"edge": [u, v], "w": w} for (u, v), w in self.windings]}


def validate_angle_map(X: SimplicialComplex, m: AngleMap, explicit: Sequence | None = None) -> None:
    """Check the winding cocycle on ``X``.

    ``explicit``, when given, lists the edges that carry an explicit winding;
    every edge of ``X`` must then appear (``MissingWinding`` otherwise).
    """
    if len(m.values) != X.vertex_count:
        raise ValidationError(f"{len(m.values)} values for {X.vertex_count} vertices")
    edges = set(X.edges())
    for (u, v), _ in m.windings:
        if (u, v) not in edges:
            raise ValidationError(f"winding given on non-edge ({u}, {v})")
    if explicit is not None:
        have = {tuple(sorted(e)) for e in explicit}
        for e in edges:
            if e not in have:
                raise MissingWinding(f"edge {list(e)} has no winding")
    for (u, v, x) in X.of_dim(2):
        if m.w(u, v) + m.w(v, x) + m.w(x, u) != 0:
            raise CocycleViolation(f"winding sum around triangle {(u, v, x)} is not zero")


def is_degenerate(X: SimplicialComplex, m: AngleMap) -> bool:
    """True when the winding cocycle is a coboundary (zero class)."""
    edges = X.edges()
    if not edges:
        return True
    rows = [[0] * X.vertex_count + [m.w(u, v)] for (u, v) in edges]
    for i, (u, v) in enumerate(edges):
        rows[i][u] = -1
        rows[i][v] = 1
    full = Matrix.from_rows(Q, rows)
    coboundary = full.submatrix(range(len(edges)), range(X.vertex_count))
    return rank(full) == rank(coboundary)


def require_nonzero_class(X: SimplicialComplex, m: AngleMap) -> None:
    if is_degenerate(X, m):
        raise DegenerateClass("the cohomology class of the angle map is zero")


# ---------------------------------------------------------------- lifts

@dataclass(frozen=True)
class Lift:
    """A finite piece of the cyclic cover: vertices are ``(v, n)`` pairs."""

    base: SimplicialComplex
    complex: SimplicialComplex
    labels: tuple      # index -> (v, n)
    values: PLMap      # lifted values

    def index_of(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def tau_map(self, shift: int = 1) -> dict:
        """Vertex map of the deck translation restricted to where it lands in the window."""
        idx = self.index_of()
        return {i: idx[(v, n + shift)] for i, (v, n) in enumerate(self.labels) if (v, n + shift) in idx}


def _lift(X: SimplicialComplex, m: AngleMap, levels: range, keep) -> Lift:
    """All lifted simplices whose vertices ``(v, n)`` satisfy ``keep``."""
    labels = [(v, n) for n in levels for v in range(X.vertex_count) if keep(v, n)]
    idx = {lab: i for i, lab in enumerate(labels)}
    span = max((abs(w) for _, w in m.windings), default=0)
    simplices = set((i,) for i in range(len(labels)))
    for level in X.simplices[1:]:
        for s in level:
            offs = [m.w(s[0], v) for v in s]
            for n in range(levels.start - span, levels.stop + span):
                verts = [(v, n + o) for v, o in zip(s, offs)]
                if all(lab in idx for lab in verts):
                    simplices.add(tuple(sorted(idx[lab] for lab in verts)))
    vals = PLMap(tuple(m.values[v] + n for v, n in labels))
    return Lift(X, _from_closed(len(labels), simplices), tuple(labels), vals)


def unroll(X: SimplicialComplex, m: AngleMap, K: int) -> Lift:
    """Full subcomplex of the cyclic cover on deck levels ``-K..K`` (values normalized first)."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    m = m.normalized(X)
    return _lift(X, m, range(-K, K + 1), lambda v, n: True)


# ---------------------------------------------------------------- Novikov homology

def laurent_boundary_entries(X: SimplicialComplex, m: AngleMap, r: int) -> list[dict]:
    """Columns of the twisted boundary: ``{row: (sign, exponent)}`` with t the deck generator."""
    if not 1 <= r <= X.dim:
        raise DegreeOutOfRange(f"boundary degree {r} outside 1..{X.dim}")
    idx = X.index(r - 1)
    cols = []
    for s in X.of_dim(r):
        col = {}
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            exp = m.w(s[0], s[1]) if i == 0 else 0
            col[idx[face]] = (1 if i % 2 == 0 else -1, exp)
        cols.append(col)
    return cols


def laurent_boundary(X: SimplicialComplex, m: AngleMap, r: int, fld: FieldSpec = Q) -> PolyMatrix:
    """Twisted boundary over k[t]; each column multiplied by the unit ``t^-min`` exponent."""
    cols = laurent_boundary_entries(X, m, r)
    zero = Poly(fld, ())
    rows = [[zero] * len(cols) for _ in range(X.count(r - 1))]
    for j, col in enumerate(cols):
        shift = min(e for _, e in col.values())
        for i, (sgn, e) in col.items():
            rows[i][j] = Poly.monomial(fld, e - shift, sgn)
    return PolyMatrix(fld, X.count(r - 1), len(cols), tuple(tuple(r_) for r_ in rows))


def _strip_t(d: Poly) -> Poly:
    k = 0
    while d.coeffs[k] == 0:
        k += 1
    return Poly.from_coeffs(d.field, d.coeffs[k:])


@dataclass(frozen=True)
class NovikovDegree:
    r: int
    free_rank: int
    torsion: tuple          # monic Poly invariant factors, t-stripped, nonunit
    jordan_cells: tuple     # JordanCell

    @property
    def verified(self) -> bool:
        return all(c.verified for c in self.jordan_cells)

    def count_eigen_one(self) -> int:
        return sum(1 for c in self.jordan_cells if c.q.degree == 1 and c.eigenvalue == 1)

    def to_json(self) -> dict:
        return {"degree": self.r, "novikov_betti": self.free_rank,
                "invariant_factors": [d.to_json() for d in self.torsion],
                "jordan_cells": [c.to_json() for c in self.jordan_cells],
                "factorization_verified": self.verified}


@dataclass(frozen=True)
class NovikovSummary:
    field: FieldSpec
    degrees: tuple

    @property
    def betti(self) -> list[int]:
        return [d.free_rank for d in self.degrees]

    def cells(self, r: int) -> tuple:
        return self.degrees[r].jordan_cells if 0 <= r < len(self.degrees) else ()

    def euler(self) -> int:
        return sum((-1) ** d.r * d.free_rank for d in self.degrees)


def novikov_summary(X: SimplicialComplex, m: AngleMap, fld: FieldSpec = Q) -> NovikovSummary:
    require_nonzero_class(X, m)
    n = X.dim
    ranks = {}
    factors = {}
    for r in range(1, n + 1):
        res = snf(laurent_boundary(X, m, r, fld))
        ranks[r] = res.rank
        factors[r] = res.invariant_factors
    out = []
    for r in range(n + 1):
        free = X.count(r) - ranks.get(r, 0) - ranks.get(r + 1, 0)
        tors = [_strip_t(d) for d in factors.get(r + 1, [])]
        tors = tuple(d for d in tors if d.degree > 0)
        out.append(NovikovDegree(r, free, tors, tuple(cells_from_factors(tors))))
    return NovikovSummary(fld, tuple(out))


def betti_relation_check(X: SimplicialComplex, m: AngleMap, fld: FieldSpec = Q) -> list[dict]:
    """Per degree: ``beta_r`` against ``beta^N_r + #J_r(1) + #J_{r-1}(1)``."""
    require_nonzero_class(X, m)
    summ = novikov_summary(X, m, fld)
    rows = []
    for r in range(X.dim + 1):
        b = homology(X, r, fld).betti
        j_r = summ.degrees[r].count_eigen_one()
        j_prev = summ.degrees[r - 1].count_eigen_one() if r > 0 else 0
        rhs = summ.degrees[r].free_rank + j_r + j_prev
        rows.append({"degree": r, "betti": b, "novikov_betti": summ.degrees[r].free_rank,
                     "cells_at_one": j_r, "cells_at_one_below": j_prev, "rhs": rhs, "ok": b == rhs})
    return rows


# ---------------------------------------------------------------- cut at theta

def _crossings(lo: Fraction, hi: Fraction, theta: Fraction) -> list[Fraction]:
    """Values ``theta + k`` strictly between ``lo`` and ``hi``."""
    if lo > hi:
        lo, hi = hi, lo
    k = math.floor(lo - theta) + 1
    out = []
    while theta + k < hi:
        if theta + k > lo:
            out.append(theta + k)
        k += 1
    return out


def cut_angle(X: SimplicialComplex, m: AngleMap, theta) -> tuple[SimplicialComplex, AngleMap]:
    """Subdivide so that the preimage of ``theta + Z`` is a full subcomplex.

    Repeatedly splits the edge with the most strict level crossings at its
    lowest crossing; values of the result are normalized to ``[0, 1)``.
    """
    theta = Fraction(theta) % 1
    m = m.normalized(X)
    vals = list(m.values)
    wind: dict = {}
    for (u, v), w in m.windings:
        wind[(u, v)] = w
    simplices = set(X.all_simplices())

    def w(u, v):
        return wind.get((u, v), 0) if u < v else -wind.get((v, u), 0)

    def set_w(u, v, val):
        if u > v:
            u, v, val = v, u, -val
        if val:
            wind[(u, v)] = val
        else:
            wind.pop((u, v), None)

    n = X.vertex_count
    for _ in range(100_000):
        best = None
        for s in simplices:
            if len(s) != 2:
                continue
            u, v = s
            cr = _crossings(vals[u], vals[v] + w(u, v), theta)
            if cr and (best is None or (len(cr), (-u, -v)) > (len(best[2]), (-best[0], -best[1]))):
                best = (u, v, cr)
        if best is None:
            break
        u, v, cr = best
        c = cr[0]
        k = c - theta                       # integer offset of the new vertex relative to u
        nbrs = {x for s in simplices if u in s and v in s for x in s} - {u, v}
        new = n
        n += 1
        vals.append(theta)
        w_uv = w(u, v)
        split_edge(simplices, u, v, new)
        set_w(u, new, int(k))
        set_w(new, v, w_uv - int(k))
        for z in nbrs:
            set_w(new, z, -int(k) + w(u, z))
    else:
        raise RuntimeError("level cut did not terminate")
    K = _from_closed(n, simplices)
    wind = {e: x for e, x in wind.items() if e in K.index(1)}
    return K, AngleMap.build(vals, wind)


@dataclass(frozen=True)
class CutData:
    theta: Fraction
    base: SimplicialComplex      # subdivided X
    map: AngleMap
    level: SimplicialComplex     # X_theta
    level_labels: tuple          # level vertex -> base vertex
    band: Lift                   # the cut, as a piece of the cover with lift values in [theta, theta+1]

    def representation(self, r: int, fld: FieldSpec = Q) -> G2Rep:
        """Maps ``a`` (left end) and ``b`` (right end) from ``H_r(X_theta)`` to ``H_r`` of the cut."""
        idx = self.band.index_of()
        left = [idx[(v, 0)] for v in self.level_labels]
        right = [idx[(v, 1)] for v in self.level_labels]
        h_level = homology(self.level, r, fld, strict=False)
        h_band = homology(self.band.complex, r, fld, strict=False)
        return G2Rep(induced_map(h_level, h_band, left), induced_map(h_level, h_band, right))


def cut(X: SimplicialComplex, m: AngleMap, theta) -> CutData:
    require_nonzero_class(X, m)
    theta = Fraction(theta) % 1
    Xc, mc = cut_angle(X, m, theta)
    level, labels = full_subcomplex(Xc, lambda v: mc.values[v] == theta)
    hi = theta + 1

    def keep(v, n):
        val = mc.values[v] + n
        return theta <= val <= hi

    band = _lift(Xc, mc, range(0, 2), keep)
    return CutData(theta, Xc, mc, level, labels, band)


def default_thetas(m: AngleMap, count: int = 3) -> list[Fraction]:
    """Midpoints between adjacent (cyclically ordered) vertex values."""
    vals = sorted(set(x % 1 for x in m.values))
    mids = []
    for i, x in enumerate(vals):
        y = vals[i + 1] if i + 1 < len(vals) else vals[0] + 1
        mids.append(((x + y) / 2) % 1)
    mids = sorted(set(mids))
    if len(mids) <= count:
        return mids
    step = len(mids) / count
    return [mids[int(i * step)] for i in range(count)]


def jordan_via_relation(X: SimplicialComplex, m: AngleMap, theta, r: int, fld: FieldSpec = Q) -> list[JordanCell]:
    """Jordan cells of the regular part of the relation induced by the cut at ``theta``.

    The relation ``{(x, y) : a x = b y}`` sends a class at the left end to the
    class one deck step up, i.e. it is the inverse of the deck action, so the
    swapped representation is used to report cells of ``t`` itself.
    """
    rep = cut(X, m, theta).representation(r, fld)
    return jordan_cells_of(regular_part(from_g2(rep.swapped())).T)


# ---------------------------------------------------------------- torus configurations

def _window_config(X, m, r, K, fld) -> tuple[Configuration, Configuration]:
    lift = unroll(X, m, K)
    li = level_images(lift.complex, lift.values, r, fld)
    pts0, pts1 = [], []
    for (a, b), d in li.grid().items():
        if 0 <= a < 2:
            (pts0 if a < 1 else pts1).append(((a, b), d))
    return Configuration.build("plane", pts0), Configuration.build("plane", pts1)


@dataclass(frozen=True)
class AngleConfiguration:
    config: Configuration   # torus space
    window: int             # K at which stabilization was detected


def delta_angle(X: SimplicialComplex, m: AngleMap, r: int, K_max: int = 8, fld: FieldSpec = Q) -> AngleConfiguration:
    """Configuration on the torus from truncated covers of growing size."""
    require_nonzero_class(X, m)
    if r < 0 or r > max(X.dim, 0):
        raise DegreeOutOfRange(f"degree {r} outside 0..{X.dim}")
    prev = None
    history = []
    for K in range(2, K_max + 1):
        w0, w1 = _window_config(X, m, r, K, fld)
        history.append((K, w0))
        equivariant = w1 == w0.shifted(1)
        if prev is not None and prev == w0 and equivariant:
            return AngleConfiguration(Configuration.build("torus", w0.points), K)
        prev = w0
    raise NotStabilized(f"configuration in degree {r} did not stabilize up to K = {K_max}",
                        last_windows=history[-2:])


def angle_distance_sup(X: SimplicialComplex, m1: AngleMap, m2: AngleMap) -> Fraction:
    """Sup over X of the circle distance between the two maps (same class required)."""
    a, b = m1.normalized(X), m2.normalized(X)
    h = _coboundary_potential(X, a, b)
    d = [a.values[v] - b.values[v] - h[v] for v in range(X.vertex_count)]

    def circ(x):
        return abs(x - round(x))

    best = Fraction(0)
    for level in X.simplices:
        for s in level:
            lo = min(d[v] for v in s)
            hi = max(d[v] for v in s)
            if any(lo <= k + Fraction(1, 2) <= hi for k in range(math.floor(lo) - 1, math.ceil(hi) + 1)):
                return Fraction(1, 2)
            best = max(best, circ(lo), circ(hi))
    return best


def _coboundary_potential(X: SimplicialComplex, a: AngleMap, b: AngleMap) -> list[int]:
    """Integers h with ``w_a(u, v) - w_b(u, v) = h(v) - h(u)``; ``ClassMismatch`` if none exist."""
    h: dict = {}
    adj: dict = {v: [] for v in range(X.vertex_count)}
    for u, v in X.edges():
        adj[u].append(v)
        adj[v].append(u)
    for root in range(X.vertex_count):
        if root in h:
            continue
        h[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                want = h[u] + a.w(u, v) - b.w(u, v)
                if v not in h:
                    h[v] = want
                    stack.append(v)
                elif h[v] != want:
                    raise ClassMismatch("the two angle maps define different cohomology classes")
    return [h[v] for v in range(X.vertex_count)]


def angle_stability_check(X: SimplicialComplex, m1: AngleMap, m2: AngleMap, r: int, K_max: int = 8,
                          fld: FieldSpec = Q) -> dict:
    D = angle_distance_sup(X, m1, m2)
    c1 = delta_angle(X, m1, r, K_max, fld).config
    c2 = delta_angle(X, m2, r, K_max, fld).config
    dsq = bottleneck_distance_sq(c1, c2)
    bound_lo = 4 * PI_LO ** 2 * D ** 2
    return {"degree": r, "distance_sq": dsq, "sup_distance": D, "ok": dsq <= bound_lo,
            "ratio": (math.sqrt(dsq) / float(D)) if D else (0.0 if dsq == 0 else math.inf)}
