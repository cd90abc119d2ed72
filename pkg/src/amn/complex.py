"""Finite simplicial complexes, boundary maps, homology bases and level cuts."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .errors import BadVertexIndex, DegreeOutOfRange, NotASubcomplex, NotFaceClosed
from .linalg import Q, FieldSpec, Matrix

MAX_SIMPLICES = 50_000


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertices are ``0..vertex_count-1``; ``simplices[d]`` lists sorted d-simplices."""

    vertex_count: int
    simplices: tuple

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def count(self, r: int) -> int:
        return len(self.simplices[r]) if 0 <= r < len(self.simplices) else 0

    def of_dim(self, r: int) -> tuple:
        return self.simplices[r] if 0 <= r < len(self.simplices) else ()

    @cached_property
    def _index(self) -> list[dict]:
        return [{s: i for i, s in enumerate(level)} for level in self.simplices]

    def index(self, r: int) -> dict:
        return self._index[r] if 0 <= r < len(self.simplices) else {}

    def __contains__(self, s) -> bool:
        s = tuple(s)
        return s in self.index(len(s) - 1)

    def all_simplices(self):
        for level in self.simplices:
            yield from level

    @property
    def size(self) -> int:
        return sum(len(x) for x in self.simplices)

    def edges(self) -> tuple:
        return self.of_dim(1)

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count,
                "simplices": [list(s) for level in self.simplices[1:] for s in level]}


def validate(vertex_count: int, simplices: Iterable[Sequence[int]], auto_close: bool = True) -> SimplicialComplex:
    """Build a complex from raw simplex lists.

    Tuples are sorted and deduplicated; every vertex ``0..vertex_count-1`` is a
    0-simplex. Missing faces are added unless ``auto_close`` is false, in which
    case ``NotFaceClosed`` is raised.
    """
    if vertex_count < 0:
        raise BadVertexIndex("negative vertex count")
    given = set()
    for s in simplices:
        t = tuple(sorted(int(v) for v in s))
        if not t:
            continue
        if len(set(t)) != len(t):
            raise BadVertexIndex(f"repeated vertex in simplex {list(s)}")
        for v in t:
            if not 0 <= v < vertex_count:
                raise BadVertexIndex(f"vertex {v} out of range for {vertex_count} vertices")
        given.add(t)
    given.update((v,) for v in range(vertex_count))
    closed = set(given)
    for s in given:
        for k in range(1, len(s)):
            for face in combinations(s, k):
                if face not in closed:
                    if not auto_close:
                        raise NotFaceClosed(f"face {list(face)} of {list(s)} is missing")
                    closed.add(face)
    if len(closed) > MAX_SIMPLICES:
        raise ValueError(f"complex has {len(closed)} simplices, cap is {MAX_SIMPLICES}")
    return _from_closed(vertex_count, closed)


def _from_closed(vertex_count: int, closed: Iterable[tuple]) -> SimplicialComplex:
    by_dim: dict[int, list] = {}
    for s in closed:
        by_dim.setdefault(len(s) - 1, []).append(s)
    top = max(by_dim) if by_dim else -1
    return SimplicialComplex(vertex_count, tuple(tuple(sorted(by_dim.get(d, []))) for d in range(top + 1)))


@dataclass(frozen=True)
class PLMap:
    """Rational vertex values of a map that is affine on every simplex."""

    values: tuple

    @classmethod
    def of(cls, values: Iterable) -> "PLMap":
        return cls(tuple(Fraction(v) for v in values))

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]

    def __len__(self):
        return len(self.values)

    def candidates(self) -> list[Fraction]:
        return sorted(set(self.values))


# ---------------------------------------------------------------- chains

def _axpy(dst: dict, src: dict, c, fld: FieldSpec) -> None:
    """dst += c * src (sparse, in place)."""
    p = fld.p
    for i, x in src.items():
        y = dst.get(i, 0) + c * x
        if p:
            y %= p
        if y == 0:
            dst.pop(i, None)
        else:
            dst[i] = y


def boundary_column(K: SimplicialComplex, s: tuple, fld: FieldSpec) -> dict:
    idx = K.index(len(s) - 2)
    col = {}
    for i in range(len(s)):
        face = s[:i] + s[i + 1:]
        col[idx[face]] = fld(1 if i % 2 == 0 else -1)
    return col


def boundary_columns(K: SimplicialComplex, r: int, fld: FieldSpec, order: Sequence[int] | None = None) -> list[dict]:
    if r <= 0:
        return [{} for _ in range(K.count(r))]
    simp = K.of_dim(r)
    if order is None:
        order = range(len(simp))
    return [boundary_column(K, simp[j], fld) for j in order]


def boundary_matrix(K: SimplicialComplex, r: int, fld: FieldSpec = Q) -> Matrix:
    """Boundary ``C_r -> C_{r-1}`` with ascending-order orientation."""
    if not 1 <= r <= K.dim:
        raise DegreeOutOfRange(f"boundary degree {r} outside 1..{K.dim}")
    rows = [[fld.zero] * K.count(r) for _ in range(K.count(r - 1))]
    for j, col in enumerate(boundary_columns(K, r, fld)):
        for i, x in col.items():
            rows[i][j] = x
    return Matrix(fld, K.count(r - 1), K.count(r), tuple(tuple(r_) for r_ in rows))


@dataclass
class Reduction:
    """Column reduction ``R = D V`` with distinct lowest nonzero rows in ``R``."""

    R: list
    V: list
    low_to_col: dict

    def zero_columns(self) -> list[int]:
        return [j for j, c in enumerate(self.R) if not c]


def reduce_columns(columns: Sequence[dict], fld: FieldSpec) -> Reduction:
    R: list = []
    V: list = []
    low_to_col: dict = {}
    one = fld.one
    for j, col in enumerate(columns):
        col = dict(col)
        v = {j: one}
        while col:
            low = max(col)
            k = low_to_col.get(low)
            if k is None:
                low_to_col[low] = j
                break
            c = fld.div(col[low], R[k][low])
            _axpy(col, R[k], fld.neg(c), fld)
            _axpy(v, V[k], fld.neg(c), fld)
        R.append(col)
        V.append(v)
    return Reduction(R, V, low_to_col)


class NotACycle(ValueError):
    pass


@dataclass
class HomologyBasis:
    """Basis of ``H_r(K; field)`` with a coordinatization of r-cycles."""

    complex: SimplicialComplex
    r: int
    field: FieldSpec
    representatives: list          # sparse chains (dict simplex index -> coefficient)
    _table: dict = dc_field(repr=False, default_factory=dict)  # max index -> (chain, class position or None)

    @property
    def betti(self) -> int:
        return len(self.representatives)

    def representatives_matrix(self) -> Matrix:
        n = self.complex.count(self.r)
        return Matrix.from_columns(self.field, [dense(c, n, self.field) for c in self.representatives], n)

    def coordinatize(self, chain) -> tuple:
        """Coordinates in H_r of an r-cycle (sparse dict or dense vector)."""
        fld = self.field
        if not isinstance(chain, dict):
            chain = {i: fld(x) for i, x in enumerate(chain) if x != 0}
        z = dict(chain)
        coords = [fld.zero] * self.betti
        while z:
            i = max(z)
            entry = self._table.get(i)
            if entry is None:
                raise NotACycle(f"chain is not a cycle of degree {self.r}")
            vec, pos = entry
            c = fld.div(z[i], vec[i])
            _axpy(z, vec, fld.neg(c), fld)
            if pos is not None:
                coords[pos] = fld.add(coords[pos], c)
        return tuple(coords)

    def is_boundary(self, chain) -> bool:
        try:
            return all(x == 0 for x in self.coordinatize(chain))
        except NotACycle:
            return False


def dense(chain: dict, n: int, fld: FieldSpec) -> tuple:
    out = [fld.zero] * n
    for i, x in chain.items():
        out[i] = x
    return tuple(out)


def homology(K: SimplicialComplex, r: int, fld: FieldSpec = Q, strict: bool = True) -> HomologyBasis:
    """Homology basis in degree ``r``; with ``strict=False`` degrees above dim give zero."""
    if r < 0 or (strict and r > max(K.dim, 0)):
        raise DegreeOutOfRange(f"homology degree {r} outside 0..{K.dim}")
    red_r = reduce_columns(boundary_columns(K, r, fld), fld)
    red_up = reduce_columns(boundary_columns(K, r + 1, fld), fld)
    table: dict = {}
    for low, k in red_up.low_to_col.items():
        table[low] = (red_up.R[k], None)
    reps = []
    for j in red_r.zero_columns():
        if j in red_up.low_to_col:
            continue
        table[j] = (red_r.V[j], len(reps))
        reps.append(red_r.V[j])
    return HomologyBasis(K, r, fld, reps, table)


def betti_numbers(K: SimplicialComplex, fld: FieldSpec = Q) -> list[int]:
    if K.dim < 0:
        return []
    return [homology(K, r, fld).betti for r in range(K.dim + 1)]


def euler_characteristic(K: SimplicialComplex, fld: FieldSpec = Q) -> int:
    by_count = sum((-1) ** r * K.count(r) for r in range(K.dim + 1))
    by_betti = sum((-1) ** r * b for r, b in enumerate(betti_numbers(K, fld)))
    if by_count != by_betti:
        raise ArithmeticError(f"Euler characteristic mismatch: {by_count} vs {by_betti}")
    return by_count


# ---------------------------------------------------------------- subcomplexes and maps

def full_subcomplex(K: SimplicialComplex, keep) -> tuple[SimplicialComplex, tuple]:
    """Full subcomplex on the kept vertices; returns it with the new-to-old vertex labels."""
    pred: Callable[[int], bool] = keep if callable(keep) else (lambda v, s=frozenset(keep): v in s)
    kept = tuple(v for v in range(K.vertex_count) if pred(v))
    new = {v: i for i, v in enumerate(kept)}
    levels = []
    for level in K.simplices:
        lv = tuple(tuple(new[v] for v in s) for s in level if all(v in new for v in s))
        if not lv:
            break
        levels.append(lv)
    return SimplicialComplex(len(kept), tuple(levels)), kept


def push_chain(chain: dict, src: SimplicialComplex, dst: SimplicialComplex, r: int,
               vertex_map: Sequence[int], fld: FieldSpec) -> dict:
    """Image of a chain under an injective simplicial vertex map (orientation signs included)."""
    simp = src.of_dim(r)
    idx = dst.index(r)
    out: dict = {}
    for i, x in chain.items():
        img = [vertex_map[v] for v in simp[i]]
        srt = tuple(sorted(img))
        if srt not in idx or len(set(srt)) != len(srt):
            raise NotASubcomplex(f"simplex {simp[i]} maps to {img}, not a simplex of the target")
        inv = sum(1 for a in range(len(img)) for b in range(a + 1, len(img)) if img[a] > img[b])
        c = x if inv % 2 == 0 else fld.neg(x)
        _axpy(out, {idx[srt]: c}, fld.one, fld)
    return out


def induced_map(src: HomologyBasis, dst: HomologyBasis, vertex_map: Sequence[int] | None = None) -> Matrix:
    """Matrix of ``H_r(src) -> H_r(dst)`` in the two bases' coordinates."""
    fld = src.field
    if vertex_map is None:
        vertex_map = range(src.complex.vertex_count)
    cols = []
    for z in src.representatives:
        cols.append(dst.coordinatize(push_chain(z, src.complex, dst.complex, src.r, vertex_map, fld)))
    return Matrix.from_columns(fld, cols, dst.betti)


def induced_homology_map(src: SimplicialComplex, dst: SimplicialComplex, r: int, fld: FieldSpec = Q,
                         vertex_map: Sequence[int] | None = None) -> Matrix:
    if vertex_map is None:
        vertex_map = range(src.vertex_count)
    if any(not 0 <= vertex_map[v] < dst.vertex_count for v in range(src.vertex_count)):
        raise NotASubcomplex("vertex map leaves the target")
    return induced_map(homology(src, r, fld, strict=False), homology(dst, r, fld, strict=False), vertex_map)


# ---------------------------------------------------------------- subdivision

def split_edge(simplices: set, u: int, v: int, w: int) -> None:
    """Stellar subdivision of edge ``{u, v}`` at new vertex ``w`` (in place on a face-closed set)."""
    hit = [s for s in simplices if u in s and v in s]
    for s in hit:
        simplices.discard(s)
    for s in hit:
        for drop in (u, v):
            new = tuple(sorted([x for x in s if x != drop] + [w]))
            for k in range(1, len(new) + 1):
                for face in combinations(new, k):
                    simplices.add(face)


def cut_at_level(K: SimplicialComplex, f: PLMap, c) -> tuple[SimplicialComplex, PLMap]:
    """Subdivide so that ``f^{-1}(c)`` and both half-spaces are full subcomplexes."""
    c = Fraction(c)
    vals = list(f.values)
    simplices = set(K.all_simplices())
    n = K.vertex_count
    for (u, v) in K.edges():
        lo, hi = (u, v) if vals[u] < vals[v] else (v, u)
        if vals[lo] < c < vals[hi]:
            split_edge(simplices, u, v, n)
            vals.append(c)
            n += 1
    return _from_closed(n, simplices), PLMap(tuple(vals))


def cone(K: SimplicialComplex) -> SimplicialComplex:
    apex = K.vertex_count
    simplices = set(K.all_simplices())
    simplices.update(s + (apex,) for s in list(simplices))
    simplices.add((apex,))
    return _from_closed(apex + 1, simplices)
