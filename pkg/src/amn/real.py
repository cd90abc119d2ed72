"""Invariants of a real-valued PL map: level images, box measures, point and subspace configurations."""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .complex import PLMap, SimplicialComplex, HomologyBasis, boundary_columns, homology, reduce_columns
from .configuration import Configuration
from .errors import DegreeOutOfRange, NegativeMeasure
from .linalg import Q, FieldSpec, Subspace, complement_in, intersect, subspace_sum


@dataclass(frozen=True)
class Box:
    """Half-open box ``(a1, a] x [b, b1)``."""

    a1: Fraction
    a: Fraction
    b: Fraction
    b1: Fraction

    def __post_init__(self):
        if not (self.a1 < self.a and self.b < self.b1):
            raise ValueError(f"degenerate box ({self.a1}, {self.a}] x [{self.b}, {self.b1})")

    @classmethod
    def of(cls, a1, a, b, b1) -> "Box":
        return cls(Fraction(a1), Fraction(a), Fraction(b), Fraction(b1))

    def contains(self, x, y) -> bool:
        return self.a1 < x <= self.a and self.b <= y < self.b1


def _filtered_cycles(K: SimplicialComplex, r: int, fld: FieldSpec, keys: Sequence) -> list[tuple]:
    """Cycle basis adapted to the filtration of r-simplices by ``keys``.

    Returns ``(key, chain)`` pairs such that cycles with key <= k span the
    cycles supported on simplices with key <= k.
    """
    order = sorted(range(len(keys)), key=lambda j: (keys[j], j))
    red = reduce_columns(boundary_columns(K, r, fld, order), fld)
    out = []
    for p in red.zero_columns():
        chain = {order[q]: x for q, x in red.V[p].items()}
        out.append((keys[order[p]], chain))
    return out


@dataclass
class LevelImages:
    """Sublevel and superlevel images in ``H_r(X)`` at every candidate value."""

    basis: HomologyBasis
    candidates: list
    sub: list            # sub[i] = image of H_r(f <= c_i)
    sup: list            # sup[i] = image of H_r(f >= c_i)
    _f_cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    @property
    def betti(self) -> int:
        return self.basis.betti

    def zero(self) -> Subspace:
        return Subspace.zero(self.field, self.betti)

    def sub_index(self, a) -> int | None:
        i = bisect_right(self.candidates, a) - 1
        return i if i >= 0 else None

    def sup_index(self, b) -> int | None:
        k = bisect_left(self.candidates, b)
        return k if k < len(self.candidates) else None

    def sublevel(self, a) -> Subspace:
        i = self.sub_index(a)
        return self.zero() if i is None else self.sub[i]

    def superlevel(self, b) -> Subspace:
        k = self.sup_index(b)
        return self.zero() if k is None else self.sup[k]

    def F(self, a, b) -> Subspace:
        i, k = self.sub_index(a), self.sup_index(b)
        if i is None or k is None:
            return self.zero()
        return self._F_idx(i, k)

    def _F_idx(self, i: int, k: int) -> Subspace:
        # the images are nested, so equal dimension means equal subspace
        i, k = self._canon[0][i], self._canon[1][k]
        key = (i, k)
        if key not in self._f_cache:
            A, B = self.sub[i], self.sup[k]
            if A.dim == 0 or B.dim == self.betti:
                val = A
            elif B.dim == 0 or A.dim == self.betti:
                val = B
            else:
                val = intersect(A, B)
            self._f_cache[key] = val
        return self._f_cache[key]

    @cached_property
    def _canon(self) -> tuple:
        out = []
        for chain in (self.sub, self.sup):
            first: dict = {}
            out.append([first.setdefault(s.dim, j) for j, s in enumerate(chain)])
        return tuple(out)

    def _dim_idx(self, i: int, k: int) -> int:
        if i < 0 or k >= len(self.candidates):
            return 0
        return self._F_idx(i, k).dim

    def F_dim(self, a, b) -> int:
        return self.F(a, b).dim

    def box_measure(self, box: Box) -> int:
        """Inclusion-exclusion of F over the box, cross-checked against the quotient dimension."""
        ie = (self.F_dim(box.a, box.b) + self.F_dim(box.a1, box.b1)
              - self.F_dim(box.a1, box.b) - self.F_dim(box.a, box.b1))
        quot = self.F_dim(box.a, box.b) - subspace_sum(self.F(box.a1, box.b), self.F(box.a, box.b1)).dim
        if ie != quot or ie < 0:
            raise NegativeMeasure(f"box measure inconsistency: inclusion-exclusion {ie}, quotient {quot}")
        return ie

    def neighbours(self, a, b) -> tuple:
        """(a', b') with a' the previous and b' the next candidate value."""
        c = self.candidates
        i = bisect_left(c, a)
        a1 = c[i - 1] if i > 0 else a - 1
        k = bisect_right(c, b)
        b1 = c[k] if k < len(c) else b + 1
        return a1, b1

    def point_box(self, a, b) -> Box:
        a1, b1 = self.neighbours(a, b)
        return Box(Fraction(a1), Fraction(a), Fraction(b), Fraction(b1))

    def delta(self, a, b) -> int:
        return self.box_measure(self.point_box(a, b))

    def grid(self) -> dict:
        """Nonzero ``delta`` over all candidate pairs, from the index grid of F dimensions."""
        out = {}
        c = self.candidates
        for i in range(len(c)):
            for k in range(len(c)):
                m = (self._dim_idx(i, k) - self._dim_idx(i - 1, k) - self._dim_idx(i, k + 1)
                     + self._dim_idx(i - 1, k + 1))
                if m < 0:
                    raise NegativeMeasure(f"negative multiplicity {m} at ({c[i]}, {c[k]})")
                if m:
                    out[(c[i], c[k])] = self.delta(c[i], c[k])
        return out

    def configuration(self) -> Configuration:
        return Configuration.build("plane", self.grid().items())

    def hat_delta(self, a, b, inner: str = "any") -> Subspace:
        a1, b1 = self.neighbours(a, b)
        den = subspace_sum(self.F(a1, b), self.F(a, b1))
        return complement_in(den, self.F(a, b), inner)

    def hat_hat(self) -> list[tuple[tuple, Subspace]]:
        return [((a, b), self.hat_delta(a, b, inner="orthogonal")) for a, b in sorted(self.grid())]


def level_images(X: SimplicialComplex, f: PLMap, r: int, fld: FieldSpec = Q) -> LevelImages:
    """Images of sublevel and superlevel homology, using full subcomplexes on vertex sets.

    On a PL map the full subcomplex on ``{f <= a}`` is a deformation retract of
    the sublevel set, so these images agree with those of the exact sublevels.
    """
    if r < 0 or r > max(X.dim, 0):
        raise DegreeOutOfRange(f"degree {r} outside 0..{X.dim}")
    basis = homology(X, r, fld)
    cands = f.candidates()
    simp = X.of_dim(r)
    n = basis.betti
    if n == 0:
        z = Subspace.zero(fld, 0)
        return LevelImages(basis, cands, [z] * len(cands), [z] * len(cands))
    up = _filtered_cycles(X, r, fld, [max(f[v] for v in s) for s in simp])
    down = _filtered_cycles(X, r, fld, [-min(f[v] for v in s) for s in simp])
    sub = _cumulative(basis, up, cands, lambda key, c: key <= c)
    sup = _cumulative(basis, down, list(reversed(cands)), lambda key, c: key <= -c)
    return LevelImages(basis, cands, sub, list(reversed(sup)))


def _cumulative(basis: HomologyBasis, cycles: list, thresholds: list, admit) -> list[Subspace]:
    fld, n = basis.field, basis.betti
    out = []
    vecs: list = []
    cur = Subspace.zero(fld, n)
    pos = 0
    for c in thresholds:
        added = False
        while pos < len(cycles) and admit(cycles[pos][0], c):
            v = basis.coordinatize(cycles[pos][1])
            if any(x != 0 for x in v) and not cur.contains(v):
                vecs.append(v)
                added = True
            pos += 1
        if added:
            cur = Subspace.span(fld, n, vecs)
            vecs = list(cur.basis)
        out.append(cur)
    return out


# ---------------------------------------------------------------- functional API

def sublevel_image(X, f, r, a, fld: FieldSpec = Q) -> Subspace:
    return level_images(X, f, r, fld).sublevel(Fraction(a))


def superlevel_image(X, f, r, b, fld: FieldSpec = Q) -> Subspace:
    return level_images(X, f, r, fld).superlevel(Fraction(b))


def F_dim(X, f, r, a, b, fld: FieldSpec = Q) -> int:
    return level_images(X, f, r, fld).F_dim(Fraction(a), Fraction(b))


def box_measure(X, f, r, box: Box, fld: FieldSpec = Q) -> int:
    return level_images(X, f, r, fld).box_measure(box)


def delta_config(X, f, r, fld: FieldSpec = Q) -> Configuration:
    return level_images(X, f, r, fld).configuration()


def hat_delta(X, f, r, a, b, fld: FieldSpec = Q) -> Subspace:
    return level_images(X, f, r, fld).hat_delta(Fraction(a), Fraction(b))


@dataclass(frozen=True)
class SubspaceConfiguration:
    ambient_dim: int
    points: tuple  # ((a, b), Subspace) pairs

    def is_direct_sum(self) -> bool:
        """True when the subspaces are independent and span the ambient space."""
        total = sum(s.dim for _, s in self.points)
        vecs = [v for _, s in self.points for v in s.basis]
        if not self.points:
            return self.ambient_dim == 0
        fld = self.points[0][1].field
        return total == self.ambient_dim and Subspace.span(fld, self.ambient_dim, vecs).dim == total

    def pairwise_orthogonal(self) -> bool:
        for i, (_, u) in enumerate(self.points):
            for _, v in self.points[i + 1:]:
                if any(sum(x * y for x, y in zip(p, q)) != 0 for p in u.basis for q in v.basis):
                    return False
        return True


def hat_hat_config(X, f, r, fld: FieldSpec = Q) -> SubspaceConfiguration:
    li = level_images(X, f, r, fld)
    return SubspaceConfiguration(li.betti, tuple(li.hat_hat()))


def epsilon_f(f: PLMap):
    """Minimal gap between distinct vertex values (``None`` for fewer than two values)."""
    c = f.candidates()
    gaps = [y - x for x, y in zip(c, c[1:])]
    return min(gaps) if gaps else None
