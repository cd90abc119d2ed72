"""Standard triangulations, mapping tori, and the bundled example corpus."""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from itertools import product
from typing import Sequence

from .angle import AngleMap
from .complex import PLMap, SimplicialComplex, validate


def point() -> SimplicialComplex:
    return validate(1, [])


def edge() -> SimplicialComplex:
    return validate(2, [(0, 1)])


def hollow_triangle() -> SimplicialComplex:
    return validate(3, [(0, 1), (1, 2), (0, 2)])


def full_triangle() -> SimplicialComplex:
    return validate(3, [(0, 1, 2)])


def circle(n: int = 6) -> SimplicialComplex:
    return validate(n, [(i, (i + 1) % n) for i in range(n)])


def octahedron() -> SimplicialComplex:
    """Boundary of the octahedron, a 6-vertex 2-sphere."""
    return validate(6, [tuple(t) for t in product((0, 1), (2, 3), (4, 5))])


def torus7() -> SimplicialComplex:
    """Minimal 7-vertex torus."""
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 2) % 7, (i + 3) % 7))
    return validate(7, tris)


def rp2() -> SimplicialComplex:
    """Minimal 6-vertex real projective plane."""
    return validate(6, [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
                        (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)])


def torus_grid(m: int = 3, n: int = 3) -> SimplicialComplex:
    """Torus from an ``m x n`` grid of squares, each cut along a diagonal (m, n >= 3)."""
    def vid(i, j):
        return (i % m) * n + (j % n)
    tris = []
    for i in range(m):
        for j in range(n):
            tris.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
            tris.append((vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)))
    return validate(m * n, tris)


def torus_projection(m: int = 3, n: int = 3) -> tuple[SimplicialComplex, AngleMap]:
    """Grid torus with the angle map ``i / m`` (projection onto the first circle factor)."""
    K = torus_grid(m, n)
    vals = [Fraction(v // n, m) for v in range(K.vertex_count)]
    wind = {}
    for u, v in K.edges():
        iu, iv = u // n, v // n
        if iu == m - 1 and iv == 0:
            wind[(u, v)] = 1
        elif iv == m - 1 and iu == 0:
            wind[(u, v)] = -1
    return K, AngleMap.build(vals, wind)


def circle_winding(k: int = 1, n: int | None = None) -> tuple[SimplicialComplex, AngleMap]:
    """An ``n``-gon wrapping ``k`` times around the circle at constant speed."""
    n = n or 3 * max(k, 1)
    K = circle(n)
    vals = [Fraction(i * k, n) % 1 for i in range(n)]
    wind = {}
    for i in range(n):
        j = (i + 1) % n
        step = Fraction((i + 1) * k, n)
        wnd = int(step - vals[j] - Fraction(i * k, n) + vals[i])
        if wnd:
            wind[(i, j)] = wnd
    return K, AngleMap.build(vals, wind)


def wedge_mixed() -> tuple[SimplicialComplex, AngleMap]:
    """A winding-one loop wedged with a null-homotopic loop at vertex 0."""
    K = validate(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
    vals = [0, Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(1, 2)]
    return K, AngleMap.build(vals, {(2, 0): 1})


# ---------------------------------------------------------------- mapping tori

def mapping_torus(L: SimplicialComplex, Lp: SimplicialComplex, s: Sequence[int], phi: Sequence[int]
                  ) -> tuple[SimplicialComplex, AngleMap]:
    """Mapping torus of ``phi o s^-1`` for simplicial maps ``s, phi : Lp -> L``.

    Layers: a copy ``A`` of ``L`` at value 0, ``Lp`` at 1/3, a second copy of
    ``L`` at 2/3, joined by the simplicial mapping cylinders of ``s``, ``phi``
    and the identity; edges from the last layer back to ``A`` wind once.
    """
    nL, nP = L.vertex_count, Lp.vertex_count
    A = list(range(nL))
    M = [nL + v for v in range(nP)]
    B = [nL + nP + v for v in range(nL)]
    simplices = []

    def cyl(src: SimplicialComplex, top: list, bottom: list, f: Sequence[int]):
        for level in src.simplices:
            for sig in level:
                for i in range(len(sig)):
                    simplices.append(tuple({top[v] for v in sig[:i + 1]} | {bottom[f[v]] for v in sig[i:]}))

    cyl(Lp, M, A, s)
    cyl(Lp, M, B, phi)
    cyl(L, B, A, list(range(nL)))
    n = 2 * nL + nP
    K = validate(n, simplices)
    vals = [Fraction(0)] * nL + [Fraction(1, 3)] * nP + [Fraction(2, 3)] * nL
    wind = {}
    for u, v in K.edges():
        if u in A and v >= nL + nP:
            wind[(v, u)] = 1
    return K, AngleMap.build(vals, wind)


def circle_from_point() -> tuple[SimplicialComplex, AngleMap]:
    """Mapping torus of the identity of a point: a winding-one triangle."""
    return mapping_torus(point(), point(), [0], [0])


def hexagon_torus() -> tuple[SimplicialComplex, AngleMap]:
    L = circle(6)
    return mapping_torus(L, L, list(range(6)), list(range(6)))


def klein_bottle() -> tuple[SimplicialComplex, AngleMap]:
    """Mapping torus of a reflection of the hexagon."""
    L = circle(6)
    return mapping_torus(L, L, list(range(6)), [(-v) % 6 for v in range(6)])


def _two_loops():
    L = validate(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
    # loop a subdivided into 6 edges (0,1',..,5'), loop b into 3 edges (0,6',7')
    Lp = validate(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 6), (6, 7), (0, 7)])
    s = [0, 1, 2, 2, 0, 0, 3, 4]
    return L, Lp, s


def shear_torus() -> tuple[SimplicialComplex, AngleMap]:
    """Mapping torus of a -> ab, b -> b on a wedge of two loops (unipotent 2x2 Jordan block on H_1)."""
    L, Lp, s = _two_loops()
    phi = [0, 1, 2, 0, 3, 4, 3, 4]
    return mapping_torus(L, Lp, s, phi)


def fibonacci_torus() -> tuple[SimplicialComplex, AngleMap]:
    """Mapping torus of a -> ab, b -> a on a wedge of two loops."""
    L, Lp, s = _two_loops()
    phi = [0, 1, 2, 0, 3, 4, 1, 2]
    return mapping_torus(L, Lp, s, phi)


# ---------------------------------------------------------------- registry

def real_builders() -> dict:
    """Named complexes with a default PL map (vertex index heights where nothing better is given)."""
    def idx(K):
        return PLMap.of(range(K.vertex_count))
    out = {}
    out["point"] = (point(), PLMap.of([0]))
    out["edge"] = (edge(), PLMap.of([0, 1]))
    out["hollow_triangle"] = (hollow_triangle(), PLMap.of([0, 1, 2]))
    out["full_triangle"] = (full_triangle(), PLMap.of([0, 1, 2]))
    out["circle6"] = (circle(6), PLMap.of([0, 2, 1, 3, 1, 2]))
    out["sphere_octahedron"] = (octahedron(), PLMap.of([0, 5, 1, 4, 2, 3]))
    out["torus7"] = (torus7(), idx(torus7()))
    out["torus_grid"] = (torus_grid(), PLMap.of([0, 3, 1, 4, 8, 5, 2, 6, 7]))
    out["rp2"] = (rp2(), idx(rp2()))
    out["klein"] = (klein_bottle()[0], PLMap.of([v % 6 for v in range(18)]))
    return out


def angle_builders() -> dict:
    out = {}
    out["circle_w1"] = circle_from_point()
    out["circle_hex_w1"] = circle_winding(1, 6)
    out["circle_w2"] = circle_winding(2, 6)
    out["wedge_mixed"] = wedge_mixed()
    out["torus_projection"] = torus_projection()
    out["torus_mapping"] = hexagon_torus()
    out["klein"] = klein_bottle()
    out["shear_torus"] = shear_torus()
    out["fibonacci_torus"] = fibonacci_torus()
    return out


def _data_dir():
    return resources.files("amn") / "data"


def load_corpus() -> dict:
    """The committed corpus: ``{"real": {...}, "angle": {...}}`` with inputs and expected outputs."""
    with (_data_dir() / "corpus.json").open() as fh:
        return json.load(fh)
