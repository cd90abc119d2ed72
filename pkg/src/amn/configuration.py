"""Point configurations in the plane or on the torus, bottleneck metric, polynomial form."""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import CardinalityMismatch, SpaceMismatch

SPACES = ("plane", "torus")


def parse_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a string such as '1/3' or '0.25'")
    return Fraction(str(x).strip()) if isinstance(x, str) else Fraction(x)


def canonical_torus(a: Fraction, b: Fraction) -> tuple:
    """Representative of <a, b> under (a, b) ~ (a + n, b + n) with first coordinate in [0, 1)."""
    n = math.floor(a)
    return (a - n, b - n)


@dataclass(frozen=True)
class Configuration:
    space: str
    points: tuple  # sorted ((a, b), multiplicity) pairs, multiplicities >= 1

    def __post_init__(self):
        if self.space not in SPACES:
            raise ValueError(f"unknown space {self.space!r}")

    @classmethod
    def build(cls, space: str, items) -> "Configuration":
        """From a mapping or iterable of ``((a, b), mult)``; merges repeats and drops zeros."""
        if isinstance(items, Mapping):
            items = items.items()
        acc: dict = {}
        for (a, b), m in items:
            if m < 0:
                raise ValueError("negative multiplicity")
            pt = (parse_rational(a), parse_rational(b))
            if space == "torus":
                pt = canonical_torus(*pt)
            acc[pt] = acc.get(pt, 0) + int(m)
        return cls(space, tuple(sorted((p, m) for p, m in acc.items() if m > 0)))

    @classmethod
    def empty(cls, space: str = "plane") -> "Configuration":
        return cls(space, ())

    @property
    def cardinality(self) -> int:
        return sum(m for _, m in self.points)

    def support(self) -> list:
        return [p for p, _ in self.points]

    def as_dict(self) -> dict:
        return dict(self.points)

    def multiset(self) -> list:
        return [p for p, m in self.points for _ in range(m)]

    def shifted(self, c) -> "Configuration":
        c = parse_rational(c)
        return Configuration.build(self.space, [((a + c, b + c), m) for (a, b), m in self.points])

    def swapped(self) -> "Configuration":
        """Configuration with the two coordinates exchanged."""
        return Configuration.build(self.space, [((b, a), m) for (a, b), m in self.points])

    def max_multiplicity(self) -> int:
        return max((m for _, m in self.points), default=0)

    def to_json(self, degree=None, field=None) -> dict:
        out = {"space": self.space,
               "points": [{"x": fmt_rational(a), "y": fmt_rational(b), "mult": m} for (a, b), m in self.points]}
        if degree is not None:
            out["degree"] = degree
        if field is not None:
            out["field"] = field
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Configuration":
        space = data.get("space", "plane")
        return cls.build(space, [((p["x"], p["y"]), int(p.get("mult", 1))) for p in data.get("points", [])])


def fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------- metric

def ground_distance_sq(p, q, space: str) -> Fraction:
    da, db = p[0] - q[0], p[1] - q[1]
    if space == "plane":
        return da * da + db * db
    mid = (da + db) / 2
    best = None
    for n in (math.floor(mid), math.ceil(mid)):
        d = (da - n) ** 2 + (db - n) ** 2
        if best is None or d < best:
            best = d
    return best


def _perfect_matching(n: int, ok: np.ndarray) -> bool:
    if n == 0:
        return True
    match = maximum_bipartite_matching(csr_matrix(ok.astype(np.int8)), perm_type="column")
    return bool(np.all(match >= 0))


def bottleneck_distance_sq(c1: Configuration, c2: Configuration) -> Fraction:
    """Squared bottleneck distance: min over bijections of the max squared ground distance."""
    if c1.space != c2.space:
        raise SpaceMismatch(f"{c1.space} vs {c2.space}")
    if c1.cardinality != c2.cardinality:
        raise CardinalityMismatch(f"cardinalities {c1.cardinality} and {c2.cardinality} differ")
    xs, ys = c1.multiset(), c2.multiset()
    n = len(xs)
    if n == 0:
        return Fraction(0)
    dist = [[ground_distance_sq(x, y, c1.space) for y in ys] for x in xs]
    cands = sorted({d for row in dist for d in row})
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        ok = np.array([[d <= cands[mid] for d in row] for row in dist])
        if _perfect_matching(n, ok):
            hi = mid
        else:
            lo = mid + 1
    return cands[lo]


def sqrt_decimal(q: Fraction, digits: int = 12) -> str:
    """Decimal rendering of sqrt(q), rounded half-even to ``digits`` places."""
    with localcontext() as ctx:
        ctx.prec = digits + 40
        v = (Decimal(q.numerator) / Decimal(q.denominator)).sqrt()
        return format(v.quantize(Decimal(1).scaleb(-digits)), "f")


# ---------------------------------------------------------------- polynomial

def monic_polynomial(c: Configuration) -> list[tuple[Fraction, Fraction]]:
    """Coefficients (ascending, as Gaussian rationals ``(re, im)``) of prod (z - (a + i b))^m."""
    if c.space != "plane":
        raise SpaceMismatch("the polynomial form is defined for plane configurations")
    coeffs = [(Fraction(1), Fraction(0))]
    for (a, b), m in c.points:
        for _ in range(m):
            # multiply by (z - w), w = a + i b
            new = [(Fraction(0), Fraction(0))] * (len(coeffs) + 1)
            for k, (re, im) in enumerate(coeffs):
                nre, nim = new[k + 1]
                new[k + 1] = (nre + re, nim + im)
                pre, pim = new[k]
                new[k] = (pre - (re * a - im * b), pim - (re * b + im * a))
            coeffs = new
    return coeffs


# ---------------------------------------------------------------- plotting

def to_svg(configs: Iterable[tuple[str, Configuration]], size: int = 360) -> str:
    """Scatter plot of one or more configurations; marker area grows with multiplicity."""
    configs = list(configs)
    pts = [p for _, c in configs for p in c.support()]
    coords = [float(x) for p in pts for x in p] or [0.0, 1.0]
    lo, hi = min(coords), max(coords)
    if hi - lo < 1e-9:
        lo, hi = lo - 1, hi + 1
    pad = 0.08 * (hi - lo)
    lo, hi = lo - pad, hi + pad
    margin = 30

    def sx(x):
        return margin + (float(x) - lo) / (hi - lo) * (size - 2 * margin)

    def sy(y):
        return size - margin - (float(y) - lo) / (hi - lo) * (size - 2 * margin)

    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>',
           f'<line x1="{sx(lo):.2f}" y1="{sy(lo):.2f}" x2="{sx(hi):.2f}" y2="{sy(hi):.2f}" stroke="#999" '
           f'stroke-dasharray="4 3"/>',
           f'<rect x="{margin}" y="{margin}" width="{size - 2 * margin}" height="{size - 2 * margin}" '
           f'fill="none" stroke="#333"/>']
    for k, (label, c) in enumerate(configs):
        col = colors[k % len(colors)]
        for (a, b), m in c.points:
            r = 3 + 2.5 * math.sqrt(m)
            out.append(f'<circle cx="{sx(a):.2f}" cy="{sy(b):.2f}" r="{r:.2f}" fill="{col}" fill-opacity="0.7">'
                       f'<title>{label} ({fmt_rational(a)}, {fmt_rational(b)}) x{m}</title></circle>')
        out.append(f'<text x="{margin + 4}" y="{margin + 14 + 14 * k}" font-size="12" fill="{col}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
