"""Randomized and corpus-wide checks of the structural identities, with reproducible reports."""
from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable

from . import corpus
from .angle import (PI_LO, AngleMap, angle_distance_sup, betti_relation_check, default_thetas, delta_angle,
                    jordan_via_relation, novikov_summary)
from .complex import PLMap, betti_numbers, homology, validate
from .configuration import Configuration, bottleneck_distance_sq, fmt_rational
from .linalg import FieldSpec, Matrix, rank
from .poly import Poly, is_irreducible
from .real import Box, epsilon_f, hat_hat_config, level_images
from .relations import JordanCell, Summand, decompose_g2, direct_sum, summand_rep

SUITES = ("cardinality", "support", "box-additivity", "stability", "localized-stability", "duality",
          "jordan-equality", "betti-relation", "euler", "hat-hat", "kronecker", "genericity")

GENERICITY_RATE = 0.95


@dataclass
class CaseResult:
    case: str
    ok: bool
    witness: dict
    reproducer: dict | None = None

    def to_json(self) -> dict:
        out = {"case": self.case, "ok": self.ok, "witness": _jsonable(self.witness)}
        if self.reproducer is not None:
            out["reproducer"] = _jsonable(self.reproducer)
        return out


@dataclass
class CheckReport:
    name: str
    cases: list
    notes: dict = dc_field(default_factory=dict)
    ok_override: bool | None = None

    @property
    def n_pass(self) -> int:
        return sum(1 for c in self.cases if c.ok)

    @property
    def n_fail(self) -> int:
        return len(self.cases) - self.n_pass

    @property
    def ok(self) -> bool:
        if self.ok_override is not None:
            return self.ok_override
        return self.n_fail == 0

    def summary(self) -> str:
        extra = "".join(f", {k}={_fmt_note(v)}" for k, v in sorted(self.notes.items()))
        return f"{self.name}: {self.n_pass}/{len(self.cases)} cases pass{extra}"

    def to_json(self) -> dict:
        return {"check": self.name, "ok": self.ok, "passed": self.n_pass, "failed": self.n_fail,
                "notes": _jsonable(self.notes), "cases": [c.to_json() for c in self.cases]}


def _fmt_note(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(_jsonable(v))


def _jsonable(x):
    if isinstance(x, Fraction):
        return fmt_rational(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return x


# ---------------------------------------------------------------- execution

def thread_count(threads: int | None = None) -> int:
    if threads is None:
        try:
            threads = int(os.environ.get("AMN_THREADS", "1"))
        except ValueError:
            threads = 1
    if threads <= 0:
        threads = os.cpu_count() or 1
    return threads


def run_cases(worker: Callable, specs: list, threads: int | None = None) -> list:
    """Evaluate ``worker`` on every spec; result order always follows ``specs``."""
    n = thread_count(threads)
    if n <= 1 or len(specs) < 2:
        return [worker(s) for s in specs]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(worker, specs, chunksize=max(1, len(specs) // (4 * n))))


# ---------------------------------------------------------------- spec helpers

def _cx_json(K) -> dict:
    return {"vertices": K.vertex_count, "simplices": [list(s) for lv in K.simplices[1:] for s in lv]}


def _cx(spec) :
    d = spec["complex"]
    return validate(d["vertices"], d["simplices"])


def _vals(xs) -> list[str]:
    return [fmt_rational(Fraction(x)) for x in xs]


def _angle(spec, key="values") -> AngleMap:
    return AngleMap.build([Fraction(v) for v in spec[key]], [((u, v), w) for (u, v), w in spec["windings"]])


def _angle_spec(name, K, m: AngleMap, **extra) -> dict:
    return {"name": name, "complex": _cx_json(K), "values": _vals(m.values),
            "windings": [[list(e), w] for e, w in m.windings], **extra}


def _real_corpus():
    return [(n, K, f) for n, (K, f) in corpus.real_builders().items()]


def _angle_corpus():
    return [(n, K, m) for n, (K, m) in corpus.angle_builders().items()]


SMALL_ANGLE = ("circle_w1", "circle_hex_w1", "circle_w2", "wedge_mixed")


def _rand_values(rng: random.Random, n: int, hi: int = 6, den: int = 1) -> list[Fraction]:
    return [Fraction(rng.randint(0, hi * den), den) for _ in range(n)]


def _rand_angle(rng: random.Random, m: AngleMap, den: int = 12) -> AngleMap:
    return AngleMap(tuple(Fraction(rng.randrange(den), den) for _ in m.values), m.windings)


# ---------------------------------------------------------------- cardinality and support

def _w_real_card(spec) -> CaseResult:
    K, f, fld = _cx(spec), PLMap.of(spec["values"]), FieldSpec.parse(spec["field"])
    wit, ok = {}, True
    cands = set(f.values)
    for r in range(K.dim + 1):
        li = level_images(K, f, r, fld)
        c = li.configuration()
        card_ok = c.cardinality == li.betti
        supp_ok = all(a in cands and b in cands for a, b in c.support())
        wit[r] = {"sum": c.cardinality, "betti": li.betti, "support_ok": supp_ok}
        ok = ok and (card_ok if spec["what"] == "cardinality" else supp_ok)
    return CaseResult(spec["name"], ok, wit, None if ok else spec)


def _w_angle_card(spec) -> CaseResult:
    K, m, fld = _cx(spec), _angle(spec), FieldSpec.parse(spec["field"])
    summ = novikov_summary(K, m, fld)
    wit, ok = {}, True
    base = {x % 1 for x in m.values}
    for r in range(K.dim + 1):
        c = delta_angle(K, m, r, fld=fld).config
        card_ok = c.cardinality == summ.degrees[r].free_rank
        supp_ok = all(a % 1 in base and b % 1 in base for a, b in c.support())
        wit[r] = {"sum": c.cardinality, "novikov_betti": summ.degrees[r].free_rank, "support_ok": supp_ok}
        ok = ok and (card_ok if spec["what"] == "cardinality" else supp_ok)
    return CaseResult(spec["name"], ok, wit, None if ok else spec)


def _card_specs(seed: int, what: str, random_maps: int) -> tuple[list, list]:
    rng = random.Random(seed)
    real, ang = [], []
    for fname in ("q", "f2"):
        for name, K, f in _real_corpus():
            real.append({"name": f"{name}/{fname}/default", "complex": _cx_json(K), "values": _vals(f.values),
                         "field": fname, "what": what})
            for i in range(random_maps):
                real.append({"name": f"{name}/{fname}/random{i}", "complex": _cx_json(K),
                             "values": _vals(_rand_values(rng, K.vertex_count, den=2)), "field": fname,
                             "what": what})
        for name, K, m in _angle_corpus():
            ang.append(_angle_spec(f"{name}/{fname}/default", K, m, field=fname, what=what))
            if name in SMALL_ANGLE:
                for i in range(random_maps):
                    ang.append(_angle_spec(f"{name}/{fname}/random{i}", K, _rand_angle(rng, m), field=fname,
                                           what=what))
    return real, ang


def check_cardinality(seed: int = 0, random_maps: int = 3, threads=None) -> CheckReport:
    real, ang = _card_specs(seed, "cardinality", random_maps)
    res = run_cases(_w_real_card, real, threads) + run_cases(_w_angle_card, ang, threads)
    return CheckReport("cardinality", res)


def check_support(seed: int = 0, random_maps: int = 3, threads=None) -> CheckReport:
    real, ang = _card_specs(seed, "support", random_maps)
    res = run_cases(_w_real_card, real, threads) + run_cases(_w_angle_card, ang, threads)
    return CheckReport("support", res)


# ---------------------------------------------------------------- box additivity

def _w_box(spec) -> CaseResult:
    K, f, fld = _cx(spec), PLMap.of(spec["values"]), FieldSpec.parse(spec["field"])
    li = level_images(K, f, spec["r"], fld)
    B, B1, B2 = (Box.of(*[Fraction(x) for x in spec[k]]) for k in ("B", "B1", "B2"))
    m, m1, m2 = li.box_measure(B), li.box_measure(B1), li.box_measure(B2)
    ok = m == m1 + m2
    return CaseResult(spec["name"], ok, {"B": m, "B1": m1, "B2": m2}, None if ok else spec)


def box_specs(seed: int, cases: int) -> list:
    rng = random.Random(seed)
    reals = [x for x in _real_corpus() if x[0] != "point"]
    specs = []
    for i in range(cases):
        name, K, _ = reals[rng.randrange(len(reals))]
        f = _rand_values(rng, K.vertex_count, hi=5)
        pool = sorted(set(f) | {x + Fraction(1, 2) for x in f} | {min(f) - 1})
        # alternate between cutting the box along x and along y
        geo = "split-x" if i % 2 == 0 else "split-y"
        if geo == "split-x":
            a1, a, a2 = sorted(rng.sample(pool, 3))
            b, b2 = sorted(rng.sample(pool, 2))
            B, B1, B2 = (a1, a2, b, b2), (a1, a, b, b2), (a, a2, b, b2)
        else:
            a1, a = sorted(rng.sample(pool, 2))
            b1, b, b2 = sorted(rng.sample(pool, 3))
            B, B1, B2 = (a1, a, b1, b2), (a1, a, b, b2), (a1, a, b1, b)
        specs.append({"name": f"{i}:{name}:{geo}", "complex": _cx_json(K), "values": _vals(f),
                      "field": rng.choice(["q", "f2", "f3"]), "r": rng.randrange(K.dim + 1),
                      "B": _vals(B), "B1": _vals(B1), "B2": _vals(B2)})
    return specs


def check_box_additivity(seed: int = 0, cases: int = 1000, threads=None) -> CheckReport:
    return CheckReport("box-additivity", run_cases(_w_box, box_specs(seed, cases), threads))


# ---------------------------------------------------------------- stability

def _w_stab_real(spec) -> CaseResult:
    K, fld = _cx(spec), FieldSpec.parse(spec["field"])
    f, g = PLMap.of(spec["f"]), PLMap.of(spec["g"])
    eps = max(abs(x - y) for x, y in zip(f.values, g.values))
    wit, ok, worst = {}, True, 0.0
    for r in range(K.dim + 1):
        dsq = bottleneck_distance_sq(level_images(K, f, r, fld).configuration(),
                                     level_images(K, g, r, fld).configuration())
        good = dsq <= 4 * eps * eps
        ratio = math.sqrt(dsq) / float(eps) if eps else (0.0 if dsq == 0 else math.inf)
        worst = max(worst, ratio)
        wit[r] = {"distance_sq": dsq, "eps": eps, "ratio": ratio}
        ok = ok and good
    wit["max_ratio"] = worst
    return CaseResult(spec["name"], ok, wit, None if ok else spec)


def _w_stab_angle(spec) -> CaseResult:
    K, fld = _cx(spec), FieldSpec.parse(spec["field"])
    m1, m2 = _angle(spec, "values"), _angle(spec, "values2")
    D = angle_distance_sup(K, m1, m2)
    wit, ok, worst = {}, True, 0.0
    for r in range(K.dim + 1):
        dsq = bottleneck_distance_sq(delta_angle(K, m1, r, fld=fld).config, delta_angle(K, m2, r, fld=fld).config)
        good = dsq <= 4 * PI_LO ** 2 * D * D
        ratio = math.sqrt(dsq) / float(D) if D else (0.0 if dsq == 0 else math.inf)
        worst = max(worst, ratio)
        wit[r] = {"distance_sq": dsq, "sup_distance": D, "ratio": ratio}
        ok = ok and good
    wit["max_ratio"] = worst
    return CaseResult(spec["name"], ok, wit, None if ok else spec)


def stability_specs(seed: int, cases: int) -> tuple[list, list]:
    rng = random.Random(seed)
    reals = [x for x in _real_corpus() if x[0] != "point"]
    angles = [x for x in _angle_corpus() if x[0] in SMALL_ANGLE or x[0] == "torus_projection"]
    real, ang = [], []
    for i in range(cases):
        name, K, _ = reals[rng.randrange(len(reals))]
        f = _rand_values(rng, K.vertex_count, hi=6, den=2)
        e = [Fraction(rng.randint(-4, 4), 8) for _ in f]
        if all(x == 0 for x in e):
            e[rng.randrange(len(e))] = Fraction(1, 8)
        g = [x + y for x, y in zip(f, e)]
        real.append({"name": f"{i}:{name}", "complex": _cx_json(K), "f": _vals(f), "g": _vals(g),
                     "field": rng.choice(["q", "f2"])})
    for i in range(cases):
        name, K, m = angles[rng.randrange(len(angles))]
        if name == "torus_projection" and rng.random() < 0.7:
            name, K, m = angles[0]
        m1 = _rand_angle(rng, m, den=12)
        e = [Fraction(rng.randint(-3, 3), 48) for _ in m1.values]
        if all(x == 0 for x in e):
            e[0] = Fraction(1, 48)
        m2 = AngleMap(tuple(x + y for x, y in zip(m1.values, e)), m.windings)
        ang.append(_angle_spec(f"{i}:{name}", K, m1, values2=_vals(m2.values), field="q"))
    return real, ang


def check_stability(seed: int = 0, cases: int = 500, threads=None) -> CheckReport:
    real, ang = stability_specs(seed, cases)
    rr = run_cases(_w_stab_real, real, threads)
    ra = run_cases(_w_stab_angle, ang, threads)
    for c in rr:
        c.case = "real:" + c.case
    for c in ra:
        c.case = "angle:" + c.case
    notes = {"max_ratio_real": max((c.witness["max_ratio"] for c in rr), default=0.0),
             "max_ratio_angle": max((c.witness["max_ratio"] for c in ra), default=0.0),
             "bound_real": 2.0, "bound_angle": 2 * math.pi}
    return CheckReport("stability", rr + ra, notes)


# ---------------------------------------------------------------- localized stability

def _w_local(spec) -> CaseResult:
    K, fld = _cx(spec), FieldSpec.parse(spec["field"])
    f, g = PLMap.of(spec["f"]), PLMap.of(spec["g"])
    eps = Fraction(spec["eps"])
    cands = f.candidates()
    wit, ok = {}, True
    for r in range(K.dim + 1):
        df = level_images(K, f, r, fld)
        cg = level_images(K, g, r, fld).configuration()
        bad = []
        for a in cands:
            for b in cands:
                s = sum(m for (x, y), m in cg.points if (x - a) ** 2 + (y - b) ** 2 < 4 * eps * eps)
                if s != df.delta(a, b):
                    bad.append([a, b, s, df.delta(a, b)])
        fsupp = df.configuration().support()
        stray = [p for p in cg.support()
                 if not any((p[0] - a) ** 2 + (p[1] - b) ** 2 < 4 * eps * eps for a, b in fsupp)]
        wit[r] = {"mismatches": bad, "stray_points": [list(p) for p in stray]}
        ok = ok and not bad and not stray
    return CaseResult(spec["name"], ok, wit, None if ok else spec)


def local_specs(seed: int, cases: int) -> list:
    rng = random.Random(seed)
    reals = [x for x in _real_corpus() if x[0] != "point"]
    specs = []
    for i in range(cases):
        name, K, _ = reals[rng.randrange(len(reals))]
        f = _rand_values(rng, K.vertex_count, hi=5)
        ef = epsilon_f(PLMap.of(f)) or Fraction(1)
        eps = ef / 4                                    # strictly below eps(f)/3
        g = [x + eps * Fraction(rng.randint(-9, 9), 10) for x in f]
        specs.append({"name": f"{i}:{name}", "complex": _cx_json(K), "f": _vals(f), "g": _vals(g),
                      "eps": fmt_rational(eps), "field": rng.choice(["q", "f2"])})
    return specs


def check_localized_stability(seed: int = 0, cases: int = 200, threads=None) -> CheckReport:
    return CheckReport("localized-stability", run_cases(_w_local, local_specs(seed, cases), threads))


# ---------------------------------------------------------------- duality

def _w_dual(spec) -> CaseResult:
    K, fld = _cx(spec), FieldSpec.parse(spec["field"])
    n = K.dim
    wit, ok = {}, True
    if spec["kind"] == "real":
        f = PLMap.of(spec["values"])
        confs = [level_images(K, f, r, fld).configuration() for r in range(n + 1)]
    else:
        m = _angle(spec)
        confs = [delta_angle(K, m, r, fld=fld).config for r in range(n + 1)]
    for r in range(n + 1):
        lhs, rhs = confs[r], confs[n - r].swapped()
        wit[r] = {"delta_r": len(lhs.points), "equal": lhs == rhs}
        ok = ok and lhs == rhs
    return CaseResult(spec["name"], ok, wit, None if ok else spec)


def duality_specs(seed: int, maps: int) -> list:
    rng = random.Random(seed)
    specs = []
    manifolds = [("sphere_octahedron", corpus.octahedron(), True), ("torus7", corpus.torus7(), True),
                 ("torus_grid", corpus.torus_grid(), True), ("rp2", corpus.rp2(), False)]
    for name, K, orientable in manifolds:
        for fname in (["f2", "q"] if orientable else ["f2"]):
            for i in range(maps):
                specs.append({"name": f"real:{name}/{fname}/{i}", "kind": "real", "complex": _cx_json(K),
                              "values": _vals(_rand_values(rng, K.vertex_count, hi=8, den=2)), "field": fname})
    K, m = corpus.torus_projection()
    for fname in ("f2", "q"):
        for i in range(maps):
            specs.append(_angle_spec(f"angle:torus_projection/{fname}/{i}", K, _rand_angle(rng, m, den=16),
                                     kind="angle", field=fname))
    return specs


def check_duality(seed: int = 0, maps: int = 20, threads=None) -> CheckReport:
    return CheckReport("duality", run_cases(_w_dual, duality_specs(seed, maps), threads))


# ---------------------------------------------------------------- Jordan cells, Betti relation, Euler

def _cells_key(cells) -> list:
    return sorted([[list(c.q.to_json()), c.k] for c in cells], key=lambda x: (len(x[0]), str(x)))


def _w_jordan(spec) -> CaseResult:
    K, m, fld = _cx(spec), _angle(spec), FieldSpec.parse(spec["field"])
    summ = novikov_summary(K, m, fld)
    thetas = [Fraction(t) for t in spec["thetas"]]
    wit, ok = {}, True
    for r in range(K.dim + 1):
        snf_route = _cells_key(summ.cells(r))
        rel = {fmt_rational(t): _cells_key(jordan_via_relation(K, m, t, r, fld)) for t in thetas}
        good = all(v == snf_route for v in rel.values())
        wit[r] = {"snf": snf_route, "relation": rel}
        ok = ok and good
    return CaseResult(spec["name"], ok, wit, None if ok else spec)


def jordan_specs(fields=("q", "f2")) -> list:
    specs = []
    for fname in fields:
        for name, K, m in _angle_corpus():
            th = _vals(default_thetas(m, 3))
            specs.append(_angle_spec(f"{name}/{fname}", K, m, field=fname, thetas=th))
    return specs


def check_jordan_equality(fields=("q", "f2"), threads=None) -> CheckReport:
    return CheckReport("jordan-equality", run_cases(_w_jordan, jordan_specs(fields), threads))


def _w_betti_rel(spec) -> CaseResult:
    K, m, fld = _cx(spec), _angle(spec), FieldSpec.parse(spec["field"])
    rows = betti_relation_check(K, m, fld)
    ok = all(r["ok"] for r in rows)
    return CaseResult(spec["name"], ok, {"rows": rows}, None if ok else spec)


def _w_euler(spec) -> CaseResult:
    K, m, fld = _cx(spec), _angle(spec), FieldSpec.parse(spec["field"])
    chi = sum((-1) ** r * b for r, b in enumerate(betti_numbers(K, fld)))
    chi_n = novikov_summary(K, m, fld).euler()
    ok = chi == chi_n
    return CaseResult(spec["name"], ok, {"chi": chi, "chi_novikov": chi_n}, None if ok else spec)


def _angle_corpus_specs(seed: int, random_maps: int, fields=("q", "f2", "f3")) -> list:
    rng = random.Random(seed)
    specs = []
    for fname in fields:
        for name, K, m in _angle_corpus():
            specs.append(_angle_spec(f"{name}/{fname}", K, m, field=fname))
            for i in range(random_maps):
                specs.append(_angle_spec(f"{name}/{fname}/random{i}", K, _rand_angle(rng, m), field=fname))
    return specs


def check_betti_relation(seed: int = 0, random_maps: int = 1, threads=None) -> CheckReport:
    return CheckReport("betti-relation", run_cases(_w_betti_rel, _angle_corpus_specs(seed, random_maps), threads))


def check_euler(seed: int = 0, random_maps: int = 1, threads=None) -> CheckReport:
    return CheckReport("euler", run_cases(_w_euler, _angle_corpus_specs(seed, random_maps), threads))


# ---------------------------------------------------------------- hat-hat structure

def _w_hathat(spec) -> CaseResult:
    K, f = _cx(spec), PLMap.of(spec["values"])
    wit, ok = {}, True
    for r in range(K.dim + 1):
        hh = hat_hat_config(K, f, r, FieldSpec.parse("q"))
        orth, direct = hh.pairwise_orthogonal(), hh.is_direct_sum()
        wit[r] = {"points": len(hh.points), "orthogonal": orth, "direct_sum": direct}
        ok = ok and orth and direct
    return CaseResult(spec["name"], ok, wit, None if ok else spec)


def check_hat_hat(seed: int = 0, cases: int = 100, threads=None) -> CheckReport:
    rng = random.Random(seed)
    reals = [x for x in _real_corpus() if x[0] != "point"]
    specs = []
    for i in range(cases):
        name, K, _ = reals[rng.randrange(len(reals))]
        specs.append({"name": f"{i}:{name}", "complex": _cx_json(K),
                      "values": _vals(_rand_values(rng, K.vertex_count, hi=6))})
    return CheckReport("hat-hat", run_cases(_w_hathat, specs, threads))


# ---------------------------------------------------------------- Kronecker round trip

def _irreducibles(fld: FieldSpec, d: int) -> list[Poly]:
    """Monic irreducibles of degree ``d`` over F_p with nonzero constant term."""
    p = fld.p
    out = []
    for n in range(p ** d):
        coeffs = [(n // p ** i) % p for i in range(d)] + [1]
        q = Poly.from_coeffs(fld, coeffs)
        if coeffs[0] != 0 and is_irreducible(q):
            out.append(q)
    return out


def summand_atoms(fld: FieldSpec, max_total: int = 6) -> list[Summand]:
    atoms = []
    for r in range(max_total):
        for t in ("rho+", "rho-"):
            if 2 * r + 1 <= max_total:
                atoms.append(Summand(t, r))
    for d in range(1, max_total // 2 + 1):
        for q in _irreducibles(fld, d):
            for k in range(1, max_total // (2 * d) + 1):
                atoms.append(Summand("jordan", 0, JordanCell(q, k)))
    for k in range(1, max_total // 2 + 1):
        atoms.append(Summand("jordan-zero", k))
        atoms.append(Summand("jordan-infinity", k))
    return atoms


def summand_multisets(fld: FieldSpec, max_total: int = 6) -> list[tuple]:
    atoms = sorted(summand_atoms(fld, max_total), key=Summand.key)
    size = [sum(a.dims) for a in atoms]
    out = []

    def rec(start, remaining, acc):
        if acc:
            out.append(tuple(acc))
        for i in range(start, len(atoms)):
            if size[i] <= remaining:
                rec(i, remaining - size[i], acc + [atoms[i]])

    rec(0, max_total, [])
    return out


def _random_invertible(rng: random.Random, fld: FieldSpec, n: int) -> Matrix:
    while True:
        M = Matrix.from_rows(fld, [[rng.randrange(fld.p) for _ in range(n)] for _ in range(n)], n)
        if rank(M) == n:
            return M


def _w_kron(spec) -> CaseResult:
    fld = FieldSpec.parse(spec["field"])
    rng = random.Random(spec["seed"])
    summands = _decode_summands(spec["summands"], fld)
    rep = direct_sum([summand_rep(s, fld) for s in summands], fld)
    rep = rep.base_change(_random_invertible(rng, fld, rep.W_dim), _random_invertible(rng, fld, rep.V_dim))
    got = decompose_g2(rep)
    want = sorted(summands, key=Summand.key)
    ok = [s.to_json() for s in got] == [s.to_json() for s in want]
    return CaseResult(spec["name"], ok, {"expected": [s.to_json() for s in want],
                                         "got": [s.to_json() for s in got]}, None if ok else spec)


def _decode_summands(items, fld):
    out = []
    for it in items:
        if it["type"] == "jordan":
            out.append(Summand("jordan", 0, JordanCell(Poly.from_coeffs(fld, it["q"]), it["k"])))
        elif it["type"] in ("jordan-zero", "jordan-infinity"):
            out.append(Summand(it["type"], it["k"]))
        else:
            out.append(Summand(it["type"], it["r"]))
    return out


def kronecker_specs(seed: int, fields=("f2", "f3"), max_total: int = 6) -> list:
    rng = random.Random(seed)
    specs = []
    for fname in fields:
        fld = FieldSpec.parse(fname)
        for i, ms in enumerate(summand_multisets(fld, max_total)):
            specs.append({"name": f"{fname}/{i}", "field": fname, "seed": rng.randrange(2 ** 31),
                          "summands": [s.to_json() for s in ms]})
    return specs


def check_kronecker(seed: int = 0, fields=("f2", "f3"), max_total: int = 6, threads=None) -> CheckReport:
    specs = kronecker_specs(seed, fields, max_total)
    return CheckReport("kronecker", run_cases(_w_kron, specs, threads))


# ---------------------------------------------------------------- genericity

def _w_generic(spec) -> CaseResult:
    K, fld = _cx(spec), FieldSpec.parse(spec["field"])
    mults = []
    if spec["kind"] == "real":
        f = PLMap.of(spec["values"])
        for r in range(K.dim + 1):
            mults.append(level_images(K, f, r, fld).configuration().max_multiplicity())
    else:
        m = _angle(spec)
        for r in range(K.dim + 1):
            mults.append(delta_angle(K, m, r, fld=fld).config.max_multiplicity())
    ok = max(mults, default=0) <= 1
    return CaseResult(spec["name"], ok, {"max_multiplicity": mults})


def genericity_specs(seed: int, per_complex: int) -> list:
    rng = random.Random(seed)
    specs = []
    for name, K, f in _real_corpus():
        for i in range(per_complex):
            vals = [v + Fraction(rng.randint(1, 10 ** 6), 10 ** 7) for v in f.values]
            specs.append({"name": f"real:{name}/{i}", "kind": "real", "complex": _cx_json(K),
                          "values": _vals(vals), "field": "q"})
    for name, K, m in _angle_corpus():
        if name not in SMALL_ANGLE and name != "torus_projection":
            continue
        for i in range(per_complex):
            vals = [v + Fraction(rng.randint(1, 10 ** 6), 10 ** 7) for v in m.values]
            specs.append(_angle_spec(f"angle:{name}/{i}", K, AngleMap(tuple(vals), m.windings),
                                     kind="angle", field="q"))
    return specs


def check_genericity(seed: int = 0, per_complex: int = 5, threads=None) -> CheckReport:
    res = run_cases(_w_generic, genericity_specs(seed, per_complex), threads)
    rate = sum(1 for c in res if c.ok) / len(res) if res else 1.0
    return CheckReport("genericity", res, {"rate": rate, "threshold": GENERICITY_RATE},
                       ok_override=rate >= GENERICITY_RATE)


# ---------------------------------------------------------------- dispatch

def run_suite(name: str, seed: int = 0, cases: int | None = None, threads=None) -> CheckReport:
    if name == "cardinality":
        return check_cardinality(seed, threads=threads)
    if name == "support":
        return check_support(seed, threads=threads)
    if name == "box-additivity":
        return check_box_additivity(seed, cases or 1000, threads)
    if name == "stability":
        return check_stability(seed, cases or 500, threads)
    if name == "localized-stability":
        return check_localized_stability(seed, cases or 200, threads)
    if name == "duality":
        return check_duality(seed, cases or 20, threads)
    if name == "jordan-equality":
        return check_jordan_equality(threads=threads)
    if name == "betti-relation":
        return check_betti_relation(seed, threads=threads)
    if name == "euler":
        return check_euler(seed, threads=threads)
    if name == "hat-hat":
        return check_hat_hat(seed, cases or 100, threads)
    if name == "kronecker":
        return check_kronecker(seed, threads=threads)
    if name == "genericity":
        return check_genericity(seed, cases or 5, threads)
    raise ValueError(f"unknown suite {name!r}")
