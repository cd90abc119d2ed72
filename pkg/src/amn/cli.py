"""``amn`` command line: homology, real and angle invariants, distances and check suites."""
from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass, field as dc_field
from importlib.metadata import PackageNotFoundError, version

from . import checks
from .angle import default_thetas, delta_angle, jordan_via_relation, novikov_summary, require_nonzero_class
from .complex import betti_numbers, euler_characteristic
from .configuration import (bottleneck_distance_sq, fmt_rational, monic_polynomial, sqrt_decimal, to_svg)
from .errors import (AmnError, CardinalityMismatch, ClassMismatch, DegenerateClass, DegreeOutOfRange, DimMismatch,
                     NotStabilized, SpaceMismatch, ValidationError)
from .io import ParseError, angle_from_json, complex_from_json, config_from_json, dump, map_from_json, rational, read_json
from .linalg import FieldSpec
from .real import level_images

EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_NOT_STABILIZED = 4
EXIT_DEGENERATE = 5
EXIT_MISMATCH = 6


def tool_version() -> str:
    try:
        return version("amn")
    except PackageNotFoundError:
        return "0+unknown"


@dataclass
class RunManifest:
    command: str
    inputs: list
    field: str
    degrees: list | None = None
    thetas: list | None = None
    kmax: int | None = None
    seed: int | None = None
    outputs: list = dc_field(default_factory=list)
    version: str = dc_field(default_factory=tool_version)


def field_name(fld: FieldSpec) -> str:
    return "Q" if fld.p == 0 else f"F{fld.p}"


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except (ValueError, AmnError) as e:
        raise ParseError(f"bad field {text!r}: {e}") from None


def _degrees(spec: str, top: int) -> list[int]:
    if spec == "all":
        return list(range(top + 1))
    try:
        r = int(spec)
    except ValueError:
        raise ParseError(f"--degree expects 'all' or an integer, got {spec!r}") from None
    if not 0 <= r <= top:
        raise DegreeOutOfRange(f"degree {r} outside 0..{top}")
    return [r]


def _outputs(args) -> list:
    return [p for p in (getattr(args, "out", None), getattr(args, "plot", None)) if p]


def _emit(result: dict, manifest: RunManifest, out) -> None:
    result["manifest"] = asdict(manifest)
    text = dump(result, out)
    if out is None:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands

def cmd_homology(args) -> int:
    fld = _field(args.field)
    K, _ = complex_from_json(read_json(args.complex))
    res = {"betti": betti_numbers(K, fld), "chi": euler_characteristic(K, fld)}
    _emit(res, RunManifest("homology", [args.complex], field_name(fld), outputs=_outputs(args)), args.out)
    return 0


def cmd_real(args) -> int:
    fld = _field(args.field)
    K, f = complex_from_json(read_json(args.complex))
    inputs = [args.complex]
    if args.map:
        f = map_from_json(read_json(args.map), K.vertex_count)
        inputs.append(args.map)
    if f is None:
        raise ParseError("no map: give a map file or a 'values' list in the complex file")
    degrees = _degrees(args.degree, K.dim)
    out = []
    for r in degrees:
        li = level_images(K, f, r, fld)
        conf = li.configuration()
        item = {"degree": r, "betti": li.betti, "configuration": conf.to_json(r, field_name(fld)),
                "polynomial": [[fmt_rational(re), fmt_rational(im)] for re, im in monic_polynomial(conf)]}
        if args.hat_hat:
            item["hat_hat"] = [{"x": fmt_rational(a), "y": fmt_rational(b), "basis": S.to_json()}
                               for (a, b), S in li.hat_hat()]
        out.append(item)
    if args.plot:
        with open(args.plot, "w") as fh:
            fh.write(to_svg([(f"r={d['degree']}", level_images(K, f, d["degree"], fld).configuration())
                             for d in out]))
    man = RunManifest("real", inputs, field_name(fld), degrees=degrees, outputs=_outputs(args))
    _emit({"degrees": out}, man, args.out)
    return 0


def cmd_angle(args) -> int:
    fld = _field(args.field)
    K, _ = complex_from_json(read_json(args.complex))
    m = angle_from_json(read_json(args.anglemap), K, require_all=args.strict_windings)
    require_nonzero_class(K, m)
    thetas = [rational(t) for t in args.theta] if args.theta else default_thetas(m, 3)
    summ = novikov_summary(K, m, fld)
    degrees = list(range(K.dim + 1))
    out, status = [], 0
    for r in degrees:
        deg = summ.degrees[r]
        snf_cells = [c.to_json() for c in deg.jordan_cells]
        routes = {}
        for th in thetas:
            routes[fmt_rational(th)] = [c.to_json() for c in jordan_via_relation(K, m, th, r, fld)]
        agree = all(v == snf_cells for v in routes.values())
        item = {"degree": r, "novikov_betti": deg.free_rank,
                "invariant_factors": [p.to_json() for p in deg.torsion],
                "jordan_cells": {"snf": snf_cells, "relation": routes, "agree": agree}}
        try:
            ac = delta_angle(K, m, r, K_max=args.kmax, fld=fld)
            item["configuration"] = ac.config.to_json(r, field_name(fld))
            item["stabilization"] = {"stabilized": True, "K": ac.window}
        except NotStabilized as e:
            item["stabilization"] = {"stabilized": False, "K": args.kmax, "message": str(e),
                                     "last_windows": [{"K": k, "window": w.to_json()} for k, w in e.last_windows or []]}
            status = EXIT_NOT_STABILIZED
        out.append(item)
    man = RunManifest("angle", [args.complex, args.anglemap], field_name(fld), degrees=degrees,
                      thetas=[fmt_rational(t) for t in thetas], kmax=args.kmax, outputs=_outputs(args))
    _emit({"degrees": out, "betti_novikov": summ.betti}, man, args.out)
    return status


def cmd_distance(args) -> int:
    a = config_from_json(read_json(args.config_a))
    b = config_from_json(read_json(args.config_b))
    dsq = bottleneck_distance_sq(a, b)
    res = {"space": a.space, "distance_squared": fmt_rational(dsq), "distance": sqrt_decimal(dsq, 12)}
    _emit(res, RunManifest("distance", [args.config_a, args.config_b], "Q", outputs=_outputs(args)), args.out)
    return 0


def cmd_check(args) -> int:
    rep = checks.run_suite(args.suite, seed=args.seed, cases=args.cases, threads=args.threads)
    res = rep.to_json()
    res["summary"] = rep.summary()
    # each suite fixes its own fields; --field is accepted for uniformity only
    man = RunManifest("check " + args.suite, [], "per-suite", seed=args.seed, outputs=_outputs(args))
    _emit(res, man, args.out)
    print(rep.summary(), file=sys.stderr)
    return 0 if rep.ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="amn", description="Invariants of real and angle valued PL maps.")
    p.add_argument("--version", action="version", version=f"amn {tool_version()}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--field", default="q", help="q, f2, f3, f5 or f<p> (default q)")
        sp.add_argument("--out", help="write the JSON result here instead of stdout")

    sp = sub.add_parser("homology", help="Betti numbers and Euler characteristic")
    sp.add_argument("complex")
    common(sp)
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("real", help="configurations of a real valued map")
    sp.add_argument("complex")
    sp.add_argument("map", nargs="?", help="map file; optional when the complex carries 'values'")
    sp.add_argument("--degree", default="all")
    sp.add_argument("--plot", help="write an SVG scatter plot")
    sp.add_argument("--hat-hat", action="store_true", help="include orthogonal refinement bases (field q)")
    common(sp)
    sp.set_defaults(func=cmd_real)

    sp = sub.add_parser("angle", help="Novikov invariants, Jordan cells and torus configurations")
    sp.add_argument("complex")
    sp.add_argument("anglemap")
    sp.add_argument("--kmax", type=int, default=8)
    sp.add_argument("--theta", nargs="+", help="cut angles for the relation route (default: 3 regular values)")
    sp.add_argument("--strict-windings", action="store_true", help="require a winding entry for every edge")
    common(sp)
    sp.set_defaults(func=cmd_angle)

    sp = sub.add_parser("distance", help="bottleneck distance between two configuration files")
    sp.add_argument("config_a")
    sp.add_argument("config_b")
    common(sp)
    sp.set_defaults(func=cmd_distance)

    sp = sub.add_parser("check", help="run a check suite")
    sp.add_argument("suite", choices=checks.SUITES)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cases", type=int, default=None)
    sp.add_argument("--threads", type=int, default=None, help="worker processes (default: AMN_THREADS, 0 = auto)")
    common(sp)
    sp.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else 0
    try:
        return args.func(args)
    except ParseError as e:
        code, msg = EXIT_PARSE, e
    except (ValidationError, DegreeOutOfRange) as e:
        code, msg = EXIT_VALIDATION, e
    except NotStabilized as e:
        code, msg = EXIT_NOT_STABILIZED, e
    except DegenerateClass as e:
        code, msg = EXIT_DEGENERATE, e
    except (SpaceMismatch, CardinalityMismatch, ClassMismatch, DimMismatch) as e:
        code, msg = EXIT_MISMATCH, e
    print(f"amn: {type(msg).__name__}: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
