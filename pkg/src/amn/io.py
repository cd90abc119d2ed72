"""JSON file formats for complexes, maps, angle maps and configurations."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .angle import AngleMap, validate_angle_map
from .complex import PLMap, SimplicialComplex, validate
from .configuration import Configuration, fmt_rational
from .errors import AmnError, ValidationError


class ParseError(AmnError):
    """Input is not well-formed JSON of the expected shape."""


def rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"boolean {x!r} is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"cannot read {x!r} as a rational") from None
    raise ParseError(f"cannot read {x!r} as a rational")


def read_json(path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e}") from None
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    if not isinstance(data, dict):
        raise ParseError(f"{path}: expected a JSON object")
    return data


def complex_from_json(data: dict) -> tuple[SimplicialComplex, PLMap | None]:
    try:
        n = data["vertices"]
        simplices = data.get("simplices", [])
        if not isinstance(n, int) or not isinstance(simplices, list):
            raise TypeError
        simplices = [list(s) for s in simplices]
        if any(not isinstance(v, int) for s in simplices for v in s):
            raise TypeError
    except (KeyError, TypeError):
        raise ParseError("complex needs integer 'vertices' and a list of integer 'simplices'") from None
    K = validate(n, simplices)
    values = data.get("values")
    f = None
    if values is not None:
        if not isinstance(values, list):
            raise ParseError("'values' must be a list")
        f = PLMap(tuple(rational(v) for v in values))
        if len(f) != n:
            raise ValidationError(f"{len(f)} values for {n} vertices")
    return K, f


def complex_to_json(K: SimplicialComplex, f: PLMap | None = None) -> dict:
    out = {"vertices": K.vertex_count, "simplices": [list(s) for s in _maximal(K)]}
    if f is not None:
        out["values"] = [fmt_rational(v) for v in f.values]
    return out


def _maximal(K: SimplicialComplex) -> list:
    faces = set()
    for level in K.simplices[1:]:
        for s in level:
            for i in range(len(s)):
                faces.add(s[:i] + s[i + 1:])
    return [s for level in K.simplices for s in level if s not in faces and len(s) > 1]


def map_from_json(data: dict, n: int) -> PLMap:
    values = data.get("values")
    if not isinstance(values, list):
        raise ParseError("map file needs a 'values' list")
    f = PLMap(tuple(rational(v) for v in values))
    if len(f) != n:
        raise ValidationError(f"{len(f)} values for {n} vertices")
    return f


def angle_from_json(data: dict, K: SimplicialComplex, require_all: bool = False) -> AngleMap:
    values = data.get("values")
    wind = data.get("windings", [])
    if not isinstance(values, list) or not isinstance(wind, list):
        raise ParseError("angle map needs 'values' and 'windings' lists")
    pairs = []
    try:
        for item in wind:
            u, v = item["edge"]
            w = item.get("w", 0)
            if not isinstance(w, int):
                raise TypeError
            pairs.append(((int(u), int(v)), w))
    except (KeyError, TypeError, ValueError):
        raise ParseError("each winding must look like {\"edge\": [u, v], \"w\": int}") from None
    m = AngleMap.build([rational(v) for v in values], pairs)
    validate_angle_map(K, m, explicit=[e for e, _ in pairs] if require_all else None)
    return m


def config_from_json(data: dict) -> Configuration:
    try:
        return Configuration.from_json(data)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad configuration: {e}") from None


def dump(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
