"""Canonical JSON for complexes, facet orders and point sets.

Output is written with sorted keys and fixed separators so equal data gives
equal bytes. Rationals travel as ``[numerator, denominator]`` pairs.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .complex import SimplicialComplex, from_facets

SCHEMA_VERSION = 1


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def digest(text: str | bytes) -> str:
    if isinstance(text, str):
        text = text.encode()
    return hashlib.sha256(text).hexdigest()


def complex_to_obj(K: SimplicialComplex) -> dict:
    obj: dict[str, Any] = {"ground": list(K.ground), "facets": [list(f) for f in K.facets]}
    if K.coords is not None:
        obj["coords"] = [list(c) for c in K.coords]
    return obj


def complex_from_obj(obj: dict) -> SimplicialComplex:
    if "facets" not in obj:
        raise ValueError("complex JSON needs a 'facets' list")
    ground = obj.get("ground")
    if isinstance(ground, int):
        ground = range(ground)
    facets = [tuple(int(v) for v in f) for f in obj["facets"]]
    if not facets:
        g = tuple(sorted(ground)) if ground is not None else ()
        return SimplicialComplex((), g)
    return from_facets(facets, ground=ground, coords=obj.get("coords"))


def read_complex(path: str | Path) -> SimplicialComplex:
    return complex_from_obj(json.loads(Path(path).read_text()))


def write_json(path: str | Path, obj: Any) -> str:
    text = dumps(obj)
    Path(path).write_text(text)
    return text


def fraction_pair(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def parse_rational(x) -> Fraction:
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ValueError(f"rational must be [num, den], got {x!r}")
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, float):
        raise ValueError("floats are not accepted; use [num, den] or an integer")
    return Fraction(x)


def read_colors(path: str | Path) -> list[list[tuple[Fraction, ...]]]:
    """``{"colors": [[point, ...], ...]}`` with points as lists of rationals."""
    obj = json.loads(Path(path).read_text())
    colors = obj.get("colors")
    if not isinstance(colors, list):
        raise ValueError("point file needs a 'colors' list")
    return [[tuple(parse_rational(x) for x in pt) for pt in c] for c in colors]
