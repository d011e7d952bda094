"""JSON and CSV wire formats for tensors and paths.

Tensor JSON::

    {"dimension": d, "depth": N, "scalar": "rational"|"f64"|"c64",
     "levels": [{"degree": k, "coefficients": [...]}, ...]}

Rational coefficients travel as exact "p/q" strings, complex ones as
[re, im] pairs; coefficient order is the row-major word order of the
algebra module.  Path JSON is ``{"dimension": d, "points": [[...], ...]}``
with rational-string or numeric coordinates; the CSV alternative has one
vertex per row.  Serialization is canonical, so parse/dump round-trips are
byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra import ScalarKind, TruncatedTensor
from .paths import PiecewiseLinearPath


def _encode_coefficient(c, kind: ScalarKind):
    if kind is ScalarKind.RATIONAL:
        return str(c)
    if kind is ScalarKind.F64:
        return float(c)
    return [float(c.real), float(c.imag)]


def _decode_coefficient(raw, kind: ScalarKind, where: str):
    try:
        if kind is ScalarKind.RATIONAL:
            if isinstance(raw, float):
                raise ValueError("rational tensors use \"p/q\" strings or integers")
            return Fraction(raw)
        if kind is ScalarKind.F64:
            if isinstance(raw, (list, str)):
                raise ValueError("f64 tensors use plain numbers")
            return float(raw)
        if isinstance(raw, list):
            if len(raw) != 2:
                raise ValueError("complex coefficients are [re, im] pairs")
            return complex(float(raw[0]), float(raw[1]))
        if isinstance(raw, str):
            raise ValueError("complex tensors use [re, im] pairs")
        return complex(float(raw), 0.0)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValueError(f"{where}: bad coefficient {raw!r} ({exc})") from None


def tensor_to_dict(t: TruncatedTensor) -> dict:
    return {
        "dimension": t.dimension,
        "depth": t.depth,
        "scalar": t.kind.value,
        "levels": [
            {"degree": k,
             "coefficients": [_encode_coefficient(c, t.kind) for c in t.level(k)]}
            for k in range(t.depth + 1)
        ],
    }


def tensor_from_dict(data: dict) -> TruncatedTensor:
    for key in ("dimension", "depth", "scalar", "levels"):
        if key not in data:
            raise ValueError(f"tensor JSON missing field {key!r}")
    try:
        kind = ScalarKind(data["scalar"])
    except ValueError:
        raise ValueError(f"unknown scalar kind {data['scalar']!r}") from None
    d = int(data["dimension"])
    depth = int(data["depth"])
    by_degree = {}
    for entry in data["levels"]:
        k = int(entry["degree"])
        if k in by_degree:
            raise ValueError(f"duplicate level degree {k}")
        by_degree[k] = entry["coefficients"]
    levels = []
    for k in range(depth + 1):
        if k not in by_degree:
            raise ValueError(f"tensor JSON missing level {k}")
        coeffs = [_decode_coefficient(c, kind, f"level {k}") for c in by_degree[k]]
        levels.append(coeffs)
    return TruncatedTensor(d, depth, kind, levels)


def _decode_coordinate(raw, where: str):
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"{where}: bad rational coordinate {raw!r}") from None
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ValueError(f"{where}: coordinates must be numbers or \"p/q\" strings")
    return raw


def path_to_dict(p: PiecewiseLinearPath) -> dict:
    if p.kind is ScalarKind.RATIONAL:
        points = [[str(c) for c in v] for v in p.vertices]
    else:
        points = [[float(c) for c in v] for v in p.vertices]
    return {"dimension": p.dimension, "points": points}


def path_from_dict(data: dict) -> PiecewiseLinearPath:
    for key in ("dimension", "points"):
        if key not in data:
            raise ValueError(f"path JSON missing field {key!r}")
    d = int(data["dimension"])
    points = data["points"]
    if not isinstance(points, list) or not points:
        raise ValueError("path JSON needs a non-empty \"points\" list")
    decoded = []
    saw_float = False
    saw_string = False
    for i, pt in enumerate(points):
        if not isinstance(pt, list) or len(pt) != d:
            raise ValueError(f"point {i}: expected {d} coordinates")
        row = []
        for c in pt:
            val = _decode_coordinate(c, f"point {i}")
            saw_float = saw_float or isinstance(val, float)
            saw_string = saw_string or isinstance(val, Fraction)
            row.append(val)
        decoded.append(row)
    if saw_float and saw_string:
        raise ValueError("mixed float and \"p/q\" coordinates are ambiguous; pick one")
    kind = ScalarKind.F64 if saw_float else ScalarKind.RATIONAL
    return PiecewiseLinearPath(decoded, kind=kind)


def path_from_csv(text: str) -> PiecewiseLinearPath:
    """One vertex per row, coordinates comma-separated.

    Tokens that read as exact rationals ("3", "1/2", "0.25") build a rational
    path; anything else falls back to binary64.
    """
    rows = []
    saw_float = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        row = []
        for col, token in enumerate(stripped.split(","), start=1):
            token = token.strip()
            try:
                row.append(Fraction(token))
            except (ValueError, ZeroDivisionError):
                try:
                    row.append(float(token))
                    saw_float = True
                except ValueError:
                    raise ValueError(
                        f"line {lineno}, column {col}: bad coordinate {token!r}") from None
        rows.append(row)
    if not rows:
        raise ValueError("CSV path file has no vertices")
    kind = ScalarKind.F64 if saw_float else ScalarKind.RATIONAL
    return PiecewiseLinearPath(rows, kind=kind)


def path_to_csv(p: PiecewiseLinearPath) -> str:
    conv = str if p.kind is ScalarKind.RATIONAL else (lambda c: repr(float(c)))
    return "\n".join(",".join(conv(c) for c in v) for v in p.vertices) + "\n"


def canonical_dumps(obj: Any) -> str:
    """Deterministic JSON text: fixed key order, two-space indent, no NaN."""
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"
