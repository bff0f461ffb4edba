"""JSON input/output for fans and characteristic pairs.

Fan::

    {"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2], [0, 2]]}

Characteristic pair::

    {"dim": 2, "facets": 4, "maximal_faces": [[0, 1], [1, 2], [2, 3], [3, 0]],
     "lambda": [[1, 0], [0, 1], [1, 2], [0, -1]]}

Indices are 0-based.  Unknown keys are rejected.
"""

from __future__ import annotations

import json

from .charpair import CharPair
from .fan import Fan

FAN_KEYS = ("dim", "rays", "max_cones")
CHARPAIR_KEYS = ("dim", "facets", "maximal_faces", "lambda")


class SchemaError(ValueError):
    pass


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{where}: expected an integer, got {json.dumps(x)}")
    return x


def _int_rows(x, where):
    if not isinstance(x, list):
        raise SchemaError(f"{where}: expected an array of integer arrays")
    out = []
    for i, row in enumerate(x):
        if not isinstance(row, list):
            raise SchemaError(f"{where}[{i}]: expected an array of integers")
        out.append([_int(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)])
    return out


def detect_kind(data: dict) -> str:
    if "rays" in data or "max_cones" in data:
        return "fan"
    if "lambda" in data or "maximal_faces" in data or "facets" in data:
        return "charpair"
    raise SchemaError("cannot tell fan from charpair: expected 'rays'/'max_cones' or 'lambda'/'maximal_faces'")


def _check_keys(data, allowed):
    if not isinstance(data, dict):
        raise SchemaError("top level must be a JSON object")
    for k in data:
        if k not in allowed:
            raise SchemaError(f"unknown field {k!r} (allowed: {', '.join(allowed)})")
    for k in allowed:
        if k not in data:
            raise SchemaError(f"missing field {k!r}")


def fan_from_json(data: dict) -> Fan:
    _check_keys(data, FAN_KEYS)
    dim = _int(data["dim"], "dim")
    rays = _int_rows(data["rays"], "rays")
    cones = _int_rows(data["max_cones"], "max_cones")
    try:
        return Fan(dim, rays, cones)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def charpair_from_json(data: dict) -> CharPair:
    _check_keys(data, CHARPAIR_KEYS)
    dim = _int(data["dim"], "dim")
    d = _int(data["facets"], "facets")
    faces = _int_rows(data["maximal_faces"], "maximal_faces")
    lam = _int_rows(data["lambda"], "lambda")
    try:
        return CharPair(dim, d, faces, lam)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def load(data: dict, kind: str | None = None):
    """Parse a decoded JSON object into a :class:`Fan` or :class:`CharPair`."""
    if not isinstance(data, dict):
        raise SchemaError("top level must be a JSON object")
    kind = kind or detect_kind(data)
    if kind == "fan":
        return fan_from_json(data)
    if kind == "charpair":
        return charpair_from_json(data)
    raise SchemaError(f"unknown input kind {kind!r}")


def loads(text: str, kind: str | None = None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc
    return load(data, kind)


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
