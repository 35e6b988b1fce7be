"""Scheme and report JSON: exact numbers travel as strings.

Scheme document:

    {"n": int,
     "field": {"kind": "rational"} | {"kind": "prime", "p": int},
     "points": [{"coords": ["1", "-3/2", ...], "m": int}, ...]}

Serialization is canonical (sorted keys, fixed separators, no floats), so
equal inputs give byte-identical files; the scheme fingerprint is a SHA-256
prefix of that canonical form.
"""

from __future__ import annotations

import hashlib
import json

from .errors import InvalidInputError
from .fields import field_from_descriptor
from .geometry import ProjectivePoint
from .schemes import FatPointScheme


def scheme_to_obj(z: FatPointScheme) -> dict:
    field = z.field
    return {
        "n": z.n,
        "field": field.describe(),
        "points": [
            {"coords": [field.to_string(c) for c in p.coords], "m": m}
            for p, m in z.items
        ],
    }


def scheme_from_obj(obj) -> FatPointScheme:
    if not isinstance(obj, dict):
        raise InvalidInputError("scheme document must be a JSON object")
    try:
        n = obj["n"]
        field_desc = obj["field"]
        points = obj["points"]
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"scheme document missing key: {exc}") from exc
    if not isinstance(n, int):
        raise InvalidInputError(f"'n' must be an integer, got {n!r}")
    field = field_from_descriptor(field_desc)
    if not isinstance(points, list) or not points:
        raise InvalidInputError("'points' must be a nonempty list")
    items = []
    for entry in points:
        if not isinstance(entry, dict) or "coords" not in entry or "m" not in entry:
            raise InvalidInputError(f"malformed point entry: {entry!r}")
        coords = entry["coords"]
        if not isinstance(coords, list) or len(coords) != n + 1:
            raise InvalidInputError(f"point needs {n + 1} coordinate strings, got {coords!r}")
        values = [field.from_string(str(c)) for c in coords]
        m = entry["m"]
        if not isinstance(m, int):
            raise InvalidInputError(f"multiplicity must be an integer, got {m!r}")
        items.append((ProjectivePoint.make(field, values), m))
    return FatPointScheme.make(field, n, items)


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def scheme_fingerprint(z: FatPointScheme) -> str:
    digest = hashlib.sha256(dumps_canonical(scheme_to_obj(z)).encode("ascii"))
    return digest.hexdigest()[:16]


def save_scheme(z: FatPointScheme, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_canonical(scheme_to_obj(z)) + "\n")


def load_scheme(path: str) -> FatPointScheme:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InvalidInputError(f"cannot read scheme file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"scheme file {path!r} is not valid JSON: {exc}") from exc
    return scheme_from_obj(obj)
