"""JSON I/O for matrices and representative sets."""

from __future__ import annotations

import json

from .exactfield import ExactScalar, parse_scalar
from .groups import FAMILIES, GroupElement


class InputError(ValueError):
    pass


def loads(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: malformed JSON at line {exc.lineno} column {exc.colno}"
                         f" (char {exc.pos}): {exc.msg}") from None


def load_file(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return loads(text, path)


def _field(obj: dict, key: str, kind, source: str, default=None):
    if key not in obj:
        if default is not None:
            return default
        raise InputError(f"{source}: missing field {key!r}")
    val = obj[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise InputError(f"{source}: field {key!r} must be an integer")
    if kind is str and not isinstance(val, str):
        raise InputError(f"{source}: field {key!r} must be a string")
    return val


def matrix_from_obj(obj, source: str = "<input>", check: bool = True) -> GroupElement:
    if not isinstance(obj, dict):
        raise InputError(f"{source}: a matrix must be a JSON object")
    family = _field(obj, "family", str, source)
    if family not in FAMILIES:
        raise InputError(f"{source}: family must be one of {', '.join(FAMILIES)}")
    n = _field(obj, "n", int, source)
    p = _field(obj, "p", int, source)
    e = _field(obj, "e", int, source, default=1)
    rows = obj.get("entries")
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise InputError(f"{source}: entries must be an {n}x{n} array")
    try:
        cells = [[parse_scalar(x if isinstance(x, str) else x, p, e) for x in row] for row in rows]
        g = GroupElement(family, n, tuple(tuple(r) for r in cells))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{source}: {exc}") from None
    if check and not g.is_member():
        raise InputError(f"{source}: matrix is not an element of {family}({n})")
    return g


def matrix_to_obj(g: GroupElement) -> dict:
    return {"family": g.family, "n": g.n, "p": g.p, "e": g.e, "entries": g.to_strings()}


def load_matrix(path: str, check: bool = True) -> GroupElement:
    return matrix_from_obj(load_file(path), path, check)


def load_reps(path: str) -> list:
    data = load_file(path)
    if not isinstance(data, list):
        raise InputError(f"{path}: a representative file must be a JSON array of matrices")
    return [matrix_from_obj(obj, f"{path}[{i}]") for i, obj in enumerate(data)]


def scalar_to_str(x: ExactScalar) -> str:
    return str(x)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
