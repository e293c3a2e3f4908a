"""JSON encodings for scalars, algebras and extended specs.

Algebra files::

    {"dim": n, "structure": [[i, j, k, {"re": "p/q", "im": "p/q"}], ...]}

list only nonzero constants with 1-based indices.  Spec files::

    {"dim": n, "f": [s, ...], "g": [s, ...], "h": [[s, ...], ...], "c": [s, ...]}

where each ``s`` is a scalar object (plain ``"p/q"`` strings and integers are
accepted on input as well).  Omitting ``h`` and ``c`` gives a pair spec.
"""

from __future__ import annotations

import json
from pathlib import Path

from .construct import ExtendedSpec, PairSpec
from .core import Algebra, LieAlgebra, SymBilinearForm
from .linalg import Matrix
from .scalar import Scalar, as_scalar, format_scalar, parse_scalar

__all__ = [
    "FormatError",
    "encode_scalar",
    "decode_scalar",
    "algebra_to_json",
    "algebra_from_json",
    "spec_to_json",
    "spec_from_json",
    "read_algebra",
    "write_algebra",
    "read_spec",
]


class FormatError(ValueError):
    """Malformed input file."""


def _fmt_part(q) -> str:
    return format_scalar(Scalar(q))


def encode_scalar(s: Scalar) -> dict:
    s = as_scalar(s)
    return {"re": _fmt_part(s.re), "im": _fmt_part(s.im)}


def decode_scalar(obj) -> Scalar:
    try:
        if isinstance(obj, dict):
            extra = set(obj) - {"re", "im"}
            if extra:
                raise FormatError(f"unexpected scalar keys {sorted(extra)}")
            return Scalar(str(obj.get("re", "0")), str(obj.get("im", "0")))
        if isinstance(obj, bool):
            raise FormatError("booleans are not scalars")
        if isinstance(obj, int):
            return as_scalar(obj)
        if isinstance(obj, str):
            return parse_scalar(obj)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad scalar {obj!r}: {exc}") from None
    raise FormatError(f"bad scalar {obj!r}")


def _dim(obj) -> int:
    if not isinstance(obj, dict) or "dim" not in obj:
        raise FormatError("missing 'dim'")
    n = obj["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError(f"'dim' must be a positive integer, got {n!r}")
    return n


def algebra_to_json(a: Algebra) -> dict:
    entries = [[i + 1, j + 1, k + 1, encode_scalar(v)] for i, j, k, v in a.nonzero()]
    return {"dim": a.dim, "structure": entries}


def algebra_from_json(obj, *, lie: bool = False) -> Algebra:
    n = _dim(obj)
    entries = obj.get("structure")
    if not isinstance(entries, list):
        raise FormatError("'structure' must be a list")
    seen = set()
    products: dict = {}
    for entry in entries:
        if not (isinstance(entry, list) and len(entry) == 4):
            raise FormatError(f"structure entry must be [i, j, k, scalar]: {entry!r}")
        i, j, k, val = entry
        if not all(isinstance(t, int) and not isinstance(t, bool) for t in (i, j, k)):
            raise FormatError(f"indices must be integers: {entry!r}")
        if not all(1 <= t <= n for t in (i, j, k)):
            raise FormatError(f"index out of range 1..{n}: {entry!r}")
        if (i, j, k) in seen:
            raise FormatError(f"duplicate triple ({i}, {j}, {k})")
        seen.add((i, j, k))
        products.setdefault((i, j), {})[k] = decode_scalar(val)
    a = Algebra.from_products(n, products)
    return LieAlgebra(a.c) if lie else a


def _vector(obj, n: int, name: str) -> tuple:
    if not isinstance(obj, list) or len(obj) != n:
        raise FormatError(f"'{name}' must be a list of {n} scalars")
    return tuple(decode_scalar(v) for v in obj)


def spec_to_json(spec) -> dict:
    out = {"dim": spec.dim,
           "f": [encode_scalar(v) for v in spec.f.coeffs],
           "g": [encode_scalar(v) for v in spec.g.coeffs]}
    if isinstance(spec, ExtendedSpec):
        out["h"] = [[encode_scalar(v) for v in row] for row in spec.h.gram.rows]
        out["c"] = [encode_scalar(v) for v in spec.c]
    return out


def spec_from_json(obj):
    """Extended spec, or a :class:`PairSpec` when ``h`` and ``c`` are absent."""
    n = _dim(obj)
    f = _vector(obj.get("f"), n, "f")
    g = _vector(obj.get("g"), n, "g")
    has_h, has_c = "h" in obj, "c" in obj
    try:
        if not has_h and not has_c:
            return PairSpec(f=f, g=g)
        if has_h != has_c:
            raise FormatError("'h' and 'c' must be given together")
        rows = obj["h"]
        if not isinstance(rows, list) or len(rows) != n:
            raise FormatError(f"'h' must be a {n} x {n} matrix")
        h = Matrix([_vector(r, n, "h row") for r in rows])
        return ExtendedSpec(f=f, g=g, h=SymBilinearForm(h), c=_vector(obj["c"], n, "c"))
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def _load(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg})") from None


def read_algebra(path, *, lie: bool = False) -> Algebra:
    return algebra_from_json(_load(path), lie=lie)


def write_algebra(a: Algebra, path) -> None:
    Path(path).write_text(json.dumps(algebra_to_json(a), indent=1) + "\n", encoding="utf-8")


def read_spec(path):
    return spec_from_json(_load(path))
