"""File formats for tensors, decompositions, and Voigt matrices.

Tensor JSON: {"order": n, "components": [... 3^n floats, row-major ...]}.
Decomposition JSON: {"order": n, "parts": [{"s", "J", "deviator", "embedded"}]}
where deviator/embedded are nested tensor objects.  Voigt matrices travel as
a JSON array of 6 rows or as whitespace-delimited 6-line text.

Writers are hand-rolled for these fixed shapes so every float is emitted
with 17 significant digits; that makes write/read round-trips lossless and
output byte-stable, which the stdlib json encoder does not let us control.
Readers use ``json.loads`` plus validation that names the offending field.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .core import as_tensor
from .decomposition import Decomposition, IrreduciblePart

__all__ = [
    "fmt_float",
    "tensor_to_json",
    "tensor_from_json",
    "save_tensor",
    "load_tensor",
    "decomposition_to_json",
    "decomposition_from_json",
    "save_decomposition",
    "load_decomposition",
    "voigt_to_json",
    "voigt_to_text",
    "voigt_from_text",
    "save_voigt",
    "load_voigt",
]


def fmt_float(x: float) -> str:
    """Shortest-of-17-significant-digits decimal form; rejects non-finite."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return format(x, ".17g")


def _components(t: np.ndarray) -> str:
    return ", ".join(fmt_float(c) for c in t.ravel())


def tensor_to_json(t) -> str:
    t = as_tensor(t)
    return f'{{"order": {t.ndim}, "components": [{_components(t)}]}}'


def _fail(context: str, message: str):
    where = f"{context}: " if context else ""
    raise ValueError(f"{where}{message}")


def _get(obj: dict, key: str, context: str):
    if not isinstance(obj, dict):
        _fail(context, f"expected a JSON object, got {type(obj).__name__}")
    if key not in obj:
        _fail(context, f"missing field {key!r}")
    return obj[key]


def _tensor_from_obj(obj, context: str) -> np.ndarray:
    order = _get(obj, "order", context)
    if not isinstance(order, int) or isinstance(order, bool) or order < 0:
        _fail(context, f"field 'order' must be a non-negative integer, got {order!r}")
    components = _get(obj, "components", context)
    if not isinstance(components, list):
        _fail(context, "field 'components' must be an array")
    expected = 3**order
    if len(components) != expected:
        _fail(
            context,
            f"field 'components' has length {len(components)}, expected 3^{order} = {expected}",
        )
    for i, c in enumerate(components):
        if not isinstance(c, (int, float)) or isinstance(c, bool):
            _fail(context, f"components[{i}] is not a number: {c!r}")
    return np.array(components, dtype=float).reshape((3,) * order)


def _loads(text: str, context: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(context, f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")


def tensor_from_json(text: str, context: str = "tensor") -> np.ndarray:
    return _tensor_from_obj(_loads(text, context), context)


def save_tensor(path, t) -> None:
    with open(path, "w") as fh:
        fh.write(tensor_to_json(t))
        fh.write("\n")


def load_tensor(path) -> np.ndarray:
    with open(path) as fh:
        return tensor_from_json(fh.read(), context=str(path))


def decomposition_to_json(d: Decomposition) -> str:
    lines = [f'{{"order": {d.order}, "parts": [']
    for i, part in enumerate(d.parts):
        sep = "," if i + 1 < len(d.parts) else ""
        lines.append(
            f'  {{"s": {part.s}, "J": {part.J}, '
            f'"deviator": {tensor_to_json(part.deviator)}, '
            f'"embedded": {tensor_to_json(part.embedded)}}}{sep}'
        )
    lines.append("]}")
    return "\n".join(lines)


def decomposition_from_json(text: str, context: str = "decomposition") -> Decomposition:
    obj = _loads(text, context)
    order = _get(obj, "order", context)
    if not isinstance(order, int) or isinstance(order, bool) or order < 0:
        _fail(context, f"field 'order' must be a non-negative integer, got {order!r}")
    raw_parts = _get(obj, "parts", context)
    if not isinstance(raw_parts, list):
        _fail(context, "field 'parts' must be an array")
    parts = []
    for i, raw in enumerate(raw_parts):
        where = f"{context}: parts[{i}]"
        s = _get(raw, "s", where)
        j = _get(raw, "J", where)
        for name, value in (("s", s), ("J", j)):
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                _fail(where, f"field {name!r} must be a non-negative integer, got {value!r}")
        deviator = _tensor_from_obj(_get(raw, "deviator", where), f"{where}.deviator")
        embedded = _tensor_from_obj(_get(raw, "embedded", where), f"{where}.embedded")
        if deviator.ndim != s:
            _fail(where, f"deviator order {deviator.ndim} does not match s = {s}")
        if embedded.ndim != order:
            _fail(where, f"embedded order {embedded.ndim} does not match tensor order {order}")
        parts.append(IrreduciblePart(s=s, J=j, deviator=deviator, embedded=embedded))
    return Decomposition(order=order, parts=tuple(parts))


def save_decomposition(path, d: Decomposition) -> None:
    with open(path, "w") as fh:
        fh.write(decomposition_to_json(d))
        fh.write("\n")


def load_decomposition(path) -> Decomposition:
    with open(path) as fh:
        return decomposition_from_json(fh.read(), context=str(path))


# ---------------------------------------------------------------------------
# Voigt matrices

def _as_voigt(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.shape != (6, 6):
        raise ValueError(f"Voigt matrix must be 6x6, got shape {m.shape}")
    return m


def voigt_to_json(m) -> str:
    m = _as_voigt(m)
    rows = ",\n".join(f" [{_components(row)}]" for row in m)
    return f"[\n{rows}\n]"


def voigt_to_text(m) -> str:
    m = _as_voigt(m)
    return "\n".join(" ".join(fmt_float(x) for x in row) for row in m)


def voigt_from_text(text: str, context: str = "voigt") -> np.ndarray:
    """Parse a Voigt matrix from JSON rows or whitespace-delimited text."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        obj = _loads(text, context)
        if not isinstance(obj, list) or len(obj) != 6:
            _fail(context, "expected a JSON array of 6 rows")
        for i, row in enumerate(obj):
            if not isinstance(row, list) or len(row) != 6:
                _fail(context, f"row {i} must be an array of 6 numbers")
            for j, x in enumerate(row):
                if not isinstance(x, (int, float)) or isinstance(x, bool):
                    _fail(context, f"entry [{i}][{j}] is not a number: {x!r}")
        return np.array(obj, dtype=float)
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if len(rows) != 6 or any(len(row) != 6 for row in rows):
        _fail(context, "expected 6 lines of 6 whitespace-delimited numbers")
    try:
        return np.array([[float(x) for x in row] for row in rows])
    except ValueError:
        _fail(context, "non-numeric entry in whitespace-delimited matrix")


def save_voigt(path, m, fmt: str = "json") -> None:
    if fmt == "json":
        payload = voigt_to_json(m)
    elif fmt == "text":
        payload = voigt_to_text(m)
    else:
        raise ValueError(f"format must be 'json' or 'text', got {fmt!r}")
    with open(path, "w") as fh:
        fh.write(payload)
        fh.write("\n")


def load_voigt(path) -> np.ndarray:
    with open(path) as fh:
        return voigt_from_text(fh.read(), context=str(path))
