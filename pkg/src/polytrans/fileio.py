"""JSON polygon/weight files and JSON-lines trajectories.

Floats are written with 17 significant digits so every double survives a
write/read cycle bit for bit.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import PolyTransError
from .transform import Trajectory


class FileFormatError(PolyTransError, ValueError):
    """A polygon or weights document failed to parse or validate."""


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite value {x!r}")
    return format(x + 0.0, ".17g")


def dumps(obj) -> str:
    """Compact deterministic JSON with 17-significant-digit floats."""
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps([obj.real, obj.imag])
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def pairs(z) -> list[list[float]]:
    return [[float(c.real), float(c.imag)] for c in np.asarray(z, dtype=np.complex128)]


def _reject_constant(name):
    raise FileFormatError(f"non-finite literal {name} not allowed")


def parse_vector(text: str, key: str) -> np.ndarray:
    """Parse ``{"<key>": [[re, im], ...]}`` into a complex array (n >= 3)."""
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or key not in doc:
        raise FileFormatError(f'expected an object with field "{key}"')
    rows = doc[key]
    if not isinstance(rows, list):
        raise FileFormatError(f'field "{key}" must be a list of [re, im] pairs')
    if len(rows) < 3:
        raise FileFormatError(f'field "{key}" needs at least 3 entries, got {len(rows)}')
    out = np.empty(len(rows), dtype=np.complex128)
    for i, row in enumerate(rows):
        ok = (
            isinstance(row, list)
            and len(row) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in row)
        )
        if not ok:
            raise FileFormatError(f'field "{key}"[{i}] must be a pair of numbers')
        re, im = float(row[0]), float(row[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise FileFormatError(f'field "{key}"[{i}] is not finite')
        out[i] = complex(re, im)
    return out


def read_polygon(path) -> np.ndarray:
    return parse_vector(Path(path).read_text(encoding="utf-8"), "vertices")


def read_weights(path) -> np.ndarray:
    return parse_vector(Path(path).read_text(encoding="utf-8"), "weights")


def polygon_document(z) -> str:
    return dumps({"vertices": pairs(z)}) + "\n"


def weights_document(w) -> str:
    return dumps({"weights": pairs(w)}) + "\n"


def write_polygon(path, z) -> None:
    Path(path).write_text(polygon_document(z), encoding="utf-8")


def write_weights(path, w) -> None:
    Path(path).write_text(weights_document(w), encoding="utf-8")


def trajectory_lines(traj: Trajectory):
    """Yield one JSON line per frame."""
    for f in traj.frames:
        yield dumps(
            {
                "step": f.step,
                "vertices": pairs(f.shape),
                "log_scale": f.log_scale,
                "distance": f.distance,
            }
        )


def parse_trajectory(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]
