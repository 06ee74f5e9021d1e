"""Complex polygons and translation/scale/rotation invariant shape handling.

A polygon with ``n`` vertices is stored as a one-dimensional ``complex128``
array; vertex ``i + 1`` of the last vertex wraps to vertex ``0``.
"""
from __future__ import annotations

import numpy as np

from .errors import DegeneratePolygon, InvalidPolygon, SizeMismatch

DEGENERACY_RTOL = 1e-14
PHASE_TIE_TOL = 1e-12


def as_polygon(z, name: str = "polygon") -> np.ndarray:
    """Validate ``z`` and return it as a fresh 1-D complex array.

    Accepts any sequence of complex numbers (or an ``(n, 2)`` array of
    ``(re, im)`` rows).
    """
    try:
        arr = np.asarray(z)
        if arr.ndim == 2 and arr.shape[1] == 2 and not np.iscomplexobj(arr):
            arr = arr[:, 0] + 1j * arr[:, 1]
        if arr.ndim > 1:
            raise InvalidPolygon(f"{name}: expected a 1-D vector of complex numbers")
        arr = np.array(arr, dtype=np.complex128).reshape(-1)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidPolygon):
            raise
        raise InvalidPolygon(f"{name}: not a complex vector ({exc})") from None
    if arr.size < 3:
        raise InvalidPolygon(f"{name}: need at least 3 entries, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise InvalidPolygon(f"{name}: entries must be finite")
    return arr


def check_same_size(a: np.ndarray, b: np.ndarray, what: str = "vectors") -> None:
    if a.shape != b.shape:
        raise SizeMismatch(f"{what} differ in length: {a.size} vs {b.size}")


def centroid(p) -> complex:
    """Arithmetic mean of the vertices."""
    return complex(np.mean(as_polygon(p)))


def diameter(p) -> float:
    """Largest distance between any two vertices."""
    z = as_polygon(p)
    return float(np.max(np.abs(z[:, None] - z[None, :])))


def _centered_unit(z: np.ndarray) -> np.ndarray:
    c = z - np.mean(z)
    norm = np.linalg.norm(c)
    diam = float(np.max(np.abs(z[:, None] - z[None, :])))
    if diam == 0.0 or norm <= DEGENERACY_RTOL * diam:
        raise DegeneratePolygon("all vertices coincide; polygon has no shape")
    return c / norm


def canonical_phase(u: np.ndarray) -> np.ndarray:
    """Rotate ``u`` so its largest-modulus entry is a nonnegative real.

    Near-ties (within ``PHASE_TIE_TOL``) resolve to the lowest index.
    """
    mod = np.abs(u)
    k = int(np.flatnonzero(mod >= mod.max() - PHASE_TIE_TOL)[0])
    if mod[k] == 0.0:
        return u.copy()
    out = u * (np.conj(u[k]) / mod[k])
    out[k] = mod[k]
    return out


def normalize_shape(p) -> np.ndarray:
    """Return the canonical shape of ``p``.

    The result is centred (zero mean), has unit Euclidean norm and is
    rotated so that its largest-modulus vertex lies on the positive real
    axis. Two polygons related by ``q = a*p + b`` (``a != 0``) map to the
    same shape.

    Raises:
        DegeneratePolygon: if all vertices coincide.
    """
    return canonical_phase(_centered_unit(as_polygon(p)))


def shape_distance(p, q) -> float:
    """Distance between the shapes of ``p`` and ``q``.

    Both polygons are centred and scaled to unit norm; the optimal complex
    phase aligning ``q`` onto ``p`` is taken in closed form from their inner
    product. Mirror images are *not* identified.
    """
    zp = as_polygon(p, "p")
    zq = as_polygon(q, "q")
    check_same_size(zp, zq, "polygons")
    a = _centered_unit(zp)
    b = _centered_unit(zq)
    c = np.vdot(b, a)
    mod = abs(c)
    phase = c / mod if mod > 0.0 else 1.0
    # evaluated directly rather than as sqrt(2 - 2|c|), which cancels below 1e-8
    return float(np.linalg.norm(a - phase * b))


def translate_to_anchor(p) -> np.ndarray:
    """Translate ``p`` so that its first vertex sits exactly at the origin."""
    z = as_polygon(p)
    out = z - z[0]
    out[0] = 0.0
    return out
