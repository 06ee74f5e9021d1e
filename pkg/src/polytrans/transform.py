"""The cyclic edge-weight transition matrix and its iteration.

Each step maps vertex ``z[i]`` to ``z[i] + w[i] * (z[i+1] - z[i])``. Iterates
are centred and rescaled to unit norm after every step so that dominant
eigenvalues far from the unit circle never overflow; the discarded scale is
kept as a running logarithm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import as_polygon, canonical_phase, check_same_size, normalize_shape, shape_distance

COLLAPSE_RTOL = 1e-14


def as_weights(w) -> np.ndarray:
    return as_polygon(w, "weights")


def lambda_theta_weight(lambda_scalar: float, theta: float) -> complex:
    """Complex weight ``lambda * exp(i*theta)`` of a lambda-theta transformation.

    For ``lambda`` in (0, 1) and ``theta`` in [0, pi/2] this is the classical
    construction; any real ``lambda`` and any angle are accepted.
    """
    return complex(lambda_scalar * math.cos(theta), lambda_scalar * math.sin(theta))


@dataclass(frozen=True)
class TransitionMatrix:
    """Implicit sparse transition matrix defined by one weight per edge."""

    weights: np.ndarray

    @property
    def n(self) -> int:
        return self.weights.size

    def dense(self) -> np.ndarray:
        """Materialise the ``n x n`` matrix (for tests and oracles only)."""
        n = self.n
        m = np.zeros((n, n), dtype=np.complex128)
        idx = np.arange(n)
        m[idx, idx] = 1.0 - self.weights
        m[idx, (idx + 1) % n] += self.weights
        return m

    def __matmul__(self, z):
        return apply_step(z, self.weights)


def build_transition(w) -> TransitionMatrix:
    return TransitionMatrix(as_weights(w))


def apply_step(p, w) -> np.ndarray:
    """One application of the transition matrix, in O(n)."""
    z = as_polygon(p)
    w = as_weights(w)
    check_same_size(z, w, "polygon and weights")
    return z + w * (np.roll(z, -1) - z)


@dataclass(frozen=True)
class Frame:
    step: int
    shape: np.ndarray
    log_scale: float
    distance: float | None = None


@dataclass
class Trajectory:
    """Normalised shapes of ``M**k @ p0`` for ``k = 0, 1, ...``.

    ``log_scale`` of frame ``k`` is ``log`` of the norm of the centred
    ``M**k @ p0``. ``collapsed`` is set when an iterate lost its shape
    (became a point polygon) and the run was cut short.
    """

    frames: list[Frame] = field(default_factory=list)
    collapsed: bool = False

    def __len__(self) -> int:
        return len(self.frames)

    @property
    def distances(self) -> np.ndarray:
        return np.array(
            [np.nan if f.distance is None else f.distance for f in self.frames]
        )

    @property
    def final_shape(self) -> np.ndarray:
        return self.frames[-1].shape


def iterate(p0, w, steps: int, target=None) -> Trajectory:
    """Run ``steps`` transformation steps starting from ``p0``.

    Args:
        p0: start polygon.
        w: edge weights, same length as ``p0``.
        steps: number of applications (``0`` returns only the start frame).
        target: optional polygon; each frame then records its shape distance
            to it.

    Raises:
        DegeneratePolygon: if ``p0`` itself is a point polygon.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    z = as_polygon(p0, "p0")
    w = as_weights(w)
    check_same_size(z, w, "polygon and weights")
    tgt = None
    if target is not None:
        tgt = as_polygon(target, "target")
        check_same_size(z, tgt, "polygon and target")

    def frame(k: int, u: np.ndarray, log_scale: float) -> Frame:
        d = shape_distance(u, tgt) if tgt is not None else None
        return Frame(k, canonical_phase(u), log_scale, d)

    normalize_shape(z)  # raises on a degenerate start
    c = z - np.mean(z)
    norm = float(np.linalg.norm(c))
    u = c / norm
    log_scale = math.log(norm)
    traj = Trajectory([frame(0, u, log_scale)])
    for k in range(1, steps + 1):
        y = u + w * (np.roll(u, -1) - u)
        y -= np.mean(y)
        norm = float(np.linalg.norm(y))
        # u has unit norm, so this is relative to the pre-step norm
        if not norm > COLLAPSE_RTOL:
            traj.collapsed = True
            break
        u = y / norm
        log_scale += math.log(norm)
        traj.frames.append(frame(k, u, log_scale))
    return traj


def fitted_decay_rate(distances, lo: float = 1e-9, hi: float = 1e-2) -> float | None:
    """Per-step geometric decay factor of a distance sequence.

    Fits ``log(d_k)`` linearly in ``k`` over the steps whose distance lies in
    ``[lo, hi]``. Returns ``None`` when fewer than two such steps exist.
    """
    d = np.asarray(distances, dtype=float)
    k = np.arange(d.size)
    mask = np.isfinite(d) & (d >= lo) & (d <= hi)
    if mask.sum() < 2:
        return None
    slope = np.polyfit(k[mask], np.log(d[mask]), 1)[0]
    return float(math.exp(slope))

