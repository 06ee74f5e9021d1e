"""Inverse design: weights whose iteration converges to a prescribed shape.

For a target ``v`` the auxiliary weights ``wt[i] = v[i] / (v[i+1] - v[i])``
make ``v`` an eigenvector with eigenvalue 2. Scaling them by a complex
``lam`` keeps every eigenvector and maps the eigenvalues of ``M - I`` from
``mu`` to ``lam * mu``, so the target's eigenvalue becomes ``1 + lam`` and
each competitor ``1 + lam * mu_i``. A design converges when ``1 + lam`` is
strictly largest in modulus.

After translating the target so that ``v[0] == 0`` the competing values are
simply ``mu_i = -wt[i]`` for ``i = 1 .. n-2``.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DuplicateConsecutiveVertices,
    SizeMismatch,
    TargetEigenvalueCollision,
    ZeroCompetingEigenvalue,
)
from .geometry import as_polygon, diameter, translate_to_anchor
from .transform import apply_step, as_weights

UNIT_TOL = 1e-12
COLLISION_TOL = 1e-10
DISTINCT_RTOL = 1e-12

GRID_RADII = np.logspace(-3, 3, 25)
GRID_ANGLES = 2.0 * np.pi * np.arange(64) / 64


class RegionKind(str, enum.Enum):
    CIRCLE_EXTERIOR = "CircleExterior"
    HALF_PLANE = "HalfPlane"
    CIRCLE_INTERIOR = "CircleInterior"
    EMPTY = "Empty"


class DesignStatus(str, enum.Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    DEGENERATE_TARGET = "DegenerateTarget"
    EIGENVALUE_COLLISION = "TargetEigenvalueCollision"


@dataclass(frozen=True)
class LambdaRegion:
    """Set of scalings ``lam`` with ``|1 + lam| > |1 + lam * mu|``.

    Circles have centre ``omega`` and radius ``|omega|`` (so they pass
    through the origin). The half plane is ``Re(lam * conj(direction)) > 0``.
    """

    kind: RegionKind
    mu: complex
    omega: complex | None = None
    direction: complex | None = None

    @property
    def radius(self) -> float | None:
        return None if self.omega is None else abs(self.omega)

    def contains(self, lam):
        return region_contains(self, lam)

    def describe(self) -> str:
        if self.kind is RegionKind.EMPTY:
            return "Empty"
        if self.kind is RegionKind.HALF_PLANE:
            d = self.direction
            return f"HalfPlane normal ({_g(d.real)},{_g(d.imag)})"
        o = self.omega
        return f"{self.kind.value} center ({_g(o.real)},{_g(o.imag)}) radius {_g(abs(o))}"


def _g(x: float) -> str:
    return f"{x + 0.0:.12g}"


def direct_dominance(lam, mu):
    """Literal test of ``|1 + lam|**2 > |1 + lam*mu|**2`` (vectorised)."""
    lam = np.asarray(lam, dtype=np.complex128)
    out = np.abs(1.0 + lam) ** 2 > np.abs(1.0 + lam * mu) ** 2
    return bool(out) if out.ndim == 0 else out


def omega_of(mu: complex) -> complex:
    """Centre of the circular region for ``|mu| != 1``."""
    mu = complex(mu)
    return (1.0 - mu.conjugate()) / (abs(mu) ** 2 - 1.0)


def lambda_region(mu: complex) -> LambdaRegion:
    mu = complex(mu)
    if abs(mu - 1.0) <= UNIT_TOL:
        return LambdaRegion(RegionKind.EMPTY, mu)
    m = abs(mu)
    if abs(m - 1.0) <= UNIT_TOL:
        # |1+l|^2 - |1+l mu|^2 = 2 Re(l (1 - mu)) on the unit circle
        return LambdaRegion(RegionKind.HALF_PLANE, mu, direction=1.0 - mu.conjugate())
    kind = RegionKind.CIRCLE_EXTERIOR if m < 1.0 else RegionKind.CIRCLE_INTERIOR
    return LambdaRegion(kind, mu, omega=omega_of(mu))


def region_contains(region: LambdaRegion, lam):
    """Strict geometric membership test (vectorised over ``lam``)."""
    lam = np.asarray(lam, dtype=np.complex128)
    if region.kind is RegionKind.EMPTY:
        out = np.zeros(lam.shape, dtype=bool)
    elif region.kind is RegionKind.HALF_PLANE:
        out = (lam * np.conj(region.direction)).real > 0.0
    else:
        # |l - w|^2 - |w|^2 expanded so |w|^2 cancels exactly
        power = np.abs(lam) ** 2 - 2.0 * (lam * np.conj(region.omega)).real
        out = power > 0.0 if region.kind is RegionKind.CIRCLE_EXTERIOR else power < 0.0
    return bool(out) if out.ndim == 0 else out


def aux_weights(v) -> np.ndarray:
    """Auxiliary weights ``v[i] / (v[i+1] - v[i])`` (cyclic).

    Raises:
        DuplicateConsecutiveVertices: two adjacent vertices (nearly) coincide.
    """
    v = as_polygon(v, "target")
    edges = np.roll(v, -1) - v
    scale = diameter(v)
    bad = np.flatnonzero(np.abs(edges) <= DISTINCT_RTOL * scale)
    if bad.size:
        raise DuplicateConsecutiveVertices(int(bad[0]))
    wt = v / edges
    if v[0] == 0:
        wt[0] = 0.0
        wt[-1] = -1.0
    return wt


def verify_target_eigen(v, wt) -> float:
    """Relative residual ``|M~ v - 2 v| / |v|`` of the eigenvalue-2 identity."""
    v = as_polygon(v, "target")
    wt = as_weights(wt)
    if v.size != wt.size:
        raise SizeMismatch(f"target has {v.size} vertices, weights {wt.size}")
    return float(np.linalg.norm(apply_step(v, wt) - 2.0 * v) / np.linalg.norm(v))


def competing_mus(v) -> np.ndarray:
    """Competing eigenvalues of ``M~ - I`` for the target anchored at ``v[0]``.

    Returns ``-wt[1:-1]``; the remaining roots ``0`` (translation) and ``1``
    (the target itself) are excluded.

    Raises:
        DuplicateConsecutiveVertices: see :func:`aux_weights`.
        TargetEigenvalueCollision: a competitor equals 1, which no scaling
            can separate from the target.
    """
    wt = aux_weights(translate_to_anchor(v))
    mus = -wt[1:-1]
    hits = np.flatnonzero(np.abs(mus - 1.0) <= COLLISION_TOL)
    if hits.size:
        i = int(hits[0])
        raise TargetEigenvalueCollision(i + 1, complex(mus[i]))
    return mus


def dominance_margin(lam, mus):
    """``min_i (|1+lam| - |1+lam*mu_i|) / |1+lam|``; 1 when there are no competitors."""
    lam = np.asarray(lam, dtype=np.complex128)
    mus = np.asarray(mus, dtype=np.complex128).reshape(-1)
    dom = np.abs(1.0 + lam)
    if mus.size == 0:
        comp = np.zeros_like(dom)
    else:
        comp = np.max(np.abs(1.0 + lam[..., None] * mus), axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        m = np.where(dom > 0.0, (dom - comp) / dom, -np.inf)
    return float(m) if m.ndim == 0 else m


@dataclass(frozen=True)
class SpectralScaling:
    lam: complex
    margin: float

    @property
    def rate(self) -> float:
        return 1.0 - self.margin


@dataclass
class DesignResult:
    status: DesignStatus
    weights: np.ndarray | None = None
    lam: complex | None = None
    dominant: complex | None = None
    competing: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.complex128))
    predicted_rate: float | None = None
    margin: float | None = None
    mus: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.complex128))
    detail: str = ""
    anchor: int = 0

    @property
    def feasible(self) -> bool:
        return self.status is DesignStatus.FEASIBLE

    @property
    def regions(self) -> list[LambdaRegion]:
        return [lambda_region(m) for m in self.mus]


def _scaled(wt: np.ndarray, lam: complex) -> np.ndarray:
    w = lam * wt
    w[wt == 0] = 0.0  # no signed zeros
    return w


def design_triangle(v) -> DesignResult:
    """One-step design for a triangle target.

    With ``mu = sum(wt[i] * wt[i+1])`` (cyclic) the scaling ``lam = -1/mu``
    sends the only competing eigenvalue to zero, so any start triangle reaches
    the target shape after a single step.
    """
    v = as_polygon(v, "target")
    if v.size != 3:
        raise SizeMismatch(f"triangle design needs n=3, got {v.size}")
    wt = aux_weights(translate_to_anchor(v))
    mu = complex(np.sum(wt * np.roll(wt, -1)))
    if abs(mu) <= 1e-14:
        raise ZeroCompetingEigenvalue("sum of adjacent auxiliary weight products is zero")
    lam = -1.0 / mu
    return DesignResult(
        status=DesignStatus.FEASIBLE,
        weights=_scaled(wt, lam),
        lam=lam,
        dominant=1.0 + lam,
        competing=np.zeros(1, dtype=np.complex128),
        predicted_rate=0.0,
        margin=1.0,
        mus=np.array([mu]),
    )


def _modulus_class(mu: complex) -> int:
    m = abs(mu)
    if abs(m - 1.0) <= UNIT_TOL:
        return 0
    return -1 if m < 1.0 else 1


def _unit(z: complex) -> complex | None:
    a = abs(z)
    return None if a == 0.0 else z / a


def quadrangle_case_lambda(mu2: complex, mu3: complex) -> list[complex]:
    """Scaling candidates for quadrangles from the nine modulus cases.

    Alongside each tabulated formula this also emits variants with the
    half-plane direction ``1 - conj(mu)`` and with the circle/half-plane
    roles repaired where the table refers to a centre that does not exist
    for ``|mu| == 1``. Candidates are unverified; callers must check them.
    """
    mu2, mu3 = complex(mu2), complex(mu3)
    if abs(mu2 - 1.0) <= UNIT_TOL or abs(mu3 - 1.0) <= UNIT_TOL:
        return []
    c2, c3 = _modulus_class(mu2), _modulus_class(mu3)
    w2 = omega_of(mu2) if c2 else None
    w3 = omega_of(mu3) if c3 else None
    lit2, lit3 = mu2.conjugate() - 1.0, mu3.conjugate() - 1.0
    out: list[complex] = []

    def toward(a: complex, b: complex, dist_fn):
        u = _unit(b - a)
        if u is not None:
            out.append(a + u * dist_fn(abs(b - a)))

    def line_dist(point: complex, normal: complex) -> float:
        n_hat = _unit(normal)
        return abs((point * np.conj(n_hat)).real)

    if c2 == -1 and c3 == -1:
        out.append(2.0 * (w2 + w3))
    elif c2 == -1 and c3 == 0:
        out.append(3.0 * abs(w2) * lit2)
        for d in (lit3, -lit3, _unit(-lit3)):
            out.append(3.0 * abs(w2) * d)
    elif c2 == 0 and c3 == -1:
        for d in (lit3, lit2, -lit2, _unit(-lit2)):
            out.append(3.0 * abs(w3) * d)
    elif c2 == 0 and c3 == 0:
        out.append(lit2 + lit3)
        out.append(-lit2 - lit3)
    elif c2 == 0 and c3 == 1:
        x = line_dist(w3, lit2)
        for d in (_unit(lit2), _unit(-lit2)):
            out.append(w3 + d * (x + x + abs(w3)) / 2.0)
            out.append(w3 + d * abs(w3) / 2.0)
    elif c2 == 1 and c3 == 0:
        for normal in (lit2, lit3):
            x = line_dist(w2, normal)
            for d in (_unit(lit3), _unit(-lit3)):
                out.append(w2 + d * (x + x + abs(w2)) / 2.0)
        for d in (_unit(lit3), _unit(-lit3)):
            out.append(w2 + d * abs(w2) / 2.0)
    elif c2 == 1 and c3 == 1:
        toward(w2, w3, lambda dist: (abs(w2) + dist - abs(w3)) / 2.0)
    else:
        # one interior and one exterior circle, either order
        toward(w2, w3, lambda dist: (dist + abs(w3) + abs(w2)) / 2.0)
        toward(w3, w2, lambda dist: (dist + abs(w2) + abs(w3)) / 2.0)
    return [complex(c) for c in out if c is not None and np.isfinite(c)]


def _minimax_rate_candidates(mus: np.ndarray) -> list[complex]:
    """Scalings that minimise ``max_i |1 + lam mu_i| / |1 + lam|`` exactly.

    With ``s = 1 / (1 + lam)`` the ratio for competitor ``i`` equals
    ``a_i |s - c_i|`` where ``a_i = |1 - mu_i|`` and ``c_i = mu_i / (mu_i - 1)``,
    a convex weighted-distance minimax. Its optimum has one, two or three
    active terms, so enumerating the centres, the weighted pair points and
    the weighted three-way equidistant points and keeping the best is exact.
    """
    a = np.abs(1.0 - mus)
    c = mus / (mus - 1.0)
    m = mus.size
    pts = list(c)
    for i, j in itertools.combinations(range(m), 2):
        pts.append(c[i] + (c[j] - c[i]) * a[j] / (a[i] + a[j]))
    if m <= 24:
        for i, j, k in itertools.combinations(range(m), 3):
            pts.extend(_weighted_equidistant(c[[i, j, k]], a[[i, j, k]]))
    pts = np.array(pts, dtype=np.complex128)
    pts = pts[np.isfinite(pts)]
    if pts.size == 0:
        return []
    vals = np.max(a * np.abs(pts[:, None] - c), axis=1)
    best = pts[np.argmin(vals)]
    if abs(best) < 1e-300:
        return []
    return [complex(1.0 / best - 1.0)]


def _weighted_equidistant(c: np.ndarray, a: np.ndarray) -> list[complex]:
    """Points ``s`` with ``a0|s-c0| = a1|s-c1| = a2|s-c2|``.

    Each equality ``a_i^2 |s - c_i|^2 = a_j^2 |s - c_j|^2`` is
    ``A |s|^2 - 2 Re(s conj(B)) + C = 0`` with real ``A, C``; the difference
    of two such equations (after removing ``|s|^2``) is a line, which is then
    intersected with one of them.
    """
    w = a**2
    eqs = []
    for i, j in ((0, 1), (0, 2)):
        A = w[i] - w[j]
        B = w[i] * c[i] - w[j] * c[j]
        C = w[i] * abs(c[i]) ** 2 - w[j] * abs(c[j]) ** 2
        eqs.append((A, B, C))
    (A1, B1, C1), (A2, B2, C2) = eqs
    scale = max(abs(A1), abs(A2), 1e-300)
    if abs(A1) <= 1e-14 * scale and abs(A2) <= 1e-14 * scale:
        # two lines
        return _line_line(B1, C1, B2, C2)
    if abs(A1) < abs(A2):
        (A1, B1, C1), (A2, B2, C2) = (A2, B2, C2), (A1, B1, C1)
    # eliminate |s|^2: A2*eq1 - A1*eq2 is linear
    Bl = A2 * B1 - A1 * B2
    Cl = A2 * C1 - A1 * C2
    # line: -2 Re(s conj(Bl)) + Cl = 0, circle: |s - B1/A1|^2 = |B1/A1|^2 - C1/A1
    if abs(Bl) == 0.0:
        return []
    centre = B1 / A1
    r2 = abs(centre) ** 2 - C1 / A1
    if r2 < 0.0:
        return []
    n_hat = Bl / abs(Bl)
    offset = Cl / (2.0 * abs(Bl))  # line is Re(s conj(n_hat)) = offset
    dist = offset - (centre * np.conj(n_hat)).real
    h2 = r2 - dist**2
    if h2 < 0.0:
        return []
    foot = centre + dist * n_hat
    h = math.sqrt(h2)
    return [foot + 1j * n_hat * h, foot - 1j * n_hat * h]


def _line_line(B1, C1, B2, C2) -> list[complex]:
    # Re(s conj(B)) = C/2 for two lines; solve the 2x2 real system
    mat = np.array([[B1.real, B1.imag], [B2.real, B2.imag]])
    if abs(np.linalg.det(mat)) < 1e-300:
        return []
    x, y = np.linalg.solve(mat, np.array([C1 / 2.0, C2 / 2.0]))
    return [complex(x, y)]


def _rank_key(lam: complex, margin: float):
    return (margin, -abs(lam), math.atan2(lam.imag, lam.real))


def search_lambda(mus, seed: int = 0, extra_candidates=()) -> SpectralScaling | None:
    """Scaling with the largest dominance margin over all competitors.

    Evaluates closed-form candidates (the exact minimax optimum, ``-1/mu``,
    region centres, and for two competitors the quadrangle table), a fixed
    log-polar grid, and then a seeded local refinement around the best
    points. Returns ``None`` when no evaluated scaling has a positive margin
    or a competitor equals 1.
    """
    mus = np.asarray(mus, dtype=np.complex128).reshape(-1)
    if mus.size == 0:
        return SpectralScaling(1.0 + 0.0j, 1.0)
    if np.any(np.abs(mus - 1.0) <= COLLISION_TOL):
        return None

    cands = [complex(c) for c in extra_candidates]
    cands += _minimax_rate_candidates(mus)
    for mu in mus:
        if mu != 0:
            cands.append(-1.0 / mu)
        if _modulus_class(mu):
            om = omega_of(mu)
            cands += [om, 2.0 * om]
        else:
            cands.append(1.0 - mu.conjugate())
    if mus.size == 2:
        cands += quadrangle_case_lambda(mus[0], mus[1])
    grid = (GRID_RADII[:, None] * np.exp(1j * GRID_ANGLES)[None, :]).ravel()
    pts = np.concatenate([np.array(cands, dtype=np.complex128), grid])
    pts = pts[np.isfinite(pts)]
    margins = dominance_margin(pts, mus)

    order = sorted(range(pts.size), key=lambda i: _rank_key(complex(pts[i]), margins[i]), reverse=True)
    best_lam, best_m = complex(pts[order[0]]), float(margins[order[0]])
    rng = np.random.default_rng(seed)
    for i in order[:3]:
        lam, m = _refine(complex(pts[i]), float(margins[i]), mus, rng)
        if _rank_key(lam, m) > _rank_key(best_lam, best_m):
            best_lam, best_m = lam, m

    if not best_m > 0.0:
        return None
    if not all(direct_dominance(best_lam, mu) for mu in mus):
        return None
    return SpectralScaling(best_lam, best_m)


def _refine(lam: complex, margin: float, mus: np.ndarray, rng, n_dirs: int = 12):
    """Seeded random pattern search on the margin; accepts only clear gains."""
    step = 0.25 * max(abs(lam), 1e-3)
    floor = 1e-10 * max(abs(lam), 1e-3)
    while step > floor:
        trial = lam + step * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, n_dirs))
        tm = dominance_margin(trial, mus)
        k = int(np.argmax(tm))
        if tm[k] > margin + 1e-12:
            lam, margin = complex(trial[k]), float(tm[k])
        else:
            step *= 0.5
    return lam, margin


ANCHOR_TIE_TOL = 1e-9


def design_general(v, seed: int = 0, anchor: int | str = 0) -> DesignResult:
    """Design weights for an arbitrary target polygon (``n >= 3``).

    The target is translated so that vertex ``anchor`` sits at the origin;
    triangles use the one-step closed form and larger polygons the
    margin-maximising scaling search. With ``anchor="best"`` every vertex is
    tried and the largest margin wins (ties within ``ANCHOR_TIE_TOL`` go to
    the lowest index). Non-feasible outcomes are returned as a status, not
    raised.
    """
    v = as_polygon(v, "target")
    if anchor == "best":
        best = None
        for k in range(v.size):
            r = design_general(v, seed=seed, anchor=k)
            if not r.feasible:
                if best is None:
                    best = r
                continue
            if best is None or not best.feasible or r.margin > best.margin + ANCHOR_TIE_TOL:
                best = r
        return best
    k = int(anchor) % v.size
    r = _design_anchored(np.roll(v, -k), seed)
    if k:
        r.anchor = k
        if r.weights is not None:
            r.weights = np.roll(r.weights, k)
    return r


def _design_anchored(v: np.ndarray, seed: int) -> DesignResult:
    anchored = translate_to_anchor(v)
    try:
        wt = aux_weights(anchored)
    except DuplicateConsecutiveVertices as exc:
        return DesignResult(DesignStatus.DEGENERATE_TARGET, detail=str(exc))
    if v.size == 3:
        try:
            return design_triangle(anchored)
        except ZeroCompetingEigenvalue as exc:
            return DesignResult(DesignStatus.INFEASIBLE, detail=str(exc))
    try:
        mus = competing_mus(anchored)
    except TargetEigenvalueCollision as exc:
        return DesignResult(DesignStatus.EIGENVALUE_COLLISION, mus=-wt[1:-1], detail=str(exc))
    scaling = search_lambda(mus, seed=seed)
    if scaling is None:
        return DesignResult(DesignStatus.INFEASIBLE, mus=mus, detail="no scaling with positive margin")
    lam = scaling.lam
    dominant = 1.0 + lam
    competing = 1.0 + lam * mus
    return DesignResult(
        status=DesignStatus.FEASIBLE,
        weights=_scaled(wt, lam),
        lam=lam,
        dominant=dominant,
        competing=competing,
        predicted_rate=float(np.max(np.abs(competing)) / abs(dominant)),
        margin=scaling.margin,
        mus=mus,
    )
