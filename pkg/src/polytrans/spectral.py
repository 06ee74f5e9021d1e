"""Spectrum of the transition matrix.

With ``A = M - I`` the characteristic polynomial collapses to

    p(x) = prod_i (x + w_i) - prod_i w_i,

so ``x = 0`` is always a root (the all-ones polygon is fixed by ``M``). When
some weight is exactly zero the remaining roots are simply ``-w_i`` and the
eigenvectors follow from a short product recurrence. Otherwise the roots are
found numerically by simultaneous (Aberth-Ehrlich) iteration.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DegenerateSpectrum, NoZeroWeight, ZeroWeightInProduct
from .transform import apply_step, as_weights

CLOSED_FORM = "closed-form"
NUMERIC = "numeric"

CLUSTER_RTOL = 1e-10
ROOT_STEP_TOL = 1e-12
MAX_SWEEPS = 500
RESIDUAL_RTOL = 1e-10


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial of ``M - I``, highest degree first."""

    coefficients: np.ndarray

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    def __call__(self, x):
        return horner(self.coefficients, x)


@dataclass(frozen=True)
class EigenPair:
    mu_of_M: complex
    vector: np.ndarray
    residual: float


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of ``M`` with the method that produced each one."""

    eigenvalues_of_M: np.ndarray
    provenance: tuple[str, ...]
    residuals: np.ndarray

    def __len__(self) -> int:
        return self.eigenvalues_of_M.size


def horner(coefficients: np.ndarray, x):
    x = np.asarray(x, dtype=np.complex128)
    acc = np.zeros_like(x) + coefficients[0]
    for c in coefficients[1:]:
        acc = acc * x + c
    return acc


def char_poly(w) -> CharPoly:
    """Expand ``prod(x + w_i) - prod(w_i)``; the constant term is exactly 0."""
    w = as_weights(w)
    coeffs = np.array([1.0 + 0.0j])
    for wi in w:
        coeffs = np.convolve(coeffs, np.array([1.0, wi], dtype=np.complex128))
    coeffs[-1] = 0.0
    return CharPoly(coeffs)


def char_poly_oracle(w, x: complex) -> complex:
    """``det(x I - (M - I))`` by Gaussian elimination with partial pivoting.

    Independent of :func:`char_poly`; meant for small ``n`` in tests.
    """
    w = as_weights(w)
    n = w.size
    a = np.zeros((n, n), dtype=np.complex128)
    a[np.arange(n), np.arange(n)] = x + w
    a[np.arange(n), (np.arange(n) + 1) % n] = -w
    det = 1.0 + 0.0j
    for col in range(n):
        piv = col + int(np.argmax(np.abs(a[col:, col])))
        if a[piv, col] == 0:
            return 0.0j
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            det = -det
        det *= a[col, col]
        factors = a[col + 1 :, col] / a[col, col]
        a[col + 1 :, col:] -= np.outer(factors, a[col, col:])
    return complex(det)


def aberth_roots(coefficients, tol: float = ROOT_STEP_TOL, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """All roots of a monic complex polynomial (highest degree first).

    Starting points are fixed on a circle of radius ``1 + max|c_k|`` so the
    result is reproducible. Raises :class:`ConvergenceFailure` if the update
    size does not drop below ``tol`` (relative) within ``max_sweeps``.
    """
    c = np.asarray(coefficients, dtype=np.complex128)
    deg = c.size - 1
    if deg < 1:
        return np.empty(0, dtype=np.complex128)
    c = c / c[0]
    if deg == 1:
        return np.array([-c[1]])
    dc = c[:-1] * np.arange(deg, 0, -1)
    radius = 1.0 + float(np.max(np.abs(c)))
    # offset angle keeps the start off any symmetry axis of real polynomials
    angles = 2.0 * np.pi * np.arange(deg) / deg + 0.4
    z = radius * np.exp(1j * angles)
    off = ~np.eye(deg, dtype=bool)
    for _ in range(max_sweeps):
        pv = horner(c, z)
        dpv = horner(dc, z)
        diff = z[:, None] - z[None, :]
        if np.any(diff[off] == 0):
            # coincident estimates; nudge apart deterministically
            z = z + 1e-8 * (1.0 + np.abs(z)) * np.exp(1j * np.arange(1, deg + 1))
            continue
        diff[~off] = np.inf
        denom = dpv - pv * np.sum(1.0 / diff, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            delta = np.where(denom != 0, pv / denom, 1e-8 * (1.0 + np.abs(z)))
        delta[pv == 0] = 0.0
        z = z - delta
        if np.max(np.abs(delta) / (1.0 + np.abs(z))) <= tol:
            return z
    raise ConvergenceFailure(f"root iteration did not settle within {max_sweeps} sweeps")


def _poly_residual(poly: CharPoly, x: np.ndarray) -> np.ndarray:
    return np.abs(poly(x))


def _residual_bound(poly: CharPoly, x: np.ndarray) -> np.ndarray:
    c = poly.coefficients
    base = RESIDUAL_RTOL * (1.0 + float(np.max(np.abs(c))))
    # rounding floor of Horner evaluation, relevant only for large |x| or |w|
    floor = 64 * np.finfo(float).eps * horner(np.abs(c), np.abs(x)).real
    return base + floor


def eigenvalues_case1(w) -> Spectrum:
    """Closed-form spectrum when at least one weight is exactly zero.

    The eigenvalues of ``M`` are ``1 - w_i``, reported in weight order (the
    zero weight contributes the eigenvalue 1 of the all-ones polygon).
    """
    w = as_weights(w)
    if not np.any(w == 0):
        raise NoZeroWeight("closed-form spectrum needs a weight equal to 0")
    mus = 1.0 - w
    poly = char_poly(w)
    return Spectrum(mus, (CLOSED_FORM,) * w.size, _poly_residual(poly, mus - 1.0))


def _first_zero(w: np.ndarray) -> int:
    zeros = np.flatnonzero(w == 0)
    if zeros.size == 0:
        raise NoZeroWeight("closed-form eigenvectors need a weight equal to 0")
    return int(zeros[0])


def eigenvector_case1(w, k: int) -> EigenPair:
    """Closed-form eigenvector for the eigenvalue ``1 - w[k]``.

    The weights are rotated so that the first zero weight comes first; the
    vector is then ``(0, 1, r_2, r_2 r_3, ..., 0, ...)`` with
    ``r_j = (w_j - w_k) / w_j``, and rotated back to the caller's indexing.

    Raises:
        NoZeroWeight: no weight is exactly 0.
        DegenerateSpectrum: ``1 - w[k]`` is not a simple eigenvalue.
        ZeroWeightInProduct: a weight inside the product is 0.
    """
    w = as_weights(w)
    n = w.size
    if not -n <= k < n:
        raise IndexError(f"eigenvalue index {k} out of range for n={n}")
    k %= n
    shift = _first_zero(w)
    r = np.roll(w, -shift)
    kk = (k - shift) % n
    mu = 1.0 - r[kk]
    others = np.delete(r, kk)
    if np.any(np.abs(others - r[kk]) <= CLUSTER_RTOL * (1.0 + abs(mu))):
        raise DegenerateSpectrum(f"eigenvalue {mu} at index {k} is not simple")
    if kk == 0:
        v = np.ones(n, dtype=np.complex128)
    else:
        v = np.zeros(n, dtype=np.complex128)
        v[1] = 1.0
        for j in range(1, kk):
            if r[j] == 0:
                raise ZeroWeightInProduct(f"weight {(j + shift) % n} is zero")
            v[j + 1] = v[j] * (r[j] - r[kk]) / r[j]
        v = np.roll(v, shift)
    mu = complex(1.0 - w[k])
    residual = float(np.linalg.norm(apply_step(v, w) - mu * v) / np.linalg.norm(v))
    return EigenPair(mu, v, residual)


def eigenvalues_general(w) -> Spectrum:
    """Numeric spectrum for arbitrary weights.

    The exact root ``x = 0`` is divided out first; the remaining ``n - 1``
    roots come from :func:`aberth_roots`.
    """
    w = as_weights(w)
    poly = char_poly(w)
    roots = np.concatenate([[0.0j], aberth_roots(poly.coefficients[:-1])])
    res = _poly_residual(poly, roots)
    bad = res > _residual_bound(poly, roots)
    if np.any(bad):
        raise ConvergenceFailure(f"root residual {res.max():.3e} above tolerance")
    mus = roots + 1.0
    mus[0] = 1.0
    return Spectrum(mus, (NUMERIC,) * w.size, res)


def spectrum(w) -> Spectrum:
    """Closed form when a zero weight exists, numeric otherwise."""
    w = as_weights(w)
    if np.any(w == 0):
        return eigenvalues_case1(w)
    return eigenvalues_general(w)
