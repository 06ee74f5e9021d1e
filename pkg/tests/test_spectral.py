import numpy as np
import pytest

from polytrans.errors import DegenerateSpectrum, NoZeroWeight, ZeroWeightInProduct
from polytrans.spectral import (
    CLOSED_FORM,
    NUMERIC,
    aberth_roots,
    char_poly,
    char_poly_oracle,
    eigenvalues_case1,
    eigenvalues_general,
    eigenvector_case1,
    spectrum,
)
from polytrans.transform import build_transition

from conftest import multiset_distance, random_polygon

SQ3 = np.sqrt(3) / 2


@pytest.mark.parametrize(
    "w, coeffs",
    [
        ((0, 1, 1 - 1j), (1, 2 - 1j, 1 - 1j, 0)),
        ((0, 0, 0), (1, 0, 0, 0)),
        ((1, 1, 1), (1, 3, 3, 0)),
    ],
)
def test_char_poly_examples(w, coeffs):
    p = char_poly(w)
    np.testing.assert_allclose(p.coefficients, coeffs, atol=1e-15)
    assert p.coefficients[0] == 1
    assert p.coefficients[-1] == 0


@pytest.mark.parametrize(
    "w, x, expected",
    [((0, 1, 1 - 1j), 0, 0), ((0, 1, 1 - 1j), 1, 4 - 2j), ((1, 1, 1), 1, 7)],
)
def test_oracle_examples(w, x, expected):
    assert abs(char_poly_oracle(w, x) - expected) < 1e-13
    assert abs(char_poly(w)(x) - expected) < 1e-13


def test_oracle_agrees_with_lapack_det(rng):
    for n in range(3, 9):
        w = random_polygon(rng, n)
        x = complex(*rng.normal(size=2))
        a = x * np.eye(n) - (build_transition(w).dense() - np.eye(n))
        det = np.linalg.det(a)
        assert abs(char_poly_oracle(w, x) - det) <= 1e-12 * (1 + abs(det))


def test_char_poly_matches_oracle(rng):
    for n in range(3, 9):
        for _ in range(100):
            w = random_polygon(rng, n)
            p = char_poly(w)
            assert p(0) == 0
            for x in rng.normal(size=5) + 1j * rng.normal(size=5):
                ref = char_poly_oracle(w, x)
                assert abs(p(x) - ref) <= 1e-9 * (1 + abs(ref))


def test_case1_eigenvalues():
    s = eigenvalues_case1([0, 1, 1 - 1j])
    assert multiset_distance(s.eigenvalues_of_M, [1, 0, 1j]) < 1e-15
    assert set(s.provenance) == {CLOSED_FORM}
    s = eigenvalues_case1([0, 0, 0])
    np.testing.assert_array_equal(s.eigenvalues_of_M, [1, 1, 1])
    with pytest.raises(NoZeroWeight):
        eigenvalues_case1([1, 1, 1])


def test_case1_eigenvectors():
    e = eigenvector_case1([0, 1, 1 - 1j], 2)
    assert e.mu_of_M == 1j
    np.testing.assert_allclose(e.vector, [0, 1, 1j], atol=1e-15)
    assert e.residual <= 1e-15
    e = eigenvector_case1([0, 1, 1 - 1j], 1)
    assert e.mu_of_M == 0
    np.testing.assert_allclose(e.vector, [0, 1, 0])
    e = eigenvector_case1([0, 1, 1 - 1j], 0)
    np.testing.assert_allclose(e.vector, [1, 1, 1])


def test_case1_eigenvector_errors():
    with pytest.raises(DegenerateSpectrum):
        eigenvector_case1([0, 2, 2, 2], 2)
    with pytest.raises(NoZeroWeight):
        eigenvector_case1([1, 2, 3], 1)
    # eigenvalue -1 is simple but the product passes through the second zero
    with pytest.raises(ZeroWeightInProduct):
        eigenvector_case1([0, 0.5, 0, 2], 3)


def test_case1_rotation(rng):
    # zero weight in the middle: rotate, build, rotate back
    for _ in range(50):
        w = random_polygon(rng, 6)
        w[3] = 0
        for k in range(6):
            e = eigenvector_case1(w, k)
            assert e.residual <= 1e-9
            m = build_transition(w).dense()
            assert np.linalg.norm(m @ e.vector - e.mu_of_M * e.vector) <= 1e-9 * np.linalg.norm(e.vector)


def test_general_examples():
    s = eigenvalues_general([0, 1, 1 - 1j])
    assert multiset_distance(s.eigenvalues_of_M, [1, 0, 1j]) < 1e-12
    assert set(s.provenance) == {NUMERIC}
    s = eigenvalues_general([0, 0, 0])
    assert multiset_distance(s.eigenvalues_of_M, [1, 1, 1]) < 1e-8
    s = eigenvalues_general([1, 1, 1])
    assert multiset_distance(s.eigenvalues_of_M, [1, -0.5 + SQ3 * 1j, -0.5 - SQ3 * 1j]) < 1e-12
    assert s.eigenvalues_of_M[0] == 1


def test_spectrum_dispatch():
    assert spectrum([0, 1, 1 - 1j]).provenance == (CLOSED_FORM,) * 3
    assert spectrum([1, 1, 1]).provenance == (NUMERIC,) * 3


def test_general_matches_dense_eigensolver(rng):
    for n in range(3, 13):
        for _ in range(20):
            w = random_polygon(rng, n)
            ours = eigenvalues_general(w).eigenvalues_of_M
            ref = np.linalg.eigvals(build_transition(w).dense())
            assert multiset_distance(ours, ref) < 1e-8


def test_residual_bound(rng):
    for n in range(3, 9):
        for _ in range(20):
            w = random_polygon(rng, n)
            s = eigenvalues_general(w)
            c = char_poly(w).coefficients
            assert np.all(s.residuals <= 1e-10 * (1 + np.abs(c).max()))


def test_case1_vs_numeric(rng):
    for n in range(3, 9):
        for _ in range(30):
            w = random_polygon(rng, n)
            w[rng.integers(n)] = 0
            a = eigenvalues_case1(w).eigenvalues_of_M
            b = eigenvalues_general(w).eigenvalues_of_M
            assert multiset_distance(a, b) < 1e-8


def test_scaling_law(rng):
    for _ in range(100):
        n = int(rng.integers(3, 9))
        w = random_polygon(rng, n)
        lam = complex(*rng.normal(size=2))
        base = eigenvalues_general(w).eigenvalues_of_M - 1
        scaled = eigenvalues_general(lam * w).eigenvalues_of_M - 1
        assert multiset_distance(scaled, lam * base) < 1e-8


def test_aberth_known_roots():
    # z^5 - 1
    roots = aberth_roots([1, 0, 0, 0, 0, -1])
    assert multiset_distance(roots, np.exp(2j * np.pi * np.arange(5) / 5)) < 1e-12
    roots = aberth_roots([1, -(3 + 2j), (3 + 2j) * 0 + 6j])  # (z - 3)(z - 2j)
    assert multiset_distance(roots, [3, 2j]) < 1e-12


def test_deterministic(rng):
    w = random_polygon(rng, 7)
    np.testing.assert_array_equal(
        eigenvalues_general(w).eigenvalues_of_M, eigenvalues_general(w).eigenvalues_of_M
    )
