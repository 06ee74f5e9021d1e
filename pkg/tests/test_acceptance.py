"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is echoed in the terminal summary.
"""
import time

import numpy as np
import pytest

from polytrans import fileio
from polytrans.cli import main
from polytrans.design import (
    DesignStatus,
    design_general,
    design_triangle,
    direct_dominance,
    lambda_region,
    region_contains,
)
from polytrans.geometry import shape_distance
from polytrans.spectral import char_poly, char_poly_oracle, eigenvalues_case1, eigenvalues_general, eigenvector_case1
from polytrans.transform import apply_step, fitted_decay_rate, iterate

from conftest import ACCEPTANCE_LINES, multiset_distance, random_polygon

pytestmark = pytest.mark.acceptance


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")


def disk(rng, size, radius):
    r = radius * np.sqrt(rng.uniform(size=size))
    return r * np.exp(2j * np.pi * rng.uniform(size=size))


def test_c1_region_oracle():
    rng = np.random.default_rng(1)
    n = 100_000
    mu = disk(rng, n, 3.0)
    # a slice of exactly unit-modulus and exactly-one values exercises the half plane and empty cases
    unit = rng.choice(n, 2000, replace=False)
    mu[unit] = np.exp(2j * np.pi * rng.uniform(size=unit.size))
    mu[unit[:50]] = 1.0
    lam = disk(rng, n, 10.0)
    gap = np.abs(1 + lam) ** 2 - np.abs(1 + lam * mu) ** 2
    keep = np.abs(gap) >= 1e-9

    start = time.perf_counter()
    disagree = 0
    for m, l in zip(mu[keep], lam[keep]):
        if region_contains(lambda_region(m), l) != direct_dominance(l, m):
            disagree += 1
    elapsed = time.perf_counter() - start
    ok = disagree == 0 and elapsed < 5.0
    record(1, ok, f"{disagree} disagreements in {int(keep.sum())} pairs, {elapsed:.2f}s")
    assert disagree == 0
    assert elapsed < 5.0


def test_c2_triangle_exactness():
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(1000):
        v = random_polygon(rng, 3)
        p = random_polygon(rng, 3)
        w = design_triangle(v).weights
        worst = max(worst, shape_distance(apply_step(p, w), v))
    record(2, worst < 1e-9, f"worst one-step distance {worst:.2e} over 1000 pairs")
    assert worst < 1e-9


def test_c3_worked_triangle():
    r = design_triangle(np.array([0, 1, 1j]))
    err = max(
        float(np.max(np.abs(r.weights - np.array([0, 1, 1 - 1j])))),
        abs(r.dominant - 1j),
        float(np.max(np.abs(r.competing))),
    )
    ok = r.feasible and err <= 1e-15
    record(3, ok, f"weights {fileio.pairs(r.weights)}, dominant {r.dominant}, max error {err:.1e}")
    assert ok


def test_c4_unit_square():
    rng = np.random.default_rng(4)
    v = np.array([0, 1, 1 + 1j, 1j])
    r = design_general(v)
    assert r.feasible
    assert r.predicted_rate <= 1 / np.sqrt(2) + 1e-9
    worst_dist, worst_rel = 0.0, 0.0
    for _ in range(50):
        traj = iterate(random_polygon(rng, 4), r.weights, 100, target=v)
        worst_dist = max(worst_dist, traj.frames[-1].distance)
        fit = fitted_decay_rate(traj.distances)
        rel = np.inf if fit is None else abs(fit - r.predicted_rate) / r.predicted_rate
        worst_rel = max(worst_rel, rel)
    ok = worst_dist < 1e-8 and worst_rel <= 0.1
    record(
        4,
        ok,
        f"predicted rate {r.predicted_rate:.6f}, worst final distance {worst_dist:.1e}, "
        f"worst fitted-rate deviation {100 * worst_rel:.1f}%",
    )
    assert worst_dist < 1e-8
    assert worst_rel <= 0.1


def test_c5_char_poly_identity():
    rng = np.random.default_rng(5)
    worst, zero_ok = 0.0, True
    for n in range(3, 9):
        for _ in range(100):
            w = random_polygon(rng, n)
            p = char_poly(w)
            zero_ok &= p(0) == 0
            for x in rng.normal(size=5) + 1j * rng.normal(size=5):
                ref = char_poly_oracle(w, x)
                worst = max(worst, abs(p(x) - ref) / max(abs(ref), 1e-300))
    ok = worst <= 1e-9 and zero_ok
    record(5, ok, f"worst relative error {worst:.1e}, p(0) == 0: {zero_ok}")
    assert zero_ok
    assert worst <= 1e-9


def test_c6_scaling_law():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(3, 9))
        w = random_polygon(rng, n)
        lam = complex(*rng.normal(size=2))
        base = eigenvalues_general(w).eigenvalues_of_M - 1
        scaled = eigenvalues_general(lam * w).eigenvalues_of_M - 1
        worst = max(worst, multiset_distance(scaled, lam * base))
    record(6, worst < 1e-8, f"worst multiset distance {worst:.1e} over 200 cases")
    assert worst < 1e-8


def test_c7_case1_eigenpairs():
    rng = np.random.default_rng(7)
    worst, done = 0.0, 0
    while done < 500:
        n = int(rng.integers(3, 9))
        w = random_polygon(rng, n)
        w[rng.integers(n)] = 0
        gaps = np.abs(w[:, None] - w[None, :])[~np.eye(n, dtype=bool)]
        if gaps.min() < 1e-3:
            continue  # clustered spectrum
        spec = eigenvalues_case1(w)
        worst = max(worst, float(spec.residuals.max()))
        for k in range(n):
            worst = max(worst, eigenvector_case1(w, k).residual)
        done += 1
    record(7, worst <= 1e-9, f"worst residual {worst:.1e} over 500 weight vectors")
    assert worst <= 1e-9


def test_c8_general_pipeline():
    rng = np.random.default_rng(8)
    counts = {s: 0 for s in DesignStatus}
    slow, worst = [], 0.0
    for n in (3, 4, 5, 6):
        for _ in range(200):
            v = random_polygon(rng, n)
            r = design_general(v)
            counts[r.status] += 1
            if not r.feasible:
                continue
            traj = iterate(random_polygon(rng, n), r.weights, 400, target=v)
            d = traj.frames[-1].distance
            worst = max(worst, d)
            if not d < 1e-8:
                slow.append((n, r.predicted_rate))
    summary = ", ".join(f"{s.value} {c}" for s, c in counts.items())
    detail = f"{summary}; feasible designs missing 1e-8 after 400 steps: {len(slow)}"
    if slow:
        rates = np.array([rate for _, rate in slow])
        per_n = {m: sum(1 for k, _ in slow if k == m) for m in (3, 4, 5, 6)}
        detail += (
            f" (by n {per_n}; predicted rates {rates.min():.4f}..{rates.max():.4f},"
            f" smallest rate**400 {float((rates**400).min()):.1e})"
        )
    record(8, not slow, detail)
    assert not slow, detail


def test_c9_cli_determinism_and_roundtrip(tmp_path):
    rng = np.random.default_rng(9)
    v = random_polygon(rng, 5)
    target = tmp_path / "target.json"
    fileio.write_polygon(target, v)
    assert fileio.read_polygon(target).tobytes() == v.tobytes()
    outs = []
    for k in range(2):
        out = tmp_path / f"w{k}.json"
        code = main(["design", str(target), "--seed", "11", "--report", "--out", str(out)])
        outs.append((code, out.read_bytes() if out.exists() else b""))
    identical = outs[0] == outs[1]

    samples = rng.normal(size=1000) * 10.0 ** rng.integers(-300, 300, 1000)
    z = samples[:500] + 1j * samples[500:]
    exact = fileio.parse_vector(fileio.polygon_document(z), "vertices").tobytes() == z.tobytes()
    record(9, identical and exact, f"design output identical: {identical}, 17-digit round-trip exact: {exact}")
    assert identical
    assert exact
