"""Acceptance suite: one test per exit criterion, at the stated tolerances.

Run with `pytest tests/test_acceptance.py -v -s` to see one summary line per
criterion next to the pytest verdicts.
"""

import math
import time

import numpy as np
import pytest

from entrobound import (
    Weights,
    additivity_check,
    flip,
    hadamard_pair,
    mixed_norm,
    mu_bound,
    multiplicativity_check,
    omega,
    omega_lower_bound,
    optimal_bound,
    outcome_distribution,
    pq_norm,
    random_unitary,
    renyi_bound_check,
    sample_region,
    tensor_pair,
    three_pauli_counterexample,
    verify_hull_composition,
    vector_norm,
)
from entrobound.bounds import weight_sweep

INF = math.inf


def report(num: int, passed: bool, detail: str) -> None:
    print(f"criterion {num}: {'PASS' if passed else 'FAIL'} - {detail}")
    assert passed, detail


def test_criterion_1_mu_recovery():
    start = time.monotonic()
    worst_mu = 0.0
    worst_omega = 0.0
    for seed in range(50):
        d = 2 + seed % 4
        pair = random_unitary(d, seed=seed)
        max_entry = float(np.max(np.abs(pair.unitary)))
        mb = mu_bound(pair, Weights(1, 1))
        worst_mu = max(worst_mu, abs(mb - (-2.0 * math.log2(max_entry))))
        om = omega(pair, Weights(1, 1), 2).value
        worst_omega = max(worst_omega, abs(om - max_entry))
    elapsed = time.monotonic() - start
    report(
        1,
        worst_mu <= 1e-12 and worst_omega <= 1e-10 and elapsed < 5.0,
        f"mu defect {worst_mu:.2e} (tol 1e-12), omega defect {worst_omega:.2e} "
        f"(tol 1e-10), {elapsed:.2f}s < 5s",
    )


def test_criterion_2_qubit_mub_optimum():
    start = time.monotonic()
    pair = hadamard_pair()
    res = optimal_bound(pair, Weights(1, 1), seed=1)
    px = outcome_distribution(res.witness, pair, "X")
    py = outcome_distribution(res.witness, pair, "Y")
    eigenstate = max(px.max(), py.max()) >= 1.0 - 1e-6
    elapsed = time.monotonic() - start
    passed = (
        abs(res.upper - 1.0) <= 1e-6
        and res.lower >= 1.0 - 1e-4
        and eigenstate
        and elapsed < 10.0
    )
    report(
        2,
        passed,
        f"upper {res.upper:.9f} (1 +/- 1e-6), lower {res.lower:.9f} >= 1-1e-4, "
        f"eigenstate witness {eigenstate}, {elapsed:.2f}s < 10s",
    )


def test_criterion_3_additivity():
    start = time.monotonic()
    ratios = weight_sweep(n_ratios=5, lo=0.25, hi=4.0, include_axes=False)
    worst_defect = 0.0
    worst_gap = 0.0
    worst_witness = 0.0
    for trial in range(20):
        a = random_unitary(2, seed=1000 + 2 * trial)
        b = random_unitary(2, seed=1001 + 2 * trial)
        for w in ratios:
            rep = additivity_check(
                a, b, w, tol=1e-4, seed=trial,
                restarts=16, opt_restarts=6,
            )
            worst_defect = max(worst_defect, rep.defect)
            worst_gap = max(worst_gap, rep.gap_a, rep.gap_b, rep.gap_ab)
            worst_witness = max(worst_witness, rep.witness_product_defect)
    elapsed = time.monotonic() - start
    passed = (
        worst_defect <= 1e-4
        and worst_gap <= 1e-3
        and worst_witness <= 1e-6
        and elapsed < 120.0
    )
    report(
        3,
        passed,
        f"20 instances x 5 ratios: defect {worst_defect:.2e} (tol 1e-4), "
        f"gap {worst_gap:.2e} (guard 1e-3), product-witness defect "
        f"{worst_witness:.2e} (tol 1e-6), {elapsed:.1f}s < 120s",
    )


def test_criterion_4_multiplicativity():
    start = time.monotonic()
    cases = [(1.0, INF, 1e-6), (1.0, 2.0, 1e-6), (1.5, 3.0, 1e-4), (2.0, 2.0, 1e-6)]
    worst = {c[:2]: 0.0 for c in cases}
    for trial in range(10):
        a = random_unitary(2, seed=2000 + 2 * trial)
        b = random_unitary(2, seed=2001 + 2 * trial)
        for p, q, tol in cases:
            rep = multiplicativity_check(a, b, p, q, tol=tol, seed=trial)
            worst[(p, q)] = max(worst[(p, q)], rep.defect)
            assert rep.passed, (p, q, rep.defect)
    elapsed = time.monotonic() - start
    passed = all(
        worst[(p, q)] <= tol for p, q, tol in cases
    ) and elapsed < 60.0
    detail = ", ".join(f"({p},{q}): {worst[(p, q)]:.2e}" for p, q, _ in cases)
    report(4, passed, f"defects {detail}, {elapsed:.1f}s < 60s")


def test_criterion_5_three_pauli():
    start = time.monotonic()
    rep = three_pauli_counterexample(samples=100_000, seed=7)
    elapsed = time.monotonic() - start
    passed = (
        abs(rep.product_min - 4.0) <= 1e-6
        and rep.sampled_local_min >= 2.0 - 1e-6
        and abs(rep.bell_value - 3.0) <= 1e-12
        and rep.bell_value < rep.product_min
        and elapsed < 10.0
    )
    report(
        5,
        passed,
        f"product_min {rep.product_min:.9f} (4 +/- 1e-6), sampled local min "
        f"{rep.sampled_local_min:.7f} >= 2-1e-6, bell {rep.bell_value:.15f} "
        f"(3 +/- 1e-12), {elapsed:.1f}s < 10s",
    )


def _batch_mixed(phi_mat, q, p, da, db):
    a = np.abs(phi_mat).reshape(phi_mat.shape[0], da, db)
    inner = a.max(axis=2) if math.isinf(p) else (a**p).sum(axis=2) ** (1.0 / p)
    if math.isinf(q):
        return inner.max(axis=1)
    return (inner**q).sum(axis=1) ** (1.0 / q)


def test_criterion_6_mixed_norm_properties():
    start = time.monotonic()
    rng = np.random.default_rng(6)
    da, db = 2, 3
    n = 10_000
    phi = rng.standard_normal((n, da * db)) + 1j * rng.standard_normal((n, da * db))
    worst_i = worst_ii = worst_iii = 0.0
    for p, q in [(1.0, 2.0), (2.0, 4.0), (1.5, 1.5)]:
        # (i) equal exponents collapse to the plain vector norm
        collapsed = _batch_mixed(phi, q, q, da, db)
        plain = np.sum(np.abs(phi) ** q, axis=1) ** (1.0 / q)
        worst_i = max(worst_i, float(np.max(np.abs(collapsed - plain))))
        # (ii) a second-factor contraction is controlled by its (p,q)-norm
        v = random_unitary(db, seed=int(10 * p + q)).unitary
        eta = pq_norm(v, p, q, seed=3).value
        transformed = (phi.reshape(n, da, db) @ v.T).reshape(n, da * db)
        for r in (1.0, 1.7, 2.5):
            lhs = _batch_mixed(transformed, r, q, da, db)
            rhs = eta * _batch_mixed(phi, r, p, da, db)
            worst_ii = max(worst_ii, float(np.max(lhs - rhs)))
        # (iii) swapping factors can only grow the nested norm when p <= q
        flipped = np.ascontiguousarray(
            phi.reshape(n, da, db).transpose(0, 2, 1)
        ).reshape(n, da * db)
        lhs = _batch_mixed(phi, q, p, da, db)
        rhs = _batch_mixed(flipped, p, q, db, da)
        worst_iii = max(worst_iii, float(np.max(lhs - rhs)))
    flip_exact = all(
        np.array_equal(flip(flip(phi[i], da, db), db, da), phi[i]) for i in range(200)
    )
    elapsed = time.monotonic() - start
    passed = (
        worst_i <= 1e-10
        and worst_ii <= 1e-10
        and worst_iii <= 1e-10
        and flip_exact
        and elapsed < 30.0
    )
    report(
        6,
        passed,
        f"(i) {worst_i:.2e}, (ii) {worst_ii:.2e}, (iii) {worst_iii:.2e} "
        f"(slack 1e-10), flip involution exact {flip_exact}, {elapsed:.1f}s < 30s",
    )


def test_criterion_7_renyi_soundness():
    start = time.monotonic()
    pairs = [hadamard_pair(), random_unitary(2, seed=77)]
    total_violations = 0
    min_margin = INF
    for pair in pairs:
        for n in (4.0, 8.0):
            for lam, mu in [(1.0, 1.0), (1.0, 0.5)]:
                rep = renyi_bound_check(
                    pair, Weights(lam, mu), n, samples=1000, seed=11
                )
                total_violations += rep.violations
                min_margin = min(min_margin, rep.sampled_min - rep.bound)
    elapsed = time.monotonic() - start
    passed = total_violations == 0 and elapsed < 30.0
    report(
        7,
        passed,
        f"0 violations across 8 instance/weight/N combos x 1000 states "
        f"(got {total_violations}), min margin {min_margin:.2e} >= -1e-8, "
        f"{elapsed:.1f}s < 30s",
    )


def test_criterion_8_hull_composition():
    start = time.monotonic()
    sweep = weight_sweep(n_ratios=16, include_axes=False)
    fast = dict(restarts=16, opt_restarts=6)
    instances = [
        (hadamard_pair(), hadamard_pair()),
        (random_unitary(2, seed=81), random_unitary(2, seed=82)),
    ]
    worst_disc = 0.0
    worst_violation = -INF
    for a, b in instances:
        rep = verify_hull_composition(a, b, sweep, tol=1e-3, **fast)
        worst_disc = max(worst_disc, rep.max_discrepancy)
        points = sample_region(tensor_pair(a, b), n=10_000, seed=83)
        hx = np.array([p.hx for p in points])
        hy = np.array([p.hy for p in points])
        for t in rep.composed.tangents:
            worst_violation = max(
                worst_violation, float(np.max(t.c - (t.lam * hx + t.mu * hy)))
            )
    elapsed = time.monotonic() - start
    passed = worst_disc <= 1e-3 and worst_violation <= 1e-6 and elapsed < 180.0
    report(
        8,
        passed,
        f"max tangent discrepancy {worst_disc:.2e} (tol 1e-3) over 16-ratio "
        f"sweep, worst sampled-point tangent violation {worst_violation:.2e} "
        f"(tol 1e-6), {elapsed:.1f}s < 180s",
    )


def test_criterion_9_homogeneity_and_ordering():
    start = time.monotonic()
    worst_hom = 0.0
    t = 2.5
    for seed in (90, 91, 92):
        pair = random_unitary(2, seed=seed)
        w = Weights(1.0, 0.6)
        worst_hom = max(
            worst_hom,
            abs(mu_bound(pair, w.scaled(t)) - t * mu_bound(pair, w)),
        )
        base = omega_lower_bound(pair, w, 4, seed=2)
        scaled = omega_lower_bound(pair, w.scaled(t), 4 * t, seed=2)
        worst_hom = max(worst_hom, abs(scaled - t * base))
        up = optimal_bound(pair, w, seed=3, restarts=16, opt_restarts=6).upper
        up_t = optimal_bound(pair, w.scaled(t), seed=3, restarts=16, opt_restarts=6).upper
        worst_hom = max(worst_hom, abs(up_t - t * up))
    ordering_ok = True
    worst_order = -INF
    for seed in range(50):
        pair = random_unitary(2 + seed % 3, seed=3000 + seed)
        w = Weights(1.0, [1.0, 0.5, 2.0][seed % 3])
        res = optimal_bound(pair, w, seed=4, restarts=16, opt_restarts=6)
        mb = mu_bound(pair, w)
        best_omega = max(b for _n, b in res.omega_trace)
        ordering_ok &= mb <= best_omega + 1e-9 and best_omega <= res.upper + 1e-6
        worst_order = max(worst_order, best_omega - res.upper)
    elapsed = time.monotonic() - start
    passed = worst_hom <= 1e-8 and ordering_ok and elapsed < 60.0
    report(
        9,
        passed,
        f"homogeneity defect {worst_hom:.2e} (tol 1e-8), ordering "
        f"mu <= omega(best N) <= upper+1e-6 on 50 instances: {ordering_ok} "
        f"(worst omega-upper {worst_order:.2e}), {elapsed:.1f}s < 60s",
    )
