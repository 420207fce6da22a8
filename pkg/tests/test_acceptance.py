"""Acceptance criteria, one pass/fail line each (see the "acceptance criteria" summary section)."""

import math
import time

import numpy as np
import pytest

from pennyflip import ga_core as ga
from pennyflip import records
from pennyflip.checks import (
    anticommutation_deviation,
    associativity_deviation,
    family_grid,
    homomorphism_deviation,
    iota_deviation,
    random_axis_angle,
    reversion_deviation,
    series_deviation,
)
from pennyflip.cli import demo_outcomes
from pennyflip.errors import DomainError
from pennyflip.game import (
    QStrategy,
    StrategyParams,
    backend_deviation,
    falsify_random,
    random_family_params,
    solve_family,
    tilt_angle,
)

R2 = 1 / math.sqrt(2)


def test_criterion_1_meyer_recovery(criterion):
    t0 = time.perf_counter()
    st = solve_family(StrategyParams(math.pi, 0.0, 1, 1))
    axis_dev = max(abs(x - y) for x, y in zip(st.axis.axis, (R2, 0.0, R2)))
    rot_dev = (ga.apply_rotor(st.u1, ga.SIGMA3) - ga.SIGMA1).max_abs()
    _, rows = demo_outcomes([0.0, 0.25, 0.5, 1.0])
    s3_dev = max(max(abs(o.s3 - 1), abs(d.s3 - 1)) for _, _, o, d in rows)
    all_q = all(o.q_always_wins for _, _, o, _ in rows)
    elapsed = time.perf_counter() - t0
    ok = axis_dev <= 1e-12 and rot_dev <= 1e-12 and s3_dev <= 1e-12 and all_q and elapsed < 1
    criterion(1, "Meyer recovery", ok,
              f"axis {axis_dev:.1e}, σ₃→σ₁ {rot_dev:.1e}, |s3-1| {s3_dev:.1e}, {elapsed:.2f}s")
    assert ok


def test_criterion_2_family_sweep(criterion):
    t0 = time.perf_counter()
    recs = records.sweep_records(records.theta_grid(201), records.phi_grid(9), records.p_grid(11))
    elapsed = time.perf_counter() - t0
    worst = min(min(r.s3_ga, r.s3_dm) for r in recs)
    ok = len(recs) == 201 * 9 * 11 * 4 and worst >= 1 - 1e-9 and elapsed < 10
    criterion(2, "family always wins", ok,
              f"{len(recs)} records, min s3 {worst:.17g}, {elapsed:.2f}s")
    assert ok


def test_criterion_3_band_boundary(criterion):
    edge_a = 0.0
    for theta in (math.pi / 2, 3 * math.pi / 2, -math.pi / 2, -3 * math.pi / 2):
        for sign_a in (1, -1):
            for c3 in (1, -1):
                st = solve_family(StrategyParams(theta, 0.0, sign_a, c3))
                edge_a = max(edge_a, abs(st.axis.axis[0]), abs(st.axis.axis[2]))
    rejected = 0
    outside = (math.pi / 2 - 1e-3, 3 * math.pi / 2 + 1e-3, -(math.pi / 2 - 1e-3), -(3 * math.pi / 2 + 1e-3))
    for theta in outside:
        with pytest.raises(DomainError):
            StrategyParams(theta)
        rejected += 1
    ok = edge_a <= 1e-12 and rejected == 4
    criterion(3, "θ-band boundary", ok, f"max |a| at edges {edge_a:.1e}, rejected {rejected}/4")
    assert ok


def test_criterion_4_tilt_bound(criterion):
    cosines = {}
    for params in family_grid(201, 9):
        cosines[params] = abs(math.cos(tilt_angle(solve_family(params))))
    worst = max(cosines.values())
    at_pi = max(abs(c - R2) for p, c in cosines.items() if abs(p.theta - math.pi) < 1e-15)
    at_edge = max(c for p, c in cosines.items() if abs(abs(p.theta) - math.pi / 2) < 1e-15)
    ok = worst <= R2 + 1e-12 and at_pi <= 1e-12 and at_edge <= 1e-12
    criterion(4, "tilt bound", ok,
              f"max |cos ψ| - 1/√2 = {worst - R2:.1e}, at π {at_pi:.1e}, at π/2 {at_edge:.1e}")
    assert ok


def test_criterion_5_cross_formalism(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(20261018)
    worst = 0.0
    for k in range(1000):
        # half family members, half arbitrary Q strategies
        if k % 2 == 0:
            st = solve_family(random_family_params(rng))
        else:
            u1 = ga.rotor_from_axis_angle(random_axis_angle(rng))
            u3 = ga.rotor_from_axis_angle(random_axis_angle(rng))
            st = QStrategy.from_rotors(u1, u3)
        worst = max(worst, backend_deviation(st, rng.uniform(0.0, 1.0)))
    hom = homomorphism_deviation(1000)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and hom <= 1e-12 and elapsed < 5
    criterion(5, "GA vs density matrix", ok,
              f"Bloch {worst:.1e}, homomorphism {hom:.1e}, {elapsed:.2f}s")
    assert ok


def test_criterion_6_falsification(criterion):
    t0 = time.perf_counter()
    report = falsify_random(1000, 42)
    elapsed = time.perf_counter() - t0
    ok = len(report.violations) == 0 and elapsed < 5
    criterion(6, "characterization falsification", ok,
              f"{len(report.refuted)} refuted, {len(report.skipped)} skipped, "
              f"{len(report.violations)} violations, {elapsed:.2f}s")
    assert ok


def test_criterion_7_algebraic_laws(criterion):
    t0 = time.perf_counter()
    exact = max(anticommutation_deviation(), iota_deviation())
    assoc = associativity_deviation(10_000)
    rev = reversion_deviation(10_000)
    series = series_deviation()
    elapsed = time.perf_counter() - t0
    ok = exact == 0.0 and assoc <= 1e-12 and rev <= 1e-12 and series <= 1e-10 and elapsed < 5
    criterion(7, "algebraic laws", ok,
              f"exact {exact:.1e}, assoc {assoc:.1e}, reversion {rev:.1e}, series {series:.1e}, "
              f"{elapsed:.2f}s")
    assert ok
