"""Invariant suites shared by ``pennyflip verify`` and the acceptance tests.

Each check returns the largest deviation it saw; the caller compares that to a
tolerance. Random draws come from a seeded generator so runs are reproducible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import ga_core as ga
from . import qm_core as qm
from .bridge import check_state_correspondence, matrix_to_multivector, multivector_to_matrix
from .game import (
    StrategyParams,
    backend_deviation,
    falsify_random,
    play,
    play_batch,
    random_family_params,
    solve_family,
    target_distance,
    tilt_angle,
)

BASIS_VECTORS = (ga.SIGMA1, ga.SIGMA2, ga.SIGMA3)


def random_multivector(rng: np.random.Generator) -> ga.Multivector:
    return ga.Multivector(rng.uniform(-1.0, 1.0, 8))


def random_axis_angle(rng: np.random.Generator, angle_range=(-2 * math.pi, 2 * math.pi)) -> ga.AxisAngle:
    v = rng.normal(size=3)
    return ga.AxisAngle(tuple(v / np.linalg.norm(v)), rng.uniform(*angle_range))


def family_grid(theta_steps=201, phi_steps=9):
    thetas = np.linspace(math.pi / 2, 3 * math.pi / 2, theta_steps)
    phis = np.arange(phi_steps) * (2 * math.pi / phi_steps)
    for theta, phi, sign_a, c3 in itertools.product(thetas, phis, (1, -1), (1, -1)):
        yield StrategyParams(theta, phi, sign_a, c3)


# -- ga_core ------------------------------------------------------------------------

def anticommutation_deviation() -> float:
    worst = 0.0
    for i, si in enumerate(BASIS_VECTORS):
        for j, sj in enumerate(BASIS_VECTORS):
            expected = ga.Multivector.scalar(2.0 if i == j else 0.0)
            worst = max(worst, (si * sj + sj * si - expected).max_abs())
    return worst


def iota_deviation() -> float:
    worst = (ga.IOTA * ga.IOTA + 1.0).max_abs()
    for s in BASIS_VECTORS:
        worst = max(worst, (ga.IOTA * s - s * ga.IOTA).max_abs())
    return worst


def associativity_deviation(n: int, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        a, b, c = (random_multivector(rng) for _ in range(3))
        worst = max(worst, ((a * b) * c - a * (b * c)).max_abs())
    return worst


def reversion_deviation(n: int, seed: int = 1) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        a, b = random_multivector(rng), random_multivector(rng)
        worst = max(worst, (~(a * b) - (~b) * (~a)).max_abs())
    return worst


def rotor_unit_deviation(n: int, seed: int = 2) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        r = ga.rotor_from_axis_angle(random_axis_angle(rng))
        worst = max(worst, (r * ~r - 1.0).max_abs())
    return worst


def isometry_deviation(n: int, seed: int = 3) -> float:
    """Max of | |RvR†| - |v| | and off-grade residue of the raw sandwich."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        r = ga.rotor_from_axis_angle(random_axis_angle(rng))
        v = ga.Multivector.vector(*rng.uniform(-1.0, 1.0, 3))
        raw = ga.sandwich(r, v)
        residue = float(np.abs(raw.coeffs[[0, 4, 5, 6, 7]]).max())
        worst = max(worst, abs(ga.vector_norm(raw) - ga.vector_norm(v)), residue)
    return worst


def series_deviation(theta_steps: int = 81) -> float:
    """Closed-form rotor vs power series over a θ-grid on [-2π, 2π] and several axes."""
    axes = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1 / math.sqrt(2), 0, 1 / math.sqrt(2)),
            (1 / math.sqrt(3),) * 3, (0.6, -0.8, 0.0)]
    worst = 0.0
    for axis in axes:
        for theta in np.linspace(-2 * math.pi, 2 * math.pi, theta_steps):
            closed = ga.rotor_from_axis_angle(ga.AxisAngle(axis, theta))
            series = ga.exp_bivector_series(ga.Multivector.bivector(*axis) * (0.5 * theta))
            worst = max(worst, (closed - series).max_abs())
    return worst


# -- qm_core ------------------------------------------------------------------------

def pauli_relation_deviation() -> float:
    eps = {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1, (3, 2, 1): -1, (1, 3, 2): -1, (2, 1, 3): -1}
    worst = 0.0
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            expected = qm.I2 * (1.0 if i == j else 0.0)
            for k in (1, 2, 3):
                expected = expected + 1j * eps.get((i, j, k), 0) * qm.pauli(k)
            worst = max(worst, float(np.abs(qm.pauli(i) @ qm.pauli(j) - expected).max()))
    return worst


def _random_unitary(rng):
    ax = random_axis_angle(rng)
    return qm.unitary_from_axis_angle(qm.MatrixAxisAngle(ax.axis, ax.angle, rng.uniform(-math.pi, math.pi)))


def unitarity_deviation(n: int, seed: int = 4) -> float:
    rng = np.random.default_rng(seed)
    return max(qm.unitarity_error(_random_unitary(rng)) for _ in range(n))


def evolve_deviation(n: int, seed: int = 5) -> float:
    """Trace, Hermiticity and positivity drift of UρU† on random mixed states."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        s = rng.normal(size=3)
        s *= rng.uniform(0, 1) / np.linalg.norm(s)
        rho = qm.DensityMatrix.from_bloch(s)
        m = qm.evolve(rho, _random_unitary(rng)).matrix
        worst = max(worst,
                    abs(np.trace(m) - 1.0),
                    float(np.abs(m - qm.dagger(m)).max()),
                    max(0.0, -qm.hermitian_eigenvalues(m)[0]))
    return worst


def phase_irrelevance_deviation(n: int, seed: int = 6) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        ax = random_axis_angle(rng)
        beta = rng.uniform(-math.pi, math.pi)
        u0 = qm.unitary_from_axis_angle(qm.MatrixAxisAngle(ax.axis, ax.angle))
        ub = qm.unitary_from_axis_angle(qm.MatrixAxisAngle(ax.axis, ax.angle, beta))
        rho = qm.DensityMatrix.from_bloch(rng.uniform(-0.5, 0.5, 3))
        worst = max(worst, float(np.abs(qm.evolve(rho, ub).matrix - qm.evolve(rho, u0).matrix).max()))
    return worst


# -- bridge -------------------------------------------------------------------------

def homomorphism_deviation(n: int, seed: int = 7) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        a, b = random_multivector(rng), random_multivector(rng)
        lhs = multivector_to_matrix(a * b)
        rhs = multivector_to_matrix(a) @ multivector_to_matrix(b)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def dagger_deviation(n: int, seed: int = 8) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        a = random_multivector(rng)
        diff = multivector_to_matrix(~a) - qm.dagger(multivector_to_matrix(a))
        worst = max(worst, float(np.abs(diff).max()))
    return worst


def roundtrip_deviation(n: int, seed: int = 9) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        a = random_multivector(rng)
        worst = max(worst, (matrix_to_multivector(multivector_to_matrix(a)) - a).max_abs())
    return worst


def dynamics_correspondence_deviation(n: int, seed: int = 10) -> float:
    """v ↔ ρ implies RvR† ↔ UρU† with U the image of R."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        r = ga.rotor_from_axis_angle(random_axis_angle(rng))
        s = rng.normal(size=3)
        s *= rng.uniform(0, 1) / np.linalg.norm(s)
        v = ga.Multivector.vector(*s)
        rho = qm.DensityMatrix.from_bloch(s)
        report = check_state_correspondence(ga.apply_rotor(r, v), qm.evolve(rho, multivector_to_matrix(r)))
        worst = max(worst, max(report.deviations.values()))
    return worst


# -- game ---------------------------------------------------------------------------

P_GRID = np.linspace(0.0, 1.0, 11)


def family_win_deficit(theta_steps=201, phi_steps=9, ps=P_GRID) -> float:
    """max over the grid and both back ends of 1 - s3."""
    worst = 0.0
    for params in family_grid(theta_steps, phi_steps):
        st = solve_family(params)
        for backend in ("ga", "dm"):
            worst = max(worst, float(np.max(1.0 - play_batch(st, ps, backend)[:, 3, 2])))
    return worst


def family_condition_deviations(theta_steps=41, phi_steps=5) -> dict[str, float]:
    """Algebraic conditions every family member must meet."""
    worst = dict.fromkeys(
        ["commutation", "rotation", "conjugated", "unit_axis", "tilt_bound", "abs_a_eq_abs_c",
         "phi_independence"], 0.0)
    bound = 1 / math.sqrt(2)
    s3_by_key: dict = {}
    for params in family_grid(theta_steps, phi_steps):
        st = solve_family(params)
        u31 = st.u3 * st.u1
        worst["commutation"] = max(worst["commutation"], (u31 * ga.SIGMA3 - ga.SIGMA3 * u31).max_abs())
        psi1 = ga.apply_rotor(st.u1, ga.SIGMA3)
        worst["rotation"] = max(worst["rotation"], (psi1 - params.c3 * ga.SIGMA1).max_abs(),
                                target_distance(st.u1))
        conj = ga.apply_rotor(st.u3, ga.SIGMA1)
        worst["conjugated"] = max(worst["conjugated"], (conj - params.c3 * ga.SIGMA3).max_abs())
        a, b, c = st.axis.axis
        cot = params.cot_half
        worst["unit_axis"] = max(worst["unit_axis"], abs(2 * a * a + cot * cot - 1.0))
        worst["tilt_bound"] = max(worst["tilt_bound"], abs(math.cos(tilt_angle(st))) - bound)
        worst["abs_a_eq_abs_c"] = max(worst["abs_a_eq_abs_c"], abs(abs(a) - abs(c)))
        key = (params.theta, params.sign_a, params.c3)
        s3 = play_batch(st, P_GRID, "ga")[:, 3, 2]
        if key in s3_by_key:
            worst["phi_independence"] = max(worst["phi_independence"],
                                            float(np.abs(s3 - s3_by_key[key]).max()))
        else:
            s3_by_key[key] = s3
    worst["tilt_bound"] = max(0.0, worst["tilt_bound"])
    return worst


def sign_symmetry_deviations(theta_steps=41) -> dict[str, float]:
    """θ → -θ matches flipping sign_a; conjugation by S = ισ₁ maps c₃ = +1 axes to c₃ = -1."""
    s_rotor = ga.rotor_from_axis_angle(ga.AxisAngle((1, 0, 0), math.pi))
    worst = {"theta_sign": 0.0, "c3_sign": 0.0}
    for theta in np.linspace(math.pi / 2, 3 * math.pi / 2, theta_steps):
        for sign_a in (1, -1):
            for c3 in (1, -1):
                flipped_a = solve_family(StrategyParams(theta, 0.0, -sign_a, c3))
                neg_theta = solve_family(StrategyParams(-theta, 0.0, sign_a, c3))
                d = (ga.apply_rotor(flipped_a.u1, ga.SIGMA3) - ga.apply_rotor(neg_theta.u1, ga.SIGMA3)).max_abs()
                worst["theta_sign"] = max(worst["theta_sign"], d)
            plus = solve_family(StrategyParams(theta, 0.0, sign_a, 1))
            minus = solve_family(StrategyParams(theta, 0.0, sign_a, -1))
            u_plus = ga.Multivector.vector(*plus.axis.axis)
            u_minus = ga.Multivector.vector(*minus.axis.axis)
            worst["c3_sign"] = max(worst["c3_sign"], (ga.apply_rotor(s_rotor, u_plus) - u_minus).max_abs())
    return worst


def backend_agreement_deviation(n: int, seed: int = 11) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        st = solve_family(random_family_params(rng))
        worst = max(worst, backend_deviation(st, rng.uniform(0.0, 1.0)))
    return worst


def falsification_violations(trials: int, seed: int = 42) -> float:
    return float(len(falsify_random(trials, seed).violations))


def meyer_checks() -> float:
    st = solve_family(StrategyParams(math.pi, 0.0, 1, 1))
    r2 = 1 / math.sqrt(2)
    dev = max(abs(x - y) for x, y in zip(st.axis.axis, (r2, 0.0, r2)))
    dev = max(dev, (ga.apply_rotor(st.u1, ga.SIGMA3) - ga.SIGMA1).max_abs())
    for p in (0.0, 0.25, 0.5, 1.0):
        for backend in ("ga", "dm"):
            dev = max(dev, 1.0 - play(st, p, backend)[1].s3)
    return dev


# -- registry -------------------------------------------------------------------------

@dataclass(frozen=True)
class Suite:
    name: str
    tolerance: float
    run: Callable[[], float]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


def _split(name, fn, tols):
    # expand a dict-returning check into one suite per key
    cache = {}

    def getter(key):
        def run():
            if not cache:
                cache.update(fn())
            return cache[key]
        return run
    return [Suite(f"{name}.{key}", tol, getter(key)) for key, tol in tols.items()]


def default_suites(samples: int = 1000) -> list[Suite]:
    suites = [
        Suite("ga.anticommutation", 1e-12, anticommutation_deviation),
        Suite("ga.iota", 1e-12, iota_deviation),
        Suite("ga.associativity", 1e-12, lambda: associativity_deviation(samples)),
        Suite("ga.reversion", 1e-12, lambda: reversion_deviation(samples)),
        Suite("ga.rotor_unit", 1e-12, lambda: rotor_unit_deviation(samples)),
        Suite("ga.isometry", 1e-10, lambda: isometry_deviation(samples)),
        Suite("ga.series_vs_closed_form", 1e-10, series_deviation),
        Suite("qm.pauli_relation", 1e-12, pauli_relation_deviation),
        Suite("qm.unitarity", 1e-12, lambda: unitarity_deviation(samples)),
        Suite("qm.evolve_invariants", 1e-12, lambda: evolve_deviation(samples)),
        Suite("qm.global_phase", 1e-12, lambda: phase_irrelevance_deviation(samples)),
        Suite("bridge.homomorphism", 1e-12, lambda: homomorphism_deviation(samples)),
        Suite("bridge.dagger", 1e-12, lambda: dagger_deviation(samples)),
        Suite("bridge.roundtrip", 1e-13, lambda: roundtrip_deviation(samples)),
        Suite("bridge.dynamics", 1e-10, lambda: dynamics_correspondence_deviation(samples)),
        Suite("game.meyer", 1e-12, meyer_checks),
        Suite("game.family_wins", 1e-9, lambda: family_win_deficit(51, 9)),
    ]
    suites += _split("game.family", family_condition_deviations, {
        "commutation": 1e-11, "rotation": 1e-10, "conjugated": 1e-10, "unit_axis": 1e-12,
        "tilt_bound": 1e-12, "abs_a_eq_abs_c": 1e-12, "phi_independence": 1e-12,
    })
    suites += _split("game.symmetry", sign_symmetry_deviations, {"theta_sign": 1e-12, "c3_sign": 1e-12})
    suites += [
        Suite("game.backend_agreement", 1e-10, lambda: backend_agreement_deviation(samples)),
        Suite("game.falsify_violations", 0.0, lambda: falsification_violations(samples)),
    ]
    return suites


def run_suites(suites, tolerance: float | None = None) -> list[SuiteResult]:
    results = []
    for suite in suites:
        tol = suite.tolerance if tolerance is None else tolerance
        results.append(SuiteResult(suite.name, float(suite.run()), tol))
    return results
