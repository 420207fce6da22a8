"""Quantum penny flip: Q's winning family, P's classical mixture, and play.

The coin starts heads up (ψ₀ = σ₃, ρ₀ = |0⟩⟨0|). Q applies U₁, P flips with
probability p, Q applies U₃. Q wins outright when the final Bloch vector is σ₃.

Q's winning family is parametrized by an angle θ with π/2 ≤ |θ| ≤ 3π/2, an
arbitrary angle φ and two signs. U₁ rotates by θ about

    u = aσ₁ + bσ₂ + cσ₃,   a = ±√(½ - ½cot²(θ/2)),  b = -c₃cot(θ/2),  c = c₃a

which sends σ₃ to c₃σ₁, a point P's flip cannot move. U₃ = e^{ιφσ₃/2}U₁†
then returns the coin to heads for every p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Union

import numpy as np

from . import ga_core as ga
from . import qm_core as qm
from .bridge import multivector_to_matrix
from .errors import DomainError, PreconditionError

WIN_TOL = 1e-9
FALSIFY_TOL = 1e-6
NEAR_FAMILY_TOL = 1e-6
BAND_TOL = 1e-12
TWO_PI = 2.0 * math.pi

BACKENDS = ("ga", "dm")
STAGE_LABELS = ("start", "after-Q1", "after-P", "after-Q3")

State = Union[ga.Multivector, qm.DensityMatrix]


@dataclass(frozen=True)
class StrategyParams:
    theta: float
    phi: float = 0.0
    sign_a: int = 1
    c3: int = 1

    def __post_init__(self):
        if self.sign_a not in (1, -1) or self.c3 not in (1, -1):
            raise PreconditionError("sign_a and c3 must each be +1 or -1")
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise PreconditionError("angles must be finite")
        theta = math.fmod(float(self.theta), TWO_PI)
        if not (math.pi / 2 - BAND_TOL <= abs(theta) <= 3 * math.pi / 2 + BAND_TOL):
            raise DomainError(
                f"theta={self.theta!r} outside the family band π/2 ≤ |θ| ≤ 3π/2 "
                "required by |cot(θ/2)| ≤ 1"
            )
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", float(self.phi))

    @property
    def cot_half(self) -> float:
        cot = math.cos(self.theta / 2) / math.sin(self.theta / 2)
        # a ~ sqrt(1 - cot^2) turns one ulp of theta at a band edge into ~1e-8,
        # so edges (within BAND_TOL) take |cot| = 1 exactly
        edge = abs(self.theta)
        if abs(edge - math.pi / 2) <= BAND_TOL or abs(edge - 3 * math.pi / 2) <= BAND_TOL:
            return math.copysign(1.0, cot)
        return cot

    def axis(self) -> tuple[float, float, float]:
        cot = self.cot_half
        a = self.sign_a * math.sqrt(max(0.0, 0.5 - 0.5 * cot * cot))
        return a, -self.c3 * cot, self.c3 * a


@dataclass(frozen=True, eq=False)
class QStrategy:
    u1: ga.Rotor
    u3: ga.Rotor
    u1_matrix: np.ndarray
    u3_matrix: np.ndarray
    axis: ga.AxisAngle
    params: Optional[StrategyParams] = None

    @classmethod
    def from_rotors(cls, u1: ga.Multivector, u3: ga.Multivector) -> "QStrategy":
        """Arbitrary Q strategy; the matrix side is carried across the bridge."""
        u1 = u1 if isinstance(u1, ga.Rotor) else ga.Rotor.from_multivector(u1)
        u3 = u3 if isinstance(u3, ga.Rotor) else ga.Rotor.from_multivector(u3)
        return cls(u1, u3, multivector_to_matrix(u1), multivector_to_matrix(u3),
                   u1.axis_angle)

    # Q's first move does not depend on p, so each back end computes it once
    @cached_property
    def psi1(self) -> ga.Multivector:
        return ga.apply_rotor(self.u1, ga.SIGMA3)

    @cached_property
    def rho1(self) -> qm.DensityMatrix:
        return qm.evolve(qm.KET0, self.u1_matrix)

    @cached_property
    def u3_operator(self) -> np.ndarray:
        return ga.sandwich_operator(self.u3)


@dataclass(frozen=True, eq=False)
class GameTranscript:
    p: float
    states: tuple
    backend: str

    def bloch(self, stage: int) -> np.ndarray:
        s = self.states[stage]
        if self.backend == "ga":
            return np.array(s.vector_part)
        return qm.bloch_vector(s)

    def bloch_path(self) -> np.ndarray:
        return np.array([self.bloch(k) for k in range(4)])


@dataclass(frozen=True)
class GameOutcome:
    s3: float
    q_win_probability: float
    q_always_wins: bool

    @classmethod
    def from_s3(cls, s3: float) -> "GameOutcome":
        s3 = min(1.0, max(-1.0, float(s3)))
        return cls(s3, 0.5 * (1.0 + s3), s3 >= 1.0 - WIN_TOL)


def phase_rotor(phi: float) -> ga.Rotor:
    """e^{ιφσ₃/2}: rotation about σ₃, fixes heads."""
    return ga.rotor_from_axis_angle(ga.AxisAngle((0.0, 0.0, 1.0), phi))


def solve_family(params: StrategyParams) -> QStrategy:
    axis = ga.AxisAngle(params.axis(), params.theta)
    u1 = ga.rotor_from_axis_angle(axis)
    u3 = ga.Rotor.from_multivector(phase_rotor(params.phi) * ~u1)

    # matrix side built independently from the closed form, not via the bridge
    m1 = qm.unitary_from_axis_angle(qm.MatrixAxisAngle(axis.axis, params.theta))
    m_phase = qm.unitary_from_axis_angle(qm.MatrixAxisAngle((0, 0, 1), params.phi))
    m3 = m_phase @ qm.dagger(m1)
    return QStrategy(u1, u3, m1, m3, axis, params)


def meyer_strategy() -> QStrategy:
    """θ = π, φ = 0: U₁ is the Hadamard rotor ι(σ₁ + σ₃)/√2 and U₃ = U₁†."""
    return solve_family(StrategyParams(math.pi, 0.0, 1, 1))


def classical_strategy() -> QStrategy:
    """Q does nothing on either move."""
    return QStrategy.from_rotors(ga.IDENTITY_ROTOR, ga.IDENTITY_ROTOR)


def tilt_angle(strategy: QStrategy) -> float:
    """Angle ψ between the U₁ axis and σ₃ (cos ψ = c)."""
    c = max(-1.0, min(1.0, strategy.axis.axis[2]))
    return math.acos(c)


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise PreconditionError(f"flip probability must be in [0, 1], got {p!r}")
    return p


def p_move(state: State, p: float) -> State:
    """P flips (F = σ₁) with probability p, else leaves the coin (N = 1)."""
    p = _check_p(p)
    if isinstance(state, ga.Multivector):
        flipped = ga.sandwich(ga.SIGMA1, state)
        return p * flipped + (1.0 - p) * state
    if isinstance(state, qm.DensityMatrix):
        flipped = qm.evolve(state, qm.pauli(1))
        return qm.mix([(p, flipped), (1.0 - p, state)])
    raise PreconditionError(f"unsupported state type {type(state).__name__}")


def play(strategy: QStrategy, p: float, backend: str = "ga"):
    """Run Q₁, P(p), Q₃. Returns (GameTranscript, GameOutcome)."""
    p = _check_p(p)
    if backend == "ga":
        psi0 = ga.SIGMA3
        psi1 = strategy.psi1
        psi2 = p_move(psi1, p)
        psi3 = ga.apply_rotor(strategy.u3, psi2)
        states = (psi0, psi1, psi2, psi3)
        s3 = psi3[3]
    elif backend == "dm":
        rho0 = qm.KET0
        rho1 = strategy.rho1
        rho2 = p_move(rho1, p)
        rho3 = qm.evolve(rho2, strategy.u3_matrix)
        states = (rho0, rho1, rho2, rho3)
        s3 = qm.bloch_vector(rho3)[2]
    else:
        raise PreconditionError(f"backend must be one of {BACKENDS}, got {backend!r}")
    return GameTranscript(p, states, backend), GameOutcome.from_s3(s3)


_FLIP_OPERATOR = ga.sandwich_operator(ga.SIGMA1)


def play_batch(strategy: QStrategy, ps, backend: str = "ga") -> np.ndarray:
    """Bloch paths, shape (len(ps), 4, 3), for many flip probabilities at once.

    Same moves as play(); conjugations are applied as precomputed linear maps so a
    whole p-grid costs a handful of array operations. Final s3 is [:, 3, 2].
    """
    ps = np.asarray(ps, dtype=float).reshape(-1)
    if ps.size and not ((ps >= 0.0) & (ps <= 1.0)).all():
        raise PreconditionError("flip probabilities must be in [0, 1]")
    n = ps.size
    paths = np.empty((n, 4, 3))
    if backend == "ga":
        psi1 = strategy.psi1.coeffs
        psi2 = np.outer(ps, psi1 @ _FLIP_OPERATOR) + np.outer(1.0 - ps, psi1)
        psi3 = psi2 @ strategy.u3_operator
        paths[:, 0] = ga.SIGMA3.vector_part
        paths[:, 1] = psi1[1:4]
        paths[:, 2] = psi2[:, 1:4]
        paths[:, 3] = psi3[:, 1:4]
    elif backend == "dm":
        f = qm.pauli(1)
        rho1 = strategy.rho1.matrix
        flipped = f @ rho1 @ f
        rho2 = ps[:, None, None] * flipped + (1.0 - ps)[:, None, None] * rho1
        u3 = strategy.u3_matrix
        rho3 = u3 @ rho2 @ qm.dagger(u3)
        paths[:, 0] = qm.bloch_vector(qm.KET0)
        paths[:, 1] = qm.bloch_vector(strategy.rho1)
        paths[:, 2] = _bloch_many(rho2)
        paths[:, 3] = _bloch_many(rho3)
    else:
        raise PreconditionError(f"backend must be one of {BACKENDS}, got {backend!r}")
    return paths


def _bloch_many(rhos: np.ndarray) -> np.ndarray:
    off = rhos[:, 0, 1]
    return np.stack([2.0 * off.real, -2.0 * off.imag, (rhos[:, 0, 0] - rhos[:, 1, 1]).real], axis=1)


def is_winning_strategy(u1: ga.Multivector, u3: ga.Multivector, p_grid) -> bool:
    strategy = QStrategy.from_rotors(u1, u3)
    return all(play(strategy, p, "ga")[1].q_always_wins for p in p_grid)


def target_distance(u1: ga.Multivector) -> float:
    """1 - |⟨U₁σ₃U₁†, σ₁⟩|: zero exactly when σ₃ lands on ±σ₁."""
    psi1 = ga.apply_rotor(u1, ga.SIGMA3)
    return 1.0 - abs(psi1[1])


def satisfies_win_conditions(u1: ga.Multivector, u3: ga.Multivector,
                             tol: float = ga.NUMERIC_TOL) -> bool:
    """The algebraic characterization: U₃U₁ commutes with σ₃ and U₁σ₃U₁† = ±σ₁."""
    u31 = u3 * u1
    comm = u31 * ga.SIGMA3 - ga.SIGMA3 * u31
    return comm.max_abs() <= tol and target_distance(u1) <= tol


# -- falsification --------------------------------------------------------------

@dataclass(frozen=True)
class TrialResult:
    index: int
    axis: tuple
    angle: float
    phi: float
    distance: float
    status: str  # "skipped", "refuted" or "violation"
    witness_p: Optional[float] = None
    s3_by_p: tuple = ()


@dataclass(frozen=True)
class FalsificationReport:
    trials: int
    seed: int
    results: tuple

    @property
    def violations(self) -> list:
        return [r for r in self.results if r.status == "violation"]

    @property
    def skipped(self) -> list:
        return [r for r in self.results if r.status == "skipped"]

    @property
    def refuted(self) -> list:
        return [r for r in self.results if r.status == "refuted"]


FALSIFY_P = (0.0, 0.5, 1.0)


def check_trial(u1: ga.Multivector, phi: float, index: int = 0) -> TrialResult:
    """For U₁ off the family, U₃ = e^{ιφσ₃/2}U₁† must lose at some p in {0, ½, 1}."""
    u1 = u1 if isinstance(u1, ga.Rotor) else ga.Rotor.from_multivector(u1)
    aa = u1.axis_angle
    dist = target_distance(u1)
    if dist < NEAR_FAMILY_TOL:
        return TrialResult(index, aa.axis, aa.angle, phi, dist, "skipped")
    u3 = ga.Rotor.from_multivector(phase_rotor(phi) * ~u1)
    strategy = QStrategy.from_rotors(u1, u3)
    s3s = tuple(play(strategy, p, "ga")[1].s3 for p in FALSIFY_P)
    worst = int(np.argmin(s3s))
    if s3s[worst] < 1.0 - FALSIFY_TOL:
        return TrialResult(index, aa.axis, aa.angle, phi, dist, "refuted", FALSIFY_P[worst], s3s)
    return TrialResult(index, aa.axis, aa.angle, phi, dist, "violation", None, s3s)


def random_rotor(rng: np.random.Generator) -> ga.Rotor:
    """Axis uniform on the sphere, angle uniform on [0, 2π)."""
    v = rng.normal(size=3)
    axis = v / np.linalg.norm(v)
    return ga.rotor_from_axis_angle(ga.AxisAngle(tuple(axis), rng.uniform(0.0, TWO_PI)))


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def falsify_random(trials: int, rng_seed: int) -> FalsificationReport:
    if trials < 1:
        raise PreconditionError("trials must be at least 1")
    results = []
    for i in range(trials):
        rng = trial_rng(rng_seed, i)
        u1 = random_rotor(rng)
        phi = rng.uniform(0.0, TWO_PI)
        results.append(check_trial(u1, phi, i))
    return FalsificationReport(trials, rng_seed, tuple(results))


def random_family_params(rng: np.random.Generator) -> StrategyParams:
    """A uniformly drawn member of the winning family, either sign of θ."""
    theta = rng.uniform(math.pi / 2, 3 * math.pi / 2) * rng.choice([-1.0, 1.0])
    return StrategyParams(theta, rng.uniform(0.0, TWO_PI),
                          int(rng.choice([-1, 1])), int(rng.choice([-1, 1])))


def backend_deviation(strategy: QStrategy, p: float) -> float:
    """Largest Bloch-component gap between the GA and DM runs over all four stages."""
    ga_t, _ = play(strategy, p, "ga")
    dm_t, _ = play(strategy, p, "dm")
    return float(np.max(np.abs(ga_t.bloch_path() - dm_t.bloch_path())))
