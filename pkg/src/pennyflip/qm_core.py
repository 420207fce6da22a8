"""Single-qubit matrix formalism: Pauli matrices, SU(2) unitaries, density matrices.

Matrices are plain ``numpy`` arrays of shape (2, 2) and dtype complex128.
Convention: σ₃ diagonal, |0⟩ = (1, 0)ᵀ is heads.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError

EXACT_TOL = 1e-12
UNITARY_TOL = 1e-10
COMMUTE_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
for _m in _PAULI:
    _m.flags.writeable = False
I2.flags.writeable = False


def pauli(i: int) -> np.ndarray:
    if i not in (1, 2, 3):
        raise PreconditionError(f"Pauli index must be 1, 2 or 3, got {i!r}")
    return _PAULI[i - 1]


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def hadamard() -> np.ndarray:
    return np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def unitarity_error(u: np.ndarray) -> float:
    """max |U†U - I₂| entry, written out for the 2x2 case."""
    (a, b), (c, d) = u.tolist()
    return max(
        abs(abs(a) ** 2 + abs(c) ** 2 - 1.0),
        abs(abs(b) ** 2 + abs(d) ** 2 - 1.0),
        abs(a.conjugate() * b + c.conjugate() * d),
    )


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    return unitarity_error(u) <= tol


def _as_matrix2(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise PreconditionError(f"expected a 2x2 matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise PreconditionError("matrix entries must be finite")
    return m


def hermitian_eigenvalues(m: np.ndarray) -> tuple[float, float]:
    """Eigenvalues of a Hermitian 2x2 matrix from its characteristic polynomial."""
    a = m[0, 0].real
    d = m[1, 1].real
    half_gap = math.hypot(0.5 * (a - d), abs(m[0, 1]))
    mid = 0.5 * (a + d)
    return mid - half_gap, mid + half_gap


@dataclass(frozen=True)
class MatrixAxisAngle:
    """U = exp(iθ û/2) · exp(iβ) with û = aσ₁ + bσ₂ + cσ₃."""

    axis: tuple[float, float, float]
    angle: float
    phase: float = 0.0

    def __post_init__(self):
        axis = tuple(float(x) for x in self.axis)
        object.__setattr__(self, "axis", axis)
        norm2 = sum(x * x for x in axis)
        if len(axis) != 3 or abs(norm2 - 1.0) > UNITARY_TOL:
            raise PreconditionError(f"axis is not a unit 3-vector (|u|² = {norm2!r})")

    @property
    def half_angle(self) -> float:
        # the generator's α, with θ = 2α
        return 0.5 * self.angle


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = _as_matrix2(self.matrix).copy()
        if np.abs(m - dagger(m)).max() > EXACT_TOL:
            raise PreconditionError("density matrix must be Hermitian")
        if abs(np.trace(m) - 1.0) > EXACT_TOL:
            raise PreconditionError(f"density matrix trace is {np.trace(m)!r}, not 1")
        if hermitian_eigenvalues(m)[0] < -EXACT_TOL:
            raise PreconditionError("density matrix has a negative eigenvalue")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def _trusted(cls, m: np.ndarray) -> "DensityMatrix":
        # for outputs of evolve/mix, which preserve the invariants by construction
        rho = object.__new__(cls)
        m.flags.writeable = False
        object.__setattr__(rho, "matrix", m)
        return rho

    @classmethod
    def from_bloch(cls, s) -> "DensityMatrix":
        x, y, z = s
        return cls(0.5 * (I2 + x * _PAULI[0] + y * _PAULI[1] + z * _PAULI[2]))

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def __repr__(self):
        return f"DensityMatrix(bloch={tuple(np.round(bloch_vector(self), 12))})"


KET0 = DensityMatrix(np.array([[1, 0], [0, 0]], dtype=complex))
KET1 = DensityMatrix(np.array([[0, 0], [0, 1]], dtype=complex))


def unitary_from_axis_angle(p: MatrixAxisAngle) -> np.ndarray:
    a, b, c = p.axis
    u_hat = a * _PAULI[0] + b * _PAULI[1] + c * _PAULI[2]
    half = 0.5 * p.angle
    return (I2 * math.cos(half) + 1j * math.sin(half) * u_hat) * cmath.exp(1j * p.phase)


def evolve(rho: DensityMatrix, u) -> DensityMatrix:
    """UρU†."""
    u = _as_matrix2(u)
    if not is_unitary(u):
        raise PreconditionError(f"evolve needs a unitary (|U†U - I| = {unitarity_error(u):.3g})")
    return DensityMatrix._trusted(u @ rho.matrix @ dagger(u))


def mix(parts) -> DensityMatrix:
    """Convex combination of (probability, DensityMatrix) pairs."""
    total = None
    weight = 0.0
    for p, rho in parts:
        p = float(p)
        if not p >= 0.0 or p == math.inf:
            raise PreconditionError("probabilities must be finite and non-negative")
        weight += p
        total = p * rho.matrix if total is None else total + p * rho.matrix
    if total is None:
        raise PreconditionError("mix needs at least one component")
    if abs(weight - 1.0) > EXACT_TOL:
        raise PreconditionError(f"probabilities sum to {weight!r}, not 1")
    return DensityMatrix._trusted(total)


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def commutes_with_sigma3(u, tol: float = COMMUTE_TOL) -> bool:
    u = _as_matrix2(u)
    return bool(np.abs(commutator(u, _PAULI[2])).max() < tol)


def bloch_vector(rho: DensityMatrix) -> np.ndarray:
    """(tr ρσ₁, tr ρσ₂, tr ρσ₃)."""
    m = rho.matrix
    return np.array([
        2.0 * m[0, 1].real,
        -2.0 * m[0, 1].imag,
        (m[0, 0] - m[1, 1]).real,
    ])
