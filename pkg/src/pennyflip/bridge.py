"""The Pauli representation of Cl(3,0) and its inverse.

1 → I₂, σₖ → Pauli σₖ, ι → iI₂, ισₖ → iσₖ. This is an algebra isomorphism
onto the full 2x2 complex matrices, and reversion maps to the conjugate
transpose. Both facts are what lets each formalism serve as the other's oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ga_core import Multivector
from .qm_core import I2, DensityMatrix, bloch_vector, pauli

STATE_TOL = 1e-10

# _BASIS[k] is the image of storage element k
_BASIS = np.array(
    [I2, pauli(1), pauli(2), pauli(3),
     1j * pauli(1), 1j * pauli(2), 1j * pauli(3), 1j * I2]
)


def multivector_to_matrix(x: Multivector) -> np.ndarray:
    return np.tensordot(x.coeffs, _BASIS, axes=1)


def matrix_to_multivector(m) -> Multivector:
    """Unique preimage, read off via tr(M)/2 and tr(Mσₖ)/2."""
    m = np.asarray(m, dtype=complex)
    t0 = 0.5 * np.trace(m)
    tk = [0.5 * np.trace(m @ pauli(k)) for k in (1, 2, 3)]
    return Multivector([
        t0.real, tk[0].real, tk[1].real, tk[2].real,
        tk[0].imag, tk[1].imag, tk[2].imag, t0.imag,
    ])


@dataclass
class BridgeReport:
    deviations: dict[str, float] = field(default_factory=dict)
    passed: dict[str, bool] = field(default_factory=dict)

    def record(self, name: str, deviation: float, tol: float) -> None:
        self.deviations[name] = float(deviation)
        self.passed[name] = bool(deviation <= tol)

    @property
    def ok(self) -> bool:
        return all(self.passed.values())


def check_state_correspondence(v: Multivector, rho: DensityMatrix,
                               tol: float = STATE_TOL) -> BridgeReport:
    """Does the Bloch vector of rho match the vector v (ρ = (I₂ + s·σ)/2)?

    Mixed states are allowed: |v| may be below 1.
    """
    report = BridgeReport()
    off_grade = float(np.max(np.abs(v.coeffs[[0, 4, 5, 6, 7]])))
    report.record("grade-1", off_grade, tol)
    report.record("norm<=1", max(0.0, float(np.linalg.norm(v.vector_part)) - 1.0), tol)
    report.record("bloch", float(np.max(np.abs(bloch_vector(rho) - v.vector_part))), tol)
    return report
