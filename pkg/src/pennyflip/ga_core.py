"""Geometric algebra of Euclidean 3-space, Cl(3,0).

Multivectors carry 8 real coefficients in the fixed order

    1, σ₁, σ₂, σ₃, ισ₁, ισ₂, ισ₃, ι

where ι = σ₁σ₂σ₃ is the unit trivector. Bivectors are stored in dual form
(ισ₁ = σ₂σ₃, ισ₂ = σ₃σ₁, ισ₃ = σ₁σ₂) so a rotor cos(θ/2) + ιu sin(θ/2) reads
its axis straight off coefficients 4..6.

The multiplication table is generated from the blade rules σᵢ² = 1 and
σᵢσⱼ = -σⱼσᵢ rather than written out by hand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
import numpy as np

from .errors import PreconditionError

EXACT_TOL = 1e-12
NUMERIC_TOL = 1e-10
DISPLAY_EPS = 1e-12
SERIES_CUTOFF = 1e-16
SERIES_MAX_TERMS = 64

BASIS_LABELS = ("1", "σ₁", "σ₂", "σ₃", "ισ₁", "ισ₂", "ισ₃", "ι")
GRADE_SLICES = {0: slice(0, 1), 1: slice(1, 4), 2: slice(4, 7), 3: slice(7, 8)}
_SCALAR_TYPES = (int, float, np.floating, np.integer)
_GRADE_OF_INDEX = np.array([0, 1, 1, 1, 2, 2, 2, 3])
_OFF_GRADE = {k: _GRADE_OF_INDEX != k for k in range(4)}
_GRADE_MASK = {k: (_GRADE_OF_INDEX == k).astype(float) for k in range(4)}


# -- multiplication table ----------------------------------------------------

def _blade_product(a: int, b: int) -> tuple[int, int]:
    """Product of two basis blades given as bitmasks over (σ₁, σ₂, σ₃).

    Returns (sign, mask). Every σᵢ squares to +1, so only the reordering sign
    matters.
    """
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    return (-1 if swaps & 1 else 1), a ^ b


def _storage_blades() -> list[tuple[int, int]]:
    # (sign, mask) such that storage element k == sign * blade(mask)
    scalar_and_vectors = [(1, 0b000), (1, 0b001), (1, 0b010), (1, 0b100)]
    iota = 0b111
    duals = [_blade_product(iota, mask) for _, mask in scalar_and_vectors[1:]]
    return scalar_and_vectors + duals + [(1, iota)]


def _build_table() -> np.ndarray:
    blades = _storage_blades()
    index_of = {mask: k for k, (_, mask) in enumerate(blades)}
    table = np.zeros((64, 8))
    for i, (si, mi) in enumerate(blades):
        for j, (sj, mj) in enumerate(blades):
            s, m = _blade_product(mi, mj)
            k = index_of[m]
            table[8 * i + j, k] = si * sj * s * blades[k][0]
    return table


_PRODUCT_TABLE = _build_table()
# x @ _LEFT_TABLE reshaped to (8, 8) is M with (x*y)_k = sum_j y_j M[j, k]
_LEFT_TABLE = np.ascontiguousarray(_PRODUCT_TABLE.reshape(8, 64))
# x * y == y-coefficients @ (x @ _LEFT_TABLE).reshape(8, 8)
#        == x-coefficients @ (_RIGHT_TABLE @ y).reshape(8, 8)
_RIGHT_TABLE = np.ascontiguousarray(_PRODUCT_TABLE.reshape(8, 8, 8).transpose(0, 2, 1).reshape(64, 8))
_REVERSE_SIGNS = np.array([1.0, 1, 1, 1, -1, -1, -1, -1])


# -- value types ---------------------------------------------------------------

class Multivector:
    """Immutable element of Cl(3,0)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=float).reshape(8)
        if not np.isfinite(c).all():
            raise PreconditionError("multivector coefficients must be finite")
        c.flags.writeable = False
        self._c = c

    @classmethod
    def _raw(cls, c: np.ndarray) -> "Multivector":
        # skips validation; only for arrays produced by arithmetic on valid values
        mv = object.__new__(Multivector)
        c.flags.writeable = False
        mv._c = c
        return mv

    @classmethod
    def scalar(cls, s: float) -> "Multivector":
        return cls([s, 0, 0, 0, 0, 0, 0, 0])

    @classmethod
    def vector(cls, x: float, y: float, z: float) -> "Multivector":
        return cls([0, x, y, z, 0, 0, 0, 0])

    @classmethod
    def bivector(cls, x: float, y: float, z: float) -> "Multivector":
        """The bivector ι(xσ₁ + yσ₂ + zσ₃)."""
        return cls([0, 0, 0, 0, x, y, z, 0])

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def __getitem__(self, k):
        return self._c[k]

    @property
    def vector_part(self) -> np.ndarray:
        return self._c[1:4]

    def __add__(self, other):
        if isinstance(other, _SCALAR_TYPES):
            other = Multivector.scalar(other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return Multivector._raw(self._c + other._c)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, _SCALAR_TYPES):
            other = Multivector.scalar(other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return Multivector._raw(self._c - other._c)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Multivector._raw(-self._c)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, _SCALAR_TYPES):
            return Multivector._raw(self._c * float(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _SCALAR_TYPES):
            return Multivector._raw(self._c * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, _SCALAR_TYPES):
            return Multivector._raw(self._c / float(other))
        return NotImplemented

    def __invert__(self):
        return reverse(self)

    def max_abs(self) -> float:
        return float(np.abs(self._c).max())

    def allclose(self, other: "Multivector", tol: float = EXACT_TOL) -> bool:
        return (self - other).max_abs() <= tol

    def is_grade(self, k: int, tol: float = 0.0) -> bool:
        """True if every coefficient outside grade k is within tol of zero."""
        return float(np.abs(self._c[_OFF_GRADE[k]]).max()) <= tol

    def __repr__(self):
        return f"Multivector({format_multivector(self)})"

    def __str__(self):
        return format_multivector(self)


class Rotor(Multivector):
    """Unit element of the even subalgebra: odd grades exactly zero, RR† = 1."""

    __slots__ = ()

    def __init__(self, coeffs, tol: float = NUMERIC_TOL):
        super().__init__(coeffs)
        if self._c[1:4].any() or self._c[7] != 0.0:
            raise PreconditionError("rotor must have zero odd-grade coefficients")
        unit = geometric_product(self, reverse(self)) - 1.0
        if unit.max_abs() > tol:
            raise PreconditionError(f"rotor is not unit: |RR† - 1| = {unit.max_abs():.3g}")

    @classmethod
    def from_multivector(cls, mv: Multivector, tol: float = NUMERIC_TOL) -> "Rotor":
        """Validate an even multivector as a rotor, dropping odd-grade rounding noise."""
        c = np.array(mv.coeffs)
        if np.max(np.abs(c[[1, 2, 3, 7]])) > tol:
            raise PreconditionError("multivector has odd-grade content")
        c[[1, 2, 3, 7]] = 0.0
        return cls(c, tol=tol)

    @property
    def axis_angle(self) -> "AxisAngle":
        """Recover (u, θ) with R = cos(θ/2) + ιu sin(θ/2), θ in [0, 2π]."""
        s = float(np.linalg.norm(self._c[4:7]))
        angle = 2.0 * math.atan2(s, self._c[0])
        if s == 0.0:
            return AxisAngle((0.0, 0.0, 1.0), angle)
        return AxisAngle(tuple(self._c[4:7] / s), angle)


@dataclass(frozen=True)
class AxisAngle:
    """Rotation axis u = aσ₁ + bσ₂ + cσ₃ and angle θ in radians."""

    axis: tuple[float, float, float]
    angle: float

    def __post_init__(self):
        axis = tuple(float(x) for x in self.axis)
        if len(axis) != 3:
            raise PreconditionError("axis must have three components")
        object.__setattr__(self, "axis", axis)
        norm2 = sum(x * x for x in axis)
        if abs(norm2 - 1.0) > NUMERIC_TOL:
            raise PreconditionError(f"axis is not a unit vector (|u|² = {norm2!r})")
        if not math.isfinite(self.angle):
            raise PreconditionError("angle must be finite")


# -- operations -------------------------------------------------------------------

def geometric_product(x: Multivector, y: Multivector) -> Multivector:
    left = (x.coeffs @ _LEFT_TABLE).reshape(8, 8)
    return Multivector._raw(y.coeffs @ left)


def reverse(x: Multivector) -> Multivector:
    return Multivector._raw(x.coeffs * _REVERSE_SIGNS)


def grade_project(x: Multivector, k: int) -> Multivector:
    if k not in GRADE_SLICES:
        raise PreconditionError(f"grade must be 0..3, got {k!r}")
    return Multivector._raw(x.coeffs * _GRADE_MASK[k])


def rotor_from_axis_angle(ax: AxisAngle) -> Rotor:
    half = 0.5 * ax.angle
    s = math.sin(half)
    a, b, c = ax.axis
    return Rotor([math.cos(half), 0, 0, 0, a * s, b * s, c * s, 0])


def exp_bivector_series(b: Multivector) -> Multivector:
    """exp(b) for a pure bivector by direct power series.

    Kept independent of the closed form used by rotor_from_axis_angle so the
    two can check each other.
    """
    if not b.is_grade(2):
        raise PreconditionError("exp_bivector_series needs a pure bivector")
    total = Multivector.scalar(1.0)
    term = total
    for n in range(1, SERIES_MAX_TERMS):
        term = geometric_product(term, b) / n
        if term.max_abs() < SERIES_CUTOFF:
            break
        total = total + term
    return total


def sandwich(r: Multivector, v: Multivector) -> Multivector:
    """Raw RvR† with no checks or projection."""
    return geometric_product(geometric_product(r, v), reverse(r))


def sandwich_operator(r: Multivector) -> np.ndarray:
    """8x8 matrix S with sandwich(r, x).coeffs == x.coeffs @ S, for batch use."""
    left = (r.coeffs @ _LEFT_TABLE).reshape(8, 8)
    right = (_RIGHT_TABLE @ reverse(r).coeffs).reshape(8, 8)
    return left @ right


def apply_rotor(r: Multivector, v: Multivector) -> Multivector:
    """Rotate the vector v by the unit rotor r, returning the grade-1 part of RvR†."""
    if not isinstance(r, Rotor):
        r = Rotor.from_multivector(r)
    if not v.is_grade(1, NUMERIC_TOL):
        raise PreconditionError("apply_rotor acts on grade-1 vectors only")
    out = sandwich(r, v).coeffs
    # RvR† of a vector is a vector; what remains off grade 1 is rounding (or v's own residue)
    if float(np.abs(out[_OFF_GRADE[1]]).max()) > NUMERIC_TOL:
        raise PreconditionError("rotation left the vector grade; rotor not unit?")
    return Multivector._raw(out * _GRADE_MASK[1])


def vector_norm(v: Multivector) -> float:
    return float(np.linalg.norm(v.vector_part))


def format_multivector(x: Multivector, eps: float = DISPLAY_EPS) -> str:
    """Human-readable form, e.g. '0.5 + 0.5ισ₃'."""
    parts = []
    for coeff, label in zip(x.coeffs, BASIS_LABELS):
        if abs(coeff) < eps:
            continue
        mag = abs(coeff)
        if label == "1":
            body = f"{mag:.6g}"
        elif abs(mag - 1.0) < eps:
            body = label
        else:
            body = f"{mag:.6g}{label}"
        if not parts:
            parts.append(("-" if coeff < 0 else "") + body)
        else:
            parts.append(("- " if coeff < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


ONE = Multivector.scalar(1.0)
SIGMA1 = Multivector.vector(1, 0, 0)
SIGMA2 = Multivector.vector(0, 1, 0)
SIGMA3 = Multivector.vector(0, 0, 1)
IOTA = Multivector([0, 0, 0, 0, 0, 0, 0, 1])
IDENTITY_ROTOR = Rotor([1, 0, 0, 0, 0, 0, 0, 0])
