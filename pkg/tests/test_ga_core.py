import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pennyflip import ga_core as ga
from pennyflip.errors import PreconditionError

from conftest import oracle_coeffs, oracle_matrix

R2 = 1 / math.sqrt(2)
coeff = st.floats(-1, 1, allow_nan=False)
multivectors = st.lists(coeff, min_size=8, max_size=8).map(ga.Multivector)


@st.composite
def axis_angles(draw, lo=-2 * math.pi, hi=2 * math.pi):
    v = np.array(draw(st.lists(st.floats(-1, 1), min_size=3, max_size=3)))
    n = np.linalg.norm(v)
    if n < 1e-3:
        v, n = np.array([0.0, 0.0, 1.0]), 1.0
    return ga.AxisAngle(tuple(v / n), draw(st.floats(lo, hi)))


def test_table_matches_matrix_oracle():
    for i in range(8):
        for j in range(8):
            ei = ga.Multivector(np.eye(8)[i])
            ej = ga.Multivector(np.eye(8)[j])
            expected = oracle_coeffs(oracle_matrix(ei.coeffs) @ oracle_matrix(ej.coeffs))
            np.testing.assert_allclose((ei * ej).coeffs, expected, atol=1e-15)


def test_basis_products():
    assert (ga.SIGMA1 * ga.SIGMA1).allclose(ga.ONE, 0.0)
    assert (ga.SIGMA1 * ga.SIGMA2).allclose(ga.Multivector.bivector(0, 0, 1), 0.0)
    assert (ga.IOTA * ga.IOTA).allclose(-ga.ONE, 0.0)
    assert (ga.SIGMA1 * ga.SIGMA2 * ga.SIGMA3).allclose(ga.IOTA, 0.0)


def test_product_by_bilinearity():
    # oracle: (I + X)(I + Y) = I + X + Y + iZ
    got = (1 + ga.SIGMA1) * (1 + ga.SIGMA2)
    oracle = oracle_coeffs((np.eye(2) + oracle_matrix(ga.SIGMA1.coeffs)) @ (np.eye(2) + oracle_matrix(ga.SIGMA2.coeffs)))
    np.testing.assert_allclose(got.coeffs, [1, 1, 1, 0, 0, 0, 1, 0], atol=0)
    np.testing.assert_allclose(got.coeffs, oracle, atol=1e-15)


@pytest.mark.parametrize("i", range(3))
@pytest.mark.parametrize("j", range(3))
def test_anticommutation_exact(i, j):
    si, sj = (ga.SIGMA1, ga.SIGMA2, ga.SIGMA3)[i], (ga.SIGMA1, ga.SIGMA2, ga.SIGMA3)[j]
    assert (si * sj + sj * si).allclose(ga.Multivector.scalar(2.0 if i == j else 0.0), 0.0)


def test_iota_is_central_on_vectors():
    for s in (ga.SIGMA1, ga.SIGMA2, ga.SIGMA3):
        assert (ga.IOTA * s - s * ga.IOTA).max_abs() == 0.0


def test_reverse_examples():
    assert ga.reverse(ga.SIGMA3).allclose(ga.SIGMA3, 0.0)
    assert ga.reverse(ga.IOTA).allclose(-ga.IOTA, 0.0)
    is3 = ga.Multivector.bivector(0, 0, 1)
    assert ga.reverse(is3).allclose(-is3, 0.0)
    # oracle: reversion is the conjugate transpose in the Pauli picture
    np.testing.assert_allclose(oracle_matrix(ga.reverse(is3).coeffs), oracle_matrix(is3.coeffs).conj().T)


@given(multivectors, multivectors, multivectors)
def test_associativity(a, b, c):
    assert ((a * b) * c - a * (b * c)).max_abs() < 1e-12


@given(multivectors, multivectors)
def test_reversion_anti_automorphism(a, b):
    assert (~(a * b) - (~b) * (~a)).max_abs() < 1e-12


@given(multivectors, multivectors)
def test_product_matches_oracle(a, b):
    expected = oracle_coeffs(oracle_matrix(a.coeffs) @ oracle_matrix(b.coeffs))
    np.testing.assert_allclose((a * b).coeffs, expected, atol=1e-12)


@given(axis_angles())
def test_rotor_is_unit(ax):
    r = ga.rotor_from_axis_angle(ax)
    assert (r * ~r - 1.0).max_abs() < 1e-12
    assert (~r * r - 1.0).max_abs() < 1e-12
    assert r.coeffs[[1, 2, 3, 7]].tolist() == [0.0, 0.0, 0.0, 0.0]


@given(axis_angles(), st.lists(st.floats(-1, 1), min_size=3, max_size=3))
def test_rotation_is_isometry(ax, v):
    r = ga.rotor_from_axis_angle(ax)
    vec = ga.Multivector.vector(*v)
    raw = ga.sandwich(r, vec)
    assert abs(ga.vector_norm(raw) - ga.vector_norm(vec)) < 1e-10
    assert raw.is_grade(1, 1e-12)
    assert ga.grade_project(raw, 1).allclose(ga.apply_rotor(r, vec), 0.0)


@given(axis_angles())
def test_closed_form_matches_series(ax):
    series = ga.exp_bivector_series(ga.Multivector.bivector(*ax.axis) * (ax.angle / 2))
    assert (ga.rotor_from_axis_angle(ax) - series).max_abs() < 1e-10


def test_rotor_examples():
    assert ga.rotor_from_axis_angle(ga.AxisAngle((0, 0, 1), 0.0)).allclose(ga.ONE, 0.0)
    meyer = ga.rotor_from_axis_angle(ga.AxisAngle((R2, 0, R2), math.pi))
    assert meyer.allclose(ga.Multivector.bivector(R2, 0, R2), 1e-15)
    s = ga.rotor_from_axis_angle(ga.AxisAngle((1, 0, 0), math.pi))
    assert s.allclose(ga.Multivector.bivector(1, 0, 0), 1e-15)


def test_non_unit_axis_rejected():
    with pytest.raises(PreconditionError):
        ga.AxisAngle((1, 1, 0), 1.0)


def test_series_examples():
    assert ga.exp_bivector_series(ga.Multivector([0] * 8)).allclose(ga.ONE, 0.0)
    got = ga.exp_bivector_series(ga.Multivector.bivector(0, 0, math.pi / 2))
    assert got.allclose(ga.Multivector.bivector(0, 0, 1), 1e-12)
    got = ga.exp_bivector_series(ga.Multivector.bivector(R2, 0, R2) * (math.pi / 2))
    assert got.allclose(ga.Multivector.bivector(R2, 0, R2), 1e-12)


def test_series_rejects_non_bivector():
    with pytest.raises(PreconditionError):
        ga.exp_bivector_series(ga.SIGMA1)


def test_apply_rotor_examples():
    assert ga.apply_rotor(ga.IDENTITY_ROTOR, ga.SIGMA3).allclose(ga.SIGMA3, 0.0)
    meyer = ga.rotor_from_axis_angle(ga.AxisAngle((R2, 0, R2), math.pi))
    assert ga.apply_rotor(meyer, ga.SIGMA3).allclose(ga.SIGMA1, 1e-12)


def test_quarter_turn_about_sigma1_sign():
    r = ga.rotor_from_axis_angle(ga.AxisAngle((1, 0, 0), math.pi / 2))
    # oracle: U Z U† with U the Pauli image of the rotor
    u = oracle_matrix(r.coeffs)
    expected = oracle_coeffs(u @ oracle_matrix(ga.SIGMA3.coeffs) @ u.conj().T)
    np.testing.assert_allclose(expected, [0, 0, 1, 0, 0, 0, 0, 0], atol=1e-15)
    assert ga.apply_rotor(r, ga.SIGMA3).allclose(ga.SIGMA2, 1e-12)


def test_apply_rotor_preconditions():
    with pytest.raises(PreconditionError):
        ga.apply_rotor(ga.Multivector.scalar(2.0), ga.SIGMA3)
    with pytest.raises(PreconditionError):
        ga.apply_rotor(ga.IDENTITY_ROTOR, ga.IOTA)
    with pytest.raises(PreconditionError):
        ga.Rotor([1, 1, 0, 0, 0, 0, 0, 0])


def test_grade_project_examples():
    assert ga.grade_project(1 + ga.SIGMA1, 1).allclose(ga.SIGMA1, 0.0)
    assert ga.grade_project(ga.Multivector.bivector(0, 0, 1) + ga.IOTA, 3).allclose(ga.IOTA, 0.0)
    with pytest.raises(PreconditionError):
        ga.grade_project(ga.ONE, 4)


@given(axis_angles(), st.lists(st.floats(-1, 1), min_size=3, max_size=3))
def test_grade_project_keeps_rotated_vector(ax, v):
    rotated = ga.apply_rotor(ga.rotor_from_axis_angle(ax), ga.Multivector.vector(*v))
    assert ga.grade_project(rotated, 1).allclose(rotated, 0.0)


def test_sandwich_operator_matches_products():
    rng = np.random.default_rng(3)
    for _ in range(50):
        r = ga.Multivector(rng.uniform(-1, 1, 8))
        x = ga.Multivector(rng.uniform(-1, 1, 8))
        np.testing.assert_allclose(x.coeffs @ ga.sandwich_operator(r), ga.sandwich(r, x).coeffs, atol=1e-14)


def test_rotor_axis_angle_roundtrip():
    ax = ga.AxisAngle((0.6, 0.0, -0.8), 2.0)
    back = ga.rotor_from_axis_angle(ax).axis_angle
    np.testing.assert_allclose(back.axis, ax.axis, atol=1e-15)
    assert back.angle == pytest.approx(2.0, abs=1e-15)


def test_non_finite_rejected():
    with pytest.raises(PreconditionError):
        ga.Multivector([math.nan] + [0] * 7)


def test_format():
    assert ga.format_multivector(0.5 + ga.Multivector.bivector(0, 0, 0.5)) == "0.5 + 0.5ισ₃"
    assert ga.format_multivector(1 - ga.SIGMA2) == "1 - σ₂"
    assert ga.format_multivector(ga.Multivector([1e-13] * 8)) == "0"
    assert str(-ga.IOTA) == "-ι"
