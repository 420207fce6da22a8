import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

# Independent matrix oracle: plain numpy Pauli matrices, no package code involved.
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def oracle_matrix(coeffs):
    """Pauli image of a multivector given by its 8 coefficients."""
    c = coeffs
    return (c[0] * I2 + c[1] * X + c[2] * Y + c[3] * Z
            + 1j * (c[4] * X + c[5] * Y + c[6] * Z) + 1j * c[7] * I2)


def oracle_coeffs(m):
    t0 = np.trace(m) / 2
    tk = [np.trace(m @ s) / 2 for s in (X, Y, Z)]
    return np.array([t0.real, *(t.real for t in tk), *(t.imag for t in tk), t0.imag])


def oracle_bloch(m):
    return np.array([np.trace(m @ s).real for s in (X, Y, Z)])


_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    def record(number, title, passed, detail=""):
        line = f"[criterion {number}] {'PASS' if passed else 'FAIL'}  {title}  {detail}".rstrip()
        _ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
