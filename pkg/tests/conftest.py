import numpy as np
import pytest

from geoment.tensor import ComplexTensor, normalize

ACCEPTANCE_LINES: list[str] = []


def random_state(rng, dims, real=False) -> ComplexTensor:
    a = rng.standard_normal(dims)
    if not real:
        a = a + 1j * rng.standard_normal(dims)
    return normalize(ComplexTensor(a))


def random_unitary(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
