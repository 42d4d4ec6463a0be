import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def direct_dft(x):
    """Textbook O(N^2) sum with the exp(+2 pi i jk/N) kernel, built from np.exp."""
    x = np.asarray(x, dtype=complex)
    n = x.size
    j = np.arange(n)
    return np.exp(2j * np.pi * np.outer(j, j) / n) @ x


def direct_dft2(p):
    """Quadruple-loop-equivalent double sum over a (ny, nx) grid."""
    p = np.asarray(p, dtype=complex)
    ny, nx = p.shape
    out = np.empty_like(p)
    jj = np.arange(nx)
    kk = np.arange(ny)
    for b in range(ny):
        for a in range(nx):
            kern = np.exp(2j * np.pi * b * kk / ny)[:, None] * np.exp(2j * np.pi * a * jj / nx)[None, :]
            out[b, a] = np.sum(p * kern)
    return out


# one line per acceptance criterion, filled by test_acceptance and echoed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split(":")[0].split()[-1])):
            terminalreporter.write_line(line)
