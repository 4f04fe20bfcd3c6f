import numpy as np
import pytest

from mslab.inner import DomainTag, InnerFunctionSpec


def random_disc_spec(rng, degree, rmax=0.9):
    r = rmax * np.sqrt(rng.uniform(0.05, 1.0, degree))
    return InnerFunctionSpec(DomainTag.DISC, r * np.exp(2j * np.pi * rng.uniform(size=degree)))


def random_disc_points(rng, n, rmax=0.9):
    r = rmax * np.sqrt(rng.uniform(size=n))
    return r * np.exp(2j * np.pi * rng.uniform(size=n))


def direct_blaschke(zeros, z):
    """Plain product of normalized disc factors (test oracle)."""
    out = np.ones(np.shape(z), dtype=complex)
    for a in zeros:
        if a == 0:
            out = out * z
        else:
            out = out * (abs(a) / a) * (a - z) / (1 - np.conj(a) * z)
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acceptance_log.LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
