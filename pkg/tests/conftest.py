import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from chiraltbg.potential import bistritzer_macdonald
from chiraltbg.spectral import magic_alphas

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture
def criterion():
    """Record and print one pass/fail line, then assert."""
    def record(number: int, title: str, ok: bool, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d} {title}: {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        assert ok, line
    return record


@pytest.fixture(scope="session")
def bm():
    return bistritzer_macdonald()


@pytest.fixture(scope="session")
def magic16(bm):
    return magic_alphas(bm, 16)


@pytest.fixture(scope="session")
def alpha1(bm):
    """First real magic coupling at cutoff 12."""
    return float(magic_alphas(bm, 12, count=2).real_positive()[0])


@pytest.fixture(scope="session")
def kernel12(bm, alpha1):
    from chiraltbg.analysis import kernel_u0
    return kernel_u0(bm, alpha1, 12)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def gamma_report(bm, alpha1):
    """Gamma-site bifurcation at cutoff 12 with geometry and the well fit at B = 0.1."""
    from chiraltbg.analysis import bifurcation_gamma
    return bifurcation_gamma(bm, alpha1, [0.025, 0.05, 0.1], 12, qbcp_field=0.1)
