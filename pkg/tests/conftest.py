import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hoverauv.environment import Environment
from hoverauv.simulator import build_vehicle

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: closed-loop mission runs")


@pytest.fixture(scope="session")
def vehicle():
    return build_vehicle()


@pytest.fixture(scope="session")
def rng_seed():
    return 20240607


@pytest.fixture
def rng(rng_seed):
    return np.random.default_rng(rng_seed)


def current_vehicle(east: float, north: float = 0.0):
    return build_vehicle(env=Environment(current=(north, east, 0.0)))


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance line; returns the verdict so the caller can assert it."""
    def report(number: int, ok: bool, detail: str) -> bool:
        line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'} {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
