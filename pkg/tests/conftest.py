import numpy as np
import pytest

from bcmetric.collapse import CollapsedSpace, load_scene

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def sine_space():
    return CollapsedSpace(load_scene("sine_strip"))


@pytest.fixture(scope="session")
def flat_space():
    return CollapsedSpace(load_scene("flat_strip"))


@pytest.fixture(scope="session")
def cos2x_space():
    return CollapsedSpace(load_scene("cos2x_strip"))


@pytest.fixture(scope="session")
def unit_ball():
    return load_scene("unit_ball")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
