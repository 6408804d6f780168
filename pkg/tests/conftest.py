"""Shared fixtures, plus one-line verdicts for the acceptance criteria."""

import time

import numpy as np
import pytest

from extomo.sphere import Density, make_circle_grid, make_sphere_grid

_ACCEPTANCE_RESULTS = []


def pytest_configure(config):
    config._suite_start = time.monotonic()


@pytest.fixture
def suite_elapsed(request):
    """Wall-clock seconds since the test session started."""
    start = request.config._suite_start
    return lambda: time.monotonic() - start


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.fspath.basename == "test_acceptance.py":
        _ACCEPTANCE_RESULTS.append((item, rep))


def pytest_terminal_summary(terminalreporter):
    """Print one pass/fail line per acceptance criterion."""
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for item, rep in _ACCEPTANCE_RESULTS:
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        verdict = "PASS" if rep.passed else "FAIL"
        terminalreporter.write_line(f"[{verdict}] {doc}")


@pytest.fixture(scope="session")
def circle_grid():
    return make_circle_grid(256)


@pytest.fixture(scope="session")
def sphere_grid():
    return make_sphere_grid(24, 48)


@pytest.fixture(scope="session")
def fine_sphere_grid():
    return make_sphere_grid(48, 96)


@pytest.fixture
def one_circle(circle_grid):
    return Density(circle_grid, np.ones(circle_grid.node_count),
                   evaluator=lambda pts: np.ones(np.atleast_2d(pts).shape[0]))


@pytest.fixture
def one_sphere(sphere_grid):
    return Density(sphere_grid, np.ones(sphere_grid.node_count),
                   evaluator=lambda pts: np.ones(np.atleast_2d(pts).shape[0]))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
