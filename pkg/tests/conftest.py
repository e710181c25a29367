import numpy as np
import pytest

from dclab import SolverConfig, build_adversarial, make_quadratic_dc, run_dca

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Collect one pass/fail line per acceptance criterion.

    The lines print in a dedicated section of the terminal summary so
    the outcome of every criterion is visible even when tests pass.
    """
    def note(name, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if detail:
            line += f"  [{detail}]"
        _ACCEPTANCE_LINES.append(line)
        return ok
    return note


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def quad_b1():
    return make_quadratic_dc([1.0])


@pytest.fixture(scope="session")
def adv_half():
    """Adversarial instance with delta=0.5 at a small test horizon."""
    return build_adversarial(0.5, 400)


@pytest.fixture(scope="session")
def adv_half_traj(adv_half):
    return run_dca(adv_half.dc, 0.0, SolverConfig(epsilon=1e-15, max_iter=200))


@pytest.fixture(scope="session")
def quad_traj(quad_b1):
    return run_dca(quad_b1, 0.0, SolverConfig(epsilon=1e-12, max_iter=60))
