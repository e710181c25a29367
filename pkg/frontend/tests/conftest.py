import subprocess
import sys

import pytest


def run_dclab(*args):
    """Invoke the solver package's CLI; the CSV files it writes are the
    only interface this package consumes."""
    proc = subprocess.run([sys.executable, "-m", "dclab", *args],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def curves_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "curves.csv"
    run_dclab("figure-data", "--delta", "0.5", "--n-knots", "25",
              "--samples-per-interval", "8", "--out", str(path))
    return path


@pytest.fixture(scope="session")
def trajectory_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "slow.csv"
    run_dclab("run", "--problem", "adversarial", "--delta", "0.5",
              "--horizon", "600", "--x0", "0", "--max-iter", "500",
              "--eps", "1e-15", "--out", str(path))
    return path
