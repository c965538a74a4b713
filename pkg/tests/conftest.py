import subprocess
import sys

import pytest

import gausspack as g

# One representative configuration per system, reused across test modules.
FOUR_CASES = (
    (g.free_particle(), g.make_params(alpha=1.0, x0=0.3, p0=1.2), 1.5),
    (g.uniform_acceleration(0.8), g.make_params(alpha=0.8, p0=-0.6), 1.2),
    (g.harmonic_oscillator(1.3), g.make_params(alpha=0.7, p0=1.1), 0.9),
    (g.inverted_oscillator(0.8), g.make_params(alpha=0.9, p0=0.7), 1.1),
)


@pytest.fixture
def four_cases():
    return FOUR_CASES


@pytest.fixture
def run_cli():
    """Invoke the CLI as a subprocess and return (exit code, stdout, stderr)."""

    def run(*args, **kwargs):
        proc = subprocess.run(
            [sys.executable, "-m", "gausspack", *args],
            capture_output=True, text=True, **kwargs,
        )
        return proc.returncode, proc.stdout, proc.stderr

    return run
