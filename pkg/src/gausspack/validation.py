"""Analytic-versus-oracle check suite.

Each check compares a closed-form quantity against an independent
numerical estimate (adaptive quadrature, finite differences, or the
split-step propagator) and records both values plus absolute and
relative errors.  The default suite covers, for each of the four
systems:

* ``normalization-*`` — quadrature of the probability density is 1;
* ``ibp-*`` — the second-derivative form -(hbar^2/2m) Int psi* psi''
  (psi'' by fourth-order finite differences) matches the closed-form
  total kinetic energy, i.e. the integration-by-parts identity holds;
* ``halves-*`` — quadrature of the kinetic energy density over the
  right half-line matches the closed-form T+;
* ``splitstep-*`` — split-step propagation from t=0 matches the
  analytic state in L2 norm;

plus two ``reduction-*`` checks confirming that the oscillator and the
uniformly accelerated packet reduce to the free packet pointwise as
omega -> 0 and force -> 0.

For value comparisons the relative error is abs_err/|analytic|; for
distance-style checks (split-step, reduction) the analytic target is
zero and the "relative" error is the distance itself.  A check passes
when its relative error is at or below its tolerance; `run_checks`
accepts a global tolerance override so the whole suite can be rerun
against a stricter (or looser) bar.
"""

import math
from dataclasses import dataclass

import numpy as np

from .analytic import eval_psi, moments_at, state_at
from .kedensity import half_energies, kinetic_density, total_kinetic
from .errors import ParameterError
from .oracle import (
    PropagatorSpec,
    QuadratureSpec,
    fd_second_derivative,
    half_windows,
    integrate,
    packet_window,
    propagate,
)
from .quantities import (
    SystemKind,
    free_particle,
    harmonic_oscillator,
    inverted_oscillator,
    make_params,
    uniform_acceleration,
)

__all__ = ["CheckResult", "run_checks", "report"]

_IBP_STEP = 1e-3


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one analytic-versus-oracle comparison."""

    name: str
    system: str
    params: dict
    analytic: float
    oracle: float
    abs_err: float
    rel_err: float
    tol: float
    passed: bool


def _result(name, system, params, analytic, oracle, tol, rel_tol=None):
    abs_err = abs(oracle - analytic)
    rel_err = abs_err / abs(analytic) if analytic != 0.0 else abs_err
    used_tol = tol if rel_tol is None else rel_tol
    return CheckResult(
        name=name,
        system=system.kind.value,
        params=params,
        analytic=float(analytic),
        oracle=float(oracle),
        abs_err=float(abs_err),
        rel_err=float(rel_err),
        tol=float(used_tol),
        passed=bool(rel_err <= used_tol),
    )


def _params_dict(system, params, t):
    doc = {
        "hbar": params.hbar,
        "mass": params.mass,
        "alpha": params.alpha,
        "x0": params.x0,
        "p0": params.p0,
        "t": t,
    }
    if system.force is not None:
        doc["force"] = system.force
    if system.omega is not None:
        doc["omega"] = system.omega
    if system.omega_tilde is not None:
        doc["omega_tilde"] = system.omega_tilde
    return doc


# One representative (system, params, t) per system, shared by the
# quadrature-style checks.  Times are O(1) so every closed form is well
# inside its numerically comfortable range.
def _cases():
    return (
        (free_particle(), make_params(alpha=1.0, x0=0.3, p0=1.2), 1.5),
        (uniform_acceleration(0.8), make_params(alpha=0.8, p0=-0.6), 1.2),
        (harmonic_oscillator(1.3), make_params(alpha=0.7, p0=1.1), 0.9),
        (inverted_oscillator(0.8), make_params(alpha=0.9, p0=0.7), 1.1),
    )


# Split-step configuration per system: (domain, dt, n_grid, t_final).
# Free propagation is exact for any dt (V = 0); the others use steps
# small enough that the O(dt^2) error sits well below the tolerance.
_SPLITSTEP = {
    SystemKind.FREE: ((-40.0, 40.0), 0.05, 4096, 1.5),
    SystemKind.UNIFORM_ACCELERATION: ((-40.0, 40.0), 1e-3, 4096, 1.2),
    SystemKind.HARMONIC: ((-24.0, 24.0), 2e-4, 4096, 0.9),
    SystemKind.INVERTED: ((-48.0, 48.0), 2e-4, 4096, 1.1),
}


def _check_normalization(system, params, t, rel_tol):
    spec = QuadratureSpec()
    window = packet_window(system, params, t, spec)
    state = state_at(system, params, t)
    value = integrate(lambda x: state.prob(x), window, spec)
    return _result(
        f"normalization-{system.kind.value}", system,
        _params_dict(system, params, t), 1.0, value.value, 1e-9, rel_tol,
    )


def _check_ibp(system, params, t, rel_tol):
    spec = QuadratureSpec()
    window = packet_window(system, params, t, spec)
    state = state_at(system, params, t)
    scale = params.hbar**2 / (2.0 * params.mass)

    def psi(x, when):
        return state.psi(x)

    def integrand(x):
        value = -scale * np.conj(state.psi(x)) * fd_second_derivative(
            psi, x, t, _IBP_STEP
        )
        return value.real

    oracle_value = integrate(integrand, window, spec)
    analytic = total_kinetic(system, params, t)
    return _result(
        f"ibp-{system.kind.value}", system,
        _params_dict(system, params, t), analytic, oracle_value.value,
        1e-8, rel_tol,
    )


def _check_halves(system, params, t, rel_tol):
    spec = QuadratureSpec()
    _, upper = half_windows(system, params, t, spec)
    value = integrate(
        lambda x: kinetic_density(system, params, x, t), upper, spec
    )
    analytic = half_energies(system, params, t).plus
    return _result(
        f"halves-{system.kind.value}", system,
        _params_dict(system, params, t), analytic, value.value, 1e-8, rel_tol,
    )


def _check_splitstep(system, params, rel_tol):
    domain, dt, n_grid, t = _SPLITSTEP[system.kind]
    spec = PropagatorSpec(
        system=system, constants=params.constants, domain=domain,
        dt=dt, n_grid=n_grid,
    )
    xs = spec.grid()
    psi0 = eval_psi(system, params, xs, 0.0)
    numeric = propagate(psi0, spec, t)
    exact = eval_psi(system, params, xs, t)
    dx = xs[1] - xs[0]
    distance = math.sqrt(float(np.sum(np.abs(numeric - exact) ** 2) * dx))
    return _result(
        f"splitstep-{system.kind.value}", system,
        _params_dict(system, params, t), 0.0, distance, 1e-6, rel_tol,
    )


def _check_reduction(kind, rel_tol):
    t = 1.0
    params = make_params(alpha=1.0, p0=1.2)
    free = free_particle()
    if kind is SystemKind.HARMONIC:
        system = harmonic_oscillator(1e-6)
    else:
        system = uniform_acceleration(1e-6)
    m = moments_at(free, params, t)
    sigma = math.sqrt(m.var_x)
    xs = np.linspace(m.mean_x - 6.0 * sigma, m.mean_x + 6.0 * sigma, 801)
    diff = np.abs(
        eval_psi(system, params, xs, t) - eval_psi(free, params, xs, t)
    )
    return _result(
        f"reduction-{system.kind.value}", system,
        _params_dict(system, params, t), 0.0, float(np.max(diff)),
        1e-5, rel_tol,
    )


def _suite():
    checks = []
    for system, params, t in _cases():
        checks.append((
            f"normalization-{system.kind.value}",
            lambda s=system, p=params, u=t, r=None: _check_normalization(s, p, u, r),
        ))
    for system, params, t in _cases():
        checks.append((
            f"ibp-{system.kind.value}",
            lambda s=system, p=params, u=t, r=None: _check_ibp(s, p, u, r),
        ))
    for system, params, t in _cases():
        checks.append((
            f"halves-{system.kind.value}",
            lambda s=system, p=params, u=t, r=None: _check_halves(s, p, u, r),
        ))
    for system, params, _ in _cases():
        checks.append((
            f"splitstep-{system.kind.value}",
            lambda s=system, p=params, r=None: _check_splitstep(s, p, r),
        ))
    checks.append(("reduction-sho",
                   lambda r=None: _check_reduction(SystemKind.HARMONIC, r)))
    checks.append(("reduction-accel",
                   lambda r=None: _check_reduction(
                       SystemKind.UNIFORM_ACCELERATION, r)))
    return checks


def run_checks(name_filter=None, rel_tol=None):
    """Run the suite, optionally filtered by substring, and collect results.

    Parameters
    ----------
    name_filter : str, optional
        Run only checks whose name contains this substring.
    rel_tol : float, optional
        Replace every check's built-in tolerance with this value.

    Returns
    -------
    list of CheckResult
    """
    if rel_tol is not None and not rel_tol > 0.0:
        raise ParameterError("tolerance override must be positive")
    results = []
    for name, thunk in _suite():
        if name_filter is not None and name_filter not in name:
            continue
        results.append(thunk(r=rel_tol))
    return results


def report(results):
    """Shape results into the JSON-ready report document."""
    return {
        "checks": [
            {
                "name": r.name,
                "system": r.system,
                "params": r.params,
                "analytic": r.analytic,
                "oracle": r.oracle,
                "abs_err": r.abs_err,
                "rel_err": r.rel_err,
                "tol": r.tol,
                "pass": r.passed,
            }
            for r in results
        ],
        "n_checks": len(results),
        "n_failed": sum(1 for r in results if not r.passed),
        "all_pass": all(r.passed for r in results),
    }
