"""Independent numerical machinery used to cross-check the closed forms.

Nothing in this module looks at the analytic solutions beyond their
parameter bundles: integrals are done by adaptive quadrature, spatial
derivatives by high-order finite differences, momentum-space amplitudes
by FFT with explicit phase bookkeeping, and time evolution by a
symmetric split-step propagator.  Agreement between these routines and
the closed-form expressions is the package's primary correctness
evidence.

Parameters
----------
Quadrature follows a QuadratureSpec: integration windows are finite,
chosen as a multiple of the packet width around its center (the default
twelve standard deviations keeps the truncated tail far below the
tolerances).  Splitting an integral at the packet center is done by
integrating the two half windows separately so the split point is a
quadrature endpoint.

The split-step propagator is the standard Strang alternation of a half
potential phase, a full kinetic phase applied in momentum space, and a
second half potential phase; its global error is O(dt**2) and it is
exactly unitary apart from rounding.
"""

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import quad

from .analytic import moments_at
from .errors import AccuracyError, BoundaryError, ParameterError, ResolutionError
from .quantities import PhysicalConstants, SystemKind, SystemSpec

__all__ = [
    "QuadratureSpec",
    "PropagatorSpec",
    "IntegralResult",
    "integrate",
    "packet_window",
    "half_windows",
    "fd_derivative",
    "fd_second_derivative",
    "momentum_transform",
    "inverse_momentum_transform",
    "potential_on_grid",
    "propagate",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and window sizing for adaptive quadrature."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    window_sigmas: float = 12.0
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ParameterError("quadrature tolerances must be positive")
        if not (self.window_sigmas >= 6.0):
            raise ParameterError("window_sigmas must be at least 6")
        if not (isinstance(self.max_subdivisions, int) and self.max_subdivisions >= 10):
            raise ParameterError("max_subdivisions must be an integer >= 10")


class IntegralResult(NamedTuple):
    value: float
    error: float


def integrate(f: Callable[[float], float], window, spec=QuadratureSpec()):
    """Adaptively integrate f over window = (lo, hi).

    Returns an IntegralResult carrying the achieved error estimate.
    Raises AccuracyError (with the best estimate attached) when the
    subdivision budget is exhausted before the tolerances are met.
    """
    lo, hi = float(window[0]), float(window[1])
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ParameterError(f"integration window must satisfy lo < hi, got {window!r}")
    out = quad(
        f, lo, hi,
        epsabs=spec.abs_tol, epsrel=spec.rel_tol,
        limit=spec.max_subdivisions, full_output=True,
    )
    value, abserr = out[0], out[1]
    if len(out) > 3:
        raise AccuracyError(
            f"quadrature did not converge: {out[3]}",
            best_estimate=value, error_estimate=abserr,
        )
    return IntegralResult(value=value, error=abserr)


def packet_window(system, params, t, spec=QuadratureSpec()):
    """Finite window centered on the packet, window_sigmas wide per side."""
    m = moments_at(system, params, t)
    half = spec.window_sigmas * math.sqrt(m.var_x)
    return m.mean_x - half, m.mean_x + half


def half_windows(system, params, t, spec=QuadratureSpec()):
    """The packet window split at the packet center (two windows)."""
    m = moments_at(system, params, t)
    half = spec.window_sigmas * math.sqrt(m.var_x)
    return (m.mean_x - half, m.mean_x), (m.mean_x, m.mean_x + half)


def fd_derivative(psi, x, t, h=1e-3):
    """Fourth-order central difference of psi(x, t) in x."""
    if not (h > 0):
        raise ParameterError("h must be positive")
    return (
        -psi(x + 2.0 * h, t)
        + 8.0 * psi(x + h, t)
        - 8.0 * psi(x - h, t)
        + psi(x - 2.0 * h, t)
    ) / (12.0 * h)


def fd_second_derivative(psi, x, t, h=1e-3):
    """Fourth-order central difference of the second x-derivative."""
    if not (h > 0):
        raise ParameterError("h must be positive")
    return (
        -psi(x + 2.0 * h, t)
        + 16.0 * psi(x + h, t)
        - 30.0 * psi(x, t)
        + 16.0 * psi(x - h, t)
        - psi(x - 2.0 * h, t)
    ) / (12.0 * h * h)


_ALIAS_RATIO = 1e-12


def _uniform_spacing(xs):
    dx = xs[1] - xs[0]
    if not np.allclose(np.diff(xs), dx, rtol=1e-12, atol=0.0):
        raise ParameterError("grid must be uniformly spaced")
    return dx


def momentum_transform(xs, psi, hbar=1.0, check_aliasing=True):
    """Momentum amplitude phi(p) = (2*pi*hbar)**-0.5 * Int exp(-i p x/hbar) psi dx.

    xs must be uniform; returns (ps, phi) with ps ascending.  If the
    spectral amplitude has not decayed at the edge of the resolvable
    momentum window the sampling is too coarse and a ResolutionError is
    raised.
    """
    xs = np.asarray(xs, dtype=float)
    psi = np.asarray(psi, dtype=complex)
    if xs.ndim != 1 or xs.size < 4 or psi.shape != xs.shape:
        raise ParameterError("xs and psi must be matching 1-d arrays")
    dx = _uniform_spacing(xs)
    n = xs.size
    ps = np.fft.fftshift(2.0 * math.pi * hbar * np.fft.fftfreq(n, d=dx))
    raw = np.fft.fft(psi)
    phase = np.exp(-1j * np.fft.fftshift(np.fft.fftfreq(n, d=dx)) * 2.0 * math.pi * xs[0])
    phi = (dx / math.sqrt(2.0 * math.pi * hbar)) * phase * np.fft.fftshift(raw)
    if check_aliasing:
        peak = float(np.max(np.abs(phi)))
        tail = float(max(abs(phi[0]), abs(phi[-1])))
        if peak > 0.0 and tail > _ALIAS_RATIO * peak:
            raise ResolutionError(
                f"spectral tail {tail:.3e} exceeds {_ALIAS_RATIO:g} of peak "
                f"{peak:.3e}; refine the spatial grid"
            )
    return ps, phi


def inverse_momentum_transform(ps, phi, xs, hbar=1.0):
    """Inverse of momentum_transform back onto the original grid xs."""
    ps = np.asarray(ps, dtype=float)
    phi = np.asarray(phi, dtype=complex)
    xs = np.asarray(xs, dtype=float)
    if ps.shape != phi.shape or ps.ndim != 1 or xs.size != ps.size:
        raise ParameterError("ps, phi, xs must be matching 1-d arrays")
    dx = _uniform_spacing(xs)
    n = xs.size
    dp = ps[1] - ps[0]
    shifted = np.fft.ifftshift(phi * np.exp(1j * ps * xs[0] / hbar))
    psi = (dp * n / math.sqrt(2.0 * math.pi * hbar)) * np.fft.ifft(shifted)
    return psi


@dataclass(frozen=True)
class PropagatorSpec:
    """Grid, step and potential selection for split-step propagation."""

    system: SystemSpec
    constants: PhysicalConstants
    domain: tuple
    dt: float
    n_grid: int = 4096

    def __post_init__(self):
        lo, hi = self.domain
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ParameterError(f"domain must satisfy lo < hi, got {self.domain!r}")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ParameterError("dt must be a positive finite number")
        n = self.n_grid
        if not (isinstance(n, int) and n >= 16 and (n & (n - 1)) == 0):
            raise ParameterError("n_grid must be a power of two, at least 16")

    def grid(self):
        """Periodic spatial grid (endpoint excluded)."""
        lo, hi = self.domain
        return lo + (hi - lo) * np.arange(self.n_grid) / self.n_grid


def potential_on_grid(system, constants, xs):
    """The potential energy of `system` sampled on xs."""
    kind = system.kind
    xs = np.asarray(xs, dtype=float)
    if kind is SystemKind.FREE:
        return np.zeros_like(xs)
    if kind is SystemKind.UNIFORM_ACCELERATION:
        return -system.force * xs
    if kind is SystemKind.HARMONIC:
        return 0.5 * constants.mass * system.omega**2 * xs * xs
    if kind is SystemKind.INVERTED:
        return -0.5 * constants.mass * system.omega_tilde**2 * xs * xs
    raise ParameterError(f"unknown system kind {kind!r}")  # pragma: no cover


def propagate(psi0, spec, t_final):
    """Strang split-step evolution of psi0 (sampled on spec.grid()) to t_final.

    The step count is chosen so an integer number of steps of size as
    close as possible to spec.dt lands exactly on t_final.  The packet's
    mean and spread are monitored every step; if the mean comes within
    four standard deviations of a domain edge the run aborts with a
    BoundaryError, since the periodic grid would fold the leaked
    amplitude back in silently.
    """
    psi = np.asarray(psi0, dtype=complex).copy()
    if psi.shape != (spec.n_grid,):
        raise ParameterError(
            f"psi0 must have shape ({spec.n_grid},), got {psi.shape}"
        )
    if not (t_final >= 0 and math.isfinite(t_final)):
        raise ParameterError("t_final must be a finite non-negative number")
    if t_final == 0.0:
        return psi

    hbar = spec.constants.hbar
    mass = spec.constants.mass
    lo, hi = spec.domain
    xs = spec.grid()
    dx = xs[1] - xs[0]

    n_steps = max(1, round(t_final / spec.dt))
    dt = t_final / n_steps

    v = potential_on_grid(spec.system, spec.constants, xs)
    half_v_phase = np.exp(-0.5j * v * dt / hbar)
    p = 2.0 * math.pi * hbar * np.fft.fftfreq(spec.n_grid, d=dx)
    kinetic_phase = np.exp(-0.5j * p * p * dt / (mass * hbar))

    for _ in range(n_steps):
        psi *= half_v_phase
        psi = np.fft.ifft(kinetic_phase * np.fft.fft(psi))
        psi *= half_v_phase

        prob = psi.real**2 + psi.imag**2
        total = prob.sum() * dx
        mean = float((xs * prob).sum() * dx / total)
        var = float((xs * xs * prob).sum() * dx / total) - mean * mean
        sd = math.sqrt(max(var, 0.0))
        if mean - 4.0 * sd <= lo or mean + 4.0 * sd >= hi:
            raise BoundaryError(
                f"packet reached within four standard deviations of the domain "
                f"edge (mean {mean:.3g}, sd {sd:.3g}, domain [{lo:g}, {hi:g}])"
            )
    return psi
