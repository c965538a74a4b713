"""Kinetic energy density of Gaussian packets and its left/right split.

The local kinetic energy density used throughout is

    T(x, t) = (hbar**2 / 2m) * |dpsi/dx|**2

which integrates to the kinetic expectation value <p**2>/2m.  For a
PacketState with quadratic coefficient a, plane-wave number l and
envelope width w this evaluates in closed form to

    T(x, t) = (hbar**2 / 2m) * (l**2 - 4*l*Im(a)*u + 4*|a|**2*u**2) * P(x, t)

with u = x - center.  Splitting the integral at the packet center
(Gaussian half-line moments: 1/2, w/(2*sqrt(pi)), w**2/4) gives the
energies carried by the trailing and leading halves:

    T_plus/minus(t) = T(t)/2 -/+ (hbar**2 / (m*sqrt(pi))) * l * Im(a) * w

The per-system expressions below are this identity specialized to each
solution; docs/energy_split.md records the full derivation, including
the harmonic-oscillator case whose prefactor
p0*omega*sin*cos**2*(beta0**4/beta**2 - beta**2) / (2*sqrt(pi)*|A|)
was re-derived independently before being trusted here.
"""

import math

import numpy as np

from .analytic import _scaled_hyperbolics, state_at
from .errors import ParameterError
from .quantities import SystemKind

__all__ = [
    "EnergySplit",
    "kinetic_density",
    "total_kinetic",
    "half_energies",
    "fractions_series",
    "fraction_limits",
    "extremal_p0",
    "scaled_density",
    "accel_event_times",
    "asymmetry_amplitude",
]

from dataclasses import dataclass

_SQRT_PI = math.sqrt(math.pi)
_TWO_OVER_SQRT_PI = 2.0 / _SQRT_PI


@dataclass(frozen=True)
class EnergySplit:
    """Kinetic energy of a packet split at its center.

    plus is the energy carried by x > <x>_t, minus by x < <x>_t;
    r_plus = plus/total and r_minus = 1 - r_plus, so the fractions sum
    to one exactly.
    """

    t: float
    total: float
    plus: float
    minus: float
    r_plus: float
    r_minus: float


def kinetic_density(system, params, x, t):
    """Closed-form T(x, t); x may be a scalar or ndarray."""
    state = state_at(system, params, t)
    u = np.asarray(x) - state.center
    a = state.quad_coeff
    l = state.lin_phase
    poly = l * l - 4.0 * l * a.imag * u + 4.0 * abs(a) ** 2 * u * u
    value = (params.hbar**2 / (2.0 * params.mass)) * poly * state.prob(x)
    if np.ndim(x) == 0:
        return float(value)
    return value


def _base_energies(params):
    """Kinetic and potential scales of the initial packet for oscillators."""
    e_kin0 = (params.p0**2 + params.hbar**2 / (2.0 * params.beta**2)) / (
        2.0 * params.mass
    )
    return e_kin0


def total_kinetic(system, params, t):
    """Closed-form kinetic expectation value T(t) = <p**2>_t / 2m."""
    kind = system.kind
    if kind in (SystemKind.FREE, SystemKind.UNIFORM_ACCELERATION):
        force = 0.0 if kind is SystemKind.FREE else system.force
        p_t = params.p0 + force * t
        return (p_t * p_t + 1.0 / (2.0 * params.alpha**2)) / (2.0 * params.mass)
    if kind is SystemKind.HARMONIC:
        c = math.cos(system.omega * t)
        s = math.sin(system.omega * t)
        e_kin0 = _base_energies(params)
        e_pot0 = params.mass * system.omega**2 * params.beta**2 / 4.0
        return e_kin0 * c * c + e_pot0 * s * s
    if kind is SystemKind.INVERTED:
        scale, c, s = _scaled_hyperbolics(system.omega_tilde * t)
        grow2 = math.exp(2.0 * scale)
        e_kin0 = _base_energies(params)
        e_pot0 = params.mass * system.omega_tilde**2 * params.beta**2 / 4.0
        return grow2 * (e_kin0 * c * c + e_pot0 * s * s)
    raise ParameterError(f"unknown system kind {kind!r}")  # pragma: no cover


def _split_delta(system, params, t):
    """Half of T_plus - T_minus, in closed form per system."""
    kind = system.kind
    p0 = params.p0
    mass = params.mass
    hbar = params.hbar
    beta = params.beta

    if kind in (SystemKind.FREE, SystemKind.UNIFORM_ACCELERATION):
        force = 0.0 if kind is SystemKind.FREE else system.force
        ratio = t / params.t0
        spread = ratio / math.hypot(1.0, ratio)
        p_t = p0 + force * t
        return p_t * spread / (2.0 * mass * params.alpha * _SQRT_PI)

    if kind is SystemKind.HARMONIC:
        omega = system.omega
        c = math.cos(omega * t)
        s = math.sin(omega * t)
        gamma = hbar / (mass * omega * beta)
        width = math.hypot(beta * c, gamma * s)
        return (
            p0 * omega * s * c * c * (gamma * gamma - beta * beta)
            / (2.0 * _SQRT_PI * width)
        )

    if kind is SystemKind.INVERTED:
        omega_tilde = system.omega_tilde
        scale, c, s = _scaled_hyperbolics(omega_tilde * t)
        grow2 = math.exp(2.0 * scale)
        gamma = hbar / (mass * omega_tilde * beta)
        env = math.hypot(beta * c, gamma * s)
        return grow2 * (
            p0 * omega_tilde * s * c * c * (gamma * gamma + beta * beta)
            / (2.0 * _SQRT_PI * env)
        )

    raise ParameterError(f"unknown system kind {kind!r}")  # pragma: no cover


def half_energies(system, params, t):
    """EnergySplit of the kinetic energy at the packet center at time t."""
    total = total_kinetic(system, params, t)
    delta = _split_delta(system, params, t)
    plus = 0.5 * total + delta
    minus = 0.5 * total - delta
    r_plus = plus / total
    return EnergySplit(
        t=t, total=total, plus=plus, minus=minus,
        r_plus=r_plus, r_minus=1.0 - r_plus,
    )


def fractions_series(system, params, times):
    """half_energies evaluated over a sequence of times."""
    return tuple(half_energies(system, params, float(t)) for t in times)


def fraction_limits(system, params):
    """Characteristic (r_plus, r_minus) values for each system.

    Free: the t -> +inf limits.  Inverted: the t -> +inf limits (finite
    because the asymmetry saturates).  Harmonic: the values attained an
    eighth of a period into the cycle, where the split is extremal over
    the cycle.  Uniform acceleration: the asymmetry decays once
    |p0 + F*t| grows, so the t -> +inf limits are (1/2, 1/2); the
    transient structure is exposed through fractions_series and
    accel_event_times instead.
    """
    kind = system.kind
    p0 = params.p0

    if kind is SystemKind.FREE:
        s = p0 * params.alpha
        shift = _TWO_OVER_SQRT_PI * s / (2.0 * s * s + 1.0)
        return 0.5 + shift, 0.5 - shift

    if kind is SystemKind.UNIFORM_ACCELERATION:
        return 0.5, 0.5

    if kind is SystemKind.HARMONIC:
        gamma = params.hbar / (params.mass * system.omega * params.beta)
        kappa = gamma * gamma + params.beta**2
        s = p0 / (params.mass * system.omega)
        shift = (
            _TWO_OVER_SQRT_PI
            * (s / (2.0 * s * s + kappa))
            * (gamma * gamma - params.beta**2)
            / math.sqrt(kappa)
        )
        return 0.5 + shift, 0.5 - shift

    if kind is SystemKind.INVERTED:
        gamma = params.hbar / (params.mass * system.omega_tilde * params.beta)
        kappa = gamma * gamma + params.beta**2
        s = p0 / (params.mass * system.omega_tilde)
        shift = _TWO_OVER_SQRT_PI * (s / (2.0 * s * s + kappa)) * math.sqrt(kappa)
        return 0.5 + shift, 0.5 - shift

    raise ParameterError(f"unknown system kind {kind!r}")  # pragma: no cover


def extremal_p0(system, params):
    """The p0 > 0 that maximizes the asymmetry measured by fraction_limits."""
    kind = system.kind
    if kind is SystemKind.FREE:
        return 1.0 / (params.alpha * math.sqrt(2.0))
    if kind is SystemKind.HARMONIC:
        omega = system.omega
    elif kind is SystemKind.INVERTED:
        omega = system.omega_tilde
    else:
        raise ParameterError(
            "extremal p0 is defined for free and oscillator systems only"
        )
    return math.sqrt(
        (params.beta * params.mass * omega) ** 2 / 2.0
        + params.hbar**2 / (2.0 * params.beta**2)
    )


def scaled_density(system, params, x, t):
    """Kinetic energy density normalized by its integral, S = T(x,t)/T(t)."""
    total = total_kinetic(system, params, t)
    if not (total > 0.0):
        raise ParameterError("total kinetic energy is not positive")
    return kinetic_density(system, params, x, t) / total


def accel_event_times(system, params):
    """Times where |p0 + F*t| equals the momentum spread, sorted.

    These are the instants at which the instantaneous mean momentum of a
    uniformly accelerated packet passes the asymmetry-maximizing value;
    depending on signs, zero, one, or both lie at t >= 0.
    """
    if system.kind is not SystemKind.UNIFORM_ACCELERATION or not system.force:
        raise ParameterError("event times require a nonzero force")
    dp0 = params.dp0
    times = ((-params.p0 - dp0) / system.force, (-params.p0 + dp0) / system.force)
    return tuple(sorted(times))


def asymmetry_amplitude(system, params, t):
    """Long-time kinetic asymmetry amplitude at the instantaneous momentum.

    For drifting packets the fraction shift (r_plus - 1/2) approaches
    (2/sqrt(pi)) * s/(2s**2+1) with s = alpha*(p0 + F*t) once the
    spreading factor saturates; this returns the absolute value of that
    amplitude, which peaks exactly where |p0 + F*t| equals the momentum
    spread.
    """
    kind = system.kind
    if kind is SystemKind.FREE:
        force = 0.0
    elif kind is SystemKind.UNIFORM_ACCELERATION:
        force = system.force
    else:
        raise ParameterError("asymmetry amplitude applies to drifting packets only")
    s = params.alpha * (params.p0 + force * t)
    return _TWO_OVER_SQRT_PI * abs(s) / (2.0 * s * s + 1.0)
