"""Parameter bundles and derived scales for Gaussian packet problems.

Conventions: a packet is prepared with a Gaussian momentum amplitude of
width 1/alpha centred on p0, localized near x0.  Derived scales are

    beta  = alpha * hbar          (position-space width scale)
    t0    = mass * hbar * alpha2  (spreading time)
    dp0   = 1 / (alpha * sqrt(2)) (initial momentum spread)
    dx0   = beta / sqrt(2)        (initial position spread)

All containers are immutable; build them through the factory functions
so the derived fields stay consistent.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ParameterError

__all__ = [
    "SystemKind",
    "PhysicalConstants",
    "PacketParams",
    "SystemSpec",
    "OscillatorDerived",
    "make_params",
    "free_particle",
    "uniform_acceleration",
    "harmonic_oscillator",
    "inverted_oscillator",
    "oscillator_derived",
]


class SystemKind(str, Enum):
    FREE = "free"
    UNIFORM_ACCELERATION = "accel"
    HARMONIC = "sho"
    INVERTED = "inverted"


def _require_positive(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ParameterError(f"{name} must be a finite positive number, got {value!r}")


def _require_finite(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value)):
        raise ParameterError(f"{name} must be a finite number, got {value!r}")


@dataclass(frozen=True)
class PhysicalConstants:
    """hbar and particle mass; the defaults give the hbar = m = 1 convention."""

    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        _require_positive("hbar", self.hbar)
        _require_positive("mass", self.mass)


@dataclass(frozen=True)
class PacketParams:
    """Initial Gaussian packet parameters plus derived width and time scales.

    beta and t0 are derived fields; construct instances with make_params,
    which fills them in.  Direct construction with inconsistent derived
    values is rejected.
    """

    constants: PhysicalConstants
    alpha: float
    x0: float
    p0: float
    beta: float
    t0: float

    def __post_init__(self):
        _require_positive("alpha", self.alpha)
        _require_finite("x0", self.x0)
        _require_finite("p0", self.p0)
        if self.beta != self.alpha * self.constants.hbar:
            raise ParameterError("beta must equal alpha * hbar; use make_params")
        if self.t0 != self.constants.mass * self.constants.hbar * self.alpha**2:
            raise ParameterError("t0 must equal mass * hbar * alpha**2; use make_params")

    @property
    def hbar(self):
        return self.constants.hbar

    @property
    def mass(self):
        return self.constants.mass

    @property
    def dp0(self):
        """Initial momentum spread 1/(alpha*sqrt(2))."""
        return 1.0 / (self.alpha * math.sqrt(2.0))

    @property
    def dx0(self):
        """Initial position spread beta/sqrt(2)."""
        return self.beta / math.sqrt(2.0)


def make_params(hbar=1.0, mass=1.0, alpha=1.0, x0=0.0, p0=0.0):
    """Build a PacketParams with consistent derived beta and t0."""
    constants = PhysicalConstants(hbar=hbar, mass=mass)
    _require_positive("alpha", alpha)
    _require_finite("x0", x0)
    _require_finite("p0", p0)
    return PacketParams(
        constants=constants,
        alpha=alpha,
        x0=x0,
        p0=p0,
        beta=alpha * hbar,
        t0=mass * hbar * alpha**2,
    )


@dataclass(frozen=True)
class SystemSpec:
    """One of the four model systems, with its single shape parameter.

    kind selects the potential: none, linear (-force*x), harmonic
    (mass*omega^2*x^2/2), or inverted harmonic (-mass*omega_tilde^2*x^2/2).
    Use the factory functions rather than the constructor.
    """

    kind: SystemKind
    force: float | None = None
    omega: float | None = None
    omega_tilde: float | None = None

    def __post_init__(self):
        if self.kind is SystemKind.FREE:
            extras = (self.force, self.omega, self.omega_tilde)
            if any(v is not None for v in extras):
                raise ParameterError("free system takes no shape parameter")
        elif self.kind is SystemKind.UNIFORM_ACCELERATION:
            _require_finite("force", self.force)
            if self.omega is not None or self.omega_tilde is not None:
                raise ParameterError("accelerating system takes only a force")
        elif self.kind is SystemKind.HARMONIC:
            _require_positive("omega", self.omega)
            if self.force is not None or self.omega_tilde is not None:
                raise ParameterError("harmonic system takes only omega")
        elif self.kind is SystemKind.INVERTED:
            _require_positive("omega_tilde", self.omega_tilde)
            if self.force is not None or self.omega is not None:
                raise ParameterError("inverted system takes only omega_tilde")
        else:  # pragma: no cover - enum is closed
            raise ParameterError(f"unknown system kind {self.kind!r}")


def free_particle():
    return SystemSpec(kind=SystemKind.FREE)


def uniform_acceleration(force):
    return SystemSpec(kind=SystemKind.UNIFORM_ACCELERATION, force=force)


def harmonic_oscillator(omega):
    return SystemSpec(kind=SystemKind.HARMONIC, omega=omega)


def inverted_oscillator(omega_tilde):
    return SystemSpec(kind=SystemKind.INVERTED, omega_tilde=omega_tilde)


@dataclass(frozen=True)
class OscillatorDerived:
    """Natural oscillator scales: ground-state width and classical period."""

    beta0: float
    tau: float


def oscillator_derived(constants, omega):
    """Return beta0 = sqrt(hbar/(mass*omega)) and tau = 2*pi/omega."""
    _require_positive("omega", omega)
    beta0 = math.sqrt(constants.hbar / (constants.mass * omega))
    return OscillatorDerived(beta0=beta0, tau=2.0 * math.pi / omega)
