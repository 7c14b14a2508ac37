"""Parameter types and dressed-state geometry for laser-driven two-level ensembles.

All rates (decay, collision, detuning, Rabi) are dimensionless, expressed in
units of one common reference decay rate; conventionally the decay rate of
species ``a`` is 1.  Rescaling every rate by the same factor leaves every
derived quantity unchanged.  Physical units enter only through
:class:`SampleGeometry`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class InvalidRegimeError(ValueError):
    """The requested operation is outside the driven-regime assumptions."""


class DegenerateParametersError(ValueError):
    """Damping parameters leave the collective steady state undefined."""


def mixing_angle(delta: float, omega: float) -> float:
    """Dressed-state mixing angle theta in (0, pi/2).

    Defined by cot(2*theta) = delta/(2*omega) on the branch that keeps both
    sin(theta) and cos(theta) positive; strictly decreasing in ``delta``,
    with theta = pi/4 on resonance.
    """
    if omega <= 0.0:
        raise InvalidRegimeError(f"omega must be > 0 in the driven regime, got {omega}")
    return 0.25 * math.pi - 0.5 * math.atan(0.5 * delta / omega)


def generalized_rabi(omega: float, delta: float) -> float:
    """Dressed-level splitting scale sqrt(omega**2 + (delta/2)**2)."""
    if omega <= 0.0:
        raise InvalidRegimeError(f"omega must be > 0 in the driven regime, got {omega}")
    return math.hypot(omega, 0.5 * delta)


@dataclass(frozen=True)
class EnsembleParams:
    """One driven two-level species.

    ``omega`` is half the Rabi frequency and ``delta`` the laser detuning
    (atomic frequency minus laser frequency).  ``density_prefactor`` is the
    dimensionless weight of this species in the probe susceptibility; keep it
    at 1 to obtain susceptibilities in per-unit-density-prefactor units.
    """

    label: str
    n_atoms: int
    gamma: float
    r: float
    delta: float
    omega: float
    density_prefactor: float = 1.0

    def __post_init__(self):
        if self.label not in ("a", "b"):
            raise ValueError(f"label must be 'a' or 'b', got {self.label!r}")
        if not isinstance(self.n_atoms, int) or self.n_atoms < 1:
            raise ValueError(f"n_atoms must be an integer >= 1, got {self.n_atoms!r}")
        if self.gamma < 0.0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.r < 0.0:
            raise ValueError(f"r must be >= 0, got {self.r}")
        if self.gamma + self.r <= 0.0:
            raise ValueError("gamma + r must be > 0 (some damping is required)")
        if self.omega <= 0.0:
            raise InvalidRegimeError(f"omega must be > 0 (driven regime), got {self.omega}")
        if self.density_prefactor < 0.0:
            raise ValueError(f"density_prefactor must be >= 0, got {self.density_prefactor}")


@dataclass(frozen=True)
class DressedSteadyState:
    """Derived steady-state quantities of a single ensemble.

    ``xi`` is the exponent of the thermal-like dressed weight exp(-xi*R_z),
    ``omega_bar`` the generalized Rabi frequency in units of gamma*N, and
    ``rz`` the collective dressed-state inversion in [-N, N].
    """

    theta: float
    xi: float
    omega_tilde: float
    omega_bar: float
    log_partition: float
    rz: float


@dataclass(frozen=True)
class SampleGeometry:
    """Physical sample geometry for switching-time and density estimates.

    ``length_l`` and ``area_s`` are in units of the wavelength and its
    square; ``lambda_cm`` is the wavelength in cm, ``gamma_phys`` the decay
    rate in 1/s and ``c`` the speed of light in cm/s.
    """

    length_l: float
    area_s: float
    lambda_cm: float
    gamma_phys: float
    c: float = 2.99792458e10

    def __post_init__(self):
        for name in ("length_l", "area_s", "lambda_cm", "gamma_phys", "c"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class RegimeChecks:
    """Validity flags for one species; False means the approximation is marginal."""

    label: str
    intense_field: bool
    linewidth_below_splitting: bool
    splitting_below_rabi: bool

    @property
    def all_ok(self) -> bool:
        return self.intense_field and self.linewidth_below_splitting and self.splitting_below_rabi


@dataclass(frozen=True)
class SecularReport:
    """Diagnostic report on the secular / cross-damping-neglect regime.

    Purely advisory: computations proceed regardless, so parameter sweeps can
    pass through marginal regimes.
    """

    delta_omega: float
    checks: tuple[RegimeChecks, RegimeChecks]

    @property
    def all_ok(self) -> bool:
        return all(c.all_ok for c in self.checks)

    def warnings(self) -> list[str]:
        out = []
        for c in self.checks:
            if not c.intense_field:
                out.append(f"ensemble {c.label}: Rabi frequency is not large against gamma*N "
                           "(intense-field limit marginal)")
            if not c.linewidth_below_splitting:
                out.append(f"ensemble {c.label}: collective linewidth N*gamma exceeds the "
                           "species splitting (cross-damping neglect marginal)")
            if not c.splitting_below_rabi:
                out.append(f"ensemble {c.label}: species splitting is not below the "
                           "generalized Rabi frequency (secular approximation marginal)")
        return out


def secular_validity_check(params_a: EnsembleParams, params_b: EnsembleParams) -> SecularReport:
    """Check the regime assumptions behind the analytic steady state.

    The intense-field flag compares the full Rabi frequency 2*omega against
    10*gamma*N; the remaining flags bracket the species splitting
    delta_omega = delta_a - delta_b between N*gamma and the generalized Rabi
    frequency.  Never raises; marginal regimes only produce warnings.
    """
    delta_omega = params_a.delta - params_b.delta
    checks = tuple(
        RegimeChecks(
            label=p.label,
            intense_field=2.0 * p.omega >= 10.0 * p.gamma * p.n_atoms,
            linewidth_below_splitting=p.n_atoms * p.gamma <= delta_omega,
            splitting_below_rabi=delta_omega < generalized_rabi(p.omega, p.delta),
        )
        for p in (params_a, params_b)
    )
    return SecularReport(delta_omega=delta_omega, checks=checks)
