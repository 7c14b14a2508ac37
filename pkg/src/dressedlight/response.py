"""Weak-probe optical response of the driven collective medium.

The susceptibility is a sum, over the two species, of a pair of complex
Lorentzians centered at probe detunings -2*omega_bar and +2*omega_bar (in
units of gamma*N), weighted by the dressed populations.  Susceptibilities
are returned in per-unit-density-prefactor units; the physical density scale
enters only when converting to a refractive or group index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import DressedSteadyState, EnsembleParams, SampleGeometry, generalized_rabi, mixing_angle


class SingularIndexError(ValueError):
    """Group index requested at a point of vanishing refractive index."""


@dataclass(frozen=True)
class DampingRates:
    """Dressed-frame probe damping for one species.

    ``gamma_s`` is the single-particle part, ``gamma_c`` the collective part
    (non-positive at the dressed steady state), and ``gamma_tilde`` the
    resulting linewidth (gamma_s - gamma_c)/(gamma*N) of the probe
    Lorentzians.
    """

    gamma_s: float
    gamma_c: float
    gamma_tilde: float


def damping_rates(theta: float, gamma: float, r: float, rz: float, n_atoms: int) -> DampingRates:
    """Probe-transition damping rates at mixing angle ``theta``.

    Pass ``rz = 0`` for the independent-atom limit (collective damping
    removed).
    """
    s2 = math.sin(2.0 * theta) ** 2
    c2 = math.cos(2.0 * theta)
    gamma_s = gamma * (s2 + math.cos(theta) ** 4 + math.sin(theta) ** 4) \
        + r * (c2 * c2 + 0.5 * s2)
    gamma_c = gamma * c2 * rz
    return DampingRates(
        gamma_s=gamma_s,
        gamma_c=gamma_c,
        gamma_tilde=(gamma_s - gamma_c) / (gamma * n_atoms),
    )


@dataclass(frozen=True)
class ProbePoint:
    """One probe frequency, fixed relative to the laser.

    ``delta_p`` is the probe detuning from the laser (nu - omega_L) and
    ``nu_minus_omega_a`` the offset from the bare transition of species a;
    they are tied together by delta_p = nu_minus_omega_a + delta_a.
    """

    nu_minus_omega_a: float
    delta_p: float

    @classmethod
    def at_laser(cls, nu_minus_omega_a: float, delta_a: float) -> "ProbePoint":
        return cls(nu_minus_omega_a=nu_minus_omega_a, delta_p=nu_minus_omega_a + delta_a)

    @classmethod
    def from_delta_p(cls, delta_p: float, delta_a: float) -> "ProbePoint":
        return cls(nu_minus_omega_a=delta_p - delta_a, delta_p=delta_p)


@dataclass(frozen=True)
class ResponseSample:
    """Probe response at one sweep point, chi in per-unit-prefactor units."""

    delta_a_over_2omega: float
    chi_prime: float
    chi_double_prime: float
    dchi_prime: float
    n: float
    n_g: float
    propagating: bool


SolvedEnsemble = tuple[EnsembleParams, DressedSteadyState]


def _check_solved(params: EnsembleParams, state: DressedSteadyState) -> None:
    theta = mixing_angle(params.delta, params.omega)
    omega_tilde = generalized_rabi(params.omega, params.delta)
    if abs(theta - state.theta) > 1e-9 or abs(omega_tilde - state.omega_tilde) > 1e-9 * omega_tilde:
        raise ValueError(
            f"ensemble {params.label!r}: steady state does not match parameters; "
            "solve it with solve_ensemble(params) first")


def susceptibility_terms(
    probe: ProbePoint,
    ensembles: Sequence[SolvedEnsemble],
    collective: bool = True,
) -> tuple[complex, ...]:
    """Per-species complex susceptibility contributions chi' + i*chi''.

    With ``collective=False`` the collective damping is forced to zero,
    which reduces each term to the independent-atom result.
    """
    out = []
    for params, state in ensembles:
        _check_solved(params, state)
        gn = params.gamma * params.n_atoms
        rates = damping_rates(state.theta, params.gamma, params.r,
                              state.rz if collective else 0.0, params.n_atoms)
        gt = rates.gamma_tilde
        dpt = probe.delta_p / gn
        x_minus = dpt - 2.0 * state.omega_bar
        x_plus = dpt + 2.0 * state.omega_bar
        c4 = math.cos(state.theta) ** 4
        s4 = math.sin(state.theta) ** 4
        weight = params.density_prefactor * state.rz / params.n_atoms
        d_minus = gt * gt + x_minus * x_minus
        d_plus = gt * gt + x_plus * x_plus
        # real rational forms keep chi'' componentwise accurate in the far
        # tails, where complex division would only be modulus-accurate
        chi_p = weight * (c4 * x_minus / d_minus - s4 * x_plus / d_plus)
        chi_pp = weight * (s4 * gt / d_plus - c4 * gt / d_minus)
        out.append(complex(chi_p, chi_pp))
    return tuple(out)


def susceptibility(
    probe: ProbePoint,
    ensembles: Sequence[SolvedEnsemble],
    collective: bool = True,
) -> complex:
    """Total weak-probe susceptibility chi = chi' + i*chi''.

    chi'' > 0 means absorption, chi'' < 0 gain.  The value is in units of
    the density prefactor; multiply by the physical prefactor before taking
    a refractive index.
    """
    return sum(susceptibility_terms(probe, ensembles, collective), 0j)


def chi_prime_derivative(
    probe: ProbePoint,
    ensembles: Sequence[SolvedEnsemble],
    collective: bool = True,
) -> float:
    """Analytic d(chi')/d(delta_p) at fixed laser parameters.

    Since delta_p = nu - omega_L, this equals the derivative with respect to
    the probe frequency nu.
    """
    total = 0.0
    for params, state in ensembles:
        _check_solved(params, state)
        gn = params.gamma * params.n_atoms
        rates = damping_rates(state.theta, params.gamma, params.r,
                              state.rz if collective else 0.0, params.n_atoms)
        gt = rates.gamma_tilde
        dpt = probe.delta_p / gn
        x_minus = dpt - 2.0 * state.omega_bar
        x_plus = dpt + 2.0 * state.omega_bar
        c4 = math.cos(state.theta) ** 4
        s4 = math.sin(state.theta) ** 4

        def slope(x):
            d = gt * gt + x * x
            return (gt * gt - x * x) / (d * d)

        weight = params.density_prefactor * state.rz / params.n_atoms
        total += weight * (c4 * slope(x_minus) - s4 * slope(x_plus)) / gn
    return total


def refractive_index(chi_prime: float, density_scale: float = 1.0) -> tuple[float, bool]:
    """Refractive index n = sqrt(1 + s*chi') and a propagation flag.

    When 1 + s*chi' < 0 the probe cannot propagate; (nan, False) is returned
    rather than a complex index.
    """
    arg = 1.0 + density_scale * chi_prime
    if arg < 0.0:
        return math.nan, False
    return math.sqrt(arg), True


def group_index(
    n: float,
    nu_over_gamma: float,
    dchi_prime: float,
    density_scale: float = 1.0,
) -> tuple[float, float]:
    """Group index n_g = n + nu*dn/dnu and the ratio v_g/c = 1/n_g.

    ``dchi_prime`` is the probe-frequency derivative of chi' in reference
    rate units, so dn/dnu = s*dchi'/(2n).  n_g may take either sign (slow
    versus anomalous light).
    """
    if math.isnan(n):
        raise SingularIndexError("group index undefined in a non-propagating region")
    if n == 0.0:
        raise SingularIndexError("group index diverges where the refractive index vanishes")
    ng = n + nu_over_gamma * density_scale * dchi_prime / (2.0 * n)
    vg_over_c = math.inf if ng == 0.0 else 1.0 / ng
    return ng, vg_over_c


def switching_time(geometry: SampleGeometry, n_atoms: int) -> float:
    """Collective switching-time estimate 2L/(lambda*gamma*N) in seconds."""
    if n_atoms < 1:
        raise ValueError(f"n_atoms must be >= 1, got {n_atoms}")
    length_cm = geometry.length_l * geometry.lambda_cm
    return 2.0 * length_cm / (geometry.lambda_cm * geometry.gamma_phys * n_atoms)


def kramers_kronig_real(
    x: np.ndarray,
    chi_imag: np.ndarray,
    targets: np.ndarray | None = None,
    chunk: int = 512,
) -> np.ndarray:
    """Reconstruct chi' from chi'' by a principal-value Hilbert transform.

    chi'(x_k) = (1/pi) P-int chi''(x')/(x' - x_k) dx' on the uniform grid
    ``x``, using trapezoid integration with the singularity subtracted:
    the integrand (chi''(x') - chi''(x_k))/(x' - x_k) is smooth, and the
    subtracted piece integrates to chi''(x_k)*log((b - x_k)/(x_k - a)).
    ``targets`` selects grid indices (interior points only); default all
    interior points.
    """
    x = np.asarray(x, dtype=float)
    chi_imag = np.asarray(chi_imag, dtype=float)
    if x.ndim != 1 or x.shape != chi_imag.shape:
        raise ValueError("x and chi_imag must be 1-d arrays of equal length")
    dx = np.diff(x)
    if not np.allclose(dx, dx[0], rtol=1e-9, atol=0.0):
        raise ValueError("kramers_kronig_real requires a uniform grid")
    if targets is None:
        targets = np.arange(1, len(x) - 1)
    targets = np.asarray(targets, dtype=int)
    if np.any(targets <= 0) or np.any(targets >= len(x) - 1):
        raise ValueError("targets must be interior grid indices")

    slope = np.gradient(chi_imag, x)
    step = float(dx[0])
    out = np.empty(len(targets))
    for start in range(0, len(targets), chunk):
        idx = targets[start:start + chunk]
        xk = x[idx][:, None]
        fk = chi_imag[idx][:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            integrand = (chi_imag[None, :] - fk) / (x[None, :] - xk)
        integrand[np.arange(len(idx)), idx] = slope[idx]
        pv = step * (integrand.sum(axis=1) - 0.5 * (integrand[:, 0] + integrand[:, -1]))
        pv += chi_imag[idx] * np.log((x[-1] - x[idx]) / (x[idx] - x[0]))
        out[start:start + chunk] = pv / math.pi
    return out


def find_zero_absorption(
    chi_imag_fn: Callable[[float], float],
    lo: float,
    hi: float,
    samples: int = 801,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> list[float]:
    """Locate zero-absorption points of ``chi_imag_fn`` on [lo, hi].

    Scans a uniform grid for sign changes and refines each bracket by
    bisection until |chi''| < tol.  Returns the crossings in increasing
    order.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    xs = np.linspace(lo, hi, samples)
    vals = np.array([chi_imag_fn(float(v)) for v in xs])
    crossings = []
    for i in range(samples - 1):
        f0, f1 = vals[i], vals[i + 1]
        if f0 == 0.0:
            crossings.append(float(xs[i]))
            continue
        if f0 * f1 >= 0.0:
            continue
        a, b, fa = float(xs[i]), float(xs[i + 1]), float(f0)
        mid, fm = a, fa
        for _ in range(max_iter):
            mid = 0.5 * (a + b)
            fm = chi_imag_fn(mid)
            if abs(fm) < tol or mid in (a, b):
                break
            if fa * fm < 0.0:
                b = mid
            else:
                a, fa = mid, fm
        crossings.append(mid)
    if vals[-1] == 0.0:
        crossings.append(float(xs[-1]))
    return sorted(set(crossings))
