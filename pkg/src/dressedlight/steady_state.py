"""Thermal-like steady state of the collective dressed spin.

The dressed steady state weights the collective inversion eigenvalues
m = -N, -N+2, ..., N by exp(-xi*m).  The partition sum and its mean are
evaluated in closed form (geometric series / Brillouin-type coth
difference), with a Taylor branch where the coth difference would cancel.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    DegenerateParametersError,
    DressedSteadyState,
    EnsembleParams,
    generalized_rabi,
    mixing_angle,
)

# below this value of |xi|*(N+1) the coth difference loses precision;
# the odd series keeps relative error under ~1e-13 at the switch point
_SERIES_CUTOFF = 0.05


def inversion_exponent(theta: float, gamma: float, r: float) -> float:
    """Exponent xi of the dressed steady-state weight exp(-xi * R_z).

    Positive for theta < pi/4 (blue laser detuning), zero at theta = pi/4,
    negative for theta > pi/4.
    """
    if gamma < 0.0 or r < 0.0 or gamma + r <= 0.0:
        raise DegenerateParametersError(
            f"need gamma >= 0, r >= 0 and gamma + r > 0, got gamma={gamma}, r={r}")
    if not 0.0 < theta < 0.5 * math.pi:
        raise DegenerateParametersError(f"theta must lie in (0, pi/2), got {theta}")
    phase = 0.25 * r * math.sin(2.0 * theta) ** 2
    num = gamma * math.cos(theta) ** 4 + phase
    den = gamma * math.sin(theta) ** 4 + phase
    if num <= 0.0 or den <= 0.0:
        raise DegenerateParametersError(
            "damping ratio is 0/0; the steady state is undefined for these parameters")
    return 0.5 * math.log(num / den)


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def log_partition(xi, n_atoms: int):
    """log of Z = sum_{k=0..N} exp(-xi*(2k - N)).

    Even in xi, continuous at xi = 0 with value log(N+1), and evaluated in
    the log domain so that |xi|*N up to ~1e4 cannot overflow.  Accepts a
    scalar or an array of xi values.
    """
    if n_atoms < 1:
        raise ValueError(f"n_atoms must be >= 1, got {n_atoms}")
    x, scalar = _as_array(xi)
    a = np.abs(x)
    out = np.full(a.shape, math.log(n_atoms + 1))
    nz = a > 0.0
    an = a[nz]
    # Z = e^{aN} (1 - e^{-2a(N+1)}) / (1 - e^{-2a}); expm1 keeps the ratio
    # well conditioned as a -> 0
    ratio = np.expm1(-2.0 * (n_atoms + 1) * an) / np.expm1(-2.0 * an)
    out[nz] = n_atoms * an + np.log(ratio)
    return float(out) if scalar else out


def dressed_inversion(xi, n_atoms: int):
    """Collective dressed inversion <R_z> = -(d/d xi) log Z, in [-N, N].

    Equals sum_m m*exp(-xi*m) / sum_m exp(-xi*m) over m = -N..N in steps of
    2; odd in xi and computed as the Brillouin-type coth difference
    -( (N+1)*coth((N+1)*xi) - coth(xi) ), with an odd Taylor series below
    the cancellation threshold.  Accepts a scalar or an array of xi values.
    """
    if n_atoms < 1:
        raise ValueError(f"n_atoms must be >= 1, got {n_atoms}")
    x, scalar = _as_array(xi)
    m = float(n_atoms + 1)
    a = np.abs(x)
    out = np.empty(a.shape)

    small = a * m < _SERIES_CUTOFF
    asm = a[small]
    c1 = (m * m - 1.0) / 3.0
    c3 = (m ** 4 - 1.0) / 45.0
    c5 = 2.0 * (m ** 6 - 1.0) / 945.0
    c7 = (m ** 8 - 1.0) / 4725.0
    sq = asm * asm
    out[small] = asm * (c1 - sq * (c3 - sq * (c5 - sq * c7)))

    big = ~small
    ab = a[big]
    out[big] = m / np.tanh(m * ab) - 1.0 / np.tanh(ab)

    out = -np.sign(x) * out
    return float(out) if scalar else out


def solve_ensemble(params: EnsembleParams) -> DressedSteadyState:
    """Compose mixing angle, exponent, partition sum and inversion for one ensemble."""
    theta = mixing_angle(params.delta, params.omega)
    omega_tilde = generalized_rabi(params.omega, params.delta)
    xi = inversion_exponent(theta, params.gamma, params.r)
    gn = params.gamma * params.n_atoms
    omega_bar = omega_tilde / gn if gn > 0.0 else math.inf
    return DressedSteadyState(
        theta=theta,
        xi=xi,
        omega_tilde=omega_tilde,
        omega_bar=omega_bar,
        log_partition=log_partition(xi, params.n_atoms),
        rz=dressed_inversion(xi, params.n_atoms),
    )
