"""Dense master-equation oracle for the driven two-ensemble system.

Brute-force validator for the analytic steady state and probe response:
collective spin operators in the symmetric (maximal-spin) basis, the full
damping generator as a dense superoperator, its null-space steady state,
and the probe spectrum from two-time correlators via the quantum regression
theorem.  Everything is dense and deliberately capped at desk scale.

Matrix convention: density matrices are vectorized row-major, so
vec(A @ X @ B) = kron(A, B.T) @ vec(X).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .core import EnsembleParams

MAX_ATOMS = 12
MAX_LIOUVILLE_ROWS = 30000

_NULL_SPACE_RTOL = 1e-9


class OracleSizeError(ValueError):
    """Requested system exceeds the dense-oracle size cap."""


class DegenerateSteadyStateError(RuntimeError):
    """The damping generator does not have a unique steady state."""

    def __init__(self, dimension: int):
        self.dimension = dimension
        super().__init__(f"steady-state space has dimension {dimension}, expected 1")


@dataclass(frozen=True)
class CollectiveOperators:
    """Ladder and inversion matrices for spin N/2, basis ordered by ascending m."""

    n_atoms: int
    sp: np.ndarray
    sm: np.ndarray
    sz: np.ndarray


def build_operators(n_atoms: int) -> CollectiveOperators:
    """Collective spin operators in the (N+1)-dimensional symmetric sector."""
    if not 1 <= n_atoms <= MAX_ATOMS:
        raise OracleSizeError(f"n_atoms must be in [1, {MAX_ATOMS}], got {n_atoms}")
    s = 0.5 * n_atoms
    m = np.arange(n_atoms + 1) - s
    sz = np.diag(m)
    amp = np.sqrt(s * (s + 1.0) - m[:-1] * (m[:-1] + 1.0))
    sp = np.zeros((n_atoms + 1, n_atoms + 1))
    sp[np.arange(1, n_atoms + 1), np.arange(n_atoms)] = amp
    return CollectiveOperators(n_atoms=n_atoms, sp=sp, sm=sp.T.copy(), sz=sz)


@dataclass
class OracleModel:
    """Joint-space Hamiltonian and damping generator for the two species."""

    params_a: EnsembleParams
    params_b: EnsembleParams
    include_cross_damping: bool
    dim: int
    sp: dict[str, np.ndarray]
    sm: dict[str, np.ndarray]
    sz: dict[str, np.ndarray]
    hamiltonian: np.ndarray
    liouvillian: np.ndarray
    steady: np.ndarray | None = field(default=None, repr=False)

    def params(self, label: str) -> EnsembleParams:
        return {"a": self.params_a, "b": self.params_b}[label]


def build_liouvillian(
    params_a: EnsembleParams,
    params_b: EnsembleParams,
    include_cross: bool = False,
) -> OracleModel:
    """Assemble the dense generator L with vec(rho_dot) = L @ vec(rho).

    The same-species damping terms are always present; the cross-species
    terms (geometric means of the decay and collision rates) are included
    only when ``include_cross`` is set.
    """
    ops_a = build_operators(params_a.n_atoms)
    ops_b = build_operators(params_b.n_atoms)
    da, db = params_a.n_atoms + 1, params_b.n_atoms + 1
    dim = da * db
    if dim * dim > MAX_LIOUVILLE_ROWS:
        raise OracleSizeError(
            f"joint dimension {dim} gives {dim * dim} superoperator rows, "
            f"above the cap {MAX_LIOUVILLE_ROWS}")

    eye_a, eye_b = np.eye(da), np.eye(db)
    sp = {"a": np.kron(ops_a.sp, eye_b), "b": np.kron(eye_a, ops_b.sp)}
    sm = {"a": np.kron(ops_a.sm, eye_b), "b": np.kron(eye_a, ops_b.sm)}
    sz = {"a": np.kron(ops_a.sz, eye_b), "b": np.kron(eye_a, ops_b.sz)}

    by_label = {"a": params_a, "b": params_b}
    ham = np.zeros((dim, dim))
    for lbl, p in by_label.items():
        ham += p.delta * sz[lbl] + p.omega * (sp[lbl] + sm[lbl])

    eye = np.eye(dim)
    lv = -1j * (np.kron(ham, eye) - np.kron(eye, ham.T)).astype(complex)

    # damping: -sum_ij sqrt(g_i g_j) ([S+_i, S-_j rho] + h.c.)
    #          -sum_ij sqrt(r_i r_j) ([Sz_i, Sz_j rho] + h.c.)
    # which expands to A rho + rho A - 2 S-_j rho S+_i with A = S+_i S-_j
    for li, lj in product("ab", repeat=2):
        if li != lj and not include_cross:
            continue
        pi, pj = by_label[li], by_label[lj]
        g = math.sqrt(pi.gamma * pj.gamma)
        if g > 0.0:
            a_op = sp[li] @ sm[lj]
            lv -= g * (np.kron(a_op, eye) + np.kron(eye, a_op.T)
                       - 2.0 * np.kron(sm[lj], sp[li].T))
        rr = math.sqrt(pi.r * pj.r)
        if rr > 0.0:
            z_op = sz[li] @ sz[lj]
            lv -= rr * (np.kron(z_op, eye) + np.kron(eye, z_op.T)
                        - 2.0 * np.kron(sz[lj], sz[li].T))

    return OracleModel(
        params_a=params_a,
        params_b=params_b,
        include_cross_damping=include_cross,
        dim=dim,
        sp=sp,
        sm=sm,
        sz=sz,
        hamiltonian=ham,
        liouvillian=lv,
    )


def steady_rho(model: OracleModel) -> np.ndarray:
    """Steady density matrix from the null space of the generator.

    Uses an SVD rank decision with threshold 1e-9 relative to the largest
    singular value; raises :class:`DegenerateSteadyStateError` whenever the
    null space is not one-dimensional.  The result is cached on the model.
    """
    if model.steady is not None:
        return model.steady
    _, svals, vh = np.linalg.svd(model.liouvillian)
    if svals[0] == 0.0:
        raise DegenerateSteadyStateError(model.dim * model.dim)
    null_dim = int(np.sum(svals < _NULL_SPACE_RTOL * svals[0]))
    if null_dim != 1:
        raise DegenerateSteadyStateError(null_dim)
    rho = vh[-1].conj().reshape(model.dim, model.dim)
    rho = 0.5 * (rho + rho.conj().T)
    trace = np.trace(rho)
    if abs(trace) < 1e-12:
        raise DegenerateSteadyStateError(0)
    rho = rho / trace
    eigmin = float(np.linalg.eigvalsh(rho).min())
    if eigmin < -1e-10:
        raise RuntimeError(f"steady state not positive semidefinite (min eigenvalue {eigmin})")
    model.steady = rho
    return rho


def dressed_inversion_operator(model: OracleModel, label: str, theta: float) -> np.ndarray:
    """Collective dressed inversion R_z of one species in the joint space.

    In bare operators, R_z = 2*cos(2*theta)*S_z + sin(2*theta)*(S+ + S-).
    """
    return (2.0 * math.cos(2.0 * theta) * model.sz[label]
            + math.sin(2.0 * theta) * (model.sp[label] + model.sm[label]))


def oracle_dressed_inversion(model: OracleModel, label: str, theta: float) -> float:
    """<R_z> of one species in the numerically exact steady state."""
    rho = steady_rho(model)
    rz = dressed_inversion_operator(model, label, theta)
    return float(np.real(np.trace(rz @ rho)))


def regression_spectrum(
    model: OracleModel,
    delta_p: np.ndarray,
    species: str | None = None,
) -> np.ndarray:
    """Probe susceptibility from two-time commutators, quantum regression theorem.

    For each probe detuning delta_p = nu - omega_L the one-sided transform
    of <[S-(tau), S+]> is evaluated through the resolvent
    -(L + i*delta_p*I)^(-1) applied to vec([S+, rho_s]); the contribution of
    each species carries the prefactor density_prefactor*gamma/N so the
    result is in the same per-unit-prefactor units as the analytic response.
    Grid points where the shifted generator is singular are reported as NaN.

    chi'' > 0 is absorption, matching the analytic convention.
    """
    rho = steady_rho(model)
    labels = ("a", "b") if species is None else (species,)
    grid = np.asarray(delta_p, dtype=float)
    chi = np.zeros(grid.shape, dtype=complex)
    eye = np.eye(model.dim * model.dim)
    for lbl in labels:
        p = model.params(lbl)
        sp_op, sm_op = model.sp[lbl], model.sm[lbl]
        init = (sp_op @ rho - rho @ sp_op).reshape(-1)
        pref = p.density_prefactor * p.gamma / p.n_atoms
        for k, dp in enumerate(grid.ravel()):
            try:
                transformed = -np.linalg.solve(model.liouvillian + 1j * dp * eye, init)
            except np.linalg.LinAlgError:
                chi.ravel()[k] = complex(math.nan, math.nan)
                continue
            if not np.all(np.isfinite(transformed)):
                chi.ravel()[k] = complex(math.nan, math.nan)
                continue
            op = transformed.reshape(model.dim, model.dim)
            # the propagated commutator is trace-free; remove any steady-state
            # (null-space) contamination picked up when i*dp sits on the
            # zero mode of the generator
            op = op - np.trace(op) * rho
            chi.ravel()[k] += 1j * pref * np.trace(sm_op @ op)
    return chi
