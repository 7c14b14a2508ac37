"""Shared brute-force oracles used to validate the closed-form implementations."""

import numpy as np
import pytest

from dressedlight import EnsembleParams


def brute_log_partition(xi, n_atoms):
    """Direct (N+1)-term partition sum, shift-stabilized."""
    m = np.arange(-n_atoms, n_atoms + 1, 2, dtype=float)
    e = -xi * m
    shift = e.max()
    return float(shift + np.log(np.exp(e - shift).sum()))


def brute_inversion(xi, n_atoms):
    """Direct (N+1)-term weighted mean of the inversion eigenvalues."""
    m = np.arange(-n_atoms, n_atoms + 1, 2, dtype=float)
    e = -xi * m
    w = np.exp(e - e.max())
    return float((m * w).sum() / w.sum())


def brute_inversion_grid(xi_grid, n_atoms):
    """Vectorized direct summation over a grid of exponents."""
    m = np.arange(-n_atoms, n_atoms + 1, 2, dtype=float)
    e = -np.asarray(xi_grid)[:, None] * m[None, :]
    e -= e.max(axis=1, keepdims=True)
    w = np.exp(e)
    return (w * m[None, :]).sum(axis=1) / w.sum(axis=1)


def make_pair(n_atoms, omega, delta_a, delta_b, gamma=1.0, r=0.0, prefactor=1.0):
    """Two-species parameter pair with shared drive and damping."""
    return (
        EnsembleParams(label="a", n_atoms=n_atoms, gamma=gamma, r=r,
                       delta=delta_a, omega=omega, density_prefactor=prefactor),
        EnsembleParams(label="b", n_atoms=n_atoms, gamma=gamma, r=r,
                       delta=delta_b, omega=omega, density_prefactor=prefactor),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
