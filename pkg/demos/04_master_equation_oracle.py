#!/usr/bin/env python3
"""Cross-checking the closed forms against the dense master equation.

The analytic steady state and probe response rest on a secular
approximation in the dressed frame and a correlator decoupling.  This demo
rebuilds the same system exactly, at desk scale: collective spin operators
in the symmetric basis, the full damping generator as a dense matrix, its
null-space steady state, and the probe spectrum via the quantum regression
theorem.  The closed forms converge onto the exact answers as the drive
strengthens.

Run:  python demos/04_master_equation_oracle.py
Writes demos/output/oracle_spectrum.png
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dressedlight import (
    EnsembleParams,
    ProbePoint,
    build_liouvillian,
    oracle_dressed_inversion,
    regression_spectrum,
    solve_ensemble,
    steady_rho,
    susceptibility,
)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def pair(omega_over_gamma, n_atoms=1):
    og = float(omega_over_gamma)
    return (
        EnsembleParams(label="a", n_atoms=n_atoms, gamma=1.0, r=0.0, delta=0.2 * og, omega=og),
        EnsembleParams(label="b", n_atoms=n_atoms, gamma=1.0, r=0.0, delta=-0.2 * og, omega=og),
    )


print("=== secular approximation improving with drive (N = 1 per species) ===")
for og in (20.0, 50.0, 200.0):
    pa, pb = pair(og)
    model = build_liouvillian(pa, pb)
    state = solve_ensemble(pa)
    exact = oracle_dressed_inversion(model, "a", state.theta)
    rel = abs(exact - state.rz) / abs(state.rz)
    print(f"  omega/gamma = {og:5.0f}:  analytic rz = {state.rz:+.6f}, "
          f"exact rz = {exact:+.6f}, relative error = {rel:.2e}")

print("\n=== exact probe spectrum vs the closed form (omega/gamma = 200) ===")
pa, pb = pair(200.0)
model = build_liouvillian(pa, pb)
solved = tuple((p, solve_ensemble(p)) for p in (pa, pb))
span = 4.0 * solved[0][1].omega_bar
grid = np.linspace(-span, span, 801)
exact = regression_spectrum(model, grid)
closed = np.array([
    susceptibility(ProbePoint.from_delta_p(float(dp), pa.delta), solved) for dp in grid
])
scale = np.max(np.abs(closed)) / np.max(np.abs(exact))
print(f"  global scale between the two spectra: {scale:.4f} (1 means identical units)")

fig, axes = plt.subplots(2, 1, figsize=(7.5, 5.2), sharex=True)
axes[0].plot(grid, closed.imag, "C0-", lw=1.0, label="closed form")
axes[0].plot(grid, scale * exact.imag, "C3--", lw=1.0, label="master equation")
axes[0].set_ylabel(r"$\chi''$")
axes[0].legend(fontsize=8)
axes[1].plot(grid, closed.real, "C0-", lw=1.0)
axes[1].plot(grid, scale * exact.real, "C3--", lw=1.0)
axes[1].set_ylabel(r"$\chi'$")
axes[1].set_xlabel(r"$\Delta_p / \gamma$")
for ax in axes:
    ax.grid(alpha=0.3)
fig.tight_layout()
fig.savefig(OUT / "oracle_spectrum.png", dpi=150)
print(f"  wrote {OUT / 'oracle_spectrum.png'}")

print("\n=== what the neglected cross-damping does (exploratory) ===")
pa = EnsembleParams(label="a", n_atoms=1, gamma=1.0, r=0.0, delta=4.0, omega=20.0)
for dw in (1.0, 8.0, 32.0, 128.0):
    pb = EnsembleParams(label="b", n_atoms=1, gamma=1.0, r=0.0, delta=4.0 - dw, omega=20.0)
    plain = steady_rho(build_liouvillian(pa, pb, include_cross=False))
    cross = steady_rho(build_liouvillian(pa, pb, include_cross=True))
    note = "  <- dressed splittings coincide (delta_b = -delta_a)" if dw == 8.0 else ""
    print(f"  splitting delta_omega = {dw:5.1f}*gamma: "
          f"max steady-state shift = {np.max(np.abs(plain - cross)):.3e}{note}")
print("The cross terms oscillate at 2|Rabi_a - Rabi_b| in the dressed frame:")
print("they bite hardest when the two generalized Rabi frequencies coincide")
print("and fade once the splitting detunes them, which is the regime the")
print("analytic steady state assumes.")
