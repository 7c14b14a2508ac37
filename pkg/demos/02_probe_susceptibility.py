#!/usr/bin/env python3
"""Weak-probe susceptibility of the driven two-species medium.

A weak probe sees a pair of Lorentzian lines per species, centered at the
dressed splittings and weighted by the collective inversion.  Near the
collective switching point the lines become extremely narrow and tall, so
the medium turns into a strong dispersive element: there is a probe/laser
setting where absorption vanishes exactly while the refractive index stays
far above one.

Run:  python demos/02_probe_susceptibility.py
Writes demos/output/probe_susceptibility.png
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dressedlight import (
    evaluate_point,
    figure_configs,
    find_zero_absorption,
    refractive_index,
    run_sweep,
)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

fig, axes = plt.subplots(1, 3, figsize=(12, 3.6))

# --- probe near the bare transition: steep dispersive steps -----------------
config_b = figure_configs("fig2b")[0][1]
result = run_sweep(config_b)
xs = np.array([p.x for p in result.points])
axes[0].plot(xs, [p.sample.chi_prime for p in result.points], "C0-", label=r"$\chi'$")
axes[0].plot(xs, [p.sample.chi_double_prime for p in result.points], "C3--", label=r"$\chi''$")
axes[0].set_title("probe at 0.35 x 2*omega")
print("Steep dispersive steps appear where each species switches",
      "(delta_a = 0 and delta_a = delta_omega).")

# --- probe on the lower dressed sideband ------------------------------------
config_3a = figure_configs("fig3a")[0][1]
result = run_sweep(config_3a)
xs = np.array([p.x for p in result.points])
axes[1].plot(xs, [p.sample.chi_prime for p in result.points], "C0-", label=r"$\chi'$")
axes[1].plot(xs, [p.sample.chi_double_prime for p in result.points], "C3--", label=r"$\chi''$")
axes[1].set_title("probe at -2*omega")

# --- the transparent high-index point ---------------------------------------
chi2 = lambda x: evaluate_point(config_3a, x).sample.chi_double_prime
(crossing,) = find_zero_absorption(chi2, 1e-4, 1e-2, samples=401)
point = evaluate_point(config_3a, crossing)
print(f"\nzero-absorption crossing at delta_a/(2*omega) = {crossing:.4e}")
print(f"  chi'  = {point.sample.chi_prime:+.4f} (per unit density prefactor)")
print(f"  chi'' = {point.sample.chi_double_prime:+.2e}")
for s in (0.1, 1.0, 10.0):
    n, ok = refractive_index(point.sample.chi_prime, density_scale=s)
    print(f"  density prefactor s = {s:4.1f}: n = {n:.3f}" + ("" if ok else " (non-propagating)"))

window = np.linspace(-0.004, 0.006, 801)
config_3b = figure_configs("fig3b")[0][1]
vals = [evaluate_point(config_3b, float(x)).sample for x in window]
axes[2].plot(window, [v.chi_prime for v in vals], "C0-", label=r"$\chi'$")
axes[2].plot(window, [v.chi_double_prime for v in vals], "C3--", label=r"$\chi''$")
axes[2].axvline(crossing, color="k", lw=0.6, ls=":")
axes[2].set_title("enlargement around the crossing")

for ax in axes:
    ax.set_xlabel(r"$\Delta_a / 2\Omega$")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
axes[0].set_ylabel(r"$\chi$  [units of density prefactor]")
fig.tight_layout()
fig.savefig(OUT / "probe_susceptibility.png", dpi=150)
print(f"\nwrote {OUT / 'probe_susceptibility.png'}")
