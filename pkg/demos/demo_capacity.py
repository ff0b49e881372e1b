"""Bessel kernels and the capacity threshold alpha p = ell.

G_2 on the line is e^{-|x|}/2 exactly; a singleton has vanishing
capacity iff alpha p <= ell, which the refinement extrapolation detects
on either side of the threshold.  The rows are plot-ready CSV.
"""

import numpy as np

from wedgecap import bessel_capacity, bessel_kernel_radial

xs = np.linspace(0.2, 3.0, 6)
print("r,G2,closed_form")
for x, g in zip(xs, bessel_kernel_radial(xs, 2.0, 1)):
    print(f"{x:.3f},{g:.12f},{np.exp(-x) / 2:.12f}")

print()
for alpha in (0.4, 0.6):
    r = bessel_capacity(np.array([0.0]), alpha, 2.0, resolution=0.02)
    hist = "  ".join("h=%.3g: %.4f" % hv for hv in r.history)
    print(f"alpha={alpha}: verdict={r.verdict:10s} limit={r.limit}  [{hist}]")
