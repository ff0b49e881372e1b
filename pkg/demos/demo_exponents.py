"""Critical exponents of a wedge as the opening angle varies.

The first eigenvalue of the k=2 opening is (pi/alpha)^2 in closed form,
so the whole exponent chain can be tabulated instantly.  Watch the
trichotomy at alpha = pi (a flat wedge is a half space: kappa_plus = 1)
and the two thresholds squeeze together as the wedge sharpens.
"""

import math

from wedgecap import critical_exponents

print(f"{'alpha/pi':>9} {'gamma':>9} {'kappa+':>8} {'q_c':>8} {'q_c*':>8} {'s(1.8)':>8}")
for frac in (0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75):
    alpha = frac * math.pi
    gamma = (math.pi / alpha) ** 2
    rep = critical_exponents(3, 2, gamma)
    s = rep.s(1.8) if rep.q_c <= 1.8 < rep.q_c_star else float("nan")
    print(f"{frac:9.2f} {gamma:9.4f} {rep.kappa_plus:8.4f} "
          f"{rep.q_c:8.4f} {rep.q_c_star:8.4f} {s:8.4f}")

print("\nA vertex cone (octant of the cube): gamma = 12 gives")
rep = critical_exponents(3, 3, 12.0)
print(f"  kappa = ({rep.kappa_plus:.1f}, {rep.kappa_minus:.1f}),"
      f" q_c = q_c* = {rep.q_c:.4f}")
