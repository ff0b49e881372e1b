"""The eigenvalue chain on a box opening, stage by stage.

The octant of the sphere (the opening at a cube vertex) separates into a
circle stage with eigenvalue (pi/alpha1)^2 = 4 followed by a weighted
stage on (0, pi/2) that is bounded at the coordinate pole.  The chain
lands on gamma = 12, the eigenvalue of the harmonic polynomial x y z.
"""

import math

import numpy as np

from wedgecap import SLProblem, WedgeSpec, gamma_first_eigenvalue, sl_eigen_1d

mu1 = (math.pi / (math.pi / 2)) ** 2
print("stage 1 (circle, alpha = pi/2):      mu_1 =", mu1)

stage2 = sl_eigen_1d(SLProblem(0.0, math.pi / 2, d=1, mu=mu1, bc_a="bounded"))
print("stage 2 (weight sin, bounded pole):  gamma = %.10f" % stage2.gamma)

spec = WedgeSpec(3, 3, math.pi / 2, intervals=((0.0, math.pi / 2),),
                 allow_pole=True)
print("full chain:                          gamma = %.10f" %
      gamma_first_eigenvalue(spec))

ref = np.sin(stage2.theta) ** 2 * np.cos(stage2.theta)
ref /= ref.max()
print("eigenfunction vs sin^2(t) cos(t):    max deviation %.2e"
      % np.max(np.abs(stage2.values - ref)))
