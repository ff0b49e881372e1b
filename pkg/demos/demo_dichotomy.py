"""Measuring the point-singularity threshold of a quarter wedge.

The weighted integral of the edge kernel of a unit atom either settles
or blows up as the inner cutoff shrinks.  The measured boundary exponent
crosses -1 exactly at q_c = 5/3.
"""

from wedgecap.experiments import dichotomy_experiment

print(f"{'q':>7} {'verdict':>11} {'I-slope':>9} {'boundary exp':>13} {'predicted':>10}")
for q in (1.5, 1.6, 5 / 3 - 0.01, 5 / 3 + 0.01, 1.8, 2.0):
    r = dichotomy_experiment(3, 2, 4.0, q)
    print(f"{q:7.4f} {r.metrics['verdict']:>11} {r.metrics['I_slope']:9.4f} "
          f"{r.metrics['boundary_exponent']:13.5f} "
          f"{r.metrics['predicted_exponent']:10.5f}")
