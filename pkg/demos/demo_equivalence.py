"""Two-sided comparison of the weighted aggregate with the Besov proxy.

Inside the capacity window both functionals diverge for atomic data at
the same cutoff rate, so they are compared at one matched inner cutoff.
The ratio barely moves across a random measure family, and scaling the
measure by 2 moves both sides by exactly 2^q.
"""

from wedgecap.experiments import equivalence_experiment

r = equivalence_experiment(3, 2, 4.0, q=1.8, n_measures=6)
m = r.metrics
print("ratio spread over the family : %.4f   (allowed up to 1e3)" % m["ratio_spread"])
print("homogeneity error (aggregate): %.2e" % m["homog_max_rel_err_M"])
print("homogeneity error (proxy)    : %.2e" % m["homog_max_rel_err_proxy"])
print("R-growth exponent            : %.4f  (bound %.2f)"
      % (m["growth_fitted"], m["growth_bound"]))
print("passed:", r.passed)
