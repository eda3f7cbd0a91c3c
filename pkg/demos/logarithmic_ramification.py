"""
Logarithmic ramification bookkeeping
====================================

A local step of degree e*f with intersection degree c against the
cyclotomic composite has logarithmic indices (degree/c, c).  Indices
multiply in towers, and away from l they agree with the classical ones.
"""

from logiwasawa import LocalStep, compose, log_indices, validate_away_from_ell
from logiwasawa.ramification import composite_step

lower = LocalStep(p=3, ell=3, degree=3, e=3, f=1, c=1)
upper = LocalStep(p=3, ell=3, degree=9, e=3, f=3, c=3)
print(log_indices(lower), log_indices(upper))
print("tower", compose(lower, upper, composite=composite_step(lower, upper)))

# At p = 5 the logarithmic index has to equal e
print(validate_away_from_ell(LocalStep(5, 3, 3, 3, 1, 1)))
print(validate_away_from_ell(LocalStep(5, 3, 3, 1, 3, 1)))
