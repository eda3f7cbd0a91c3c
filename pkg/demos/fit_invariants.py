"""
Recovering (mu, lambda, nu) from class-number data
==================================================

Given exponents (or orders) for the layers of a tower, find the integers
with e_n = mu * l^n + lambda * n + nu from some onset on.
"""

from logiwasawa import ExponentSequence, fit, fit_from_orders
from logiwasawa.errors import NoEventualFit

r = fit(ExponentSequence(2, [7, 12, 19, 30, 49, 84]))
print(r.to_json())

# A logarithmic lambda and its classical counterpart
print(r.with_log_correction(1).to_json())

# Orders instead of exponents; the first layer does not follow the law
r = fit_from_orders([27, 9, 27, 81, 243, 729], 3)
print("onset", r.onset, (r.mu, r.lam, r.nu))

try:
    fit(ExponentSequence(2, [0, 0, 1, 0, 0, 0]))
except NoEventualFit as exc:
    print("rejected:", exc)
