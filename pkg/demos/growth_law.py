"""
Growth of omega_n-quotients
===========================

For an elementary module E the exponents e_n of |E / omega_n E| follow
mu * l^n + lambda * n + nu once n is large enough.  We compute them by
resultants and read the invariants back off the sequence.
"""

from logiwasawa import ElementaryModule, growth_sequence, invariants
from logiwasawa.structure import quotient_order_exponent_linear, stable_onset

# Lambda/(T - 3) at l = 3: e_n = v_3(4^(3^n) - 1) = n + 1
E = ElementaryModule(3, [], [[-3, 1]])
g = growth_sequence(E, 4)
print(g.exponents, g.fit.to_json())

# A mixed module: Lambda/9 + Lambda/(T^2 + 3T + 6) at l = 3.
# (T^2 + 3T + 3 would divide omega_1 and give an infinite quotient.)
E = ElementaryModule(3, [2], [[6, 3, 1]])
n0 = stable_onset(E)
g = growth_sequence(E, n0 + 4)
inv = invariants(E)
print("certified onset", n0)
print("exponents", g.exponents)
print("fit", (g.fit.mu, g.fit.lam, g.fit.nu), "structure", (inv.mu, inv.lam))

# The same numbers by row reduction on Lambda / omega_n
print([quotient_order_exponent_linear(E, n) for n in range(4)])
