"""
Weierstrass preparation in Z_l[[T]]
===================================

Every nonzero power series factors as l^mu * P * U with P distinguished
and U a unit.  Here we factor a few series and multiply the pieces back.
"""

from logiwasawa import LambdaSeries, weierstrass_divide, weierstrass_prepare

# T^2 + 4T + 3 = (T + 3)(T + 1) at l = 3; T + 1 is a unit there
f = LambdaSeries(3, [3, 4, 1], precision=16, degree=16)
prep = weierstrass_prepare(f)
print("mu =", prep.mu, " P =", prep.poly, " lambda =", prep.lam)
print("round trip exact:", prep.recombine() == f)

# A constant picks up only mu
print(weierstrass_prepare(LambdaSeries(3, [6])).mu)

# Division by the distinguished factor leaves no remainder
q, r = weierstrass_divide(f, prep.poly)
print("quotient", q.polynomial(), "remainder", r.polynomial())

# A denser series: 2-adic digits scattered through the coefficients
g = LambdaSeries(2, [8, 4, 6, 2, 1, 5, 7], precision=12, degree=24)
prep = weierstrass_prepare(g)
print("P =", prep.poly, " U starts", prep.unit.polynomial()[:4])
