"""Exact identities: gamma and beta values at half-integers, checked with no rounding.

Every Gamma(k/2) is a rational multiple of a power of sqrt(pi), so each side
of these identities is a PiGraded value and equality is exact.
"""
from fractions import Fraction

from probident import PiGraded, gamma_value, beta_value, verify, verify_in_p
from probident.identities import IdentityId, enumerate_compositions

# Gamma(5/2) = (3/4) sqrt(pi); printed as a coefficient times pi^(1/2)
print(gamma_value(Fraction(5, 2)))
# B(1/2, 1/2) = pi
print(beta_value(Fraction(1, 2), Fraction(1, 2)) == PiGraded.pi_power(2))

# The square of central binomial coefficients, summed against each other
for n in range(1, 6):
    r = verify("central-convolution", n)
    print(n, r.lhs, r.rhs, r.equal)

# The alternating version vanishes for odd n
print([str(verify("alternating-convolution", n).lhs) for n in range(1, 8)])

# Every identity in the catalogue at n = 7.  The parametric ones need p.
for iid in IdentityId:
    p = 3 if iid.value == "multi-convolution" else Fraction(2, 5) if iid.value in ("gamma-even-moment", "beta-moment") else None
    r = verify(iid, 7, p)
    print(f"{iid.value:28s} equal={r.equal}")

# Weak compositions of 4 into 3 parts: C(6, 2) = 15 of them
print(len(list(enumerate_compositions(4, 3))))

# Both sides of the beta-moment identity are rational in p of degree <= 4n,
# so 8n+4 agreeing points certify it for every p > 0.
reports = verify_in_p("beta-moment", 3)
print(len(reports), all(r.equal for r in reports))
