"""Sampling the gamma and beta statistics and comparing with exact moments.

Each estimate carries a standard error; a z-score beyond 5 would flag a bug.
"""
from fractions import Fraction

from probident import montecarlo as mc

rng = mc.RngStream(seed=2024, stream_id=0)
x = mc.sample_gamma(0.5, rng, 100_000)
print(x.mean(), x.var())  # both near 1/2

for statistic in ("gamma-diff", "gamma-sum", "t-ratio"):
    for n in (1, 2, 3):
        s = mc.estimate_even_moment(statistic, n, Fraction(1, 2), 200_000, rng.child(10 * n))
        print(f"{statistic:10s} n={n} mean={s.mean:.5f} exact={s.exact_target:.5f} z={s.z_score:+.2f}")

# Y1 - Y2 for arcsine Y: even moments are C(2n,n)^2/16^n, odd ones vanish
print(mc.estimate_even_moment("beta-diff", 2, samples=200_000))
print(mc.estimate_odd_moment("beta-diff", 1, samples=200_000))

# E[(X1+X2)^(2n)] E[Y^(2n)] reproduces E[(X1-X2)^(2n)] when p = 1/2
for n in (1, 2):
    s = mc.factorization_check(n, 200_000)
    print(n, s.mean, s.exact_target, s.passed)

# Merging shards gives the same count, mean and spread as one big pass
a, b = mc.MomentAccumulator(), mc.MomentAccumulator()
a.add(x[:40_000])
b.add(x[40_000:])
a.merge(b)
print(a.count, a.mean, a.variance)
