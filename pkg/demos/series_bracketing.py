"""A positive series for pi * C(2n,n)^2 / 16^n, summed exactly.

The k-th term is (1/2)_k^2 / (k! (n+1/2)_(k+1)).  Without the k! the terms
grow and the sum diverges, which the first loop shows.
"""
import math
from fractions import Fraction

from probident.exact import pochhammer
from probident.identities import series_partial_sum, series_term

half = Fraction(1, 2)
n = 1
for k in (10, 100, 1000):
    without = pochhammer(half, k) ** 2 / pochhammer(n + half, k + 1)
    # log10 of the term printed without 1/k!
    print(k, float(series_term(n, k)), math.log10(without.numerator) - math.log10(without.denominator))

for n in range(4):
    for K in (10, 100, 1000):
        t = series_partial_sum(n, K)
        below, above = t.bracket()
        print(f"n={n} K={K:5d} ratio={t.ratio():.10f} tail_bound={float(t.tail_bound):.2e} bracket={below and above}")
