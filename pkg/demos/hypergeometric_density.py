"""The density of Y1 - Y2 for independent arcsine variables.

It is 2F1(1/2, 1/2; 1; 1 - x^2)/pi, with a logarithmic spike at 0.
The same density also comes out of Appell's F1, one branch per sign of x.
"""
import numpy as np

from probident import specfun as sf

# The F1 double series needs on the order of 1/x^2 diagonals, so it is only
# practical away from the spike; the 2F1 path switches to a log expansion there.
xs = np.array([0.05, 0.1, 0.5, 0.9, 0.99])
for x in xs:
    f = sf.beta_diff_density(x)
    g = sf.beta_diff_density_appell(x)
    print(f"x={x:<6} f={f:.12f} appell={g:.12f} mirror={sf.beta_diff_density(-x):.12f}")

# Near 0 the density grows like -ln(x^2/16)/pi^2
for x in (1e-3, 1e-6, 1e-9):
    print(x, sf.beta_diff_density(x), -np.log(x * x / 16) / np.pi**2)

# The series and Euler's integral agree inside the unit disc
for z in (-0.8, 0.0, 0.5, 0.85):
    print(z, sf.gauss_2f1(0.5, 0.5, 1.0, z), sf.euler_2f1(0.5, 0.5, 1.0, z))

# Even moments by quadrature against the exact C(2n,n)^2/16^n
for n in range(7):
    q = sf.moment_by_quadrature(n)
    print(n, q.value, float(sf.exact_beta_diff_moment(n)), q.evaluations)

# Moments of T = (X1 - X2)/(X1 + X2), a symmetric beta law on (-1, 1)
for p in (1 / 3, 0.5, 1.0, 2.5):
    print(p, [round(sf.t_density_moment(n, p).value, 12) for n in range(4)])
