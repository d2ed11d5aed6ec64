"""Floating-point hypergeometric functions and the densities built on them.

The density of the difference of two independent arcsine (Be(1/2, 1/2))
variables is ``(1/pi) 2F1(1/2, 1/2; 1; 1 - x^2)`` on (-1, 1).  Its 2F1 sits
in the logarithmic case ``c = a + b``, so near x = 0 the plain power series
converges too slowly to be useful and the connection formula around z = 1
is used instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import digamma

from .exact import as_rational, central_binomial, pochhammer
from .quadrature import QuadratureError, QuadratureResult, adaptive_quad

__all__ = [
    "SeriesParams",
    "SeriesNonConvergence",
    "QuadratureResult",
    "QuadratureError",
    "gauss_2f1",
    "gauss_2f1_near_one",
    "euler_2f1",
    "appell_f1",
    "beta_diff_density",
    "beta_diff_density_appell",
    "moment_by_quadrature",
    "t_density_moment",
    "LOG_CROSSOVER",
]

# Below this value of u = 1 - z the log-branch connection series is used.
LOG_CROSSOVER = 0.25

_CONSECUTIVE = 3


@dataclass(frozen=True)
class SeriesParams:
    """Parameters for :func:`gauss_2f1` (b2 is None) or :func:`appell_f1`."""

    a: float
    b: float
    c: float
    z: float
    b2: float | None = None
    z2: float | None = None
    tol: float = 1e-15
    max_terms: int = 1_000_000

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


class SeriesNonConvergence(ArithmeticError):
    """A series hit ``max_terms``; ``partial`` holds the last partial sum."""

    def __init__(self, message: str, partial: float):
        super().__init__(message)
        self.partial = partial


def _is_nonpositive_integer(c: float) -> bool:
    return c <= 0 and float(c).is_integer()


def gauss_2f1(a, b=None, c=None, z=None, *, tol: float = 1e-15, max_terms: int = 1_000_000) -> float:
    """Power series of 2F1(a, b; c; z) for |z| < 1.

    Accepts either four scalars or a single :class:`SeriesParams`.  Stops
    once ``|term| < tol * |sum|`` for three consecutive terms.
    """
    if isinstance(a, SeriesParams):
        sp = a
        a, b, c, z, tol, max_terms = sp.a, sp.b, sp.c, sp.z, sp.tol, sp.max_terms
    if _is_nonpositive_integer(c):
        raise ValueError(f"c = {c} is a pole of 2F1")
    if not abs(z) < 1:
        raise ValueError(f"series mode needs |z| < 1, got z = {z}")
    term = 1.0
    total = 1.0
    small = 0
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        if abs(term) < tol * abs(total):
            small += 1
            if small >= _CONSECUTIVE:
                return total
        else:
            small = 0
        if term == 0.0:
            # a or b is a nonpositive integer: the series terminated
            return total
    raise SeriesNonConvergence(f"2F1 series did not converge in {max_terms} terms", total)


def gauss_2f1_near_one(a: float, b: float, u: float, *, tol: float = 1e-16, max_terms: int = 10_000) -> float:
    """2F1(a, b; a + b; 1 - u) for small u > 0 via the logarithmic connection series.

        Gamma(a+b)/(Gamma(a)Gamma(b)) * sum_n (a)_n (b)_n / (n!)^2
            * [2 psi(n+1) - psi(a+n) - psi(b+n) - ln u] * u^n

    The n = 0 term with a = b = 1/2 is the familiar ``-ln(u/16)/pi``.
    """
    if not 0 < u < 1:
        raise ValueError(f"u must lie in (0, 1), got {u}")
    log_u = math.log(u)
    psi1, psia, psib = digamma(1.0), float(digamma(a)), float(digamma(b))
    coef = 1.0
    total = coef * (2 * psi1 - psia - psib - log_u)
    small = 0
    for n in range(max_terms):
        psi1 += 1.0 / (n + 1)
        psia += 1.0 / (a + n)
        psib += 1.0 / (b + n)
        coef *= (a + n) * (b + n) / ((n + 1) ** 2) * u
        term = coef * (2 * psi1 - psia - psib - log_u)
        total += term
        if abs(term) < tol * abs(total):
            small += 1
            if small >= _CONSECUTIVE:
                break
        else:
            small = 0
    else:
        raise SeriesNonConvergence("log-branch series did not converge", total)
    return math.exp(math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)) * total


def _log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def euler_2f1(a, b=None, c=None, z=None, *, tol: float = 1e-13) -> float:
    """2F1 through its Euler integral, for c > b > 0 and z < 1.

        B(b, c-b) 2F1(a, b; c; z) = int_0^1 y^(b-1) (1-y)^(c-b-1) (1-zy)^(-a) dy

    The interval is split at 1/2; the left half uses y = s^(1/b) and the
    right half 1 - y = s^(1/(c-b)), which turns both endpoint power
    singularities into bounded integrands.
    """
    if isinstance(a, SeriesParams):
        sp = a
        a, b, c, z = sp.a, sp.b, sp.c, sp.z
    if not c > b > 0:
        raise ValueError(f"Euler integral needs c > b > 0, got b={b}, c={c}")
    if not z < 1:
        raise ValueError(f"Euler integral needs z < 1, got {z}")
    d = c - b
    log_norm = _log_beta(b, d)

    # left half: y = s^(1/b), s in (0, 2^(-b)]; dy y^(b-1) = ds / b
    def left(s):
        y = s ** (1.0 / b)
        return (1.0 - y) ** (d - 1) * (1.0 - z * y) ** (-a) / b

    # right half: 1 - y = s^(1/d), s in (0, 2^(-d)]; dy (1-y)^(d-1) = ds / d
    def right(s):
        w = s ** (1.0 / d)
        y = 1.0 - w
        return y ** (b - 1) * (1.0 - z * y) ** (-a) / d

    scale = math.exp(-log_norm)
    lo = adaptive_quad(left, 0.0, 0.5**b, tol=tol / (2 * scale))
    hi = adaptive_quad(right, 0.0, 0.5**d, tol=tol / (2 * scale))
    return (lo.value + hi.value) * scale


def appell_f1(a, b1=None, b2=None, c=None, x1=None, x2=None, *, tol: float = 1e-15,
              max_terms: int = 1_000_000) -> float:
    """Appell F1(a; b1, b2; c; x1, x2) by anti-diagonals of its double series.

    Diagonal s collects the terms with m + k = s:

        (a)_s/(c)_s * sum_m [(b1)_m x1^m / m!] [(b2)_(s-m) x2^(s-m) / (s-m)!]

    and the sum stops once three consecutive diagonals fall below
    ``tol * |sum|``.  If b1 or b2 is a nonpositive integer its factor has
    finite support and the diagonal sums shrink accordingly.
    """
    if isinstance(a, SeriesParams):
        sp = a
        if sp.b2 is None or sp.z2 is None:
            raise ValueError("appell_f1 needs b2 and z2 in SeriesParams")
        a, b1, b2, c, x1, x2, tol, max_terms = sp.a, sp.b, sp.b2, sp.c, sp.z, sp.z2, sp.tol, sp.max_terms
    if _is_nonpositive_integer(c):
        raise ValueError(f"c = {c} is a pole of F1")
    if not (abs(x1) < 1 and abs(x2) < 1):
        raise ValueError(f"F1 series needs |x1|, |x2| < 1, got ({x1}, {x2})")

    u = [1.0]  # (b1)_m x1^m / m!
    v = [1.0]  # (b2)_k x2^k / k!
    u_done = v_done = False  # factor has terminated (all further entries 0)
    ratio = 1.0  # (a)_s / (c)_s
    total = 1.0
    small = 0
    for s in range(1, max_terms):
        if not u_done:
            nxt = u[-1] * (b1 + s - 1) * x1 / s
            if nxt == 0.0:
                u_done = True
            else:
                u.append(nxt)
        if not v_done:
            nxt = v[-1] * (b2 + s - 1) * x2 / s
            if nxt == 0.0:
                v_done = True
            else:
                v.append(nxt)
        ratio *= (a + s - 1) / (c + s - 1)
        m_lo = max(0, s - (len(v) - 1))
        m_hi = min(s, len(u) - 1)
        if m_lo > m_hi:
            return total  # both factors exhausted: polynomial
        if m_hi - m_lo < 16:
            diag = sum(u[m] * v[s - m] for m in range(m_lo, m_hi + 1))
        else:
            uu = np.asarray(u[m_lo:m_hi + 1])
            vv = np.asarray(v[s - m_hi:s - m_lo + 1])[::-1]
            diag = float(uu @ vv)
        term = ratio * diag
        total += term
        if abs(term) < tol * abs(total):
            small += 1
            if small >= _CONSECUTIVE:
                return total
        else:
            small = 0
    raise SeriesNonConvergence(f"F1 series did not converge in {max_terms} diagonals", total)


def _arcsine_diff_2f1(u: float) -> float:
    """2F1(1/2, 1/2; 1; 1 - u) for u in (0, 1]."""
    if u < LOG_CROSSOVER:
        return gauss_2f1_near_one(0.5, 0.5, u)
    return gauss_2f1(0.5, 0.5, 1.0, 1.0 - u)


def beta_diff_density(x: float) -> float:
    """Density of Y1 - Y2 for independent Y1, Y2 ~ Be(1/2, 1/2); -1 < x < 1, x != 0."""
    if not -1 < x < 1:
        raise ValueError(f"density is supported on (-1, 1), got {x}")
    if x == 0:
        raise ValueError("density has a logarithmic singularity at x = 0")
    return _arcsine_diff_2f1(x * x) / math.pi


def beta_diff_density_appell(x: float, **kw) -> float:
    """The same density from its piecewise Appell F1 form.

    For 0 <= x < 1 it is F1(1/2; 0, 1/2; 1; 1-x, 1-x^2)/pi and for
    -1 <= x < 0 it is F1(1/2; 1/2, 0; 1; 1-x^2, 1+x)/pi.
    """
    if not -1 < x < 1 or x == 0:
        raise ValueError(f"x must lie in (-1, 0) or (0, 1), got {x}")
    if x > 0:
        return appell_f1(0.5, 0.0, 0.5, 1.0, 1.0 - x, 1.0 - x * x, **kw) / math.pi
    return appell_f1(0.5, 0.5, 0.0, 1.0, 1.0 - x * x, 1.0 + x, **kw) / math.pi


def _near_zero_moment(n: int, x0: float, tol: float = 1e-17) -> float:
    """Closed-form int_0^x0 x^(2n) f(x) dx for the arcsine-difference density f.

    Integrates the connection series of pi^2 f(x) = pi 2F1(1/2,1/2;1;1-x^2)
    term by term.

    Each log-branch term contributes  c_j (x^2)^j [d_j - 2 ln x]  with
    d_j = 2 psi(j+1) - 2 psi(j+1/2), and
    int_0^x0 x^q (d - 2 ln x) dx = x0^(q+1)/(q+1) * (d - 2 ln x0 + 2/(q+1)).
    """
    log_x0 = math.log(x0)
    psi1, psih = float(digamma(1.0)), float(digamma(0.5))
    coef = 1.0
    total = 0.0
    small = 0
    for j in range(10_000):
        if j:
            psi1 += 1.0 / j
            psih += 1.0 / (j - 0.5)
            coef *= (j - 0.5) ** 2 / (j * j)
        q = 2 * n + 2 * j
        d = 2 * psi1 - 2 * psih
        term = coef * x0 ** (q + 1) / (q + 1) * (d - 2 * log_x0 + 2.0 / (q + 1))
        total += term
        if abs(term) < tol * abs(total):
            small += 1
            if small >= _CONSECUTIVE:
                break
        else:
            small = 0
    return total / math.pi**2


def moment_by_quadrature(n: int, tol: float = 1e-10) -> QuadratureResult:
    """E[X^(2n)] for X = Y1 - Y2 from the density, by quadrature.

    Evaluates (2/pi) int_0^1 x^(2n) 2F1(1/2,1/2;1;1-x^2) dx.  The panel
    [0, sqrt(LOG_CROSSOVER)] holding the logarithmic singularity is
    integrated in closed form from the connection series; the rest goes
    through adaptive Gauss-Kronrod.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    x0 = math.sqrt(LOG_CROSSOVER)
    head = 2.0 * _near_zero_moment(n, x0)

    def integrand(xs):
        return np.array([2.0 * x ** (2 * n) * beta_diff_density(x) for x in xs])

    tail = adaptive_quad(integrand, x0, 1.0, tol=tol)
    # head is a convergent series summed to ~1e-16 relative
    err = tail.abs_error_estimate + 1e-15 * abs(head)
    if err > tol:
        raise QuadratureError(f"error estimate {err:.3e} above tol {tol:.3e}",
                              QuadratureResult(head + tail.value, err, tail.evaluations))
    return QuadratureResult(head + tail.value, err, tail.evaluations)


def t_density_moment(n: int, p, tol: float = 1e-12) -> QuadratureResult:
    """E[T^(2n)] for the density (1 - t^2)^(p-1) / B(1/2, p) on (-1, 1).

    By symmetry this is 2 int_0^1.  For p < 1 the endpoint t = 1 carries a
    power singularity; the substitution 1 - t = s^(1/p) removes it.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = float(p)
    if not p > 0:
        raise ValueError("p must be positive")
    norm = 2.0 / math.exp(_log_beta(0.5, p))
    inner_tol = tol / norm
    if p >= 1:
        def f(t):
            return t ** (2 * n) * (1.0 - t * t) ** (p - 1)
        res = adaptive_quad(f, 0.0, 1.0, tol=inner_tol)
    else:
        q = 1.0 / p

        # t = 1 - s^q, dt = q s^(q-1) ds, (1-t)^(p-1) = s^(q(p-1)) = s^(1-q)
        def f(s):
            w = s ** q
            t = 1.0 - w
            return q * t ** (2 * n) * (2.0 - w) ** (p - 1)
        res = adaptive_quad(f, 0.0, 1.0, tol=inner_tol)
    return QuadratureResult(norm * res.value, norm * res.abs_error_estimate, res.evaluations)


def exact_beta_diff_moment(n: int) -> Fraction:
    """C(2n, n)^2 / 16^n."""
    return Fraction(central_binomial(n) ** 2, 16**n)


def exact_t_moment(n: int, p) -> Fraction:
    """B(n + 1/2, p) / B(1/2, p) = (1/2)_n / (p + 1/2)_n for rational p."""
    p = as_rational(p)
    half = Fraction(1, 2)
    return pochhammer(half, n) / pochhammer(p + half, n)
