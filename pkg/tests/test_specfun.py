import math
from fractions import Fraction as F

import mpmath
import numpy as np
import pytest
from scipy import integrate, special

from probident import specfun as sf
from probident.quadrature import QuadratureError, adaptive_quad, gauss_kronrod_panel


# -- quadrature ---------------------------------------------------------------

def test_kronrod_rule_exact_for_degree_22():
    for d in (0, 5, 13, 22):
        val, _ = gauss_kronrod_panel(lambda x: x**d, 0.0, 1.0)
        assert val == pytest.approx(1.0 / (d + 1), rel=1e-14)


def test_gauss_rule_error_vanishes_to_degree_13():
    _, err = gauss_kronrod_panel(lambda x: x**13, -1.0, 2.0)
    assert err < 1e-12
    _, err = gauss_kronrod_panel(lambda x: x**16, 0.0, 1.0)
    assert err > 1e-10


@pytest.mark.parametrize("f,a,b", [
    (np.exp, 0.0, 3.0),
    (lambda x: 1.0 / (1.0 + 25 * x * x), -1.0, 1.0),
    (lambda x: np.sqrt(x), 0.0, 1.0),
    (lambda x: -np.log(x), 0.0, 1.0),
])
def test_adaptive_quad_against_scipy(f, a, b):
    expected, _ = integrate.quad(f, a, b, epsabs=1e-13, limit=200)
    res = adaptive_quad(f, a, b, tol=1e-11)
    assert res.value == pytest.approx(expected, abs=1e-10)
    assert res.abs_error_estimate <= 1e-11


def test_adaptive_quad_budget():
    with pytest.raises(QuadratureError) as info:
        adaptive_quad(lambda x: np.sin(1.0 / x), 1e-6, 1.0, tol=1e-14, max_evaluations=300)
    assert info.value.result.evaluations <= 300


# -- 2F1 ----------------------------------------------------------------------

def test_gauss_2f1_examples():
    assert sf.gauss_2f1(0.5, 0.5, 1.0, 0.0) == 1.0
    assert sf.gauss_2f1(1, 1, 1, 0.5) == pytest.approx(2.0, rel=1e-15)
    assert sf.gauss_2f1(sf.SeriesParams(1, 1, 1, 0.5)) == pytest.approx(2.0, rel=1e-15)


def test_gauss_2f1_matches_euler_at_three_quarters():
    assert sf.gauss_2f1(0.5, 0.5, 1, 0.75) == pytest.approx(sf.euler_2f1(0.5, 0.5, 1, 0.75), rel=1e-10)


@pytest.mark.parametrize("a,b,c,z", [
    (0.5, 0.5, 1.0, 0.3), (1.5, -2.0, 3.0, 0.8), (0.2, 1.7, 2.5, -0.95), (2.0, 3.0, 4.5, 0.99),
])
def test_gauss_2f1_against_mpmath(a, b, c, z):
    expected = float(mpmath.hyp2f1(a, b, c, z))
    assert sf.gauss_2f1(a, b, c, z) == pytest.approx(expected, rel=1e-12)


def test_gauss_2f1_errors():
    with pytest.raises(ValueError):
        sf.gauss_2f1(1, 1, -2, 0.5)
    with pytest.raises(ValueError):
        sf.gauss_2f1(1, 1, 1, 1.0)
    with pytest.raises(sf.SeriesNonConvergence) as info:
        sf.gauss_2f1(0.5, 0.5, 1.0, 0.999, max_terms=10)
    assert info.value.partial > 1


@pytest.mark.parametrize("u", [1e-12, 1e-6, 1e-3, 0.05, 0.2, 0.5])
def test_near_one_branch_against_mpmath(u):
    with mpmath.workdps(40):
        expected = float(mpmath.hyp2f1(0.5, 0.5, 1, 1 - mpmath.mpf(u)))
    assert sf.gauss_2f1_near_one(0.5, 0.5, u) == pytest.approx(expected, rel=1e-13)


def test_near_one_branch_leading_term():
    u = 1e-10
    leading = -math.log(u / 16) / math.pi
    assert sf.gauss_2f1_near_one(0.5, 0.5, u) == pytest.approx(leading, rel=1e-9)


def test_near_one_branch_general_parameters():
    a, b, u = 0.3, 1.2, 0.01
    expected = float(mpmath.hyp2f1(a, b, a + b, 1 - u))
    assert sf.gauss_2f1_near_one(a, b, u) == pytest.approx(expected, rel=1e-12)


def test_euler_examples():
    assert sf.euler_2f1(0, 0.5, 1, 0.7) == pytest.approx(1.0, rel=1e-12)
    assert sf.euler_2f1(0.5, 0.5, 1, 0.0) == pytest.approx(1.0, rel=1e-12)
    assert sf.euler_2f1(0.5, 0.5, 1, -0.9) == pytest.approx(sf.gauss_2f1(0.5, 0.5, 1, -0.9), rel=1e-10)


def test_euler_general_parameters_against_scipy():
    for a, b, c, z in [(1.3, 0.4, 2.1, 0.6), (0.5, 2.5, 3.0, -3.0), (2.0, 0.7, 0.9, 0.3)]:
        assert sf.euler_2f1(a, b, c, z) == pytest.approx(special.hyp2f1(a, b, c, z), rel=1e-10)


def test_euler_domain():
    with pytest.raises(ValueError):
        sf.euler_2f1(0.5, 1.0, 1.0, 0.2)
    with pytest.raises(ValueError):
        sf.euler_2f1(0.5, 0.5, 1.0, 1.0)


def test_series_and_euler_agree_on_random_points():
    rng = np.random.default_rng(11)
    for z in rng.uniform(-0.9, 0.9, 25):
        s = sf.gauss_2f1(0.5, 0.5, 1.0, z)
        e = sf.euler_2f1(0.5, 0.5, 1.0, z)
        assert abs(s - e) <= 1e-9 * abs(s)


# -- Appell F1 --------------------------------------------------------------------

def test_appell_examples():
    assert sf.appell_f1(0.7, 0.0, 0.5, 1.3, 0.4, 0.6) == pytest.approx(sf.gauss_2f1(0.7, 0.5, 1.3, 0.6), rel=1e-12)
    assert sf.appell_f1(0.7, 1.1, 0.5, 1.3, 0.0, 0.0) == 1.0
    x = 0.5
    f1 = sf.appell_f1(0.5, 0.0, 0.5, 1.0, 1 - x, 1 - x * x)
    assert f1 == pytest.approx(sf.gauss_2f1(0.5, 0.5, 1.0, 0.75), rel=1e-12)


def test_appell_equal_arguments_collapse():
    # F1(a; b1, b2; c; x, x) = 2F1(a, b1 + b2; c; x)
    for x in (-0.5, 0.2, 0.7):
        assert sf.appell_f1(0.6, 0.3, 0.9, 1.7, x, x) == pytest.approx(sf.gauss_2f1(0.6, 1.2, 1.7, x), rel=1e-12)


@pytest.mark.parametrize("args", [
    (0.5, 0.5, 0.5, 1.0, 0.3, -0.4),
    (1.2, 0.7, 2.1, 2.5, 0.6, 0.5),
    (0.3, -2.0, 1.4, 1.9, 0.8, -0.7),
])
def test_appell_against_mpmath(args):
    expected = float(mpmath.appellf1(*args))
    assert sf.appell_f1(*args) == pytest.approx(expected, rel=1e-11)


def test_appell_params_object_and_errors():
    sp = sf.SeriesParams(0.5, 0.0, 1.0, 0.2, b2=0.5, z2=0.3)
    assert sf.appell_f1(sp) == pytest.approx(sf.gauss_2f1(0.5, 0.5, 1.0, 0.3), rel=1e-13)
    with pytest.raises(ValueError):
        sf.appell_f1(0.5, 0.5, 0.5, 1.0, 1.0, 0.2)
    with pytest.raises(ValueError):
        sf.appell_f1(sf.SeriesParams(0.5, 0.0, 1.0, 0.2))
    with pytest.raises(sf.SeriesNonConvergence):
        sf.appell_f1(0.5, 0.5, 0.5, 1.0, 0.99, 0.99, max_terms=5)


# -- densities ----------------------------------------------------------------------

def convolution_density(x):
    """f(x) = int g(y) g(y - x) dy for the arcsine density g, via mpmath tanh-sinh."""
    x = mpmath.mpf(abs(x))
    g = lambda y: 1 / (mpmath.pi * mpmath.sqrt(y * (1 - y)))
    return mpmath.quad(lambda y: g(y) * g(y - x), [x, (1 + x) / 2, 1])


@pytest.mark.parametrize("x", [0.03, 0.2, 0.5, 0.77, 0.95])
def test_density_matches_convolution_integral(x):
    with mpmath.workdps(25):
        expected = float(convolution_density(x))
    assert sf.beta_diff_density(x) == pytest.approx(expected, rel=1e-10)


def test_density_examples():
    assert sf.beta_diff_density(0.5) == sf.beta_diff_density(-0.5)
    assert sf.beta_diff_density(0.9) == pytest.approx(sf.gauss_2f1(0.5, 0.5, 1, 0.19) / math.pi, rel=1e-10)


def test_density_symmetry_random():
    for x in np.random.default_rng(3).uniform(0, 1, 100):
        assert sf.beta_diff_density(x) == sf.beta_diff_density(-x)


def test_density_continuous_across_crossover():
    x0 = math.sqrt(sf.LOG_CROSSOVER)
    lo, hi = sf.beta_diff_density(x0 * (1 - 1e-12)), sf.beta_diff_density(x0 * (1 + 1e-12))
    assert lo == pytest.approx(hi, rel=1e-10)


@pytest.mark.parametrize("x", [0.0, 1.0, -1.0, 1.5])
def test_density_domain(x):
    with pytest.raises(ValueError):
        sf.beta_diff_density(x)


def test_appell_form_of_density_both_branches():
    for x in (0.1, 0.45, 0.8):
        f = sf.beta_diff_density(x)
        assert sf.beta_diff_density_appell(x) == pytest.approx(f, rel=1e-9)
        assert sf.beta_diff_density_appell(-x) == pytest.approx(f, rel=1e-9)


def test_density_normalization():
    assert sf.moment_by_quadrature(0).value == pytest.approx(1.0, abs=1e-8)


def test_density_odd_moments_vanish():
    for n in range(4):
        def odd(xs, n=n):
            return np.array([x ** (2 * n + 1) * sf.beta_diff_density(x) for x in xs])
        # x = 0 as a breakpoint keeps it off the node set
        res = adaptive_quad(odd, -1.0, 1.0, tol=1e-9, breakpoints=(0.0,))
        assert abs(res.value) <= 1e-10


def test_moment_by_quadrature_examples():
    assert sf.moment_by_quadrature(0).value == pytest.approx(1.0, abs=1e-10)
    assert sf.moment_by_quadrature(1).value == pytest.approx(0.25, abs=1e-10)
    exact3 = F(math.comb(6, 3) ** 2, 4**6)
    assert exact3 == F(400, 4096)
    assert sf.moment_by_quadrature(3).value == pytest.approx(float(exact3), abs=1e-10)


def test_moment_head_panel_against_mpmath():
    # closed-form panel [0, x0] vs tanh-sinh of the density itself; the sliver
    # below 1e-20 contributes under 1e-18 and keeps 1 - x^2 resolvable
    x0 = math.sqrt(sf.LOG_CROSSOVER)
    with mpmath.workdps(50):
        def f(x):
            return mpmath.hyp2f1(0.5, 0.5, 1, 1 - x * x) / mpmath.pi
        for n in (0, 2):
            expected = float(mpmath.quad(lambda x: x ** (2 * n) * f(x), [mpmath.mpf("1e-20"), 0.1, x0]))
            assert sf._near_zero_moment(n, x0) == pytest.approx(expected, rel=1e-13)


def test_t_density_moment_examples():
    assert sf.t_density_moment(1, 0.5).value == pytest.approx(0.5, abs=1e-10)
    for p in (0.3, 1.0, 4.0):
        assert sf.t_density_moment(0, p).value == pytest.approx(1.0, abs=1e-10)
    # p = 1 is uniform on (-1, 1)
    assert sf.t_density_moment(2, 1).value == pytest.approx(0.2, abs=1e-12)


def test_t_density_moment_against_scipy_beta():
    for p in (0.25, 0.7, 3.3):
        for n in (1, 3):
            exact = special.beta(n + 0.5, p) / special.beta(0.5, p)
            assert sf.t_density_moment(n, p).value == pytest.approx(exact, rel=1e-10)


def test_t_density_moment_domain():
    with pytest.raises(ValueError):
        sf.t_density_moment(1, 0.0)
    with pytest.raises(ValueError):
        sf.moment_by_quadrature(-1)
