import math

import pytest
from scipy import integrate

from robust_ttest import DomainError
from robust_ttest.normal_dist import std_normal_cdf
from robust_ttest.student_t import regularized_incomplete_beta, t_cdf, t_quantile, t_sf


def t_density(t, df):
    c = math.exp(math.lgamma((df + 1) / 2) - math.lgamma(df / 2)) / math.sqrt(df * math.pi)
    return c * (1 + t * t / df) ** (-(df + 1) / 2)


def quad_cdf(t, df):
    val, _ = integrate.quad(t_density, -math.inf, t, args=(df,), epsabs=1e-14, epsrel=1e-13)
    return val


def quad_beta(a, b, x):
    f = lambda u: u ** (a - 1) * (1 - u) ** (b - 1)
    num, _ = integrate.quad(f, 0, x, epsabs=1e-15, limit=200)
    den = math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))
    return num / den


@pytest.mark.parametrize("a,b,x", [(2, 3, 0.4), (0.5, 4.5, 0.1), (4.5, 0.5, 0.9),
                                   (10, 10, 0.55), (1, 1, 0.3)])
def test_incomplete_beta_against_quadrature(a, b, x):
    assert abs(regularized_incomplete_beta(a, b, x) - quad_beta(a, b, x)) < 1e-10


def test_incomplete_beta_edges():
    assert regularized_incomplete_beta(2, 3, 0.0) == 0.0
    assert regularized_incomplete_beta(2, 3, 1.0) == 1.0
    with pytest.raises(DomainError):
        regularized_incomplete_beta(0, 3, 0.5)
    with pytest.raises(DomainError):
        regularized_incomplete_beta(1, 3, 1.5)


@pytest.mark.parametrize("df", [1, 2, 5, 9, 30, 200])
@pytest.mark.parametrize("t", [-7.0, -2.0, -0.3, 0.0, 0.8, 2.26, 12.0])
def test_cdf_against_quadrature(t, df):
    assert abs(t_cdf(t, df) - quad_cdf(t, df)) < 1e-10


def test_cauchy_closed_form():
    for t in (-3.0, -0.5, 0.7, 4.0):
        assert abs(t_cdf(t, 1) - (0.5 + math.atan(t) / math.pi)) < 1e-13


def test_t9_critical_value():
    # 0.975 quantile of t_9, root-found on the quadrature CDF
    lo, hi = 2.0, 2.5
    for _ in range(60):
        mid = (lo + hi) / 2
        lo, hi = (mid, hi) if quad_cdf(mid, 9) < 0.975 else (lo, mid)
    assert abs(lo - 2.2621571628) < 1e-8
    assert abs(2 * t_sf(2.2621571628, 9) - 0.05) < 1e-4
    assert abs(t_quantile(0.975, 9) - 2.2621571628) < 1e-8


def test_large_df_approaches_normal():
    assert abs(2 * t_sf(1.7, 500) - 2 * (1 - std_normal_cdf(1.7))) < 1e-3


def test_quantile_symmetry_and_inverse():
    for df in (3, 17):
        for p in (0.01, 0.2, 0.5, 0.9):
            q = t_quantile(p, df)
            assert abs(t_cdf(q, df) - p) < 1e-12
            assert t_quantile(1 - p, df) == pytest.approx(-q, abs=1e-12)


def test_infinite_argument():
    assert t_cdf(math.inf, 4) == 1.0
    assert t_cdf(-math.inf, 4) == 0.0
