"""Independent oracles shared by the test modules.

Nothing here calls into robust_ttest, so the checks stay independent of the
code under test.
"""
import math

import mpmath
import pytest

mpmath.mp.dps = 40


def mp_normal_cdf(x):
    return mpmath.ncdf(mpmath.mpf(x))


def bisect_normal_quantile(p, tol=1e-14):
    """Bisection on the high-precision normal CDF."""
    lo, hi = -40.0, 40.0
    target = mpmath.mpf(p)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mp_normal_cdf(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sort_median(values):
    ys = sorted(values)
    n = len(ys)
    m = n // 2
    return ys[m] if n % 2 else (ys[m - 1] + ys[m]) / 2


def sort_mad(values):
    m = sort_median(values)
    return sort_median([abs(v - m) for v in values])


@pytest.fixture(scope="session")
def q75():
    return bisect_normal_quantile(0.75)


@pytest.fixture(scope="session")
def scale1(q75):
    return math.sqrt(2 / math.pi) * q75


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
