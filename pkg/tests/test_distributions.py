import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as sps

from design_testability.exceptions import DomainError
from design_testability.stats import betainc, t_cdf_two_tailed, t_critical


@pytest.mark.parametrize(
    "t, df, printed",
    [(3.866, 3, 0.031), (4.265, 3, 0.024), (1.687, 3, 0.190), (-3.866, 3, 0.031)],
)
def test_sig_column(t, df, printed):
    assert t_cdf_two_tailed(t, df) == pytest.approx(printed, abs=0.001)


@pytest.mark.parametrize("df", [1, 2, 3, 7, 30, 500])
def test_zero_t(df):
    assert t_cdf_two_tailed(0.0, df) == 1.0


@pytest.mark.parametrize(
    "df, alpha, printed", [(6, 0.05, 2.447), (4, 0.05, 2.776), (7, 0.05, 2.365)]
)
def test_critical_values(df, alpha, printed):
    assert t_critical(df, alpha) == pytest.approx(printed, abs=0.001)


@settings(max_examples=300, deadline=None)
@given(st.floats(-60, 60), st.integers(1, 400))
def test_cdf_matches_scipy(t, df):
    assert t_cdf_two_tailed(t, df) == pytest.approx(2 * sps.t.sf(abs(t), df), abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 50), st.floats(0.01, 50), st.floats(0, 1))
def test_betainc_matches_mpmath(a, b, x):
    # scipy loses accuracy for subnormal x; mpmath at 30 digits is the reference
    with mpmath.workdps(30):
        ref = float(mpmath.betainc(a, b, 0, x, regularized=True))
    assert betainc(a, b, x) == pytest.approx(ref, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.floats(0, 30), st.floats(0, 30), st.integers(1, 100))
def test_monotone_in_abs_t(t1, t2, df):
    lo, hi = sorted((t1, t2))
    assert t_cdf_two_tailed(hi, df) <= t_cdf_two_tailed(lo, df) + 1e-15


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 200), st.sampled_from([0.2, 0.1, 0.05, 0.02, 0.01, 0.001]))
def test_critical_inverts_cdf(df, alpha):
    c = t_critical(df, alpha)
    assert t_cdf_two_tailed(c, df) == pytest.approx(alpha, abs=1e-4)
    assert c == pytest.approx(sps.t.ppf(1 - alpha / 2, df), rel=1e-8)


def test_one_tailed_critical():
    assert t_critical(21, 0.01, tails=1) == pytest.approx(sps.t.ppf(0.99, 21), rel=1e-9)


def test_domain_errors():
    with pytest.raises(DomainError):
        t_critical(0, 0.05)
    with pytest.raises(DomainError):
        t_critical(5, 1.5)
    with pytest.raises(DomainError):
        t_cdf_two_tailed(1.0, 0)


def test_infinite_t():
    assert t_cdf_two_tailed(math.inf, 3) == 0.0
