import itertools
import math
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as sps

from design_testability.exceptions import (
    DegenerateCorrelationWarning,
    EmptyInput,
    LengthMismatch,
    OutOfTableRange,
    TooFewPoints,
    ZeroVariance,
)
from design_testability.stats import (
    correlation_t_test,
    descriptive_stats,
    pearson,
    rank_values,
    spearman,
    spearman_critical,
)
from design_testability.stats.correlation import SPEARMAN_TABLE_MAX_N, SPEARMAN_TABLE_MIN_N

from .oracles import pearson_fraction


def test_descriptive():
    assert descriptive_stats([1, 2, 3]) == (1, 3, 2)
    assert descriptive_stats([4.5]) == (4.5, 4.5, 4.5)
    with pytest.raises(EmptyInput):
        descriptive_stats([])


def test_descriptive_system_w():
    d = descriptive_stats([199.919, 280.913, 343.761, 360.092, 343.249, 171.274])
    assert d.mean == pytest.approx(283.2014, abs=0.0001)
    assert round(d.min, 2) == 171.27
    assert round(d.max, 2) == 360.09


def test_pearson_linear():
    x = [1.0, 2.5, 4.0, 7.0]
    assert pearson(x, [2 * v + 1 for v in x]) == pytest.approx(1.0, abs=1e-12)
    assert pearson(x, [-v for v in x]) == pytest.approx(-1.0, abs=1e-12)


def test_pearson_hand_value():
    # centred x = (-1.5, -.5, .5, 1.5), centred y = (-.5, -1.5, 1.5, .5): Sxy = 3, Sxx = Syy = 5
    sxy, sxx, syy = pearson_fraction([1, 2, 3, 4], [2, 1, 4, 3])
    assert (sxy, sxx, syy) == (3, 5, 5)
    assert pearson([1, 2, 3, 4], [2, 1, 4, 3]) == pytest.approx(0.6, abs=1e-15)


def test_pearson_errors():
    with pytest.raises(LengthMismatch):
        pearson([1, 2], [1, 2, 3])
    with pytest.raises(ZeroVariance):
        pearson([1, 1, 1], [1, 2, 3])


finite = st.floats(-1e3, 1e3, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.tuples(finite, finite), min_size=3, max_size=30),
    st.floats(0.1, 100) | st.floats(-100, -0.1),
    finite,
)
def test_pearson_affine(pairs, a, b):
    x, y = zip(*pairs)
    try:
        r = pearson(x, y)
    except ZeroVariance:
        return
    sx = [a * v + b for v in x]
    if len(set(sx)) < 2 or max(sx) - min(sx) < 1e-6 * max(1.0, max(map(abs, sx))):
        return
    assert pearson(sx, y) == pytest.approx(math.copysign(1, a) * r, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(finite, finite), min_size=3, max_size=30))
def test_pearson_matches_scipy(pairs):
    x, y = zip(*pairs)
    try:
        r = pearson(x, y)
    except ZeroVariance:
        return
    assert r == pytest.approx(sps.pearsonr(x, y)[0], abs=1e-9)


def test_rank_values():
    assert rank_values([10, 20, 30]) == [1, 2, 3]
    assert rank_values([5, 5, 9]) == [1.5, 1.5, 3]
    assert rank_values([-23.533, 4.498, -9.151]) == [1, 3, 2]
    assert rank_values([2.242, 1.0, 2.242], ties="ordinal") == [2, 1, 3]
    with pytest.raises(EmptyInput):
        rank_values([])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=40))
def test_rank_sum_and_scipy(values):
    r = rank_values(values)
    assert sum(r) == len(values) * (len(values) + 1) / 2
    assert r == list(sps.rankdata(values, method="average"))
    assert rank_values(values, ties="ordinal") == list(sps.rankdata(values, method="ordinal"))


def test_spearman_basics():
    assert spearman([1, 2, 3, 4], [1, 2, 3, 4]).r_s == 1.0
    res = spearman([1, 2, 3], [3, 2, 1])
    assert res.r_s == -1.0
    assert res.sum_d_squared == 8


def test_spearman_table4_rows():
    base = list(range(1, 24))
    swapped = base.copy()
    swapped[6], swapped[9] = 10, 7  # one project displaced by 3 ranks: d^2 = 9 on each side
    r = spearman(base, swapped)
    assert r.method == "d-squared"
    assert r.sum_d_squared == 18
    from design_testability.stats import spearman_from_d2

    assert spearman_from_d2(9, 23) == pytest.approx(float(1 - Fraction(6 * 9, 23 * (23**2 - 1))), abs=1e-15)
    assert round(spearman_from_d2(9, 23), 4) == 0.9956
    assert round(spearman_from_d2(1, 23), 4) == 0.9995


def test_spearman_with_ties_uses_pearson_of_ranks():
    x = [1, 2, 2, 3, 5]
    y = [2, 1, 4, 3, 3]
    res = spearman(x, y)
    assert res.method == "pearson-of-ranks"
    assert res.r_s == pytest.approx(sps.spearmanr(x, y)[0], abs=1e-12)


def test_spearman_length_mismatch():
    with pytest.raises(LengthMismatch):
        spearman([1, 2], [1, 2, 3])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_spearman_pearson_bridge_small(n):
    perms = list(itertools.permutations(range(1, n + 1)))
    for a in perms:
        for b in perms:
            assert spearman(a, b).r_s == pytest.approx(pearson(a, b), abs=1e-9)


def test_spearman_critical_published_value():
    assert spearman_critical(23, 0.01) == 0.4815


def test_spearman_critical_against_t_oracle():
    # Independent route: scipy's t quantile through r = t / sqrt(n - 2 + t^2).
    t = sps.t.ppf(0.95, 8)
    assert spearman_critical(10, 0.05) == round(t / math.sqrt(8 + t * t), 4)


@pytest.mark.parametrize("alpha", [0.05, 0.01])
def test_spearman_critical_monotone(alpha):
    values = [spearman_critical(n, alpha) for n in range(SPEARMAN_TABLE_MIN_N, SPEARMAN_TABLE_MAX_N + 1)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(spearman_critical(n, 0.01) > spearman_critical(n, 0.05) for n in range(5, 60))


def test_spearman_critical_range():
    with pytest.raises(OutOfTableRange):
        spearman_critical(3, 0.05)
    with pytest.raises(OutOfTableRange):
        spearman_critical(23, 0.1)


@pytest.mark.parametrize(
    "r, n, t, crit, reject",
    [
        (0.999, 6, 44.69, 2.447, True),
        (0.877, 6, 3.65, 2.447, True),
        (0.772, 4, 1.72, 2.776, False),
        (0.955, 7, 7.20, 2.365, True),
    ],
)
def test_correlation_t_test_published_cells(r, n, t, crit, reject):
    res = correlation_t_test(r, n, 0.05, "n")
    assert res.t_statistic == pytest.approx(t, abs=0.01)
    assert res.critical_value == pytest.approx(crit, abs=0.001)
    assert res.reject_null is reject
    assert res.df == n


def test_correlation_t_test_default_convention():
    res = correlation_t_test(0.772, 4)
    assert res.df == 2
    assert res.critical_value == pytest.approx(sps.t.ppf(0.975, 2), rel=1e-9)


@pytest.mark.parametrize("n", [3, 10, 50])
def test_zero_r_never_rejects(n):
    for conv in ("n", "n_minus_2"):
        res = correlation_t_test(0.0, n, 0.05, conv)
        assert res.t_statistic == 0 and not res.reject_null


@settings(max_examples=100, deadline=None)
@given(st.floats(-0.999, 0.999), st.integers(3, 200))
def test_sign_symmetry(r, n):
    a = correlation_t_test(r, n)
    b = correlation_t_test(-r, n)
    assert a.t_statistic == -b.t_statistic
    assert a.reject_null == b.reject_null


def test_degenerate_r():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = correlation_t_test(1.0, 5)
    assert res.t_statistic == math.inf and res.reject_null
    assert any(issubclass(w.category, DegenerateCorrelationWarning) for w in caught)


def test_too_few_points():
    with pytest.raises(TooFewPoints):
        correlation_t_test(0.5, 2)


def test_pearson_extreme_scales():
    tiny = 6.322474557763711e-162
    assert pearson([0, 0, 1.75], [0, tiny, 0]) == pytest.approx(-0.5, abs=1e-12)
    assert pearson([1e200, 2e200, 4e200], [1, 2, 3]) == pytest.approx(pearson([1, 2, 4], [1, 2, 3]), abs=1e-12)
    with pytest.raises(ZeroVariance):
        pearson([0.0, 1.0, 2.0], [682.7647857056147] * 3)
