import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sklearn.base import clone

from design_testability.exceptions import DomainError, InputError, RankDeficient, TooFewRows
from design_testability.stats import Dataset, OLSRegression, ols_fit, parse_csv, read_csv, regression_summary_from
from design_testability.stats.regression import CONSTANT

from .oracles import solve_normal_equations


def test_noiseless_recovery(data_dir):
    d = read_csv(data_dir / "noiseless.csv")
    fit, summ = ols_fit(d, "y", ["x1", "x2"])
    assert [r.b for r in fit.coefficients] == pytest.approx([3, 2, -1], abs=1e-9)
    assert summ.r_square == pytest.approx(1.0, abs=1e-12)
    assert [r.name for r in fit.coefficients] == [CONSTANT, "x1", "x2"]


def test_three_rows_hand_solution():
    # x = 0, 1, 2; y = 1, 2, 4. Normal equations [[3, 3], [3, 5]] b = [7, 10]
    # give intercept 5/6 and slope 3/2; residuals 1/6, -1/3, 1/6 -> SSE 1/6, df 1.
    # (X'X)^-1 = [[5, -3], [-3, 3]] / 6, so SE(slope)^2 = 1/12 and SE(const)^2 = 5/36.
    # SST = 14/3, R^2 = 1 - (1/6)/(14/3) = 27/28.
    assert solve_normal_equations([[0], [1], [2]], [1, 2, 4]) == [Fraction(5, 6), Fraction(3, 2)]
    d = Dataset(("x", "y"), np.array([[0, 1], [1, 2], [2, 4]], dtype=float))
    fit, summ = ols_fit(d, "y", ["x"])
    const, slope = fit.coefficients
    assert const.b == pytest.approx(5 / 6, abs=1e-12)
    assert slope.b == pytest.approx(1.5, abs=1e-12)
    assert slope.std_error == pytest.approx(math.sqrt(1 / 12), abs=1e-12)
    assert const.std_error == pytest.approx(math.sqrt(5 / 36), abs=1e-12)
    assert summ.r_square == pytest.approx(27 / 28, abs=1e-12)
    assert summ.std_error_of_estimate == pytest.approx(math.sqrt(1 / 6), abs=1e-12)
    for row in fit.coefficients:
        assert row.t == pytest.approx(row.b / row.std_error, abs=1e-9)


def test_six_row_synthetic_against_exact_oracle():
    X = [[1, 4], [2, 1], [3, 5], [4, 2], [5, 7], [6, 3]]
    y = [5, 3, 9, 4, 14, 6]
    exact = solve_normal_equations(X, y)
    d = Dataset(("a", "b", "y"), np.column_stack([np.array(X, float), np.array(y, float)]))
    fit, summ = ols_fit(d, "y", ["a", "b"])
    assert [r.b for r in fit.coefficients] == pytest.approx([float(v) for v in exact], abs=1e-9)
    r, adj = regression_summary_from(summ.r_square, 6, 2)
    assert summ.r == pytest.approx(r, abs=1e-12)
    assert summ.adjusted_r_square == pytest.approx(adj, abs=1e-12)


def test_standardized_beta():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(40, 2)) * [1.0, 5.0]
    y = 2 + X @ [1.5, -0.3] + rng.normal(size=40)
    d = Dataset(("a", "b", "y"), np.column_stack([X, y]))
    fit, _ = ols_fit(d, "y", ["a", "b"])
    # Beta equals the slope of the regression on z-scored variables.
    Z = (X - X.mean(0)) / X.std(0, ddof=1)
    zy = (y - y.mean()) / y.std(ddof=1)
    zfit, _ = ols_fit(Dataset(("a", "b", "y"), np.column_stack([Z, zy])), "y", ["a", "b"])
    assert fit.coefficients[0].beta is None
    for raw, z in zip(fit.coefficients[1:], zfit.coefficients[1:]):
        assert raw.beta == pytest.approx(z.b, abs=1e-9)


def test_published_t_column_identity():
    for b, se, t in [(-98.666, 25.518, -3.866), (49.210, 11.538, 4.265), (-2.983, 1.768, -1.687)]:
        assert b / se == pytest.approx(t, abs=0.001)


def test_sig_matches_t_distribution():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(12, 2))
    y = X @ [0.4, 0.0] + rng.normal(size=12)
    fit, summ = ols_fit(Dataset(("a", "b", "y"), np.column_stack([X, y])), "y", ["a", "b"])
    from scipy import stats as sps

    for row in fit.coefficients:
        assert row.sig == pytest.approx(2 * sps.t.sf(abs(row.t), 12 - 2 - 1), abs=1e-9)
        assert 0 <= row.sig <= 1


@pytest.mark.parametrize(
    "r2, n, k, r, adj",
    [(1.0, 10, 3, 1.0, 1.0), (0.0, 10, 2, 0.0, -2 / 7)],
)
def test_summary_from(r2, n, k, r, adj):
    got_r, got_adj = regression_summary_from(r2, n, k)
    assert got_r == pytest.approx(r, abs=1e-15)
    assert got_adj == pytest.approx(adj, abs=1e-15)


def test_summary_from_published():
    r, adj = regression_summary_from(0.903, 6, 2)
    assert round(r, 3) == 0.950
    assert adj == pytest.approx(0.8383, abs=1e-4)
    # printed .839 comes from an unrounded R^2; within the table's 0.001 resolution
    assert adj == pytest.approx(0.839, abs=0.001)


def test_summary_domain():
    with pytest.raises(DomainError):
        regression_summary_from(1.2, 10, 2)
    with pytest.raises(DomainError):
        regression_summary_from(0.5, 3, 2)


def test_rank_deficient():
    d = Dataset(("a", "b", "y"), np.array([[1, 2, 1], [2, 4, 3], [3, 6, 2], [4, 8, 5]], float))
    with pytest.raises(RankDeficient):
        ols_fit(d, "y", ["a", "b"])


def test_too_few_rows():
    d = Dataset(("a", "y"), np.array([[1, 2], [2, 3]], float))
    with pytest.raises(TooFewRows):
        ols_fit(d, "y", ["a"])


def test_missing_column(data_dir):
    d = read_csv(data_dir / "noiseless.csv")
    with pytest.raises(InputError, match="x9"):
        ols_fit(d, "y", ["x9"])


def test_csv_errors():
    from design_testability.exceptions import MalformedDocument

    with pytest.raises(MalformedDocument):
        parse_csv("a,b\n1,\n")
    with pytest.raises(MalformedDocument):
        parse_csv("a,b\n1,2,3\n")
    with pytest.raises(InputError):
        parse_csv("a,a\n1,2\n")


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_residual_identities(seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, 5))
    n = int(rng.integers(k + 2, 51))
    X = rng.normal(size=(n, k))
    y = rng.normal(size=n) + X @ rng.normal(size=k)
    model = OLSRegression().fit(X, y)
    resid = model.residuals_
    assert abs(resid.sum()) <= 1e-8 * n
    assert np.all(np.abs(X.T @ resid) <= 1e-8 * n)
    sse = float(resid @ resid)
    sst = float(((y - y.mean()) ** 2).sum())
    assert model.summary_.r_square == pytest.approx(1 - sse / sst, abs=1e-9)
    assert model.summary_.r == pytest.approx(math.sqrt(model.summary_.r_square), abs=1e-9)


def test_estimator_api():
    X = np.array([[0, 1], [1, 0], [2, 3], [3, 1], [4, 2]], float)
    y = 3 + 2 * X[:, 0] - X[:, 1]
    est = OLSRegression().fit(X, y)
    np.testing.assert_allclose(est.predict(X), y, atol=1e-9)
    assert est.score(X, y) == pytest.approx(1.0)
    assert clone(est).get_params() == {"condition_limit": 1e12}
    assert [r.name for r in est.table_.coefficients] == [CONSTANT, "x1", "x2"]


def test_estimator_keeps_dataframe_names():
    pd = pytest.importorskip("pandas")
    df = pd.DataFrame({"mod": [1.0, 2, 3, 4, 5], "flex": [2.0, 1, 4, 3, 6]})
    est = OLSRegression().fit(df, df["mod"] * 2 + df["flex"] + 1)
    assert [r.name for r in est.table_.coefficients][1:] == ["mod", "flex"]
