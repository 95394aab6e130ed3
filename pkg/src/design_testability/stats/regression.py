"""Ordinary least squares with SPSS-style coefficient and model-summary tables."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from ..exceptions import DomainError, RankDeficient, TooFewRows, ZeroVariance
from .dataset import Dataset
from .distributions import t_cdf_two_tailed

CONDITION_LIMIT = 1e12
CONSTANT = "(Constant)"


@dataclass(frozen=True)
class CoefficientRow:
    name: str
    b: float
    std_error: float
    beta: Optional[float]  # standardized; None for the constant
    t: float
    sig: float


@dataclass(frozen=True)
class RegressionFit:
    response: str
    predictors: Tuple[str, ...]
    coefficients: Tuple[CoefficientRow, ...]

    def row(self, name: str) -> CoefficientRow:
        for r in self.coefficients:
            if r.name == name:
                return r
        raise KeyError(name)


@dataclass(frozen=True)
class RegressionSummary:
    r: float
    r_square: float
    adjusted_r_square: float
    std_error_of_estimate: float
    n: int
    k: int


def adjusted_r_square(r_square: float, n: int, k: int) -> float:
    return 1.0 - (1.0 - r_square) * (n - 1) / (n - k - 1)


def regression_summary_from(r_square: float, n: int, k: int) -> Tuple[float, float]:
    """Multiple R and adjusted R-square from R-square, sample size and predictor count."""
    if not 0.0 <= r_square <= 1.0:
        raise DomainError(f"R-square must lie in [0, 1], got {r_square}")
    if n <= k + 1:
        raise DomainError(f"need n > k + 1 (n={n}, k={k})")
    return math.sqrt(r_square), adjusted_r_square(r_square, n, k)


def _fit_arrays(X: np.ndarray, y: np.ndarray, limit: float = CONDITION_LIMIT):
    n, k = X.shape
    if n < k + 2:
        raise TooFewRows(f"need at least k + 2 = {k + 2} rows, got {n}")
    design = np.column_stack([np.ones(n), X])
    gram = design.T @ design
    cond = np.linalg.cond(gram)
    if not np.isfinite(cond) or cond > limit:
        raise RankDeficient(f"design matrix is (near) rank deficient: condition {cond:.3g}")
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    df = n - k - 1
    sse = math.fsum(resid * resid)
    centered = y - math.fsum(y) / n
    sst = math.fsum(centered * centered)
    if sst == 0:
        raise ZeroVariance("response has zero variance")
    sigma2 = sse / df
    se = np.sqrt(np.clip(np.diag(np.linalg.inv(gram)) * sigma2, 0.0, None))
    return coef, se, resid, sse, sst, df


def _summary(sse, sst, n, k, df) -> RegressionSummary:
    r2 = min(1.0, max(0.0, 1.0 - sse / sst))
    r, adj = regression_summary_from(r2, n, k)
    return RegressionSummary(r, r2, adj, math.sqrt(sse / df), n, k)


def _rows(names, coef, se, X, y, df):
    sd_y = float(np.std(y, ddof=1))
    rows = []
    for j, name in enumerate(names):
        b = float(coef[j])
        s = float(se[j])
        with np.errstate(divide="ignore", invalid="ignore"):
            t = float(np.divide(b, s))
        sig = t_cdf_two_tailed(t, df)
        beta = None if j == 0 else b * float(np.std(X[:, j - 1], ddof=1)) / sd_y
        rows.append(CoefficientRow(name, b, s, beta, t, sig))
    return tuple(rows)


def ols_fit(
    d: Dataset, response: str, predictors: Sequence[str]
) -> Tuple[RegressionFit, RegressionSummary]:
    """Least-squares fit of ``response`` on ``predictors`` plus an intercept."""
    predictors = tuple(predictors)
    y = np.asarray(d.column(response), dtype=float)
    X = d.columns(predictors)
    coef, se, _, sse, sst, df = _fit_arrays(X, y)
    rows = _rows((CONSTANT,) + predictors, coef, se, X, y, df)
    return RegressionFit(response, predictors, rows), _summary(sse, sst, d.n, len(predictors), df)


class OLSRegression(RegressorMixin, BaseEstimator):
    """Multiple linear regression with an intercept, sklearn style.

    After ``fit``: ``intercept_``, ``coef_``, ``table_`` (:class:`RegressionFit`)
    and ``summary_`` (:class:`RegressionSummary`).
    """

    def __init__(self, condition_limit=CONDITION_LIMIT):
        self.condition_limit = condition_limit

    def fit(self, X, y):
        columns = getattr(X, "columns", None)
        X, y = check_X_y(X, y, dtype=float, y_numeric=True)
        n, k = X.shape
        coef, se, resid, sse, sst, df = _fit_arrays(X, y, self.condition_limit)
        if columns is not None:
            names = tuple(str(c) for c in columns)
        else:
            names = tuple(f"x{j + 1}" for j in range(k))
        self.intercept_ = float(coef[0])
        self.coef_ = coef[1:].copy()
        self.residuals_ = resid
        self.table_ = RegressionFit("y", names, _rows((CONSTANT,) + names, coef, se, X, y, df))
        self.summary_ = _summary(sse, sst, n, k, df)
        self.n_features_in_ = k
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X, dtype=float)
        return self.intercept_ + X @ self.coef_
