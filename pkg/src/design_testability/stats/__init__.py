"""Statistics used to build and validate the quality models."""

from .correlation import (
    DF_CONVENTIONS,
    Descriptive,
    SpearmanResult,
    TTestResult,
    correlation_t_statistic,
    correlation_t_test,
    descriptive_stats,
    pearson,
    rank_values,
    spearman,
    spearman_critical,
    spearman_from_d2,
)
from .dataset import Dataset, parse_csv, read_csv
from .distributions import betainc, t_cdf_two_tailed, t_critical
from .regression import (
    CoefficientRow,
    OLSRegression,
    RegressionFit,
    RegressionSummary,
    ols_fit,
    regression_summary_from,
)

__all__ = [
    "DF_CONVENTIONS",
    "CoefficientRow",
    "Dataset",
    "Descriptive",
    "OLSRegression",
    "RegressionFit",
    "RegressionSummary",
    "SpearmanResult",
    "TTestResult",
    "betainc",
    "correlation_t_statistic",
    "correlation_t_test",
    "descriptive_stats",
    "ols_fit",
    "parse_csv",
    "pearson",
    "rank_values",
    "read_csv",
    "regression_summary_from",
    "spearman",
    "spearman_critical",
    "spearman_from_d2",
    "t_cdf_two_tailed",
    "t_critical",
]
