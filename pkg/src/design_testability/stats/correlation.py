"""Descriptive statistics, Pearson and Spearman correlation, correlation t-tests."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from types import MappingProxyType
from typing import List, NamedTuple, Sequence

from ..exceptions import (
    DegenerateCorrelationWarning,
    DomainError,
    EmptyInput,
    LengthMismatch,
    OutOfTableRange,
    TooFewPoints,
    ZeroVariance,
)
from .distributions import t_critical

DF_CONVENTIONS = ("n_minus_2", "n")


class Descriptive(NamedTuple):
    min: float
    max: float
    mean: float


def descriptive_stats(values: Sequence[float]) -> Descriptive:
    vals = [float(v) for v in values]
    if not vals:
        raise EmptyInput("descriptive statistics need at least one value")
    return Descriptive(min(vals), max(vals), math.fsum(vals) / len(vals))


def _centered(values):
    mean = math.fsum(values) / len(values)
    d = [v - mean for v in values]
    # unit max-norm keeps squares away from underflow and overflow
    scale = max(map(abs, d))
    return [v / scale for v in d] if scale else d


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Sample product-moment correlation of ``x`` and ``y``."""
    if len(x) != len(y):
        raise LengthMismatch(f"lengths differ: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise TooFewPoints("pearson needs at least two pairs")
    fx = [float(v) for v in x]
    fy = [float(v) for v in y]
    # checked exactly: a constant column's rounded mean can leave noise deviations
    if min(fx) == max(fx) or min(fy) == max(fy):
        raise ZeroVariance("a column has zero variance")
    dx = _centered(fx)
    dy = _centered(fy)
    sxx = math.fsum(a * a for a in dx)
    syy = math.fsum(b * b for b in dy)
    if sxx == 0 or syy == 0:
        raise ZeroVariance("a column has zero variance")
    sxy = math.fsum(a * b for a, b in zip(dx, dy))
    r = sxy / (math.sqrt(sxx) * math.sqrt(syy))
    return max(-1.0, min(1.0, r))


def rank_values(values: Sequence[float], ties: str = "average") -> List[float]:
    """Ascending 1-based ranks.

    ``ties="average"`` gives tied values their mean rank. ``ties="ordinal"``
    breaks ties by position, earlier entries ranking lower.
    """
    vals = [float(v) for v in values]
    if not vals:
        raise EmptyInput("cannot rank an empty sequence")
    if ties not in ("average", "ordinal"):
        raise DomainError(f"unknown tie policy {ties!r}")
    order = sorted(range(len(vals)), key=lambda i: (vals[i], i))
    ranks = [0.0] * len(vals)
    if ties == "ordinal":
        for pos, i in enumerate(order):
            ranks[i] = float(pos + 1)
        return ranks
    start = 0
    while start < len(order):
        stop = start
        while stop + 1 < len(order) and vals[order[stop + 1]] == vals[order[start]]:
            stop += 1
        shared = (start + stop) / 2 + 1
        for k in range(start, stop + 1):
            ranks[order[k]] = shared
        start = stop + 1
    return ranks


@dataclass(frozen=True)
class SpearmanResult:
    r_s: float
    sum_d_squared: float
    n: int
    method: str  # "d-squared" (tie-free) or "pearson-of-ranks"


def _is_permutation_ranking(ranks) -> bool:
    return sorted(ranks) == [float(i) for i in range(1, len(ranks) + 1)]


def spearman_from_d2(sum_d_squared: float, n: int) -> float:
    """1 - 6 * sum(d^2) / (n (n^2 - 1)); valid only for tie-free rankings."""
    if n < 2:
        raise TooFewPoints("spearman needs n >= 2")
    return 1.0 - 6.0 * sum_d_squared / (n * (n * n - 1))


def spearman(rank_a: Sequence[float], rank_b: Sequence[float]) -> SpearmanResult:
    """Spearman rank correlation of two rankings.

    Tie-free rankings (each a permutation of 1..n) use the d-squared
    formula. Anything else is re-ranked with average ties and correlated
    with :func:`pearson`.
    """
    if len(rank_a) != len(rank_b):
        raise LengthMismatch(f"lengths differ: {len(rank_a)} vs {len(rank_b)}")
    n = len(rank_a)
    if n < 2:
        raise TooFewPoints("spearman needs n >= 2")
    a = [float(v) for v in rank_a]
    b = [float(v) for v in rank_b]
    if _is_permutation_ranking(a) and _is_permutation_ranking(b):
        d2 = math.fsum((x - y) ** 2 for x, y in zip(a, b))
        return SpearmanResult(spearman_from_d2(d2, n), d2, n, "d-squared")
    ra, rb = rank_values(a), rank_values(b)
    d2 = math.fsum((x - y) ** 2 for x, y in zip(ra, rb))
    return SpearmanResult(pearson(ra, rb), d2, n, "pearson-of-ranks")


def _spearman_table():
    # One-tailed critical r_s from the t approximation
    # r = t / sqrt(n - 2 + t^2), t the one-tailed critical value at df = n - 2.
    table = {}
    for alpha in (0.05, 0.01):
        for n in range(SPEARMAN_TABLE_MIN_N, SPEARMAN_TABLE_MAX_N + 1):
            t = t_critical(n - 2, alpha, tails=1)
            table[(n, alpha)] = round(t / math.sqrt(n - 2 + t * t), 4)
    return MappingProxyType(table)


SPEARMAN_TABLE_MIN_N = 4
SPEARMAN_TABLE_MAX_N = 100
SPEARMAN_CRITICAL = _spearman_table()


def spearman_critical(n: int, alpha: float) -> float:
    """Critical r_s (one-tailed) for ``n`` ranked pairs at level ``alpha``."""
    key = (int(n), float(alpha))
    if key[1] not in (0.05, 0.01):
        raise OutOfTableRange(f"alpha must be 0.05 or 0.01, got {alpha}")
    if key not in SPEARMAN_CRITICAL:
        raise OutOfTableRange(
            f"n={n} outside table range {SPEARMAN_TABLE_MIN_N}..{SPEARMAN_TABLE_MAX_N}"
        )
    return SPEARMAN_CRITICAL[key]


@dataclass(frozen=True)
class TTestResult:
    __test__ = False

    r: float
    n: int
    t_statistic: float
    df: int
    alpha: float
    critical_value: float
    reject_null: bool
    df_convention: str = "n_minus_2"


def correlation_t_statistic(r: float, n: int) -> float:
    """r * sqrt(n - 2) / sqrt(1 - r^2)."""
    if abs(r) >= 1:
        return math.copysign(math.inf, r)
    return r * math.sqrt(n - 2) / math.sqrt(1.0 - r * r)


def correlation_t_test(
    r: float, n: int, alpha: float = 0.05, df_convention: str = "n_minus_2"
) -> TTestResult:
    """Two-tailed significance test of a correlation coefficient.

    The statistic always uses n - 2 under the radical. ``df_convention``
    only picks the degrees of freedom for the critical value: ``"n_minus_2"``
    (standard) or ``"n"``.
    """
    if df_convention not in DF_CONVENTIONS:
        raise DomainError(f"df_convention must be one of {DF_CONVENTIONS}")
    if n < 3:
        raise TooFewPoints(f"correlation t-test needs n >= 3, got {n}")
    if not -1.0 <= r <= 1.0:
        raise DomainError(f"correlation must lie in [-1, 1], got {r}")
    if abs(r) == 1.0:
        warnings.warn(
            "|r| = 1: t statistic is infinite, reporting rejection",
            DegenerateCorrelationWarning,
            stacklevel=2,
        )
    df = n - 2 if df_convention == "n_minus_2" else n
    t = correlation_t_statistic(r, n)
    crit = t_critical(df, alpha)
    return TTestResult(r, n, t, df, alpha, crit, abs(t) >= crit, df_convention)
