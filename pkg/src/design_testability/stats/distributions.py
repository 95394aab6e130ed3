"""Student t tail probabilities and critical values.

The two-tailed p-value uses the identity

    P(|T_df| >= |t|) = I_x(df/2, 1/2),   x = df / (df + t**2)

with the regularized incomplete beta function evaluated by its continued
fraction (modified Lentz).
"""

from __future__ import annotations

import math

from ..exceptions import DomainError

_EPS = 1e-15
_TINY = 1e-300
_MAX_ITER = 500


def _betacf(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def betainc(a: float, b: float, x: float, complement: float = None) -> float:
    """Regularized incomplete beta function I_x(a, b) for a, b > 0, 0 <= x <= 1.

    ``complement`` may carry an accurately computed 1 - x when x is close to 1.
    """
    if a <= 0 or b <= 0:
        raise DomainError("betainc needs a > 0 and b > 0")
    if not 0.0 <= x <= 1.0:
        raise DomainError("betainc needs 0 <= x <= 1")
    y = 1.0 - x if complement is None else complement
    if x == 0.0 or y == 0.0:
        return 0.0 if x == 0.0 else 1.0
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log(y)
    )
    front = math.exp(log_front)
    # The continued fraction converges fast only below the mean; use symmetry above it.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, y) / b


def t_cdf_two_tailed(t: float, df: float) -> float:
    """Two-tailed p-value P(|T| >= |t|) for Student's t with ``df`` degrees of freedom."""
    if df < 1:
        raise DomainError(f"degrees of freedom must be >= 1, got {df}")
    if math.isnan(t):
        return math.nan
    if math.isinf(t):
        return 0.0
    if t == 0:
        return 1.0
    t2 = t * t
    x = df / (df + t2)
    return min(1.0, max(0.0, betainc(df / 2.0, 0.5, x, complement=t2 / (df + t2))))


def t_sf(t: float, df: float) -> float:
    """Upper tail P(T >= t)."""
    half = 0.5 * t_cdf_two_tailed(t, df)
    return half if t >= 0 else 1.0 - half


def t_critical(df: float, alpha: float, tails: int = 2) -> float:
    """Critical value c > 0 with P(|T| >= c) = alpha (``tails=2``) or P(T >= c) = alpha.

    Found by bisection on :func:`t_cdf_two_tailed`, which is strictly
    decreasing in |t|.
    """
    if df < 1:
        raise DomainError(f"degrees of freedom must be >= 1, got {df}")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if tails not in (1, 2):
        raise DomainError("tails must be 1 or 2")
    target = alpha if tails == 2 else 2.0 * alpha
    if target >= 1.0:
        raise DomainError("one-tailed alpha must be below 0.5")
    lo, hi = 0.0, 1.0
    while t_cdf_two_tailed(hi, df) > target:
        lo, hi = hi, hi * 2.0
        if hi > 1e12:
            raise DomainError(f"alpha {alpha} too small for df {df}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if t_cdf_two_tailed(mid, df) > target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)
