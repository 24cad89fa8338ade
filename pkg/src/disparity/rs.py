"""Rescaled-range (R/S) analysis and Hurst-exponent estimation.

The default ``"prefix"`` scheme computes R/S on the leading ``tau`` values of
the series for every ``tau``, the classical Hurst construction.  The
``"shifted"`` scheme averages R/S over non-overlapping windows of length
``tau`` (Mandelbrot-Wallis style); it is offered for robustness comparisons.
"""

from __future__ import annotations

import enum
import math
import warnings
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ComputationError,
    DataWarning,
    InsufficientWindows,
    PeriodOutsideSeries,
    TauOutOfRange,
    ZeroVariance,
)

__all__ = [
    "DEFAULT_EPSILON",
    "DEFAULT_PERIODS",
    "HurstResult",
    "Persistence",
    "PersistenceClass",
    "RSPoint",
    "SubperiodRow",
    "classify",
    "correlation_fn",
    "hurst",
    "rs_statistic",
    "subperiod_hurst",
]

DEFAULT_EPSILON = 0.05
DEFAULT_PERIODS: tuple[tuple[int, int], ...] = (
    (1952, 1965), (1966, 1978), (1979, 1990), (1991, 2000), (1952, 2000),
)
MIN_PERIOD_OBS = 8
WARN_PERIOD_OBS = 12
SCHEMES = ("prefix", "shifted")


@dataclass(frozen=True)
class RSPoint:
    tau: int
    rs: float


def _rescaled_range(x: np.ndarray) -> float | None:
    """R/S of one window, or None when its standard deviation is zero."""
    d = x - x.mean()
    s = math.sqrt(float(np.mean(d * d)))
    scale = float(np.max(np.abs(x)))
    if s <= 8.0 * np.finfo(float).eps * scale or s == 0.0:
        return None
    cum = np.cumsum(d)
    return float(cum.max() - cum.min()) / s


def rs_statistic(series: Sequence[float], tau: int) -> RSPoint:
    """R/S of the first ``tau`` values.

    Cumulative deviations from the window mean give the range R; the standard
    deviation S uses divisor ``tau``.
    """
    x = np.asarray(series, dtype=float)
    if not 2 <= tau <= x.size:
        raise TauOutOfRange(tau, x.size)
    rs = _rescaled_range(x[:tau])
    if rs is None:
        raise ZeroVariance(tau)
    return RSPoint(tau, rs)


def _shifted_rs(x: np.ndarray, tau: int) -> float | None:
    vals = []
    for k in range(x.size // tau):
        rs = _rescaled_range(x[k * tau:(k + 1) * tau])
        if rs is not None:
            vals.append(rs)
    return float(np.mean(vals)) if vals else None


def correlation_fn(h: float, warn: bool = True) -> float:
    """Increment correlation ``2**(2H - 1) - 1`` implied by a Hurst exponent.

    Values of ``h`` outside [0, 1] are still evaluated; ``warn`` controls
    whether a :class:`DataWarning` flags them.
    """
    if warn and not 0.0 <= h <= 1.0:
        warnings.warn(f"Hurst exponent {h} outside [0, 1]", DataWarning, stacklevel=2)
    return 2.0 ** (2.0 * h - 1.0) - 1.0


@dataclass(frozen=True)
class HurstResult:
    hurst: float
    intercept: float
    r_squared: float
    points: tuple[RSPoint, ...]
    correlation: float
    scheme: str = "prefix"

    @property
    def out_of_bounds(self) -> bool:
        return not 0.0 < self.hurst < 1.0


def hurst(series: Sequence[float], tau_min: int = 2, scheme: str = "prefix") -> HurstResult:
    """Fit H as the OLS slope of ln(R/S) against ln(tau / 2), tau = tau_min..n.

    Windows with zero variance are dropped.  At least three usable windows are
    required.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}")
    x = np.asarray(series, dtype=float)
    n = x.size
    tau_min = max(int(tau_min), 2)
    points = []
    for tau in range(tau_min, n + 1):
        rs = _rescaled_range(x[:tau]) if scheme == "prefix" else _shifted_rs(x, tau)
        if rs is not None and rs > 0.0:
            points.append(RSPoint(tau, rs))
    if len(points) < 3:
        raise InsufficientWindows(
            f"{len(points)} usable R/S windows from {n} observations; need at least 3"
        )
    lx = np.log(np.array([p.tau for p in points], dtype=float) / 2.0)
    ly = np.log(np.array([p.rs for p in points]))
    slope, intercept = np.polyfit(lx, ly, 1)
    fitted = intercept + slope * lx
    ss_res = float(np.sum((ly - fitted) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    h = float(slope)
    return HurstResult(h, float(intercept), r2, tuple(points), correlation_fn(h, warn=False), scheme)


class Persistence(enum.Enum):
    PERSISTENT = "persistent"
    ANTIPERSISTENT = "antipersistent"
    RANDOM = "random"


@dataclass(frozen=True)
class PersistenceClass:
    tag: Persistence
    threshold_band: float

    def __str__(self) -> str:
        return self.tag.value


def classify(h: float, epsilon: float = DEFAULT_EPSILON) -> PersistenceClass:
    """Persistent above ``0.5 + epsilon``, antipersistent below ``0.5 - epsilon``, random between."""
    if not 0.0 <= epsilon < 0.5:
        raise ValueError("epsilon must lie in [0, 0.5)")
    if h > 0.5 + epsilon:
        tag = Persistence.PERSISTENT
    elif h < 0.5 - epsilon:
        tag = Persistence.ANTIPERSISTENT
    else:
        tag = Persistence.RANDOM
    return PersistenceClass(tag, epsilon)


@dataclass(frozen=True)
class SubperiodRow:
    period: tuple[int, int]
    n_obs: int
    result: HurstResult | None = None
    classification: PersistenceClass | None = None
    error: ComputationError | None = field(default=None, compare=False)


def _pairs(series) -> list[tuple[int, float]]:
    if hasattr(series, "values") and not isinstance(series, Mapping):
        series = series.values  # DisparitySeries
    if isinstance(series, Mapping):
        series = series.items()
    return sorted((int(y), float(v)) for y, v in series)


def period_values(series, period: tuple[int, int]) -> list[float]:
    pairs = _pairs(series)
    start, end = period
    if not pairs or start > end or start < pairs[0][0] or end > pairs[-1][0]:
        raise PeriodOutsideSeries(start, end)
    return [v for y, v in pairs if start <= y <= end]


def hurst_for_period(series, period: tuple[int, int], tau_min: int = 2,
                     scheme: str = "prefix") -> HurstResult:
    values = period_values(series, period)
    if len(values) < MIN_PERIOD_OBS:
        raise InsufficientWindows(
            f"period {period[0]}-{period[1]} has {len(values)} observations; need {MIN_PERIOD_OBS}"
        )
    if len(values) < WARN_PERIOD_OBS:
        warnings.warn(
            f"period {period[0]}-{period[1]} has only {len(values)} observations",
            DataWarning,
            stacklevel=3,
        )
    return hurst(values, tau_min, scheme)


def subperiod_hurst(series, periods: Iterable[tuple[int, int]] = DEFAULT_PERIODS,
                    tau_min: int = 2, epsilon: float = DEFAULT_EPSILON,
                    scheme: str = "prefix", strict: bool = True) -> list[SubperiodRow]:
    """Hurst exponent and persistence class for each (start_year, end_year) period.

    ``series`` is a :class:`~disparity.inequality.DisparitySeries`, a
    year-to-value mapping or an iterable of (year, value) pairs.  Periods may
    overlap.  With ``strict=False`` a failing period yields a row carrying the
    error instead of aborting the table.
    """
    rows = []
    for period in periods:
        period = (int(period[0]), int(period[1]))
        try:
            n_obs = len(period_values(series, period))
            res = hurst_for_period(series, period, tau_min, scheme)
        except ComputationError as exc:
            if strict:
                raise
            n_obs = len([1 for y, _ in _pairs(series) if period[0] <= y <= period[1]])
            rows.append(SubperiodRow(period, n_obs, error=exc))
            continue
        rows.append(SubperiodRow(period, n_obs, res, classify(res.hurst, epsilon)))
    return rows
