"""Per-year disparity measures: Lorenz curve, Gini (power-fit and exact), Theil-T.

All functions take a year slice, i.e. a sequence of :class:`RegionSlice`
records as produced by :func:`disparity.panel.year_slice` or
:func:`make_slice`.
"""

from __future__ import annotations

import enum
import math
import warnings
from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import (
    DataWarning,
    DegenerateFit,
    DisparityError,
    EmptyGroup,
    NominalPanel,
    NonPositiveValue,
    TooFewRegions,
    ZeroPopulationShare,
)
from .panel import PriceBasis, RegionalPanel, RegionSlice, year_slice

__all__ = [
    "DisparitySeries",
    "GiniResult",
    "GroupTerm",
    "LogBase",
    "LorenzCurve",
    "Metric",
    "TheilDecomposition",
    "disparity_series",
    "fit_beta",
    "gini_curvefit",
    "gini_exact",
    "lorenz_curve",
    "make_slice",
    "theil",
    "theil_decompose",
]


class LogBase(enum.Enum):
    NATURAL = "natural"
    BASE10 = "base10"

    def log(self, x):
        return np.log(x) if self is LogBase.NATURAL else np.log10(x)


class Metric(enum.Enum):
    GINI_CURVEFIT = "gini-curvefit"
    GINI_EXACT = "gini-exact"
    THEIL = "theil"


def make_slice(gdp: Iterable[float], population: Iterable[float],
               region_ids: Iterable[str] | None = None,
               groups: Iterable[Hashable] | None = None) -> list[RegionSlice]:
    """Build a year slice from parallel sequences (ids default to r00, r01, ...)."""
    gdp = list(gdp)
    population = list(population)
    if len(gdp) != len(population):
        raise ValueError("gdp and population must have equal length")
    ids = list(region_ids) if region_ids is not None else [f"r{i:02d}" for i in range(len(gdp))]
    grp = list(groups) if groups is not None else [None] * len(gdp)
    return [RegionSlice(i, float(g), float(p), s) for i, g, p, s in zip(ids, gdp, population, grp)]


def _arrays(slice_: Sequence[RegionSlice]) -> tuple[np.ndarray, np.ndarray]:
    gdp = np.array([r.gdp for r in slice_], dtype=float)
    pop = np.array([r.population for r in slice_], dtype=float)
    return gdp, pop


# -- Lorenz / Gini -------------------------------------------------------


@dataclass(frozen=True)
class LorenzCurve:
    """Accumulated (population share, GDP share) points, poorest region first."""

    x: np.ndarray
    y: np.ndarray
    order: tuple[str, ...]
    year: int | None = None

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.y.tolist()))


TIE_RTOL = 1e-12


def _sort_by_per_capita(slice_: Sequence[RegionSlice]) -> list[RegionSlice]:
    """Ascending GDP per head; values equal up to TIE_RTOL are ordered by region_id.

    The tolerance keeps the order stable when rescaling GDP perturbs the last
    bit of otherwise equal ratios.
    """
    by_value = sorted(slice_, key=lambda r: (r.gdp / r.population, r.region_id))
    out: list[RegionSlice] = []
    run: list[RegionSlice] = []
    for r in by_value:
        if run:
            ref = run[0].gdp / run[0].population
            if r.gdp / r.population - ref > TIE_RTOL * ref:
                out += sorted(run, key=lambda s: s.region_id)
                run = []
        run.append(r)
    out += sorted(run, key=lambda s: s.region_id)
    return out


def lorenz_curve(slice_: Sequence[RegionSlice], year: int | None = None) -> LorenzCurve:
    if len(slice_) < 2:
        raise TooFewRegions(len(slice_))
    for r in slice_:
        if not r.gdp > 0:
            raise NonPositiveValue("gdp", r.region_id, year if year is not None else -1)
        if not r.population > 0:
            raise NonPositiveValue("population", r.region_id, year if year is not None else -1)
    ordered = _sort_by_per_capita(slice_)
    gdp, pop = _arrays(ordered)
    cum_pop = np.cumsum(pop)
    cum_gdp = np.cumsum(gdp)
    x = cum_pop / cum_pop[-1]
    y = cum_gdp / cum_gdp[-1]
    return LorenzCurve(x, y, tuple(r.region_id for r in ordered), year)


def fit_beta(curve: LorenzCurve) -> float:
    """Least-squares exponent of ``Y = X**beta`` fitted through the origin in log space.

    The (1, 1) end point is kept; it adds zero to both sums.
    """
    lx = np.log(curve.x)
    ly = np.log(curve.y)
    denom = math.fsum(lx * lx)
    if denom == 0.0:
        raise DegenerateFit("every Lorenz point has X = 1; beta is undefined")
    return math.fsum(lx * ly) / denom


@dataclass(frozen=True)
class GiniResult:
    gini: float
    beta: float
    fit_residual: float


def gini_from_beta(beta: float) -> float:
    return (beta - 1.0) / (beta + 1.0)


def gini_curvefit(curve: LorenzCurve) -> GiniResult:
    """Gini of the power-law Lorenz fit: ``(beta - 1) / (beta + 1)``.

    Equivalent to ``1 - 2 * integral_0^1 X**beta dX``.  ``fit_residual`` is the
    sum of squared residuals ``ln Y - beta ln X``.
    """
    beta = fit_beta(curve)
    resid = np.log(curve.y) - beta * np.log(curve.x)
    return GiniResult(gini_from_beta(beta), beta, math.fsum(resid * resid))


def gini_exact(slice_: Sequence[RegionSlice]) -> float:
    """Area-based Gini of the piecewise-linear Lorenz curve (trapezoid rule)."""
    curve = lorenz_curve(slice_)
    x = np.concatenate(([0.0], curve.x))
    y = np.concatenate(([0.0], curve.y))
    area2 = math.fsum(np.diff(x) * (y[1:] + y[:-1]))
    return 1.0 - area2


def loglog_r_squared(curve: LorenzCurve) -> float:
    """Ordinary r^2 of ln Y on ln X (with intercept) over points with X < 1.

    Diagnostic for how well a power law describes the curve.  Returns 1.0
    when fewer than two informative points exist.
    """
    mask = curve.x < 1.0
    lx = np.log(curve.x[mask])
    ly = np.log(curve.y[mask])
    if lx.size < 2 or np.ptp(lx) == 0.0:
        return 1.0
    r = np.corrcoef(lx, ly)[0, 1]
    return float(r * r)


# -- Theil ---------------------------------------------------------------


def _theil_terms(gdp: np.ndarray, pop: np.ndarray, ids: Sequence[str], log_base: LogBase) -> float:
    y = gdp / math.fsum(gdp)
    p = pop / math.fsum(pop)
    terms = []
    for yi, pi, rid in zip(y, p, ids):
        if yi == 0.0:
            continue
        if pi == 0.0:
            raise ZeroPopulationShare(rid)
        terms.append(yi * log_base.log(yi / pi))
    return math.fsum(terms)


def theil(slice_: Sequence[RegionSlice], log_base: LogBase = LogBase.NATURAL) -> float:
    """Theil-T index ``sum Y_i log(Y_i / P_i)`` of GDP shares against population shares.

    Regions with zero GDP contribute nothing.  A region with positive GDP and
    zero population raises :class:`ZeroPopulationShare`.
    """
    if not slice_:
        raise TooFewRegions(0, 1)
    gdp, pop = _arrays(slice_)
    if np.any(gdp < 0) or np.any(pop < 0):
        raise ValueError("gdp and population must be non-negative")
    return _theil_terms(gdp, pop, [r.region_id for r in slice_], log_base)


@dataclass(frozen=True)
class GroupTerm:
    weight: float            # group share of total GDP
    population_share: float
    value: float             # Theil index inside the group


@dataclass(frozen=True)
class TheilDecomposition:
    total: float
    between: float
    within: dict[Hashable, GroupTerm]

    @property
    def within_total(self) -> float:
        return math.fsum(t.weight * t.value for t in self.within.values())

    def identity_error(self) -> float:
        return abs(self.total - (self.between + self.within_total))


def theil_decompose(slice_: Sequence[RegionSlice],
                    grouping: Mapping[str, Hashable] | None = None,
                    log_base: LogBase = LogBase.NATURAL,
                    groups: Iterable[Hashable] | None = None) -> TheilDecomposition:
    """Split Theil-T into a between-group term and GDP-weighted within-group terms.

    ``grouping`` maps region_id to a group label; by default each record's
    ``supra_region`` is used.  If ``groups`` lists the expected labels, a label
    with no member in the slice raises :class:`EmptyGroup`.
    """
    if not slice_:
        raise TooFewRegions(0, 1)
    labels = []
    for r in slice_:
        g = grouping[r.region_id] if grouping is not None else r.supra_region
        if g is None:
            raise KeyError(f"region {r.region_id!r} has no group")
        labels.append(g)
    members: dict[Hashable, list[int]] = {}
    for i, g in enumerate(labels):
        members.setdefault(g, []).append(i)
    if groups is not None:
        for g in groups:
            if g not in members:
                raise EmptyGroup(g)

    gdp, pop = _arrays(slice_)
    ids = [r.region_id for r in slice_]
    total = _theil_terms(gdp, pop, ids, log_base)
    gdp_total = math.fsum(gdp)
    pop_total = math.fsum(pop)

    within: dict[Hashable, GroupTerm] = {}
    g_gdp, g_pop, g_ids = [], [], []
    for g in sorted(members, key=str):
        idx = members[g]
        gg = gdp[idx]
        gp = pop[idx]
        value = _theil_terms(gg, gp, [ids[i] for i in idx], log_base) if math.fsum(gg) > 0 else 0.0
        within[g] = GroupTerm(math.fsum(gg) / gdp_total, math.fsum(gp) / pop_total, value)
        g_gdp.append(math.fsum(gg))
        g_pop.append(math.fsum(gp))
        g_ids.append(str(g))
    between = _theil_terms(np.array(g_gdp), np.array(g_pop), g_ids, log_base)
    return TheilDecomposition(total, between, within)


# -- series --------------------------------------------------------------


@dataclass(frozen=True)
class DisparitySeries:
    metric: Metric
    values: tuple[tuple[int, float], ...]

    @property
    def years(self) -> list[int]:
        return [y for y, _ in self.values]

    @property
    def array(self) -> np.ndarray:
        return np.array([v for _, v in self.values])

    def as_dict(self) -> dict[int, float]:
        return dict(self.values)


def evaluate(metric: Metric, slice_: Sequence[RegionSlice], log_base: LogBase = LogBase.NATURAL,
             year: int | None = None) -> float:
    if metric is Metric.THEIL:
        if len(slice_) < 2:
            raise TooFewRegions(len(slice_))
        return theil(slice_, log_base)
    if metric is Metric.GINI_EXACT:
        return gini_exact(slice_)
    return gini_curvefit(lorenz_curve(slice_, year)).gini


def disparity_series(panel: RegionalPanel, metric: Metric,
                     log_base: LogBase = LogBase.NATURAL,
                     allow_nominal: bool = False) -> DisparitySeries:
    """Evaluate ``metric`` independently for every year of the panel.

    Years with fewer than two regions are dropped with a :class:`DataWarning`;
    only when every year fails is the last error re-raised.
    """
    if panel.price_basis is PriceBasis.NOMINAL and not allow_nominal:
        raise NominalPanel()
    values: list[tuple[int, float]] = []
    last_error: DisparityError | None = None
    for year in panel.years:
        try:
            values.append((year, evaluate(metric, year_slice(panel, year), log_base, year)))
        except TooFewRegions as exc:
            last_error = exc
            warnings.warn(f"{year}: {exc}; year omitted", DataWarning, stacklevel=2)
    if not values and last_error is not None:
        raise last_error
    return DisparitySeries(metric, tuple(values))
