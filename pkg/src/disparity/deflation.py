"""Constant-price conversion and per-capita aggregation."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import AlreadyDeflated, BaseYearOutOfRange, MissingIndex
from .panel import PriceBasis, RegionalPanel

__all__ = ["DEFAULT_BASE_YEAR", "PerCapitaTable", "deflate", "per_capita", "real_levels"]

DEFAULT_BASE_YEAR = 1978


def real_levels(panel: RegionalPanel) -> dict[tuple[str, int], float]:
    """First-year GDP of each region carried forward by its cumulative growth index.

    This is the bare level ``gdp(t0) * growth_index(t)`` expressed in the
    prices of each region's first observed year.
    """
    levels: dict[tuple[str, int], float] = {}
    start: dict[str, float] = {}
    for o in panel.observations:  # ordered by (region_id, year)
        if o.growth_index is None:
            raise MissingIndex(o.region_id, o.year)
        first = start.setdefault(o.region_id, o.gdp)
        levels[(o.region_id, o.year)] = first * o.growth_index
    return levels


def deflate(panel: RegionalPanel, base_year: int = DEFAULT_BASE_YEAR, rebase: bool = True) -> RegionalPanel:
    """Convert a nominal panel to constant ``base_year`` prices.

    Each region's series is its first-year GDP times its cumulative growth
    index.  With ``rebase`` the whole panel is then multiplied by a single
    factor, the ratio of aggregate nominal GDP to aggregate index-implied GDP
    in ``base_year``, so national levels read in base-year prices.  The factor
    is shared by all regions: shares, and therefore every Gini/Theil value,
    do not depend on ``base_year``.
    """
    if panel.price_basis is not PriceBasis.NOMINAL:
        raise AlreadyDeflated()
    lo, hi = panel.year_range
    if not lo <= base_year <= hi:
        raise BaseYearOutOfRange(base_year, (lo, hi))

    levels = real_levels(panel)
    factor = 1.0
    if rebase:
        at_base = [o for o in panel.observations if o.year == base_year]
        if at_base:
            nominal = math.fsum(o.gdp for o in at_base)
            implied = math.fsum(levels[(o.region_id, o.year)] for o in at_base)
            factor = nominal / implied

    observations = [replace(o, gdp=levels[(o.region_id, o.year)] * factor) for o in panel.observations]
    return panel.with_observations(observations, price_basis=PriceBasis.CONSTANT, base_year=base_year)


@dataclass(frozen=True)
class PerCapitaTable:
    regional: dict[int, dict[str, float]]
    national: dict[int, float]

    def of(self, region_id: str, year: int) -> float:
        return self.regional[year][region_id]


def per_capita(panel: RegionalPanel) -> PerCapitaTable:
    """Regional GDP per head by year, plus the national figure sum(gdp) / sum(population)."""
    regional: dict[int, dict[str, float]] = {}
    gdp_sum: dict[int, list[float]] = {}
    pop_sum: dict[int, list[float]] = {}
    for o in panel.observations:
        regional.setdefault(o.year, {})[o.region_id] = o.gdp / o.population
        gdp_sum.setdefault(o.year, []).append(o.gdp)
        pop_sum.setdefault(o.year, []).append(o.population)
    national = {y: math.fsum(gdp_sum[y]) / math.fsum(pop_sum[y]) for y in sorted(gdp_sum)}
    return PerCapitaTable({y: regional[y] for y in sorted(regional)}, national)
