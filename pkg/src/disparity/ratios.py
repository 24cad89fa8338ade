"""Per-capita GDP ratio series between regions or against the national figure."""

from __future__ import annotations

from dataclasses import dataclass

from .deflation import per_capita
from .errors import NoCommonYears, TooFewRegions
from .panel import RegionalPanel, year_slice

__all__ = ["NATIONAL", "RatioSeries", "extreme_pair", "ratio_series"]

NATIONAL = "national"


@dataclass(frozen=True)
class RatioSeries:
    numerator: str
    denominator: str
    values: tuple[tuple[int, float], ...]

    @property
    def years(self) -> list[int]:
        return [y for y, _ in self.values]

    def as_dict(self) -> dict[int, float]:
        return dict(self.values)


def _operand(panel: RegionalPanel, name: str) -> str:
    return NATIONAL if name.strip().lower() == NATIONAL else panel.resolve_region(name)


def ratio_series(panel: RegionalPanel, numerator: str, denominator: str) -> RatioSeries:
    """GDP per head of ``numerator`` over ``denominator`` for every year both exist.

    Either operand may be a region id/name or ``"national"``, which stands for
    the population-weighted aggregate sum(gdp) / sum(population) of the
    regions present that year.
    """
    num = _operand(panel, numerator)
    den = _operand(panel, denominator)
    table = per_capita(panel)

    def value(op: str, year: int) -> float | None:
        if op == NATIONAL:
            return table.national[year]
        return table.regional[year].get(op)

    values = []
    for year in table.national:
        a, b = value(num, year), value(den, year)
        if a is not None and b is not None:
            values.append((year, a / b))
    if not values:
        raise NoCommonYears(num, den)
    return RatioSeries(num, den, tuple(values))


def extreme_pair(panel: RegionalPanel, year: int) -> tuple[str, str, float]:
    """Richest and poorest region by GDP per head in ``year`` and their ratio.

    Ties go to the smallest region_id on both ends.
    """
    rows = year_slice(panel, year)
    if len(rows) < 2:
        raise TooFewRegions(len(rows))
    pc = [(r.gdp / r.population, r.region_id) for r in rows]
    hi = min(pc, key=lambda t: (-t[0], t[1]))
    lo = min(pc, key=lambda t: (t[0], t[1]))
    return hi[1], lo[1], hi[0] / lo[0]
