"""Reference tables and a diff of computed results against them.

The bundled ``reference_tables.json`` holds the per-capita GDP ratios of Shanghai
and Guizhou to the national average for 1952-2000 and the sub-period Hurst
exponents of the provincial Theil series.  They can only be reproduced from
the original provincial statistics, which are not shipped; the comparison is
for users who assemble that panel themselves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .errors import DisparityError, UnknownRegion
from .inequality import LogBase, Metric, disparity_series
from .panel import RegionalPanel
from .ratios import ratio_series
from .rs import DEFAULT_EPSILON, subperiod_hurst

__all__ = ["Comparison", "compare_with_tables", "load_tables"]


def load_tables() -> dict:
    with resources.files("disparity").joinpath("data/reference_tables.json").open(encoding="utf-8") as fh:
        return json.load(fh)


@dataclass(frozen=True)
class Comparison:
    item: str          # e.g. "shanghai/national" or "hurst"
    key: str           # year or "start-end"
    expected: float
    computed: float | None
    decimals: int
    note: str = ""

    @property
    def passed(self) -> bool:
        if self.computed is None:
            return False
        return abs(self.computed - self.expected) <= 0.5 * 10.0 ** -self.decimals + 1e-12


def compare_with_tables(panel: RegionalPanel, tables: dict | None = None,
                        log_base: LogBase = LogBase.NATURAL,
                        epsilon: float = DEFAULT_EPSILON) -> list[Comparison]:
    """Diff ratio series and Theil Hurst exponents of ``panel`` against the tables.

    ``panel`` should already be at constant prices.  Items that cannot be
    computed (region absent, period too short) come back with
    ``computed=None`` and the reason in ``note``.
    """
    tables = tables or load_tables()
    out: list[Comparison] = []
    rd = tables["ratio_decimals"]
    for name, expected in tables["ratios"].items():
        num, den = name.split("/")
        try:
            got = ratio_series(panel, num, den).as_dict()
            note = ""
        except (UnknownRegion, DisparityError) as exc:
            got, note = {}, str(exc)
        for year, value in expected.items():
            computed = got.get(int(year))
            out.append(Comparison(name, year, value, computed, rd,
                                  note if computed is None and note else ""))

    hd = tables["hurst_decimals"]
    spec = tables["hurst"]
    periods = [(p["start"], p["end"]) for p in spec["periods"]]
    try:
        series = disparity_series(panel, Metric(spec["metric"]), log_base, allow_nominal=True)
        rows = subperiod_hurst(series, periods, epsilon=epsilon, strict=False)
        failure = ""
    except DisparityError as exc:
        rows, failure = [], str(exc)
    by_period = {r.period: r for r in rows}
    for p in spec["periods"]:
        row = by_period.get((p["start"], p["end"]))
        computed = row.result.hurst if row is not None and row.result is not None else None
        note = p.get("note", "")
        if computed is None:
            reason = failure or (str(row.error) if row is not None and row.error else "")
            note = "; ".join(x for x in (note, reason) if x)
        key = f"{p['start']}-{p['end']}"
        out.append(Comparison("hurst", key, p["value"], computed, hd, note))
        if "alternate" in p:
            out.append(Comparison("hurst (alternate)", key, p["alternate"], computed, hd, note))
    return out
