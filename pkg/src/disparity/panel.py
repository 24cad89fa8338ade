"""Province-by-year panel: CSV ingestion, validation and slicing."""

from __future__ import annotations

import csv
import enum
import io
import warnings
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, replace
from typing import NamedTuple, TextIO

from .errors import (
    DataWarning,
    DuplicateKey,
    EmptyYear,
    InconsistentSupraRegion,
    InvalidGrowthIndex,
    MalformedRow,
    NonPositiveValue,
    UnknownRegion,
)

__all__ = [
    "CSV_COLUMNS",
    "PriceBasis",
    "ProvinceObservation",
    "RegionSlice",
    "RegionalPanel",
    "SupraRegion",
    "dump_panel",
    "load_panel",
    "supra_region_of",
    "year_slice",
]

CSV_COLUMNS = ("region_id", "region_name", "supra_region", "year", "gdp", "population", "growth_index")
OPTIONAL_COLUMNS = ("alias",)

INDEX_BASE_TOL = 1e-9


class SupraRegion(enum.Enum):
    COASTAL = "coastal"
    MIDDLE = "middle"
    WESTERN = "western"

    @classmethod
    def parse(cls, text: str) -> "SupraRegion":
        return cls(text.strip().lower())

    def __str__(self) -> str:
        return self.value


class PriceBasis(enum.Enum):
    NOMINAL = "nominal"
    CONSTANT = "constant"


_COASTAL = ("Beijing", "Tianjin", "Hebei", "Liaoning", "Shanghai", "Jiangsu",
            "Zhejiang", "Fujian", "Shandong", "Guangdong", "Guangxi", "Hainan")
_MIDDLE = ("Shanxi", "Inner Mongolian", "Jilin", "Heilongjiang", "Anhui",
           "Jiangxi", "Henan", "Hubei", "Hunan")
_WESTERN = ("Yunnan", "Guizhou", "Sichuan", "Chongqing", "Tibet", "Shaanxi",
            "Gansu", "Qinghai", "Ningxia", "Xinjiang")

PROVINCES: dict[str, SupraRegion] = {
    **{name: SupraRegion.COASTAL for name in _COASTAL},
    **{name: SupraRegion.MIDDLE for name in _MIDDLE},
    **{name: SupraRegion.WESTERN for name in _WESTERN},
}

# Common alternate romanizations; the CSV alias column extends this per file.
ALIASES: dict[str, str] = {
    "inner mongolia": "Inner Mongolian",
    "nei mongol": "Inner Mongolian",
    "neimenggu": "Inner Mongolian",
    "xizang": "Tibet",
    "guangxi zhuang": "Guangxi",
    "ningxia hui": "Ningxia",
    "xinjiang uygur": "Xinjiang",
    "xinjiang uyghur": "Xinjiang",
    "peking": "Beijing",
}


def _norm(name: str) -> str:
    return " ".join(name.replace("-", " ").replace("_", " ").split()).lower()


_LOOKUP = {_norm(name): name for name in PROVINCES}
_LOOKUP.update({_norm(alias): name for alias, name in ALIASES.items()})


def canonical_name(name: str, extra_aliases: Mapping[str, str] | None = None) -> str | None:
    """Return the canonical province name for ``name``, or None if unrecognized."""
    key = _norm(name)
    if extra_aliases:
        for alias, target in extra_aliases.items():
            if _norm(alias) == key:
                key = _norm(target)
                break
    return _LOOKUP.get(key)


def supra_region_of(region_name: str) -> SupraRegion:
    """Look up the coastal/middle/western assignment of a Chinese province.

    Matching is case-insensitive and accepts the romanizations in ``ALIASES``.
    Raises :class:`UnknownRegion` otherwise.
    """
    canon = canonical_name(region_name)
    if canon is None:
        raise UnknownRegion(region_name)
    return PROVINCES[canon]


@dataclass(frozen=True)
class ProvinceObservation:
    region_id: str
    region_name: str
    supra_region: SupraRegion
    year: int
    gdp: float
    population: float
    growth_index: float | None = None
    alias: str = ""

    @property
    def per_capita(self) -> float:
        return self.gdp / self.population


class RegionSlice(NamedTuple):
    """One region's figures for a single year."""

    region_id: str
    gdp: float
    population: float
    supra_region: SupraRegion | None = None


@dataclass(frozen=True)
class RegionalPanel:
    """Immutable, validated collection of observations keyed by (region_id, year).

    The panel may be ragged: a region simply has no rows for years before it
    existed.  ``base_year`` is only meaningful for constant-price panels.
    """

    observations: tuple[ProvinceObservation, ...]
    price_basis: PriceBasis = PriceBasis.NOMINAL
    base_year: int | None = None
    _index: dict[tuple[str, int], ProvinceObservation] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        obs = tuple(sorted(self.observations, key=lambda o: (o.region_id, o.year)))
        index: dict[tuple[str, int], ProvinceObservation] = {}
        groups: dict[str, SupraRegion] = {}
        for o in obs:
            key = (o.region_id, o.year)
            if key in index:
                raise DuplicateKey(*key)
            if not o.gdp > 0:
                raise NonPositiveValue("gdp", o.region_id, o.year)
            if not o.population > 0:
                raise NonPositiveValue("population", o.region_id, o.year)
            if o.growth_index is not None and o.growth_index < 0:
                raise NonPositiveValue("growth_index", o.region_id, o.year)
            if groups.setdefault(o.region_id, o.supra_region) is not o.supra_region:
                raise InconsistentSupraRegion(o.region_id)
            index[key] = o
        object.__setattr__(self, "observations", obs)
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.observations)

    @property
    def year_range(self) -> tuple[int, int]:
        years = [o.year for o in self.observations]
        return min(years), max(years)

    @property
    def years(self) -> list[int]:
        return sorted({o.year for o in self.observations})

    @property
    def regions(self) -> list[str]:
        return sorted({o.region_id for o in self.observations})

    def get(self, region_id: str, year: int) -> ProvinceObservation | None:
        return self._index.get((region_id, year))

    def region_series(self, region_id: str) -> list[ProvinceObservation]:
        return [o for o in self.observations if o.region_id == region_id]

    def supra_regions(self) -> dict[str, SupraRegion]:
        return {o.region_id: o.supra_region for o in self.observations}

    def resolve_region(self, name: str) -> str:
        """Map an id, display name or alias (case-insensitive) to a region_id."""
        key = _norm(name)
        for o in self.observations:
            names = [o.region_id, o.region_name, *o.alias.split(";")]
            if any(_norm(n) == key for n in names if n):
                return o.region_id
        canon = canonical_name(name)
        if canon is not None:
            for o in self.observations:
                if canonical_name(o.region_name) == canon:
                    return o.region_id
        raise UnknownRegion(name)

    def with_observations(self, observations: Iterable[ProvinceObservation], **changes) -> "RegionalPanel":
        return replace(self, observations=tuple(observations), **changes)


def year_slice(panel: RegionalPanel, year: int) -> list[RegionSlice]:
    """Observations for ``year`` ordered by region_id; absent regions are not synthesized."""
    rows = [
        RegionSlice(o.region_id, o.gdp, o.population, o.supra_region)
        for o in panel.observations
        if o.year == year
    ]
    if not rows:
        raise EmptyYear(year)
    return rows


def _parse_float(text: str, name: str, line: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise MalformedRow(line, f"{name} is not a number: {text!r}") from None


def load_panel(source: TextIO | str, price_basis: PriceBasis = PriceBasis.NOMINAL,
               base_year: int | None = None) -> RegionalPanel:
    """Parse a panel CSV (see ``CSV_COLUMNS``) from a text stream or string.

    A blank ``growth_index`` cell is stored as None; deflation will reject it.
    When a region's name is a recognized Chinese province but its
    ``supra_region`` column disagrees with the built-in assignment, a
    :class:`DataWarning` is issued and the column value is kept.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    reader = csv.reader(source)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise MalformedRow(1, "missing header row") from None
    missing = [c for c in CSV_COLUMNS if c not in header]
    if missing:
        raise MalformedRow(1, f"header lacks column(s): {', '.join(missing)}")
    col = {name: header.index(name) for name in (*CSV_COLUMNS, *OPTIONAL_COLUMNS) if name in header}

    observations: list[ProvinceObservation] = []
    seen: set[tuple[str, int]] = set()
    warned: set[str] = set()
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise MalformedRow(line, f"expected {len(header)} fields, got {len(row)}")
        cell = {name: row[i].strip() for name, i in col.items()}
        region_id = cell["region_id"]
        if not region_id:
            raise MalformedRow(line, "empty region_id")
        try:
            supra = SupraRegion.parse(cell["supra_region"])
        except ValueError:
            raise MalformedRow(line, f"unknown supra_region {cell['supra_region']!r}") from None
        try:
            year = int(cell["year"])
        except ValueError:
            raise MalformedRow(line, f"year is not an integer: {cell['year']!r}") from None
        gdp = _parse_float(cell["gdp"], "gdp", line)
        population = _parse_float(cell["population"], "population", line)
        gi_text = cell["growth_index"]
        growth_index = _parse_float(gi_text, "growth_index", line) if gi_text else None

        if (region_id, year) in seen:
            raise DuplicateKey(region_id, year)
        seen.add((region_id, year))
        if not gdp > 0:
            raise NonPositiveValue("gdp", region_id, year)
        if not population > 0:
            raise NonPositiveValue("population", region_id, year)
        if growth_index is not None and growth_index < 0:
            raise NonPositiveValue("growth_index", region_id, year)

        alias = cell.get("alias", "")
        name = cell["region_name"] or region_id
        aliases = {a: name for a in alias.split(";") if a}
        canon = canonical_name(name, aliases)
        if canon is not None and PROVINCES[canon] is not supra and region_id not in warned:
            warned.add(region_id)
            warnings.warn(
                f"{name} is listed as {supra} but is {PROVINCES[canon]} in the built-in taxonomy",
                DataWarning,
                stacklevel=2,
            )
        observations.append(
            ProvinceObservation(region_id, name, supra, year, gdp, population, growth_index, alias)
        )

    panel = RegionalPanel(tuple(observations), price_basis, base_year)
    _check_index_base(panel)
    return panel


def _check_index_base(panel: RegionalPanel) -> None:
    first: dict[str, ProvinceObservation] = {}
    for o in panel.observations:  # sorted by (region_id, year)
        first.setdefault(o.region_id, o)
    for o in first.values():
        if o.growth_index is not None and abs(o.growth_index - 1.0) > INDEX_BASE_TOL:
            raise InvalidGrowthIndex(o.region_id, o.year, o.growth_index)


def dump_panel(panel: RegionalPanel, stream: TextIO | None = None) -> str:
    """Write ``panel`` in the CSV schema; floats use repr so reloading is lossless."""
    out = io.StringIO()
    has_alias = any(o.alias for o in panel.observations)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([*CSV_COLUMNS, *(("alias",) if has_alias else ())])
    for o in panel.observations:
        row = [
            o.region_id,
            o.region_name,
            o.supra_region.value,
            o.year,
            repr(float(o.gdp)),
            repr(float(o.population)),
            "" if o.growth_index is None else repr(float(o.growth_index)),
        ]
        if has_alias:
            row.append(o.alias)
        writer.writerow(row)
    text = out.getvalue()
    if stream is not None:
        stream.write(text)
    return text
