"""Regenerate src/disparity/data/fixture_panel.csv (synthetic; not real statistics)."""

from pathlib import Path

import numpy as np

from disparity.panel import ProvinceObservation, RegionalPanel, SupraRegion, dump_panel

# id, name, supra-region, first year, GDP per head in first year, population (10k), mean real growth
REGIONS = [
    ("SH", "Shanghai", SupraRegion.COASTAL, 1952, 430.0, 570.0, 0.085),
    ("BJ", "Beijing", SupraRegion.COASTAL, 1952, 165.0, 250.0, 0.080),
    ("GD", "Guangdong", SupraRegion.COASTAL, 1952, 110.0, 2900.0, 0.090),
    ("HI", "Hainan", SupraRegion.COASTAL, 1988, 1200.0, 620.0, 0.095),
    ("HA", "Henan", SupraRegion.MIDDLE, 1952, 75.0, 4400.0, 0.070),
    ("HB", "Hubei", SupraRegion.MIDDLE, 1952, 80.0, 2800.0, 0.072),
    ("GZ", "Guizhou", SupraRegion.WESTERN, 1952, 55.0, 1500.0, 0.062),
    ("SC", "Sichuan", SupraRegion.WESTERN, 1952, 65.0, 6200.0, 0.066),
]


def main() -> None:
    rng = np.random.Generator(np.random.PCG64(20021952))
    years = np.arange(1952, 2001)
    inflation = 0.02 + 0.03 * rng.standard_normal(years.size).cumsum() / 10
    price = np.cumprod(np.concatenate(([1.0], 1 + np.abs(inflation[1:]))))
    obs = []
    for rid, name, supra, start, pc0, pop0, mu in REGIONS:
        idx, pop = 1.0, pop0 * 1e4
        local_price = 1.0
        for t, year in enumerate(years):
            if year < start:
                continue
            if year > start:
                idx *= 1 + mu + 0.05 * rng.standard_normal()
                pop *= 1 + 0.015 + 0.003 * rng.standard_normal()
                local_price *= 1 + 0.01 * rng.standard_normal()
            real = pc0 * pop0 * 1e4 * idx
            nominal = real * price[t] / price[years.tolist().index(start)] * local_price
            obs.append(ProvinceObservation(rid, name, supra, int(year), float(round(nominal, 2)),
                                           float(round(pop)), float(round(idx, 6))))
    panel = RegionalPanel(tuple(obs))
    out = Path(__file__).resolve().parents[1] / "src" / "disparity" / "data" / "fixture_panel.csv"
    out.write_text(dump_panel(panel))


if __name__ == "__main__":
    main()
