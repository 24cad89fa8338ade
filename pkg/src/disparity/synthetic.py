"""Synthetic data with known properties, used to check the estimators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmbeddingFailure
from .panel import ProvinceObservation, PriceBasis, RegionalPanel, SupraRegion

__all__ = ["FgnSpec", "fgn_autocovariance", "generate_equal_panel", "generate_fgn"]


@dataclass(frozen=True)
class FgnSpec:
    hurst_true: float
    length: int
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.hurst_true < 1.0:
            raise ValueError("hurst_true must lie in (0, 1)")
        if self.length < 8:
            raise ValueError("length must be at least 8")


def fgn_autocovariance(h: float, k) -> np.ndarray:
    """Autocovariance of unit-variance fractional Gaussian noise at lag(s) ``k``."""
    k = np.abs(np.asarray(k, dtype=float))
    return 0.5 * (np.abs(k + 1) ** (2 * h) - 2 * k ** (2 * h) + np.abs(k - 1) ** (2 * h))


def generate_fgn(spec: FgnSpec) -> np.ndarray:
    """Exact fGn sample via circulant embedding (Davies-Harte).

    Randomness comes from ``numpy.random.Generator(PCG64(seed))``, so a spec
    always yields the same series on a given numpy version.
    """
    n = spec.length
    h = spec.hurst_true
    gamma = fgn_autocovariance(h, np.arange(n + 1))
    # first row of the 2n circulant: gamma(0..n), gamma(n-1..1)
    row = np.concatenate([gamma, gamma[n - 1:0:-1]])
    m = row.size
    eig = np.fft.fft(row).real
    if eig.min() < -1e-10 * eig.max():
        raise EmbeddingFailure(
            f"circulant embedding has negative eigenvalue {eig.min():.3g} for H={h}, n={n}; "
            "try a longer series"
        )
    eig = np.clip(eig, 0.0, None)
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    z = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    w = np.fft.fft(np.sqrt(eig / m) * z)
    return w.real[:n].copy()


def generate_equal_panel(regions: int, years: int, per_capita: float = 1.0,
                         start_year: int = 1952, seed: int = 0) -> RegionalPanel:
    """Constant-price panel where every region-year has the same GDP per head.

    Populations vary (seeded) so the equality is not an artefact of equal sizes.
    """
    if regions < 2 or years < 1:
        raise ValueError("need regions >= 2 and years >= 1")
    if not per_capita > 0:
        raise ValueError("per_capita must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    groups = list(SupraRegion)
    obs = []
    for r in range(regions):
        pop0 = float(rng.uniform(1e5, 1e7))
        for t in range(years):
            pop = pop0 * (1.01 ** t)
            obs.append(ProvinceObservation(
                region_id=f"R{r:02d}",
                region_name=f"Region {r}",
                supra_region=groups[r % len(groups)],
                year=start_year + t,
                gdp=per_capita * pop,
                population=pop,
                growth_index=1.01 ** t,
            ))
    return RegionalPanel(tuple(obs), PriceBasis.CONSTANT, start_year)
