"""Regional economic disparity measures and rescaled-range persistence analysis."""

from importlib import resources

__version__ = "0.1.0"

from .deflation import deflate, per_capita
from .inequality import (
    LogBase,
    Metric,
    disparity_series,
    fit_beta,
    gini_curvefit,
    gini_exact,
    lorenz_curve,
    make_slice,
    theil,
    theil_decompose,
)
from .panel import PriceBasis, RegionalPanel, SupraRegion, dump_panel, load_panel, supra_region_of, year_slice
from .ratios import extreme_pair, ratio_series
from .rs import classify, correlation_fn, hurst, rs_statistic, subperiod_hurst
from .synthetic import FgnSpec, generate_equal_panel, generate_fgn


def fixture_panel_path():
    """Path-like handle to the small bundled example panel (nominal prices)."""
    return resources.files(__name__).joinpath("data/fixture_panel.csv")
