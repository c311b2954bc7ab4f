"""Projection outlyingness: scaled deviation |x - median| / MAD and its
sup-over-directions multivariate generalization, plus the induced depth.

Median convention (fixed so results are exactly reproducible): the average
of the order statistics at positions ceil(n/2) and floor(n/2)+1 (1-based).
MAD is the median, same convention, of absolute deviations from that median,
with no consistency factor.
"""

from __future__ import annotations

import warnings

import numpy as np

from .data import Dataset, as_point
from .halfspace import DepthConfig, unit_directions


class DegenerateScaleWarning(UserWarning):
    """Scale (MAD) is zero along the evaluated direction."""


class DegenerateDirectionsError(ValueError):
    """Every sampled direction had zero MAD; no outlyingness is defined."""


def _median_sorted(v: np.ndarray) -> float:
    # v sorted ascending; average of the two central order statistics
    n = v.shape[0]
    i = (n + 1) // 2 - 1  # ceil(n/2), 0-based
    j = n // 2  # floor(n/2) + 1, 0-based
    return 0.5 * (float(v[i]) + float(v[j]))


def median_mad(values: np.ndarray) -> tuple[float, float]:
    """Median and unscaled MAD of a 1-D array, midpoint-average convention."""
    v = np.sort(np.asarray(values, dtype=float))
    med = _median_sorted(v)
    mad = _median_sorted(np.sort(np.abs(v - med)))
    return med, mad


def po_1d(ds: Dataset, x: float) -> float:
    """Scaled deviation |x - median| / MAD for a univariate sample.

    When MAD is zero (more than half the points identical) the value is
    +inf for x off the median and 0 at the median, and a
    DegenerateScaleWarning is issued.
    """
    if ds.d != 1:
        raise ValueError(f"po_1d requires d = 1, got d = {ds.d}")
    x = float(x)
    if not np.isfinite(x):
        raise ValueError("query must be finite")
    med, mad = median_mad(ds.data[:, 0])
    dev = abs(x - med)
    if mad == 0.0:
        warnings.warn(
            "MAD is zero: more than half the sample is identical", DegenerateScaleWarning
        )
        return 0.0 if dev == 0.0 else np.inf
    return dev / mad


def _po_profile(
    data: np.ndarray, queries: np.ndarray, directions: np.ndarray
) -> tuple[np.ndarray, int]:
    """Max scaled deviation over directions for each query.

    Directions with zero projected MAD are skipped; returns the per-query
    maxima and the number of skipped directions.
    """
    proj = data @ directions.T  # (n, k)
    ps = np.sort(proj, axis=0)
    n = ps.shape[0]
    i = (n + 1) // 2 - 1
    j = n // 2
    med = 0.5 * (ps[i] + ps[j])
    dev = np.sort(np.abs(proj - med), axis=0)
    mad = 0.5 * (dev[i] + dev[j])
    good = mad > 0.0
    n_skipped = int(np.count_nonzero(~good))
    if not np.any(good):
        return np.full(queries.shape[0], np.nan), n_skipped
    qproj = queries @ directions[good].T  # (m, k_good)
    ratios = np.abs(qproj - med[good]) / mad[good]
    return ratios.max(axis=1), n_skipped


def po_approx(ds: Dataset, x, cfg: DepthConfig) -> float:
    """Projection outlyingness approximated from below over sampled directions.

    Directions come from substream 0 of the config's seed (same scheme as
    ``depth_approx``), so values are deterministic and nondecreasing when the
    budget grows along a fixed stream.
    """
    x = as_point(x, ds.d)
    rng = cfg.seed.generator(0)
    u = unit_directions(rng, cfg.n_directions, ds.d)
    vals, n_skipped = _po_profile(ds.data, x[None, :], u)
    if np.isnan(vals[0]):
        raise DegenerateDirectionsError(
            f"all {n_skipped} sampled directions have zero MAD"
        )
    return float(vals[0])


def projection_depth(ds: Dataset, x, cfg: DepthConfig) -> float:
    """Depth induced from projection outlyingness via 1 / (1 + O)."""
    o = po_approx(ds, x, cfg)
    return 1.0 / (1.0 + o)
