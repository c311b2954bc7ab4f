"""Depth-Outlyingness-Quantile-Rank functions induced from 2-D halfspace
depth contours.

The empirical central region at level a is the convex hull of the sample
points whose exact depth is >= a; its probability weight p is the fraction
of sample points lying in the closed hull.  The rank of a query x is
u = p * v, where p is the weight of the region at x's own depth level and v
is the unit direction toward x from the Tukey median M.  The quantile map
inverts this along rays from M by bisection on the (nondecreasing, stepwise)
weight profile.  Outlyingness is ||u|| and depth is recovered as 1/(1+O),
so all four functions share one contour system.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .data import Dataset, as_point
from .halfspace import (
    _min_halfplane_counts,
    max_depth,
    sample_depths,
    tukey_median,
)

_LEVEL_EPS = 1e-12  # slack for comparing attained depth levels (spacing 1/n)
_RANK_CAP = 1.0 - 1e-9


class EmptyRegionError(ValueError):
    """No sample point attains the requested depth level."""


@dataclass(frozen=True)
class CentralRegion:
    """Convex central region {x : depth(x) >= level} of a 2-D sample."""

    level: float
    vertices: np.ndarray  # counterclockwise hull vertices, shape (k, 2)
    weight: float  # fraction of sample points in the closed region

    def __post_init__(self):
        self.vertices.setflags(write=False)


@dataclass(frozen=True)
class RankVector:
    """Quantile index u = p * v of a query point."""

    u: np.ndarray
    p: float  # weight of the central region at the query's depth level
    v: np.ndarray  # unit direction from the Tukey median (zero at the median)

    def __post_init__(self):
        self.u.setflags(write=False)
        self.v.setflags(write=False)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: np.ndarray) -> np.ndarray:
    """Counterclockwise convex hull by monotone chain.

    Degenerate inputs are allowed: one vertex for a single distinct point,
    the two extreme points for collinear data.
    """
    pts = np.unique(np.asarray(points, dtype=float), axis=0)
    if pts.shape[0] == 1:
        return pts
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]

    def build(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0.0:
                chain.pop()
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


def points_in_hull(hull: np.ndarray, points: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Boolean mask of points inside the closed convex polygon ``hull``.

    ``hull`` is a CCW vertex list as produced by :func:`convex_hull`;
    degenerate hulls (segment, single point) are handled.  ``tol`` is an
    absolute distance tolerance, by default 1e-9 times the coordinate scale.
    """
    hull = np.asarray(hull, dtype=float)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if tol is None:
        scale = max(1.0, float(np.max(np.abs(hull))) if hull.size else 1.0)
        tol = 1e-9 * scale
    k = hull.shape[0]
    if k == 1:
        return np.linalg.norm(pts - hull[0], axis=1) <= tol
    if k == 2:
        a, b = hull[0], hull[1]
        d = b - a
        ln = float(np.linalg.norm(d))
        rel = pts - a
        cross = np.abs(rel[:, 0] * d[1] - rel[:, 1] * d[0]) / ln
        t = rel @ d
        return (cross <= tol) & (t >= -tol * ln) & (t <= ln * ln + tol * ln)
    inside = np.ones(pts.shape[0], dtype=bool)
    for i in range(k):
        a = hull[i]
        b = hull[(i + 1) % k]
        e = b - a
        ln = float(np.linalg.norm(e))
        cross = e[0] * (pts[:, 1] - a[1]) - e[1] * (pts[:, 0] - a[0])
        inside &= cross >= -tol * ln
    return inside


class _RegionTable:
    """Attained depth levels of a sample with lazily built hulls/weights.

    Hull construction and containment counting are deferred per level: the
    rank/quantile machinery only ever visits a handful of levels, and eager
    construction would cost O(n) hulls over O(n) points each.  Once built, a
    level's entry is immutable and may be read concurrently.
    """

    def __init__(self, ds: Dataset):
        self.ds = ds
        self.depths = sample_depths(ds)
        self.levels = np.unique(self.depths)
        self._cache: dict[int, tuple[np.ndarray, float]] = {}

    def entry(self, idx: int) -> tuple[np.ndarray, float]:
        got = self._cache.get(idx)
        if got is None:
            lev = self.levels[idx]
            sel = self.ds.data[self.depths >= lev - _LEVEL_EPS]
            hull = convex_hull(sel)
            hull.setflags(write=False)
            inside = points_in_hull(hull, self.ds.data)
            got = (hull, int(np.count_nonzero(inside)) / self.ds.n)
            self._cache[idx] = got
        return got


@functools.lru_cache(maxsize=32)
def _region_table(ds: Dataset) -> _RegionTable:
    return _RegionTable(ds)


def _require_2d(ds: Dataset, op: str) -> None:
    if ds.d != 2:
        raise ValueError(f"{op} requires d = 2, got d = {ds.d}")


def central_region(ds: Dataset, alpha: float) -> CentralRegion:
    """Empirical central region at depth level alpha.

    Raises EmptyRegionError when no sample point attains the level (alpha may
    legitimately exceed every sample point's depth while staying below the
    maximal depth, which is attained off the sample).
    """
    _require_2d(ds, "central_region")
    alpha = float(alpha)
    md = max_depth(ds)
    if not 0.0 < alpha <= md + _LEVEL_EPS:
        raise ValueError(f"level must lie in (0, max_depth={md}], got {alpha}")
    table = _region_table(ds)
    idx = int(np.searchsorted(table.levels, alpha - _LEVEL_EPS, side="left"))
    if idx >= len(table.levels):
        raise EmptyRegionError(f"no sample point has depth >= {alpha}")
    hull, weight = table.entry(idx)
    return CentralRegion(alpha, np.array(hull), weight)


def _weight_at_depth(ds: Dataset, depth: float) -> float:
    """Region weight at a query's own depth level.

    Zero depth means the query lies outside every region: weight 1 (capped
    upstream).  A query deeper than every sample point falls back to the
    deepest nonempty region.
    """
    table = _region_table(ds)
    if depth < table.levels[0] - _LEVEL_EPS:
        return 1.0
    idx = int(np.searchsorted(table.levels, depth - _LEVEL_EPS, side="left"))
    if idx >= len(table.levels):
        idx = len(table.levels) - 1
    return table.entry(idx)[1]


def rank_function(ds: Dataset, x) -> RankVector:
    """Centered rank u = p * v of a query point, with ||u|| <= 1 - 1e-9."""
    _require_2d(ds, "rank_function")
    x = as_point(x, 2)
    m, _ = tukey_median(ds)
    if x[0] == m[0] and x[1] == m[1]:
        zero = np.zeros(2)
        return RankVector(zero, 0.0, zero.copy())
    diff = x - m
    v = diff / np.linalg.norm(diff)
    cnt = int(_min_halfplane_counts(ds.data, x[None, :])[0])
    if cnt == 0:
        p = 1.0
    else:
        p = _weight_at_depth(ds, cnt / ds.n)
    p = min(p, _RANK_CAP)
    return RankVector(p * v, p, v)


def outlyingness(ds: Dataset, x) -> float:
    """DOQR outlyingness ||rank(x)||, in [0, 1)."""
    return rank_function(ds, x).p


def doqr_depth(ds: Dataset, x) -> float:
    """Depth recovered from outlyingness via 1 / (1 + O); lies in (0, 1]."""
    return 1.0 / (1.0 + outlyingness(ds, x))


def sign_test(ds: Dataset, theta0) -> tuple[RankVector, float]:
    """Sample rank at a hypothesized center and its norm as test statistic."""
    rv = rank_function(ds, theta0)
    return rv, rv.p


def quantile_function(ds: Dataset, u) -> np.ndarray:
    """Point whose central-region weight first reaches ||u|| along the ray
    from the Tukey median in direction u; requires ||u|| < 1.

    The weight profile along the ray is a nondecreasing step function, so the
    crossing is located by bisection; the search stops when the weight is
    within 1/n of the target or the bracket is below 1e-6 of the ray length.
    """
    _require_2d(ds, "quantile_function")
    u = as_point(u, 2)
    nu = float(np.linalg.norm(u))
    if nu >= 1.0:
        raise ValueError(f"quantile index must satisfy ||u|| < 1, got {nu}")
    m, _ = tukey_median(ds)
    if nu == 0.0:
        return m.copy()
    v = u / nu
    radius = float(np.max(np.linalg.norm(ds.data - m, axis=1)))
    if radius == 0.0:
        return m.copy()
    t_max = 2.0 * radius
    n = ds.n

    def weight_at(t: float) -> float:
        y = m + t * v
        cnt = int(_min_halfplane_counts(ds.data, y[None, :])[0])
        return 1.0 if cnt == 0 else _weight_at_depth(ds, cnt / n)

    if weight_at(0.0) >= nu:
        return m.copy()
    lo, hi = 0.0, t_max
    while hi - lo > 1e-6 * t_max:
        mid = 0.5 * (lo + hi)
        w = weight_at(mid)
        if abs(w - nu) <= 1.0 / n:
            return m + mid * v
        if w >= nu:
            hi = mid
        else:
            lo = mid
    return m + 0.5 * (lo + hi) * v


def trimmed_mean(ds: Dataset, alpha: float) -> np.ndarray:
    """Coordinatewise mean of the sample points with depth >= alpha."""
    _require_2d(ds, "trimmed_mean")
    alpha = float(alpha)
    if alpha <= 0.0:
        raise ValueError("trim level must be positive")
    depths = sample_depths(ds)
    sel = ds.data[depths >= alpha - _LEVEL_EPS]
    if sel.shape[0] == 0:
        raise EmptyRegionError(f"no sample point has depth >= {alpha}")
    return sel.mean(axis=0)


def contour_polyline(ds: Dataset, alpha: float) -> np.ndarray:
    """CCW vertex list of the depth contour at level alpha (hull boundary)."""
    return central_region(ds, alpha).vertices
