"""Measurement grids on the binary angular-momentum disk and scattered
linear interpolation.

The disk lives in the plane (l_Bx, l_By): projection of the binary
angular momentum onto the total and the perpendicular magnitude, so the
physical domain at fixed binding energy is the half-disk l_By >= 0 of
radius l_max(eps_B).  Grids cluster points toward the rim, where the
absorptivity varies fastest, by building a lattice from semicircle
node coordinates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import LinearNDInterpolator
from scipy.spatial import Delaunay

__all__ = [
    "DiskGrid",
    "chebyshev_disk_grid",
    "uniform_disk_grid",
    "combined_disk_grid",
    "bivariate_points",
    "LinearInterpolator2D",
]

_REL_TOL = 1e-12


@dataclass(frozen=True)
class DiskGrid:
    """Point set on the half-disk of radius l_max (columns l_Bx, l_By)."""

    points: np.ndarray
    l_max: float

    def __len__(self) -> int:
        return self.points.shape[0]


def _lattice(xs: np.ndarray, ys: np.ndarray, radius: float) -> np.ndarray:
    r2_cap = radius * radius * (1.0 + _REL_TOL)
    pts = [(x, y) for y in ys for x in xs if x * x + y * y <= r2_cap]
    return np.array(pts, dtype=float).reshape(-1, 2)


def chebyshev_disk_grid(n: int, l_max: float) -> DiskGrid:
    """Rim-clustered half-disk lattice from n semicircle nodes.

    Node angles are (2i - 1) pi / (2n).  The lattice is the Cartesian
    product of the distinct node x-coordinates (plus the endpoints
    +-l_max) with the distinct node y-coordinates (plus zero), clipped to
    the half-disk.  The semicircle nodes themselves appear as lattice
    points, so the rim is always sampled.
    """
    if n < 1:
        raise ValueError("need at least one node")
    half = n // 2
    cos_vals = [math.cos((2 * i - 1) * math.pi / (2 * n)) for i in range(1, half + 1)]
    xs = [-1.0] + [-c for c in cos_vals]
    if n % 2 == 1:
        xs.append(0.0)
    xs += list(reversed(cos_vals)) + [1.0]
    sin_vals = [math.sin((2 * i - 1) * math.pi / (2 * n))
                for i in range(1, (n + 1) // 2 + 1)]
    ys = [0.0] + sorted(set(sin_vals))
    pts = _lattice(l_max * np.array(xs), l_max * np.array(ys), l_max)
    return DiskGrid(points=pts, l_max=l_max)


def uniform_disk_grid(radius: float, spacing: float, half: bool = False,
                      l_max: float | None = None) -> DiskGrid:
    """Square lattice with the given spacing clipped to a disk of the given
    radius (anchored at the origin); `half` keeps only l_By >= 0."""
    if spacing <= 0 or radius < 0:
        raise ValueError("radius and spacing must be positive")
    nmax = int(math.floor(radius / spacing * (1.0 + _REL_TOL)))
    coords = spacing * np.arange(-nmax, nmax + 1)
    ys = coords[coords >= 0.0] if half else coords
    pts = _lattice(coords, ys, radius)
    return DiskGrid(points=pts, l_max=radius if l_max is None else l_max)


def combined_disk_grid(n: int, l_max: float, inner_radius_frac: float = 0.4,
                       inner_spacing_frac: float = 0.1,
                       drop_origin: bool = True) -> DiskGrid:
    """Rim-clustered lattice plus a uniform refinement of the inner disk.

    The origin (a radial binary, a degenerate target) is dropped by
    default.  Duplicate points from the overlap are merged.
    """
    rim = chebyshev_disk_grid(n, l_max)
    inner = uniform_disk_grid(inner_radius_frac * l_max, inner_spacing_frac * l_max,
                              half=True, l_max=l_max)
    pts = np.vstack([rim.points, inner.points])
    if drop_origin:
        keep = np.hypot(pts[:, 0], pts[:, 1]) > _REL_TOL * l_max
        pts = pts[keep]
    # merge coincident points
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]
    if len(pts) > 1:
        diff = np.diff(pts, axis=0)
        keep = np.concatenate([[True], np.any(np.abs(diff) > _REL_TOL * l_max, axis=1)])
        pts = pts[keep]
    return DiskGrid(points=pts, l_max=l_max)


def bivariate_points(eps_levels, l_values, k: float, e_max: float,
                     include_boundary: bool = True) -> np.ndarray:
    """Cartesian product of energy levels and angular momenta, restricted to
    the allowed region; optionally adds the circular-orbit boundary point
    l_max(eps) at every level.  Returns rows (eps, l)."""
    pts = []
    for eps in eps_levels:
        if eps >= 0.0 or eps > e_max:
            continue
        lmax = math.sqrt(-k / (2.0 * eps))
        for l in l_values:
            if 0.0 < l <= lmax * (1.0 + _REL_TOL):
                pts.append((float(eps), float(min(l, lmax))))
        if include_boundary:
            pts.append((float(eps), float(lmax)))
    return np.array(pts, dtype=float).reshape(-1, 2)


class LinearInterpolator2D:
    """Piecewise-linear interpolation on the Delaunay triangulation of a
    scattered point set; exact at the nodes, linear functions are
    reproduced exactly, queries outside the hull raise."""

    def __init__(self, points, values, clamp: tuple[float, float] | None = None):
        points = np.asarray(points, float)
        values = np.asarray(values, float)
        if points.ndim != 2 or points.shape[1] != 2:
            raise ValueError("points must be (n, 2)")
        if len(points) != len(values):
            raise ValueError("points and values disagree in length")
        if len(points) < 3:
            raise ValueError("need at least three points")
        self._tri = Delaunay(points)
        self._interp = LinearNDInterpolator(self._tri, values)
        self._clamp = clamp

    def __call__(self, query) -> np.ndarray:
        query = np.atleast_2d(np.asarray(query, float))
        out = self._interp(query)
        bad = np.isnan(out)
        if np.any(bad):
            idx = int(np.argmax(bad))
            raise ValueError(
                f"query point {tuple(query[idx])} lies outside the grid hull")
        if self._clamp is not None:
            out = np.clip(out, self._clamp[0], self._clamp[1])
        return out

    def inside(self, query) -> np.ndarray:
        """Vector of bools: which query points are inside the hull."""
        query = np.atleast_2d(np.asarray(query, float))
        return self._tri.find_simplex(query) >= 0
