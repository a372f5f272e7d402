"""Flux densities over binary orbital elements and density-map tools.

For an ensemble at fixed total energy E and angular momentum L the flux
of phase-space trajectories through configurations with a binary at
(eps_B, l_B) factorizes, up to one overall constant that cancels in all
comparisons here, into

    dF  propto  sqrt(k) (-2 eps_B)^{-3/2} / L   d eps_B  d l_B  d l_F

with the outer angular momentum confined to the closure interval
[L - l_B, L + l_B] and the binary confined to the allowed region

    -2 eps_B l_B^2 <= k   and   eps_B <= E,        k = mu (m_a m_b)^2.

Integrating out l_F gives the marginal density proportional to
l_B (-eps_B)^{-3/2}.  Empirical densities are estimated with
boundary-corrected histograms: raw counts divided by the area of the
intersection of each bin with the allowed region, computed in closed
form, so cells straddling the circular-orbit boundary are not diluted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "flux_marginal",
    "flux_joint",
    "flux_disk_density",
    "marginalize_flux_numeric",
    "marginalize_absorptivity",
    "l_f_interval",
    "allowed_area",
    "DensityMap2D",
    "boundary_corrected_histogram",
    "normalize_by_median",
    "ratio_band",
]


def flux_marginal(eps_b, l_b, k: float, e_max: float):
    """Unnormalized marginal flux density over (eps_B, l_B).

    Zero outside the allowed region; proportional to l_B (-eps_B)^{-3/2}
    inside.  Inputs broadcast.
    """
    eps_b = np.asarray(eps_b, float)
    l_b = np.asarray(l_b, float)
    inside = (eps_b < 0.0) & (eps_b <= e_max) & (-2.0 * eps_b * l_b**2 <= k) & (l_b >= 0.0)
    with np.errstate(invalid="ignore"):
        dens = np.where(inside, l_b * np.abs(eps_b) ** -1.5, 0.0)
    return dens if dens.ndim else float(dens)


def flux_joint(eps_b, l_b, l_f, k: float, e_max: float, big_l: float):
    """Unnormalized joint flux density over (eps_B, l_B, l_F): flat in both
    angular momenta on the closure interval, (-eps_B)^{-3/2} in energy."""
    eps_b = np.asarray(eps_b, float)
    l_b = np.asarray(l_b, float)
    l_f = np.asarray(l_f, float)
    inside = (
        (eps_b < 0.0) & (eps_b <= e_max) & (-2.0 * eps_b * l_b**2 <= k)
        & (l_f >= np.abs(big_l - l_b)) & (l_f <= big_l + l_b)
    )
    with np.errstate(invalid="ignore"):
        dens = np.where(inside, np.abs(eps_b) ** -1.5, 0.0)
    return dens if dens.ndim else float(dens)


def flux_disk_density(eps_b, l_bx, l_by, k: float, e_max: float, big_l: float):
    """Unnormalized flux density on the half-disk (l_Bx, l_By) at fixed
    eps_B: proportional to l_By / (l_B l_F) (-eps_B)^{-3/2} with
    l_F^2 = L^2 + l_B^2 - 2 L l_Bx."""
    eps_b = np.asarray(eps_b, float)
    l_bx = np.asarray(l_bx, float)
    l_by = np.asarray(l_by, float)
    l_b = np.hypot(l_bx, l_by)
    l_f = np.sqrt(np.maximum(big_l**2 + l_b**2 - 2.0 * big_l * l_bx, 0.0))
    inside = (eps_b < 0.0) & (eps_b <= e_max) & (-2.0 * eps_b * l_b**2 <= k) & (l_by >= 0.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        dens = np.where(inside & (l_b > 0) & (l_f > 0),
                        l_by / (l_b * l_f) * np.abs(eps_b) ** -1.5, 0.0)
    return dens if dens.ndim else float(dens)


def l_f_interval(l_b: float, big_l: float) -> tuple[float, float]:
    """Closure interval for the outer angular momentum."""
    return abs(big_l - l_b), big_l + l_b


def marginalize_flux_numeric(eps_b: float, l_b: float, k: float, e_max: float,
                             big_l: float, nodes: int = 128) -> float:
    """Marginal flux density by quadrature instead of the closed form.

    Integrates the half-disk density over the ring of radius l_B, picking
    up the same normalization as `flux_marginal`: the ring integral of
    l_By / (l_B l_F) collapses to 2/L analytically, so the quadrature
    result times L/2 must match the closed form.  Kept as an independent
    route for cross-checks.
    """
    if l_b < 0.0:
        raise ValueError("l_b must be nonnegative")
    if l_b == 0.0:
        return 0.0
    x, wts = np.polynomial.legendre.leggauss(nodes)
    sigma = 0.5 * math.pi * (x + 1.0)
    ring = flux_disk_density(eps_b, l_b * np.cos(sigma), l_b * np.sin(sigma),
                             k, e_max, big_l)
    integral = 0.5 * math.pi * float(np.sum(wts * ring)) * l_b
    return 0.5 * big_l * integral


def marginalize_absorptivity(field, l_b: float, big_l: float,
                             nodes: int = 256) -> float:
    """Flux-weighted ring average of an in-plane absorptivity field.

    `field(l_bx, l_by)` evaluates the trivariate absorptivity on the
    upper half-disk.  Under the flat-in-l_F flux measure the weighting
    over the ring of radius l_B is uniform in l_F, so the average is a
    Gauss-Legendre quadrature over the closure interval with the ring
    angle recovered from l_F.  A constant field averages to itself.
    """
    if l_b < 0.0:
        raise ValueError("l_b must be nonnegative")
    if l_b == 0.0:
        return float(field(0.0, 0.0))
    lo, hi = big_l - l_b, big_l + l_b
    x, wts = np.polynomial.legendre.leggauss(nodes)
    l_f = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
    cos_sigma = np.clip((big_l**2 + l_b**2 - l_f**2) / (2.0 * big_l * l_b), -1.0, 1.0)
    sin_sigma = np.sqrt(1.0 - cos_sigma**2)
    vals = np.asarray(field(l_b * cos_sigma, l_b * sin_sigma), float)
    return float(np.sum(wts * vals) / np.sum(wts))


def _lmax_antiderivative(eps: float, k: float) -> float:
    """Antiderivative of l_max(eps) = sqrt(k / (-2 eps)) for eps < 0."""
    return -2.0 * math.sqrt(0.5 * k) * math.sqrt(-eps)


def allowed_area(eps_lo: float, eps_hi: float, l_lo: float, l_hi: float,
                 k: float, e_max: float) -> float:
    """Area of [eps_lo, eps_hi] x [l_lo, l_hi] intersected with the allowed
    region, in closed form."""
    if eps_lo > eps_hi or l_lo > l_hi:
        raise ValueError("interval bounds out of order")
    hi = min(eps_hi, e_max, 0.0)
    lo = eps_lo
    if hi <= lo:
        return 0.0
    l_lo = max(l_lo, 0.0)
    if l_hi <= l_lo:
        return 0.0

    def eps_cross(l: float) -> float:
        # energy at which l_max equals l; deeper energies exclude l
        if l <= 0.0:
            return -math.inf
        return -k / (2.0 * l * l)

    area = 0.0
    # band where the cap exceeds l_hi: full rectangle width
    lo_full = max(lo, eps_cross(l_hi))
    if hi > lo_full:
        area += (hi - lo_full) * (l_hi - l_lo)
    # band where the cap falls between l_lo and l_hi
    lo_part = max(lo, eps_cross(l_lo))
    hi_part = min(hi, eps_cross(l_hi)) if l_hi > 0 else hi
    if hi_part > lo_part:
        area += (_lmax_antiderivative(hi_part, k) - _lmax_antiderivative(lo_part, k)
                 - l_lo * (hi_part - lo_part))
    return area


@dataclass(frozen=True)
class DensityMap2D:
    """Histogram density over (eps_B, l_B) with per-cell allowed areas.

    density[i, j] covers eps in [eps_edges[i], eps_edges[i+1]) and l in
    [l_edges[j], l_edges[j+1]); cells with zero allowed area hold NaN.
    """

    eps_edges: np.ndarray
    l_edges: np.ndarray
    counts: np.ndarray
    areas: np.ndarray
    density: np.ndarray
    n_samples: int

    @property
    def eps_centers(self) -> np.ndarray:
        return 0.5 * (self.eps_edges[:-1] + self.eps_edges[1:])

    @property
    def l_centers(self) -> np.ndarray:
        return 0.5 * (self.l_edges[:-1] + self.l_edges[1:])

    def integral(self) -> float:
        """Integral of the density over the allowed part of the domain."""
        good = self.areas > 0.0
        return float(np.sum(self.density[good] * self.areas[good]))


def boundary_corrected_histogram(eps_samples, l_samples, eps_edges, l_edges,
                                 k: float, e_max: float) -> DensityMap2D:
    """Empirical density over the binned (eps_B, l_B) plane.

    Every cell's count is divided by the total in-range sample count and
    by the cell's allowed area, so the density integrates to one over the
    covered region and cells clipped by the circular-orbit boundary are
    corrected rather than diluted.
    """
    eps_edges = np.asarray(eps_edges, float)
    l_edges = np.asarray(l_edges, float)
    eps_samples = np.asarray(eps_samples, float)
    l_samples = np.asarray(l_samples, float)
    counts, _, _ = np.histogram2d(eps_samples, l_samples, bins=(eps_edges, l_edges))
    n_in = int(counts.sum())
    areas = np.empty_like(counts)
    for i in range(len(eps_edges) - 1):
        for j in range(len(l_edges) - 1):
            areas[i, j] = allowed_area(eps_edges[i], eps_edges[i + 1],
                                       l_edges[j], l_edges[j + 1], k, e_max)
    with np.errstate(invalid="ignore", divide="ignore"):
        density = np.where(areas > 0.0, counts / (max(n_in, 1) * areas), np.nan)
    return DensityMap2D(eps_edges=eps_edges, l_edges=l_edges, counts=counts,
                        areas=areas, density=density, n_samples=n_in)


def normalize_by_median(values: np.ndarray, mask: np.ndarray | None = None) -> np.ndarray:
    """Divide by the median over the masked (or finite) entries."""
    values = np.asarray(values, float)
    if mask is None:
        mask = np.isfinite(values)
    pool = values[mask]
    pool = pool[np.isfinite(pool)]
    if pool.size == 0:
        raise ValueError("no finite values to normalize by")
    med = float(np.median(pool))
    if med == 0.0:
        raise ValueError("median is zero; cannot normalize")
    return values / med


def ratio_band(ratios: np.ndarray, lo: float = 16.0, hi: float = 84.0) -> tuple[float, float]:
    """Percentile band of the finite entries of a ratio field."""
    pool = np.asarray(ratios, float).ravel()
    pool = pool[np.isfinite(pool)]
    if pool.size == 0:
        raise ValueError("no finite ratios")
    return float(np.percentile(pool, lo)), float(np.percentile(pool, hi))
