"""Two-body orbital elements and anomaly solvers (G = 1).

Elements describe the relative orbit of a Kepler problem with gravity
parameter GM = total mass.  `energy` is the specific orbital energy
v^2/2 - GM/r; negative values are elliptic orbits, positive hyperbolic.
Angles follow the usual convention: inclination about the x-y reference
plane, node longitude measured from +x, pericenter argument from the
ascending node, all in radians.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "OrbitalElements",
    "solve_kepler_elliptic",
    "solve_kepler_hyperbolic",
    "elements_to_cartesian",
    "cartesian_to_elements",
    "mean_anomaly_at_radius",
    "orbital_period",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class OrbitalElements:
    """Keplerian elements of a relative two-body orbit.

    energy : specific orbital energy, nonzero (sign selects the conic)
    eccentricity : >= 0; < 1 for elliptic, > 1 for hyperbolic
    inclination, node_longitude, pericenter_argument : orientation angles
    mean_anomaly : phase; unrestricted for hyperbolic orbits
    total_mass : GM of the effective one-body problem
    """

    energy: float
    eccentricity: float
    inclination: float
    node_longitude: float
    pericenter_argument: float
    mean_anomaly: float
    total_mass: float

    def __post_init__(self):
        if self.energy == 0.0:
            raise ValueError("parabolic orbits (energy == 0) are not supported")
        if self.eccentricity < 0.0:
            raise ValueError("eccentricity must be nonnegative")
        if self.total_mass <= 0.0:
            raise ValueError("total mass must be positive")
        if self.energy < 0.0 and self.eccentricity >= 1.0:
            raise ValueError("bound orbit requires eccentricity < 1")
        if self.energy > 0.0 and self.eccentricity <= 1.0:
            raise ValueError("hyperbolic orbit requires eccentricity > 1")

    @property
    def orbit_class(self) -> str:
        return "elliptic" if self.energy < 0.0 else "hyperbolic"

    @property
    def semi_major_axis(self) -> float:
        """Signed semi-major axis; positive for bound orbits."""
        return -self.total_mass / (2.0 * self.energy)

    @property
    def pericenter_distance(self) -> float:
        return abs(self.semi_major_axis) * abs(1.0 - self.eccentricity) if self.energy < 0 \
            else abs(self.semi_major_axis) * (self.eccentricity - 1.0)

    @property
    def specific_angular_momentum(self) -> float:
        e2 = self.eccentricity**2
        return math.sqrt(max(0.0, self.total_mass**2 * (e2 - 1.0) / (2.0 * self.energy)))


def solve_kepler_elliptic(mean_anomaly: float, eccentricity: float,
                          tol: float = 1e-14, max_iter: int = 64) -> float:
    """Solve E - e*sin(E) = M for the eccentric anomaly.

    Newton iteration with a bisection safeguard on [M - e, M + e], where
    the residual is monotone.  Converges to |residual| < tol (default well
    below 1e-12) for all 0 <= e < 1.
    """
    if not 0.0 <= eccentricity < 1.0:
        raise ValueError(f"elliptic solver requires 0 <= e < 1, got {eccentricity}")
    m = math.fmod(mean_anomaly, _TWO_PI)
    shift = mean_anomaly - m
    e = eccentricity
    lo, hi = m - e, m + e
    ecc_an = m + e * math.sin(m)
    for _ in range(max_iter):
        f = ecc_an - e * math.sin(ecc_an) - m
        if abs(f) < tol:
            break
        if f > 0.0:
            hi = ecc_an
        else:
            lo = ecc_an
        step = f / (1.0 - e * math.cos(ecc_an))
        ecc_an -= step
        if not lo <= ecc_an <= hi:
            ecc_an = 0.5 * (lo + hi)
    return ecc_an + shift


def solve_kepler_hyperbolic(mean_anomaly: float, eccentricity: float,
                            tol: float = 1e-13, max_iter: int = 128) -> float:
    """Solve e*sinh(H) - H = M for the hyperbolic anomaly.

    The residual is monotone increasing, so Newton steps are safeguarded
    by an expanding bracket.  The tolerance is relative to max(1, |M|) to
    stay meaningful far along the asymptote.
    """
    if eccentricity <= 1.0:
        raise ValueError(f"hyperbolic solver requires e > 1, got {eccentricity}")
    m = mean_anomaly
    e = eccentricity
    # asinh(m / e) is exact for e >> 1 and a decent start everywhere
    h = math.asinh(m / e)
    scale = max(1.0, abs(m))
    lo, hi = -math.inf, math.inf
    for _ in range(max_iter):
        f = e * math.sinh(h) - h - m
        if abs(f) < tol * scale:
            break
        if f > 0.0:
            hi = h
        else:
            lo = h
        h -= f / (e * math.cosh(h) - 1.0)
        if not lo < h < hi:
            if math.isinf(lo) or math.isinf(hi):
                h = 2.0 * (lo if math.isinf(hi) else hi)
            else:
                h = 0.5 * (lo + hi)
    return h


def _perifocal_to_inertial(elem: OrbitalElements) -> np.ndarray:
    ci, si = math.cos(elem.inclination), math.sin(elem.inclination)
    co, so = math.cos(elem.node_longitude), math.sin(elem.node_longitude)
    cw, sw = math.cos(elem.pericenter_argument), math.sin(elem.pericenter_argument)
    rz_node = np.array([[co, -so, 0.0], [so, co, 0.0], [0.0, 0.0, 1.0]])
    rx_inc = np.array([[1.0, 0.0, 0.0], [0.0, ci, -si], [0.0, si, ci]])
    rz_peri = np.array([[cw, -sw, 0.0], [sw, cw, 0.0], [0.0, 0.0, 1.0]])
    return rz_node @ rx_inc @ rz_peri


def elements_to_cartesian(elem: OrbitalElements) -> tuple[np.ndarray, np.ndarray]:
    """Relative position and velocity vectors for the given elements."""
    gm = elem.total_mass
    e = elem.eccentricity
    if elem.energy < 0.0:
        a = elem.semi_major_axis
        ecc_an = solve_kepler_elliptic(elem.mean_anomaly, e)
        ce, se = math.cos(ecc_an), math.sin(ecc_an)
        r = a * (1.0 - e * ce)
        pos_pf = np.array([a * (ce - e), a * math.sqrt(1.0 - e * e) * se, 0.0])
        vfac = math.sqrt(gm * a) / r
        vel_pf = np.array([-vfac * se, vfac * math.sqrt(1.0 - e * e) * ce, 0.0])
    else:
        a = -elem.semi_major_axis  # positive length scale
        hyp_an = solve_kepler_hyperbolic(elem.mean_anomaly, e)
        ch, sh = math.cosh(hyp_an), math.sinh(hyp_an)
        r = a * (e * ch - 1.0)
        pos_pf = np.array([a * (e - ch), a * math.sqrt(e * e - 1.0) * sh, 0.0])
        vfac = math.sqrt(gm * a) / r
        vel_pf = np.array([-vfac * sh, vfac * math.sqrt(e * e - 1.0) * ch, 0.0])
    rot = _perifocal_to_inertial(elem)
    return rot @ pos_pf, rot @ vel_pf


def cartesian_to_elements(rel_pos, rel_vel, total_mass: float) -> OrbitalElements:
    """Invert `elements_to_cartesian`.

    Degenerate orientations use fixed conventions: for zero inclination the
    node longitude is 0 (node along +x), for a circular orbit the
    pericenter argument is 0 and the phase is measured from the node.
    """
    r_vec = np.asarray(rel_pos, float)
    v_vec = np.asarray(rel_vel, float)
    gm = float(total_mass)
    r = float(np.linalg.norm(r_vec))
    if r == 0.0:
        raise ValueError("zero separation has no orbital elements")
    energy = float(0.5 * v_vec @ v_vec - gm / r)
    if energy == 0.0:
        raise ValueError("parabolic orbits (energy == 0) are not supported")
    h_vec = np.cross(r_vec, v_vec)
    h = float(np.linalg.norm(h_vec))
    e_vec = np.cross(v_vec, h_vec) / gm - r_vec / r
    ecc = float(np.linalg.norm(e_vec))

    eps_tol = 1e-12
    inc = math.acos(np.clip(h_vec[2] / h, -1.0, 1.0)) if h > 0 else 0.0
    node_vec = np.array([-h_vec[1], h_vec[0], 0.0])
    n = float(np.linalg.norm(node_vec))
    if n < eps_tol * h:
        node_vec = np.array([1.0, 0.0, 0.0])
        node = 0.0
    else:
        node_vec /= n
        node = math.atan2(node_vec[1], node_vec[0]) % _TWO_PI

    if ecc > eps_tol:
        e_hat = e_vec / ecc
        argp = math.acos(np.clip(node_vec @ e_hat, -1.0, 1.0))
        if abs(e_vec[2]) > eps_tol * ecc:
            if e_vec[2] < 0.0:
                argp = _TWO_PI - argp
        elif np.cross(node_vec, e_hat)[2] * h_vec[2] < 0.0:
            # planar orbit: resolve the sign with the orbit normal
            argp = _TWO_PI - argp
        argp %= _TWO_PI
        true_an = math.acos(np.clip(e_hat @ (r_vec / r), -1.0, 1.0))
        if r_vec @ v_vec < 0.0:
            true_an = _TWO_PI - true_an
    else:
        ecc = 0.0
        argp = 0.0
        true_an = math.acos(np.clip(node_vec @ (r_vec / r), -1.0, 1.0))
        ref_sign = np.cross(node_vec, r_vec / r) @ (h_vec / h)
        if ref_sign < 0.0:
            true_an = _TWO_PI - true_an

    if energy < 0.0:
        ecc_an = 2.0 * math.atan2(math.sqrt(1.0 - ecc) * math.sin(true_an / 2.0),
                                  math.sqrt(1.0 + ecc) * math.cos(true_an / 2.0))
        mean_an = ecc_an - ecc * math.sin(ecc_an)
        mean_an %= _TWO_PI
    else:
        if true_an > math.pi:
            true_an -= _TWO_PI
        tan_half = math.tan(true_an / 2.0)
        arg = math.sqrt((ecc - 1.0) / (ecc + 1.0)) * tan_half
        hyp_an = 2.0 * math.atanh(np.clip(arg, -1.0 + 1e-16, 1.0 - 1e-16))
        mean_an = ecc * math.sinh(hyp_an) - hyp_an

    return OrbitalElements(
        energy=energy,
        eccentricity=ecc,
        inclination=inc,
        node_longitude=node,
        pericenter_argument=argp,
        mean_anomaly=mean_an,
        total_mass=gm,
    )


def mean_anomaly_at_radius(energy: float, eccentricity: float, radius: float,
                           total_mass: float, incoming: bool = True) -> float:
    """Hyperbolic mean anomaly at which the separation equals `radius`.

    Used to place an approaching body at a prescribed distance; `incoming`
    selects the pre-pericenter branch (negative anomaly).
    """
    if energy <= 0.0:
        raise ValueError("radius placement requires an unbound orbit")
    a = total_mass / (2.0 * energy)
    ch = (1.0 + radius / a) / eccentricity
    if ch < 1.0:
        raise ValueError(f"radius {radius} is inside the pericenter distance")
    hyp_an = math.acosh(ch)
    if incoming:
        hyp_an = -hyp_an
    return eccentricity * math.sinh(hyp_an) - hyp_an


def orbital_period(total_mass: float, semi_major_axis: float) -> float:
    """Period of a bound orbit, 2*pi*sqrt(a^3 / GM)."""
    if semi_major_axis <= 0.0:
        raise ValueError("period requires a bound orbit (a > 0)")
    return _TWO_PI * math.sqrt(semi_major_axis**3 / total_mass)
