"""Initial-condition builders for scattering realizations.

Two kinds of experiment share one set of conserved charges (total energy
E and angular momentum magnitude L):

* outcome runs start from the reference configuration, a circular binary
  with the third body at rest far away, and sample its orientation and
  phase isotropically;
* absorption runs inject an unbound single toward a binary prepared with
  prescribed (eps_B, l_B), sampling the remaining phases, with the outer
  orbit's angular momentum either drawn uniformly from the closure
  interval [L - l_B, L + l_B] or fixed by the in-plane components
  (l_Bx, l_By) through l_F^2 = L^2 + l_B^2 - 2 L l_Bx.

All builders return center-of-mass-frame states at time zero, starting
the single at a fixed multiple of the binary semi-major axis, and check
that the requested targets are actually realized by the state they built.

Randomness is counter-based: `realization_rng` derives an independent
stream from (master seed, point index, realization index), so any
realization can be regenerated in isolation and scheduling order does
not matter.  Each builder consumes its draws in a fixed documented
order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import PairId, ThreeBodyState, decompose, total_angular_momentum, total_energy
from .kepler import OrbitalElements, elements_to_cartesian, mean_anomaly_at_radius

__all__ = [
    "GenerationError",
    "ChargeSet",
    "reference_charges",
    "realization_rng",
    "allowed_region",
    "l_b_max",
    "outcome_initial_state",
    "draw_outcome_state",
    "absorptivity_initial_state",
    "draw_absorptivity_state",
]

_TWO_PI = 2.0 * math.pi


class GenerationError(ValueError):
    """Requested targets cannot be realized as an initial condition."""


@dataclass(frozen=True)
class ChargeSet:
    """Conserved charges shared by a campaign, plus the binary constant
    k = mu (m_a m_b)^2 of the reference pair."""

    masses: tuple[float, float, float]
    energy: float
    angmom: float

    @property
    def total_mass(self) -> float:
        return sum(self.masses)

    @property
    def binary_k(self) -> float:
        ma, mb = self.masses[0], self.masses[1]
        return ma * mb / (ma + mb) * (ma * mb) ** 2


def reference_charges(masses=(15.0, 15.0, 15.0), a_bin: float = 5.0,
                      distance: float = 100.0) -> ChargeSet:
    """Charges of the reference configuration: circular binary of the first
    two masses plus the third at rest at the given distance."""
    ma, mb, ms = masses
    eps_b = -ma * mb / (2.0 * a_bin)
    eps_f = -ms * (ma + mb) / distance
    mu_b = ma * mb / (ma + mb)
    l_b = mu_b * math.sqrt((ma + mb) * a_bin)
    return ChargeSet(tuple(float(v) for v in masses), eps_b + eps_f, l_b)


def realization_rng(master_seed: int, point_index: int, realization_index: int) -> np.random.Generator:
    """Independent counter-based stream for one realization."""
    seq = np.random.SeedSequence([int(master_seed), int(point_index), int(realization_index)])
    return np.random.Generator(np.random.Philox(seq))


def l_b_max(eps_b: float, k: float) -> float:
    """Largest binary angular momentum at binding energy eps_b (< 0)."""
    if eps_b >= 0.0:
        raise ValueError("binary energy must be negative")
    return math.sqrt(-k / (2.0 * eps_b))


def allowed_region(eps_b: float, l_b: float, charges: ChargeSet) -> bool:
    """Binding energies below the total and angular momenta below the
    circular-orbit bound: -2 eps_B l_B^2 <= k and eps_B <= E."""
    if eps_b >= 0.0:
        return False
    return (-2.0 * eps_b * l_b * l_b <= charges.binary_k
            and eps_b <= charges.energy)


def _assemble(masses, r_bin, v_bin, r_out, v_out, pair=PairId(0, 1)) -> ThreeBodyState:
    """Place pair bodies about their CM and the single opposite it."""
    ma, mb = masses[pair.a], masses[pair.b]
    ms = masses[pair.single]
    mpair = ma + mb
    mtot = mpair + ms
    pos = np.zeros((3, 3))
    vel = np.zeros((3, 3))
    cm_pair_r = -(ms / mtot) * r_out
    cm_pair_v = -(ms / mtot) * v_out
    pos[pair.a] = cm_pair_r + (mb / mpair) * r_bin
    pos[pair.b] = cm_pair_r - (ma / mpair) * r_bin
    vel[pair.a] = cm_pair_v + (mb / mpair) * v_bin
    vel[pair.b] = cm_pair_v - (ma / mpair) * v_bin
    pos[pair.single] = (mpair / mtot) * r_out
    vel[pair.single] = (mpair / mtot) * v_out
    return ThreeBodyState(masses, pos, vel, 0.0).centered()


def outcome_initial_state(charges: ChargeSet, a_bin: float, distance: float,
                          phase: float, cos_theta: float, azimuth: float) -> ThreeBodyState:
    """Circular binary in the x-y plane at the given phase; single at rest
    in the direction (cos_theta, azimuth) at the given distance."""
    ma, mb, ms = charges.masses
    mpair = ma + mb
    r_bin = a_bin * np.array([math.cos(phase), math.sin(phase), 0.0])
    vcirc = math.sqrt(mpair / a_bin)
    v_bin = vcirc * np.array([-math.sin(phase), math.cos(phase), 0.0])
    sin_theta = math.sqrt(max(0.0, 1.0 - cos_theta * cos_theta))
    direction = np.array([
        sin_theta * math.cos(azimuth),
        sin_theta * math.sin(azimuth),
        cos_theta,
    ])
    r_out = distance * direction
    v_out = np.zeros(3)
    return _assemble([ma, mb, ms], r_bin, v_bin, r_out, v_out)


def draw_outcome_state(charges: ChargeSet, a_bin: float, distance: float,
                       rng: np.random.Generator) -> ThreeBodyState:
    """Draw order: binary phase, cos(polar), azimuth."""
    phase = rng.uniform(0.0, _TWO_PI)
    cos_theta = rng.uniform(-1.0, 1.0)
    azimuth = rng.uniform(0.0, _TWO_PI)
    return outcome_initial_state(charges, a_bin, distance, phase, cos_theta, azimuth)


def _check_targets(state: ThreeBodyState, charges: ChargeSet, eps_b: float,
                   l_b: float, l_bx: float | None) -> None:
    dec = decompose(state, PairId(0, 1))
    scale = abs(eps_b)
    if abs(dec.eps_B - eps_b) > 1e-10 * scale:
        raise GenerationError(
            f"binary energy target missed: {dec.eps_B} vs {eps_b}")
    got_lb = float(np.linalg.norm(dec.l_B))
    if abs(got_lb - l_b) > 1e-10 * max(1.0, l_b):
        raise GenerationError(
            f"binary angular momentum target missed: {got_lb} vs {l_b}")
    l_tot = total_angular_momentum(state)
    l_norm = float(np.linalg.norm(l_tot))
    if abs(l_norm - charges.angmom) > 1e-9 * charges.angmom:
        raise GenerationError(
            f"total angular momentum off: {l_norm} vs {charges.angmom}")
    if l_bx is not None:
        got_lbx = float(dec.l_B @ l_tot) / l_norm
        if abs(got_lbx - l_bx) > 1e-9 * max(1.0, l_b):
            raise GenerationError(
                f"binary angular momentum projection missed: {got_lbx} vs {l_bx}")


def absorptivity_initial_state(charges: ChargeSet, eps_b: float, l_b: float,
                               l_f: float, binary_phase: float, node: float,
                               pericenter: float, start_factor: float = 20.0,
                               l_bx: float | None = None) -> ThreeBodyState:
    """Deterministic builder for one absorption realization.

    The binary lies in the x-y plane with its angular momentum along +z;
    the outer orbit is inclined so that |l_B + l_F| equals the campaign L
    and starts incoming at start_factor times the binary semi-major axis.
    """
    ma, mb, ms = charges.masses
    mpair = ma + mb
    mtot = mpair + ms
    mu_b = ma * mb / mpair
    mu_f = ms * mpair / mtot

    if eps_b >= 0.0:
        raise GenerationError("binary must be bound (eps_B < 0)")
    if not allowed_region(eps_b, l_b, charges):
        raise GenerationError(
            f"(eps_B, l_B) = ({eps_b}, {l_b}) outside the allowed region")
    if l_b <= 0.0:
        raise GenerationError("radial binary (l_B = 0) is a degenerate target")
    eps_f = charges.energy - eps_b
    if eps_f <= 0.0:
        raise GenerationError("outer body must start unbound (eps_B < E)")
    big_l = charges.angmom
    # ulp slack: closure-boundary targets (coplanar outer orbits) are valid
    slack = 1e-12 * big_l
    if not (abs(big_l - l_b) - slack <= l_f <= big_l + l_b + slack):
        raise GenerationError(
            f"l_F = {l_f} violates closure [|L - l_B|, L + l_B]")

    # inner binary elements
    e_spec_b = eps_b / mu_b
    l_spec_b = l_b / mu_b
    e2 = 1.0 + 2.0 * e_spec_b * l_spec_b**2 / mpair**2
    ecc_b = math.sqrt(e2) if e2 > 0.0 else 0.0
    elem_b = OrbitalElements(
        energy=e_spec_b, eccentricity=min(ecc_b, 1.0 - 1e-15),
        inclination=0.0, node_longitude=0.0, pericenter_argument=0.0,
        mean_anomaly=binary_phase, total_mass=mpair,
    )
    r_bin, v_bin = elements_to_cartesian(elem_b)

    # outer hyperbolic orbit, inclined to close the angular momentum triangle
    e_spec_f = eps_f / mu_f
    l_spec_f = l_f / mu_f
    ecc_f = math.sqrt(1.0 + 2.0 * e_spec_f * l_spec_f**2 / mtot**2)
    if l_f > 0.0:
        cos_inc = (big_l**2 - l_b**2 - l_f**2) / (2.0 * l_b * l_f)
        inc = math.acos(min(1.0, max(-1.0, cos_inc)))
    else:
        inc = 0.0
    a_bin = -ma * mb / (2.0 * eps_b)
    start_r = start_factor * a_bin
    peri_f = (mtot / (2.0 * e_spec_f)) * (ecc_f - 1.0)
    if peri_f >= start_r:
        raise GenerationError(
            f"outer pericenter {peri_f:.3g} outside start radius {start_r:.3g}")
    mean_start = mean_anomaly_at_radius(e_spec_f, ecc_f, start_r, mtot, incoming=True)
    elem_f = OrbitalElements(
        energy=e_spec_f, eccentricity=ecc_f, inclination=inc,
        node_longitude=node, pericenter_argument=pericenter,
        mean_anomaly=mean_start, total_mass=mtot,
    )
    r_out, v_out = elements_to_cartesian(elem_f)

    state = _assemble([ma, mb, ms], r_bin, v_bin, r_out, v_out)
    _check_targets(state, charges, eps_b, l_b, l_bx)
    return state


def draw_absorptivity_state(charges: ChargeSet, eps_b: float,
                            l_bx: float, l_by: float,
                            rng: np.random.Generator,
                            fixed_l_f: bool,
                            start_factor: float = 20.0) -> ThreeBodyState:
    """Draw one absorption realization.

    Draw order: binary phase, node longitude, outer pericenter argument,
    then (only when fixed_l_f is false) the outer angular momentum from
    the closure interval.  With fixed_l_f the in-plane target components
    determine l_F directly.
    """
    l_b = math.hypot(l_bx, l_by)
    big_l = charges.angmom
    phase = rng.uniform(0.0, _TWO_PI)
    node = rng.uniform(0.0, _TWO_PI)
    peri = rng.uniform(0.0, _TWO_PI)
    if fixed_l_f:
        # equal to sqrt(L^2 + l_B^2 - 2 L l_Bx) but exact for coplanar
        # targets (l_By = 0), which sit on the closure boundary
        l_f = math.hypot(big_l - l_bx, l_by)
        target_lbx: float | None = l_bx
    else:
        l_f = rng.uniform(big_l - l_b, big_l + l_b)
        target_lbx = None
    return absorptivity_initial_state(
        charges, eps_b, l_b, l_f, phase, node, peri,
        start_factor=start_factor, l_bx=target_lbx,
    )
