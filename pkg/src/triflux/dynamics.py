"""Point-mass three-body states and their instantaneous decompositions.

Units are G = 1, masses in solar masses and lengths in au, so one year
equals 2*pi time units.  A state is three bodies with masses, positions
and velocities at a common time; the analysis routines split it into an
inner pair ("binary") and the remaining outer body ("single") and report
the energies and angular momenta of the two effective Kepler problems.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SingularConfigurationError",
    "BodyState",
    "ThreeBodyState",
    "PairId",
    "ConservedCharges",
    "Decomposition",
    "PAIRS",
    "binary_constant",
    "pair_energy",
    "most_bound_pair",
    "total_energy",
    "total_angular_momentum",
    "conserved_charges",
    "decompose",
]


class SingularConfigurationError(ValueError):
    """Two bodies coincide, so pairwise potentials are undefined."""


@dataclass(frozen=True)
class BodyState:
    """One point mass: scalar mass plus 3-vector position and velocity."""

    mass: float
    position: np.ndarray
    velocity: np.ndarray

    def __post_init__(self):
        if self.mass <= 0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        object.__setattr__(self, "position", np.asarray(self.position, float).reshape(3))
        object.__setattr__(self, "velocity", np.asarray(self.velocity, float).reshape(3))


@dataclass(frozen=True)
class PairId:
    """Unordered pair of body indices (0-based); the third body is `single`."""

    a: int
    b: int

    def __post_init__(self):
        if not (0 <= self.a < self.b <= 2):
            raise ValueError(f"pair indices must satisfy 0 <= a < b <= 2, got ({self.a}, {self.b})")

    @property
    def single(self) -> int:
        return 3 - self.a - self.b


PAIRS = (PairId(0, 1), PairId(0, 2), PairId(1, 2))


@dataclass(frozen=True)
class ConservedCharges:
    """Total energy, angular momentum vector about the CM, and linear momentum."""

    energy: float
    angular_momentum: np.ndarray
    linear_momentum: np.ndarray


@dataclass(frozen=True)
class Decomposition:
    """Binary/single split of a state for a given inner pair.

    Attributes
    ----------
    pair : PairId
        Which two bodies form the inner binary.
    eps_B, l_B : float, ndarray
        Energy and angular momentum vector of the inner relative orbit,
        evaluated with the pair's reduced mass.
    eps_F, l_F : float, ndarray
        Same for the outer orbit of the single about the pair's CM.
    """

    pair: PairId
    eps_B: float
    l_B: np.ndarray
    eps_F: float
    l_F: np.ndarray


class ThreeBodyState:
    """Masses (3,), positions (3, 3), velocities (3, 3) and a time stamp.

    Construction does not recenter; use `centered()` to map into the
    center-of-mass frame.  Arrays are copied and stored as float64.
    """

    __slots__ = ("masses", "positions", "velocities", "time")

    def __init__(self, masses, positions, velocities, time=0.0):
        self.masses = np.array(masses, dtype=float).reshape(3)
        self.positions = np.array(positions, dtype=float).reshape(3, 3)
        self.velocities = np.array(velocities, dtype=float).reshape(3, 3)
        self.time = float(time)
        if np.any(self.masses <= 0):
            raise ValueError("masses must be positive")

    @classmethod
    def from_bodies(cls, bodies, time=0.0) -> "ThreeBodyState":
        if len(bodies) != 3:
            raise ValueError("exactly three bodies required")
        return cls(
            [b.mass for b in bodies],
            [b.position for b in bodies],
            [b.velocity for b in bodies],
            time,
        )

    def bodies(self) -> list[BodyState]:
        return [
            BodyState(self.masses[i], self.positions[i].copy(), self.velocities[i].copy())
            for i in range(3)
        ]

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum())

    def center_of_mass(self) -> np.ndarray:
        return self.masses @ self.positions / self.total_mass

    def cm_velocity(self) -> np.ndarray:
        return self.masses @ self.velocities / self.total_mass

    def centered(self) -> "ThreeBodyState":
        """Return the same configuration shifted into the CM rest frame."""
        return ThreeBodyState(
            self.masses,
            self.positions - self.center_of_mass(),
            self.velocities - self.cm_velocity(),
            self.time,
        )

    def separation(self, i: int, j: int) -> float:
        return float(np.linalg.norm(self.positions[i] - self.positions[j]))

    def copy(self) -> "ThreeBodyState":
        return ThreeBodyState(self.masses, self.positions, self.velocities, self.time)


def _check_separations(state: ThreeBodyState) -> None:
    for p in PAIRS:
        if state.separation(p.a, p.b) == 0.0:
            raise SingularConfigurationError(f"bodies {p.a} and {p.b} coincide")


def binary_constant(mass_a: float, mass_b: float) -> float:
    """Return mu * (m_a * m_b)^2 for the pair, the combination that fixes
    the maximum angular momentum of a bound orbit at given binding energy:
    l_max(eps) = sqrt(-k / (2 eps))."""
    mu = mass_a * mass_b / (mass_a + mass_b)
    return mu * (mass_a * mass_b) ** 2


def pair_energy(state: ThreeBodyState, pair: PairId) -> float:
    """Internal two-body energy of a pair: relative kinetic plus mutual potential.

    The outer body contributes nothing here; this is the Kepler energy of
    the pair's relative coordinate with its reduced mass.
    """
    _check_separations(state)
    ma, mb = state.masses[pair.a], state.masses[pair.b]
    mu = ma * mb / (ma + mb)
    dv = state.velocities[pair.a] - state.velocities[pair.b]
    r = state.separation(pair.a, pair.b)
    return float(0.5 * mu * dv @ dv - ma * mb / r)


def most_bound_pair(state: ThreeBodyState) -> tuple[PairId, float]:
    """Return the pair with the lowest internal two-body energy and that energy."""
    energies = [pair_energy(state, p) for p in PAIRS]
    i = int(np.argmin(energies))
    return PAIRS[i], energies[i]


def total_energy(state: ThreeBodyState) -> float:
    _check_separations(state)
    v2 = np.einsum("ij,ij->i", state.velocities, state.velocities)
    kinetic = 0.5 * float(state.masses @ v2)
    potential = 0.0
    for p in PAIRS:
        potential -= state.masses[p.a] * state.masses[p.b] / state.separation(p.a, p.b)
    return kinetic + potential


def total_angular_momentum(state: ThreeBodyState) -> np.ndarray:
    """Total angular momentum vector about the center of mass."""
    rel_r = state.positions - state.center_of_mass()
    rel_v = state.velocities - state.cm_velocity()
    return np.einsum("i,ij->j", state.masses, np.cross(rel_r, rel_v))


def conserved_charges(state: ThreeBodyState) -> ConservedCharges:
    return ConservedCharges(
        energy=total_energy(state),
        angular_momentum=total_angular_momentum(state),
        linear_momentum=state.masses @ state.velocities,
    )


def decompose(state: ThreeBodyState, pair: PairId | None = None) -> Decomposition:
    """Split a state into inner-binary and outer-single Kepler problems.

    Parameters
    ----------
    state : ThreeBodyState
        Any non-singular configuration; it is recentered internally so the
        result is frame independent.
    pair : PairId, optional
        Inner pair to use.  Defaults to the most bound pair.

    Returns
    -------
    Decomposition
        eps_B/l_B for the pair's relative orbit and eps_F/l_F for the
        single about the pair's center of mass.  In the CM frame, when the
        two subsystems are well separated, eps_B + eps_F approaches the
        total energy and l_B + l_F equals the total angular momentum.
    """
    if pair is None:
        pair, _ = most_bound_pair(state)
    st = state.centered()
    ma, mb = st.masses[pair.a], st.masses[pair.b]
    ms = st.masses[pair.single]
    m_bin = ma + mb
    mu_b = ma * mb / m_bin
    mu_f = ms * m_bin / (ms + m_bin)

    dr = st.positions[pair.a] - st.positions[pair.b]
    dv = st.velocities[pair.a] - st.velocities[pair.b]
    r = np.linalg.norm(dr)
    if r == 0.0:
        raise SingularConfigurationError(f"bodies {pair.a} and {pair.b} coincide")
    eps_b = float(0.5 * mu_b * dv @ dv - ma * mb / r)
    l_b = mu_b * np.cross(dr, dv)

    cm_pair_r = (ma * st.positions[pair.a] + mb * st.positions[pair.b]) / m_bin
    cm_pair_v = (ma * st.velocities[pair.a] + mb * st.velocities[pair.b]) / m_bin
    dr_f = st.positions[pair.single] - cm_pair_r
    dv_f = st.velocities[pair.single] - cm_pair_v
    r_f = np.linalg.norm(dr_f)
    if r_f == 0.0:
        raise SingularConfigurationError("outer body coincides with pair center of mass")
    eps_f = float(0.5 * mu_f * dv_f @ dv_f - ms * m_bin / r_f)
    l_f = mu_f * np.cross(dr_f, dv_f)

    return Decomposition(pair=pair, eps_B=eps_b, l_B=l_b, eps_F=eps_f, l_F=l_f)
