"""Streaming classification of three-body trajectories.

Definitions used throughout:

* Democratic configuration: the scale-free ratio 3 r_min^2 / sum r_ij^2
  grows above a threshold (0.33 by default) and falls back below it;
  each complete up-down crossing increments the counter N_D.
* Excursion: the instantaneously most bound pair is bound and tidally
  dominant (tidal factor < 1) while the outer body is bound too; the
  candidate closes when the tide again competes (factor >= 1) and is
  accepted as an excursion when its duration exceeds the median binary
  period sampled while it was open.
* Escape: bound pair plus unbound outer body receding for several
  consecutive steps with negligible tide and a separation many binary
  semi-axes wide.  The verdict is held until the measured pair elements
  lie inside the bound-orbit domain (pair energy at or below the total
  energy, angular momentum at or below the circular limit): near the
  threshold the residual coupling to the single can bias the instantaneous
  elements outside it, and waiting lets the bias decay.

The compiled driver in `engine` implements the same rules fused with
the stepping loop; this module is the uncompiled reference used by
tests and small instrumented runs.  `TrajectoryClassifier.update`
mirrors the engine's per-step branch order exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import engine
from .dynamics import (PAIRS, PairId, ThreeBodyState, most_bound_pair,
                       pair_energy, total_energy)
from .integrator import Integrator, IntegratorSettings

__all__ = [
    "ClassifierPolicy",
    "hierarchy_ratio",
    "tidal_factor",
    "DemocracyCounter",
    "TrajectoryClassifier",
    "is_chaotic_escape",
    "build_params",
    "reference_run",
]


@dataclass(frozen=True)
class ClassifierPolicy:
    """Thresholds for the streaming classifier and run caps.

    The lifetime cut converts 50 years to code time (1 yr = 2 pi).
    """

    democracy_threshold: float = 0.33
    nd_min: int = 4
    lifetime_cut: float = 100.0 * math.pi
    escape_tidal_threshold: float = 1e-3
    escape_distance_multiple: float = 20.0
    escape_recession_steps: int = 3
    conservation_alarm: float = 1e-6
    max_time: float = 3.0e4
    max_steps: int = 3_000_000


def hierarchy_ratio(state: ThreeBodyState) -> float:
    """3 r_min^2 / (r_12^2 + r_13^2 + r_23^2); 1 for an equilateral triangle."""
    r2 = [
        float(np.sum((state.positions[p.a] - state.positions[p.b]) ** 2))
        for p in PAIRS
    ]
    return 3.0 * min(r2) / sum(r2)


def tidal_factor(state: ThreeBodyState, pair: PairId | None = None) -> float:
    """Relative tidal perturbation of the outer body on the pair.

    2 (m_pair m_s / m_a m_b) (d / R)^3 with d the pair's apocenter when
    bound, its current separation otherwise, and R the distance from the
    pair's center of mass to the outer body.
    """
    if pair is None:
        pair, _ = most_bound_pair(state)
    ma, mb = state.masses[pair.a], state.masses[pair.b]
    ms = state.masses[pair.single]
    mpair = ma + mb
    eps = pair_energy(state, pair)
    r_sep = state.separation(pair.a, pair.b)
    if eps < 0.0:
        mu = ma * mb / mpair
        a_bin = -ma * mb / (2.0 * eps)
        dr = state.positions[pair.a] - state.positions[pair.b]
        dv = state.velocities[pair.a] - state.velocities[pair.b]
        l_vec = mu * np.cross(dr, dv)
        e2 = 1.0 + 2.0 * eps * float(l_vec @ l_vec) / (mu**3 * mpair**2)
        ecc = math.sqrt(e2) if e2 > 0.0 else 0.0
        d = a_bin * (1.0 + ecc)
    else:
        d = r_sep
    cm = (ma * state.positions[pair.a] + mb * state.positions[pair.b]) / mpair
    big_r = float(np.linalg.norm(state.positions[pair.single] - cm))
    return (2.0 * mpair * ms / (ma * mb)) * (d / big_r) ** 3


class DemocracyCounter:
    """Counts complete up-down crossings of the hierarchy ratio."""

    def __init__(self, threshold: float = 0.33, initial_ratio: float = 0.0):
        self.threshold = threshold
        self.above = initial_ratio > threshold
        self.count = 0

    def update(self, ratio: float) -> bool:
        """Feed one sample; True when a crossing just completed."""
        if not self.above:
            if ratio > self.threshold:
                self.above = True
        elif ratio < self.threshold:
            self.above = False
            self.count += 1
            return True
        return False


def is_chaotic_escape(lifetime: float, nd_since_excursion: int,
                      policy: ClassifierPolicy) -> bool:
    """Escape counts as chaotic when the system outlived the cut and crossed
    democracy enough times since the last accepted excursion."""
    return lifetime > policy.lifetime_cut and nd_since_excursion >= policy.nd_min


@dataclass
class Decision:
    kind: str                 # "escape" | "absorbed" | "regular"
    ejection_kind: str | None = None  # "excursion" | "escape" | "nd_threshold"
    escaper: int | None = None
    eps_B: float = math.nan
    l_Bx: float = math.nan
    l_By: float = math.nan
    l_B: float = math.nan
    eps_F: float = math.nan
    l_F: float = math.nan


class TrajectoryClassifier:
    """Stateful per-step classifier; mirror of the compiled driver.

    mode "outcome" runs to escape; mode "absorb" decides the chaotic
    verdict at the earliest point it is fixed: the nd_min-th democratic
    crossing, an accepted excursion onset, or an escape.
    """

    def __init__(self, initial_state: ThreeBodyState, mode: str,
                 policy: ClassifierPolicy | None = None):
        if mode not in ("outcome", "absorb"):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self.policy = policy or ClassifierPolicy()
        self.masses = initial_state.masses.copy()
        self.e_total = total_energy(initial_state)
        charges_l = self._angmom(initial_state)
        self.l_ref = charges_l
        l0 = float(np.linalg.norm(charges_l))
        self.l0_safe = l0 if l0 > 0.0 else 1.0
        self.democracy = DemocracyCounter(self.policy.democracy_threshold,
                                          hierarchy_ratio(initial_state))
        self.nd_seg = 0
        self.excursions = 0
        self.cand_open = False
        self.t_open = 0.0
        self.nd_at_open = 0
        self.periods: list[float] = []
        self.period_max = 0.0
        self.vr_streak = 0
        self.t_last_interaction = 0.0
        self.seen_interaction = False

    @staticmethod
    def _angmom(state: ThreeBodyState) -> np.ndarray:
        return np.einsum("i,ij->j", state.masses,
                         np.cross(state.positions, state.velocities))

    def update(self, state: ThreeBodyState) -> Decision | None:
        """Feed one accepted step; returns a Decision when the run ends."""
        pol = self.policy
        t = state.time
        pair, epsb = most_bound_pair(state)
        ma, mb = state.masses[pair.a], state.masses[pair.b]
        ms = state.masses[pair.single]
        mpair = ma + mb
        mu_p = ma * mb / mpair

        crossed = self.democracy.update(hierarchy_ratio(state))
        if crossed:
            self.nd_seg += 1
            if self.mode == "absorb" and self.nd_seg >= pol.nd_min:
                return Decision(kind="absorbed", ejection_kind="nd_threshold")

        dr = state.positions[pair.a] - state.positions[pair.b]
        dv = state.velocities[pair.a] - state.velocities[pair.b]
        l_vec = mu_p * np.cross(dr, dv)
        if epsb < 0.0:
            a_bin = -ma * mb / (2.0 * epsb)
            e2 = 1.0 + 2.0 * epsb * float(l_vec @ l_vec) / (mu_p**3 * mpair**2)
            ecc = math.sqrt(e2) if e2 > 0.0 else 0.0
            apo = a_bin * (1.0 + ecc)
        else:
            a_bin = 0.0
            apo = state.separation(pair.a, pair.b)
        cm = (ma * state.positions[pair.a] + mb * state.positions[pair.b]) / mpair
        cv = (ma * state.velocities[pair.a] + mb * state.velocities[pair.b]) / mpair
        r_f = state.positions[pair.single] - cm
        v_f = state.velocities[pair.single] - cv
        big_r = float(np.linalg.norm(r_f))
        vr = float(r_f @ v_f) / big_r
        mu_f = ms * mpair / state.total_mass
        epsf = 0.5 * mu_f * float(v_f @ v_f) - ms * mpair / big_r
        f_tid = (2.0 * mpair * ms / (ma * mb)) * (apo / big_r) ** 3
        if f_tid >= 1.0:
            self.t_last_interaction = t
            self.seen_interaction = True
        hier = epsb < 0.0 and f_tid < 1.0

        if self.cand_open:
            if hier and epsf < 0.0:
                period = 2.0 * math.pi * math.sqrt(a_bin**3 / mpair)
                self.periods.append(period)
                if period > self.period_max:
                    self.period_max = period
                if self.mode == "absorb" and t - self.t_open > self.period_max:
                    kind = "absorbed" if self.nd_at_open >= pol.nd_min else "regular"
                    return Decision(kind=kind, ejection_kind="excursion")
            else:
                if f_tid >= 1.0 and self.periods:
                    dur = t - self.t_open
                    if dur > float(np.median(self.periods)):
                        if self.mode == "absorb":
                            kind = "absorbed" if self.nd_at_open >= pol.nd_min else "regular"
                            self.cand_open = False
                            return Decision(kind=kind, ejection_kind="excursion")
                        self.excursions += 1
                        self.nd_seg = 0
                self.cand_open = False
        elif hier and epsf < 0.0 and (self.seen_interaction or self.mode == "absorb"):
            self.cand_open = True
            self.t_open = t
            self.nd_at_open = self.nd_seg
            self.periods = []
            self.period_max = 0.0

        if vr > 0.0:
            self.vr_streak += 1
        else:
            self.vr_streak = 0
        if (epsb < 0.0 and epsf > 0.0 and self.vr_streak >= pol.escape_recession_steps
                and f_tid < pol.escape_tidal_threshold
                and big_r > pol.escape_distance_multiple * a_bin):
            l2 = float(l_vec @ l_vec)
            k_pair = mu_p * (ma * mb) ** 2
            # domain hold: near the threshold the residual coupling can bias
            # the instantaneous elements above the total energy or the
            # circular limit; the tiny l slack lets exact circles through
            if epsb <= self.e_total and -2.0 * epsb * l2 <= k_pair * (1.0 + 1e-9):
                l_b = math.sqrt(l2)
                l_bx = float(l_vec @ self.l_ref) / self.l0_safe
                perp2 = l_b * l_b - l_bx * l_bx
                l_f_vec = mu_f * np.cross(r_f, v_f)
                decision = Decision(
                    kind="escape", escaper=pair.single,
                    eps_B=epsb, l_Bx=l_bx,
                    l_By=math.sqrt(perp2) if perp2 > 0.0 else 0.0,
                    l_B=l_b, eps_F=epsf,
                    l_F=float(np.linalg.norm(l_f_vec)),
                )
                if self.mode == "absorb":
                    decision.kind = "absorbed" if self.nd_seg >= pol.nd_min else "regular"
                    decision.ejection_kind = "escape"
                return decision
        return None

    @property
    def nd_total(self) -> int:
        return self.democracy.count


def build_params(settings: IntegratorSettings, policy: ClassifierPolicy) -> np.ndarray:
    """Pack settings and policy into the compiled driver's parameter vector."""
    pr = np.empty(engine.NPAR)
    pr[engine.P_RTOL] = settings.rtol
    pr[engine.P_ATOL] = settings.atol_value
    pr[engine.P_ALARM] = policy.conservation_alarm
    pr[engine.P_MAXTIME] = policy.max_time
    pr[engine.P_MAXSTEPS] = float(policy.max_steps)
    pr[engine.P_USETT] = 1.0 if settings.time_transform else 0.0
    pr[engine.P_DEMTHR] = policy.democracy_threshold
    pr[engine.P_NDMIN] = float(policy.nd_min)
    pr[engine.P_ESCFTID] = policy.escape_tidal_threshold
    pr[engine.P_ESCRMULT] = policy.escape_distance_multiple
    pr[engine.P_ESCSTREAK] = float(policy.escape_recession_steps)
    pr[engine.P_EGATE] = 1.0 if settings.energy_gate else 0.0
    return pr


def reference_run(state: ThreeBodyState, mode: str,
                  policy: ClassifierPolicy | None = None,
                  settings: IntegratorSettings | None = None):
    """Uncompiled twin of `engine.run_trajectory` for cross-validation.

    Steps with the same compiled kernel, applies the conservation alarm,
    then feeds the classifier; returns (status, Decision | None, classifier).
    The state is consumed as given (generated states are already in the
    CM frame), so both routes see identical coordinates bit for bit.
    """
    from .dynamics import conserved_charges

    policy = policy or ClassifierPolicy()
    settings = settings or IntegratorSettings()
    session = Integrator(state, settings)
    start = session.state()
    ref = conserved_charges(start)
    e0_safe = abs(ref.energy) if ref.energy != 0.0 else 1.0
    l0 = float(np.linalg.norm(ref.angular_momentum))
    l0_safe = l0 if l0 > 0.0 else 1.0
    clf = TrajectoryClassifier(start, mode, policy)
    while True:
        if session.steps >= policy.max_steps:
            return "timeout", None, clf
        try:
            current = session.step()
        except RuntimeError:
            return "stepfail", None, clf
        charges = conserved_charges(current)
        e_drift = abs(charges.energy - ref.energy) / e0_safe
        l_drift = float(np.linalg.norm(charges.angular_momentum - ref.angular_momentum)) / l0_safe
        if e_drift > policy.conservation_alarm or l_drift > policy.conservation_alarm:
            return "alarm", None, clf
        decision = clf.update(current)
        if decision is not None:
            return "decided", decision, clf
        if current.time >= policy.max_time:
            return "timeout", None, clf
