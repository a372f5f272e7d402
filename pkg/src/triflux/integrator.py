"""Adaptive integration sessions over `ThreeBodyState`.

This is the uncompiled face of the stepping core in `engine`: a session
object owns the controller state (current step size and cached RHS) so
consecutive calls reproduce exactly the step sequence of the compiled
batch driver.  Use it for instrumented runs, tests, and custom stop
conditions; campaigns go through `engine.run_batch`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import engine
from .dynamics import ThreeBodyState

__all__ = ["IntegratorSettings", "Integrator", "advance_step", "integrate_until"]


@dataclass(frozen=True)
class IntegratorSettings:
    """Step-control knobs.

    rtol : relative tolerance per step (atol defaults to the same value)
    time_transform : integrate in a rescaled variable with ds = U dt so
        steps survive close encounters; trajectories agree with direct
        time stepping to within tolerance
    energy_gate : additionally require each step's estimated energy error
        to stay below rtol times the total energy scale; this pins the
        error of deep pericenter passages to the system scale instead of
        the (huge) instantaneous velocities
    """

    rtol: float = 1e-10
    atol: float | None = None
    time_transform: bool = True
    energy_gate: bool = True

    @property
    def atol_value(self) -> float:
        return self.rtol if self.atol is None else self.atol


def _pack(state: ThreeBodyState) -> np.ndarray:
    y = np.empty(engine.NDIM)
    y[0:9] = state.positions.ravel()
    y[9:18] = state.velocities.ravel()
    y[18] = state.time
    return y


def _unpack(masses: np.ndarray, y: np.ndarray) -> ThreeBodyState:
    return ThreeBodyState(masses, y[0:9].reshape(3, 3), y[9:18].reshape(3, 3), y[18])


class Integrator:
    """Stepping session for one trajectory.

    During deep two-body passages the coordinate origin follows the
    closest pair (see `engine.recenter_close_pair`), so reported
    positions can be rigidly shifted relative to the initial frame.
    Separations, velocities, and the conserved charges are unaffected.
    """

    def __init__(self, state: ThreeBodyState, settings: IntegratorSettings | None = None):
        self.settings = settings or IntegratorSettings()
        self.masses = state.masses.copy()
        self._y = _pack(state)
        self._f = np.empty(engine.NDIM)
        self._K = np.empty((13, engine.NDIM))
        self._ytmp = np.empty(engine.NDIM)
        self._ynew = np.empty(engine.NDIM)
        use_tt = self.settings.time_transform
        engine._rhs(self.masses, self._y, self._f, use_tt)
        self._h = engine.initial_step(
            self.masses, self._y, self._f, use_tt,
            self.settings.rtol, self.settings.atol_value,
        )
        e0 = engine._charges(self.masses, self._y)[0]
        self._e_scale = abs(e0) if e0 != 0.0 else 1.0
        if not self.settings.energy_gate:
            self._e_scale = 0.0
        self._w = 0.0
        self.steps = 0
        self.rejected = 0

    @property
    def time(self) -> float:
        return float(self._y[18])

    def state(self) -> ThreeBodyState:
        return _unpack(self.masses, self._y)

    def step(self) -> ThreeBodyState:
        """Advance by one accepted step and return the new state.

        Raises RuntimeError if the step size underflows (for example on a
        near-singular approach with direct time stepping).
        """
        w, h_used, h_next, att = engine.advance_step(
            self.masses, self._y, self._f, self._w, self._h,
            self.settings.time_transform,
            self.settings.rtol, self.settings.atol_value,
            self._e_scale, self._K, self._ytmp, self._ynew,
        )
        if att < 0:
            raise RuntimeError(f"step size underflow at t={self.time:.6g}")
        self._w = w
        self._h = h_next
        self.steps += 1
        self.rejected += att - 1
        engine.recenter_close_pair(self._y)
        return self.state()


def advance_step(state: ThreeBodyState, settings: IntegratorSettings | None = None) -> ThreeBodyState:
    """One-shot single accepted step (controller starts fresh each call)."""
    return Integrator(state, settings).step()


def integrate_until(state: ThreeBodyState, condition, max_time: float = np.inf,
                    max_steps: int = 10_000_000,
                    settings: IntegratorSettings | None = None):
    """Step until `condition(state)` is true or a cap is hit.

    The condition is evaluated at every accepted step (not at the initial
    state).  Returns (final_state, reason) with reason one of
    "condition", "max_time", "max_steps", "stepfail".
    """
    session = Integrator(state, settings)
    while True:
        if session.steps >= max_steps:
            return session.state(), "max_steps"
        try:
            current = session.step()
        except RuntimeError:
            return session.state(), "stepfail"
        if condition(current):
            return current, "condition"
        if current.time >= max_time:
            return current, "max_time"
