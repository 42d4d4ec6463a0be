"""Fixed-step explicit Runge-Kutta integration over complex state arrays."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteError

__all__ = ["OdeState", "rk4_step", "integrate_to"]


@dataclass(frozen=True, eq=False)
class OdeState:
    """One or more equal-shape component arrays at a given time."""

    components: tuple
    time: float = 0.0

    def __post_init__(self):
        comps = tuple(np.asarray(c, dtype=np.complex128) for c in self.components)
        if not comps:
            raise ValueError("state needs at least one component")
        if any(c.shape != comps[0].shape for c in comps):
            raise ValueError("state components must share one shape")
        if not math.isfinite(self.time):
            raise ValueError(f"time must be finite, got {self.time}")
        object.__setattr__(self, "components", comps)


def _axpy(ys, a, ks):
    return tuple(y + a * k for y, k in zip(ys, ks))


def rk4_step(state, dt, rhs):
    """Advance ``state`` by one classical RK4 step.

    ``rhs(t, components)`` returns a tuple of derivative arrays, one per
    component. Raises :class:`NonFiniteError` if the update is not finite.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    t, y = state.time, state.components
    with np.errstate(over="ignore", invalid="ignore"):
        k1 = rhs(t, y)
        k2 = rhs(t + dt / 2, _axpy(y, dt / 2, k1))
        k3 = rhs(t + dt / 2, _axpy(y, dt / 2, k2))
        k4 = rhs(t + dt, _axpy(y, dt, k3))
        new = tuple(
            yi + dt / 6 * (a + 2 * b + 2 * c + d)
            for yi, a, b, c, d in zip(y, k1, k2, k3, k4)
        )
    if not all(np.all(np.isfinite(c)) for c in new):
        raise NonFiniteError(t)
    return OdeState(new, t + dt)


def integrate_to(state, t_end, dt, rhs):
    """Take equal RK4 steps no longer than ``dt`` to land exactly on ``t_end``."""
    span = t_end - state.time
    if span < 0:
        raise ValueError(f"cannot integrate backwards from {state.time} to {t_end}")
    if span == 0:
        return state
    # 1e-9 slack so a span that is an exact multiple of dt is not split further
    n = max(1, math.ceil(span / dt - 1e-9))
    h = span / n
    for _ in range(n):
        state = rk4_step(state, h, rhs)
    # snap accumulated roundoff in the clock
    return OdeState(state.components, t_end)
