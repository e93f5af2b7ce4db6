"""Decay-equation schemes, the exact oscillator scheme, and order measurement.

Four one-step schemes for dx/dt = -rate * x are provided: explicit and
implicit Euler (first order), the exact scheme in implicit quotient form
with denominator (exp(rate*h) - 1)/rate, and the same exact update written
directly as multiplication by exp(-rate*h).  The quotient and multiplicative
forms are algebraically identical - 1/(1 + rate*phi(h)) = exp(-rate*h) -
and both reproduce the continuous solution at every grid point for every
step size.

The harmonic-oscillator recurrence y_{n+1} = 2*cos(omega*h)*y_n - y_{n-1}
is the exact discrete form of y'' + omega^2 y = 0 (its denominator is the
squared quarter-period sine measure), and conserves the discrete amplitude
up to roundoff.

``order_estimate`` measures the classical observed convergence order from a
halving sequence of step sizes against the closed-form solution, reporting
schemes whose error sits at the roundoff floor as exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .denominators import phi_nsfd

__all__ = [
    "SchemeFamily",
    "DecayScheme",
    "Trajectory",
    "OrderSample",
    "decay_step",
    "decay_solve",
    "ho_exact_solve",
    "ho_initial_from_velocity",
    "order_estimate",
    "halving_steps",
]

# Errors at or below this multiple of |x0| count as exact (roundoff floor).
EXACT_ERROR_FLOOR = 1e-13


class SchemeFamily(Enum):
    FORWARD_EULER = "forward_euler"
    BACKWARD_EULER = "backward_euler"
    MICKENS_EXACT = "mickens_exact"
    SPECTRAL_EXACT = "spectral_exact"


@dataclass(frozen=True)
class DecayScheme:
    """A decay scheme family with its rate and step size."""

    family: SchemeFamily
    rate: float
    step: float

    def __post_init__(self) -> None:
        if not (self.rate > 0.0):
            raise ValueError(f"rate must be positive, got {self.rate!r}")
        if not (self.step > 0.0):
            raise ValueError(f"step must be positive, got {self.step!r}")


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled scalar states with the scheme that produced them."""

    times: np.ndarray
    states: np.ndarray
    scheme: object

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        states = np.asarray(self.states, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", states)
        if times.shape != states.shape or times.ndim != 1:
            raise ValueError("times and states must be 1-D and equally long")
        if len(times) >= 2:
            steps = np.diff(times)
            h = steps[0]
            # spacing jitter scales with the time magnitude (ulp of t_n)
            tol = 1e-12 * max(abs(h), float(np.max(np.abs(times))))
            if h <= 0.0 or np.any(np.abs(steps - h) > tol):
                raise ValueError("times must increase with uniform spacing")


def decay_step(scheme: DecayScheme, x: float) -> float:
    """Advance one step of the decay equation under the given scheme."""
    lam, h = scheme.rate, scheme.step
    family = scheme.family
    if family is SchemeFamily.FORWARD_EULER:
        return x * (1.0 - lam * h)
    if family is SchemeFamily.BACKWARD_EULER:
        return x / (1.0 + lam * h)
    if family is SchemeFamily.MICKENS_EXACT:
        # implicit quotient form; 1 + lam*phi collapses to exp(lam*h)
        return x / (1.0 + lam * phi_nsfd(h, lam))
    return x * math.exp(-lam * h)


def decay_solve(scheme: DecayScheme, x0: float, n_steps: int) -> Trajectory:
    """Iterate ``decay_step`` from x0 for n_steps."""
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps!r}")
    states = np.empty(n_steps + 1)
    states[0] = x0
    x = x0
    for i in range(n_steps):
        x = decay_step(scheme, x)
        states[i + 1] = x
    times = np.arange(n_steps + 1) * scheme.step
    return Trajectory(times=times, states=states, scheme=scheme)


def ho_initial_from_velocity(omega: float, h: float, y0: float,
                             v0: float) -> float:
    """Second starting value for velocity-specified oscillator data."""
    return y0 * math.cos(omega * h) + v0 * math.sin(omega * h) / omega


def ho_exact_solve(omega: float, h: float, n_steps: int, y0: float,
                   y1: float) -> Trajectory:
    """Exact harmonic-oscillator recurrence y_{n+1} = 2cos(omega h) y_n - y_{n-1}.

    With y0 = 1 and y1 = cos(omega*h) the output is cos(n*omega*h) up to
    roundoff accumulation.  Requires omega*h/2 < pi (first zero of the
    quarter-period sine measure).
    """
    if not (omega > 0.0):
        raise ValueError(f"frequency must be positive, got {omega!r}")
    if not (h > 0.0):
        raise ValueError(f"step must be positive, got {h!r}")
    if omega * h / 2.0 >= math.pi:
        raise ValueError(
            f"omega*h/2 = {omega * h / 2.0:g} must stay below pi"
        )
    if n_steps < 2:
        raise ValueError(f"n_steps must be >= 2, got {n_steps!r}")
    c = 2.0 * math.cos(omega * h)
    states = np.empty(n_steps + 1)
    states[0] = y0
    states[1] = y1
    for n in range(1, n_steps):
        states[n + 1] = c * states[n] - states[n - 1]
    times = np.arange(n_steps + 1) * h
    return Trajectory(times=times, states=states,
                      scheme=("harmonic_exact", omega, h))


class OrderSample(NamedTuple):
    h: float
    error: float
    observed_p: Optional[float]
    exact: bool


def halving_steps(h0: float, levels: int) -> list[float]:
    """h0, h0/2, ..., halved ``levels`` - 1 times."""
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels!r}")
    return [h0 / 2**i for i in range(levels)]


def order_estimate(family: SchemeFamily, rate: float, x0: float,
                   t_final: float, h_list: Sequence[float]) -> list[OrderSample]:
    """Observed order of a decay scheme from a halving step sequence.

    error(h) is the terminal-state deviation from x0*exp(-rate*t_final);
    observed_p pairs consecutive levels as log2(error(h)/error(h/2)).  Rows
    whose error sits at the roundoff floor (1e-13 * |x0|) are flagged exact
    and excluded from order ratios.
    """
    h_list = list(h_list)
    if len(h_list) < 4:
        raise ValueError(f"need at least 4 step sizes, got {len(h_list)}")
    for h, h_next in zip(h_list, h_list[1:]):
        if abs(h_next - h / 2.0) > 1e-12 * h:
            raise ValueError("h_list must be a halving sequence")
    errors = []
    exact_value = x0 * math.exp(-rate * t_final)
    for h in h_list:
        n_real = t_final / h
        n = round(n_real)
        if n < 1 or abs(n_real - n) > 1e-9:
            raise ValueError(
                f"step {h!r} does not divide t_final={t_final!r}"
            )
        scheme = DecayScheme(family=family, rate=rate, step=h)
        traj = decay_solve(scheme, x0, n)
        errors.append(abs(float(traj.states[-1]) - exact_value))

    floor = EXACT_ERROR_FLOOR * abs(x0)
    samples = []
    for i, (h, err) in enumerate(zip(h_list, errors)):
        exact = err <= floor
        p: Optional[float] = None
        if not exact and i + 1 < len(errors) and errors[i + 1] > floor:
            p = math.log2(errors[i] / errors[i + 1])
        samples.append(OrderSample(h=h, error=err, observed_p=p, exact=exact))
    return samples
