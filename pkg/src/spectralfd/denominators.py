"""Denominator functions for difference quotients.

A denominator function replaces the raw step size in a difference quotient
so that the resulting scheme reproduces the exact solution of a reference
sub-equation.  This module collects every family used by the schemes in
this package:

* ``phi_nsfd`` / ``psi2_nsfd`` - time and space denominators built from the
  exact reaction and steady-diffusion sub-equations in physical space,
* ``phi_spectral`` / ``psi2_spectral`` - their transform-space analogues
  carrying the Fourier wave mode k and the Laplace mode s,
* ``mu_exact_step`` - step measures that make one-step relaxation exact for
  the stretched-exponential and Mittag-Leffler propagators,
* ``gallery_phi`` - the classical step-size-limit gallery (h, 1-e^-h,
  e^h-1, sin h), kept for comparison experiments; sin h may vanish and is
  therefore flagged rather than trusted.

All removable singularities (vanishing rate, matched reaction/diffusion,
matched Laplace mode) are evaluated by short Taylor series so every family
is continuous in its parameters.  psi-2 families return the squared space
denominator, which is the quantity the schemes consume; for negative
ratio arguments the sine turns into the hyperbolic sine, the real analytic
continuation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Union

from .specfun import MLParams, mittag_leffler

__all__ = [
    "DegenerateDenominatorError",
    "phi_nsfd",
    "psi2_nsfd",
    "phi_spectral",
    "psi2_spectral",
    "ExactStepKind",
    "mu_exact_step",
    "GalleryVariant",
    "GalleryDenominator",
    "gallery_phi",
    "Standard",
    "NsfdTime",
    "NsfdSpace",
    "SpectralTime",
    "SpectralSpace",
    "ConformableExact",
    "MlExact",
    "Gallery",
    "DenominatorSpec",
    "evaluate_denominator",
]

# Below this argument magnitude the closed forms cancel; switch to Taylor.
_SERIES_THRESHOLD = 1e-6
# exp overflows IEEE double just above this argument.
_EXP_OVERFLOW = 709.0


class DegenerateDenominatorError(ValueError):
    """Denominator hit a zero of its defining function or an invalid regime."""


def phi_nsfd(dt: float, b: float) -> float:
    """Time denominator (exp(b*dt) - 1) / b; equals dt in the limit b -> 0."""
    if not (dt > 0.0):
        raise ValueError(f"time step must be positive, got {dt!r}")
    w = b * dt
    if abs(w) < _SERIES_THRESHOLD:
        # (e^w - 1)/b = dt * (1 + w/2 + w^2/6 + ...)
        return dt * (1.0 + w / 2.0 + w * w / 6.0)
    if w > _EXP_OVERFLOW:
        raise OverflowError(f"exp({w:g}) exceeds the double range")
    return math.expm1(w) / b

def psi2_nsfd(dx: float, r: float) -> float:
    """Squared space denominator psi^2 for ratio r = b/a.

    For r > 0 this is (4/r) * sin(sqrt(r)*dx/2)**2, defined up to the first
    zero of the sine; for r < 0 the hyperbolic continuation
    (4/|r|) * sinh(sqrt(|r|)*dx/2)**2; near r = 0 the common Taylor limit
    dx**2 * (1 - r*dx**2/12 + ...).  Always strictly positive.
    """
    if not (dx > 0.0):
        raise ValueError(f"space step must be positive, got {dx!r}")
    w = r * dx * dx
    if abs(w) < _SERIES_THRESHOLD:
        return dx * dx * (1.0 - w / 12.0 + w * w / 360.0)
    if r > 0.0:
        u = math.sqrt(r) * dx / 2.0
        if u >= math.pi:
            raise DegenerateDenominatorError(
                f"sqrt(r)*dx/2 = {u:g} reaches the first sine zero (pi)"
            )
        s = math.sin(u)
        return 4.0 * s * s / r
    u = math.sqrt(-r) * dx / 2.0
    s = math.sinh(u)
    return 4.0 * s * s / (-r)


def phi_spectral(dt: float, a: float, b: float, k: float) -> float:
    """Fourier-space time denominator (exp((b - a*k^2)*dt) - 1)/(b - a*k^2).

    Reduces to ``phi_nsfd(dt, b)`` at k = 0 or a = 0, and to dt at the
    matched mode b = a*k^2.
    """
    if a < 0.0:
        raise ValueError(f"diffusion coefficient must be >= 0, got {a!r}")
    return phi_nsfd(dt, b - a * k * k)


def psi2_spectral(dx: float, a: float, b: float, s: float) -> float:
    """Laplace-space squared space denominator, ratio (b - s)/a.

    Reduces to ``psi2_nsfd(dx, b/a)`` at s = 0 and to dx**2 at s = b.
    """
    if not (a > 0.0):
        raise ValueError(f"diffusion coefficient must be positive, got {a!r}")
    return psi2_nsfd(dx, (b - s) / a)


class ExactStepKind(Enum):
    CONFORMABLE = "conformable"
    MITTAG_LEFFLER = "mittag_leffler"


def mu_exact_step(kind: ExactStepKind, rate: float, order: float,
                  t_n: float, t_np1: float, tol: float = 1e-12) -> float:
    """Step measure making y_{n+1} = y_n * (1 - rate*mu) exact at grid times.

    CONFORMABLE reproduces exp(-rate * t**order); MITTAG_LEFFLER reproduces
    E_order(-rate * t**order).  The measure depends on both endpoints, not
    just their difference: t**order is not translation invariant.
    """
    if not (rate > 0.0):
        raise ValueError(f"rate must be positive, got {rate!r}")
    if not (0.0 < order <= 1.0):
        raise ValueError(f"order must lie in (0, 1], got {order!r}")
    if not (0.0 <= t_n < t_np1):
        raise ValueError(
            f"need 0 <= t_n < t_np1, got t_n={t_n!r}, t_np1={t_np1!r}"
        )
    if kind is ExactStepKind.CONFORMABLE:
        delta = t_np1**order - t_n**order
        return -math.expm1(-rate * delta) / rate
    params = MLParams(alpha=order, tol=tol)
    e_next = mittag_leffler(params, -rate * t_np1**order)
    e_here = mittag_leffler(params, -rate * t_n**order) if t_n > 0.0 else 1.0
    if e_here == 0.0:
        raise DegenerateDenominatorError(
            f"propagator underflow at t_n={t_n:g}; step measure undefined"
        )
    return (1.0 - e_next / e_here) / rate


class GalleryVariant(Enum):
    STEP = "h"
    ONE_MINUS_EXP_NEG = "one_minus_exp_neg_h"
    EXP_MINUS_ONE = "exp_h_minus_one"
    SIN = "sin_h"


class GalleryDenominator(NamedTuple):
    value: float
    degenerate: bool


# sin(h) evaluated at a zero lands within a few ulp of it, never exactly on.
_DEGENERACY_FLOOR = 1e-14


def gallery_phi(variant: GalleryVariant, h: float) -> GalleryDenominator:
    """Classical denominator gallery; flags (not raises) nonpositive values."""
    if not (h > 0.0):
        raise ValueError(f"step must be positive, got {h!r}")
    if variant is GalleryVariant.STEP:
        value = h
    elif variant is GalleryVariant.ONE_MINUS_EXP_NEG:
        value = -math.expm1(-h)
    elif variant is GalleryVariant.EXP_MINUS_ONE:
        value = math.expm1(h)
    else:
        value = math.sin(h)
    degenerate = value <= _DEGENERACY_FLOOR * max(1.0, h)
    return GalleryDenominator(value=value, degenerate=degenerate)


# ---------------------------------------------------------------------------
# Tagged family: one record per denominator with its physical parameters.

@dataclass(frozen=True)
class Standard:
    h: float

    def evaluate(self) -> float:
        if not (self.h > 0.0):
            raise ValueError(f"step must be positive, got {self.h!r}")
        return self.h


@dataclass(frozen=True)
class NsfdTime:
    dt: float
    b: float

    def evaluate(self) -> float:
        return phi_nsfd(self.dt, self.b)


@dataclass(frozen=True)
class NsfdSpace:
    dx: float
    r: float

    def evaluate(self) -> float:
        return psi2_nsfd(self.dx, self.r)


@dataclass(frozen=True)
class SpectralTime:
    dt: float
    a: float
    b: float
    k: float

    def evaluate(self) -> float:
        return phi_spectral(self.dt, self.a, self.b, self.k)


@dataclass(frozen=True)
class SpectralSpace:
    dx: float
    a: float
    b: float
    s: float

    def evaluate(self) -> float:
        return psi2_spectral(self.dx, self.a, self.b, self.s)


@dataclass(frozen=True)
class ConformableExact:
    rate: float
    order: float
    t_n: float
    t_np1: float

    def evaluate(self) -> float:
        return mu_exact_step(ExactStepKind.CONFORMABLE, self.rate, self.order,
                             self.t_n, self.t_np1)


@dataclass(frozen=True)
class MlExact:
    rate: float
    order: float
    t_n: float
    t_np1: float

    def evaluate(self) -> float:
        return mu_exact_step(ExactStepKind.MITTAG_LEFFLER, self.rate,
                             self.order, self.t_n, self.t_np1)


@dataclass(frozen=True)
class Gallery:
    variant: GalleryVariant
    h: float

    def evaluate(self) -> float:
        return gallery_phi(self.variant, self.h).value


DenominatorSpec = Union[Standard, NsfdTime, NsfdSpace, SpectralTime,
                        SpectralSpace, ConformableExact, MlExact, Gallery]


def evaluate_denominator(spec: DenominatorSpec) -> float:
    """Evaluate any member of the denominator family."""
    return spec.evaluate()
