"""Independent oracles shared by the test suite.

Everything here is deliberately built from primitives unrelated to the
implementation paths it checks: libm special functions, dense matrix
application, and bisection.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np


def ml_half_oracle(t: float) -> float:
    """E_{1/2}(-t) via the identity exp(t^2) * erfc(t), erfc from libm.

    The plain product overflows past t ~ 26, so deep arguments go through
    mpmath (still an independent algorithm from the code under test).
    """
    if t * t < 700.0:
        return math.exp(t * t) * math.erfc(t)
    with mpmath.workdps(30):
        return float(mpmath.exp(mpmath.mpf(t) ** 2) * mpmath.erfc(mpmath.mpf(t)))


def dense_step_matrix(m: int, dx: float, dt: float, a: float, b: float,
                      periodic: bool) -> np.ndarray:
    """One explicit Euler step as a dense matrix, built element by element."""
    lap = np.zeros((m, m))
    for i in range(m):
        lap[i, i] = -2.0
        if periodic:
            lap[i, (i - 1) % m] = 1.0
            lap[i, (i + 1) % m] = 1.0
        elif 0 < i < m - 1:
            lap[i, i - 1] = 1.0
            lap[i, i + 1] = 1.0
    if not periodic:
        lap[0, :] = 0.0
        lap[-1, :] = 0.0
    return np.eye(m) + dt * (a * lap / dx**2 + b * np.eye(m))


def bisect(f, lo: float, hi: float, tol: float = 1e-14,
           max_iter: int = 200) -> float:
    """Plain bisection for a sign change of f on [lo, hi]."""
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise ValueError("no sign change on the bracket")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0 or (hi - lo) < tol * max(1.0, abs(mid)):
            return mid
        if f_lo * f_mid < 0.0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)
