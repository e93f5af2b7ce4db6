"""Solvers for u_t = a*u_xx + b*u on a 1-D grid.

Three explicit stepper families share one shape - new = u + phi * (a * D2 u
/ psi2 + b * u) with D2 the standard second difference - and differ only in
their denominators:

* ``step_euler``     - phi = dt, psi2 = dx**2,
* ``step_nsfd``      - phi and psi2 from the exact physical-space
  sub-equations (reaction growth, steady diffusion balance),
* ``step_spectral``  - phi and psi2 from transform space, carrying a chosen
  Fourier mode k and Laplace mode s.

``evolve_modal`` instead updates every Fourier mode of a periodic frame by
its exact per-step factor exp((b - a*k^2)*dt), which makes the evolution
exact for any step size; the transform is a naive O(M^2) sum, adequate at
desk scale (M <= 4096).  ``laplace_mode_solve`` is the transform-space
boundary-value companion: a tridiagonal solve for one Laplace mode of the
solution with homogeneous Dirichlet walls.  ``amplification_factor``
reports the per-step multiplier any of the families applies to a single
spatial mode, the basic stability diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .denominators import phi_nsfd, phi_spectral, psi2_nsfd, psi2_spectral

__all__ = [
    "Periodic",
    "Dirichlet",
    "Boundary",
    "Grid1D",
    "PDEProblem",
    "EulerStd",
    "Nsfd",
    "SpectralPhys",
    "SpectralModal",
    "SolverKind",
    "FieldTrajectory",
    "SingularSystemError",
    "step_euler",
    "step_nsfd",
    "step_spectral",
    "evolve",
    "evolve_modal",
    "laplace_mode_solve",
    "amplification_factor",
    "grid_wavenumbers",
    "default_spectral_params",
]

MAX_MODAL_POINTS = 4096


class SingularSystemError(ArithmeticError):
    """The boundary-value system is singular (resonant mode)."""


@dataclass(frozen=True)
class Periodic:
    pass


@dataclass(frozen=True)
class Dirichlet:
    left_value: float
    right_value: float


Boundary = Union[Periodic, Dirichlet]


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1-D grid; periodic grids identify the point after the last
    with the first, so the domain length is m_points * dx."""

    x0: float
    dx: float
    m_points: int
    boundary: Boundary

    def __post_init__(self) -> None:
        if not (self.dx > 0.0):
            raise ValueError(f"dx must be positive, got {self.dx!r}")
        if self.m_points < 3:
            raise ValueError(f"need at least 3 points, got {self.m_points!r}")

    @property
    def points(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.m_points)

    @property
    def length(self) -> float:
        if isinstance(self.boundary, Periodic):
            return self.m_points * self.dx
        return (self.m_points - 1) * self.dx


@dataclass(frozen=True)
class PDEProblem:
    """Diffusion coefficient, reaction rate, and sampled initial data."""

    a: float
    b: float
    initial_condition: np.ndarray

    def __post_init__(self) -> None:
        if self.a < 0.0:
            raise ValueError(f"diffusion coefficient must be >= 0, got {self.a!r}")
        ic = np.asarray(self.initial_condition, dtype=float)
        object.__setattr__(self, "initial_condition", ic)
        if ic.ndim != 1:
            raise ValueError("initial condition must be a 1-D sample array")
        if not np.all(np.isfinite(ic)):
            raise ValueError("initial condition must be finite")

    def check_grid(self, grid: Grid1D) -> None:
        if len(self.initial_condition) != grid.m_points:
            raise ValueError(
                f"initial condition has {len(self.initial_condition)} samples, "
                f"grid has {grid.m_points} points"
            )


@dataclass(frozen=True)
class EulerStd:
    dt: float


@dataclass(frozen=True)
class Nsfd:
    dt: float


@dataclass(frozen=True)
class SpectralPhys:
    dt: float
    k: float
    s: float


@dataclass(frozen=True)
class SpectralModal:
    dt: float


SolverKind = Union[EulerStd, Nsfd, SpectralPhys, SpectralModal]


@dataclass(frozen=True)
class FieldTrajectory:
    """Grid samples of the field at uniformly spaced times."""

    grid: Grid1D
    times: np.ndarray
    frames: np.ndarray

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        frames = np.asarray(self.frames, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "frames", frames)
        if frames.ndim != 2 or frames.shape[0] != len(times):
            raise ValueError("frames must be one row per time")
        if frames.shape[1] != self.grid.m_points:
            raise ValueError("frame length must match the grid")
        if len(times) >= 2:
            steps = np.diff(times)
            tol = 1e-12 * max(abs(steps[0]), float(np.max(np.abs(times))))
            if np.any(np.abs(steps - steps[0]) > tol):
                raise ValueError("times must be uniformly spaced")


def _second_difference(frame: np.ndarray, boundary: Boundary) -> np.ndarray:
    """u_{m+1} - 2 u_m + u_{m-1}; edge rows of Dirichlet grids are zeroed
    (they are overwritten with boundary data after each step)."""
    if isinstance(boundary, Periodic):
        return np.roll(frame, -1) - 2.0 * frame + np.roll(frame, 1)
    d2 = np.zeros_like(frame)
    d2[1:-1] = frame[2:] - 2.0 * frame[1:-1] + frame[:-2]
    return d2


def _apply_boundary(frame: np.ndarray, boundary: Boundary) -> np.ndarray:
    if isinstance(boundary, Dirichlet):
        frame[0] = boundary.left_value
        frame[-1] = boundary.right_value
    return frame


def _as_frame(frame, grid: Grid1D) -> np.ndarray:
    u = np.asarray(frame, dtype=float)
    if u.shape != (grid.m_points,):
        raise ValueError(f"frame shape {u.shape} does not match grid")
    return u


def step_euler(problem: PDEProblem, grid: Grid1D, dt: float,
               frame) -> np.ndarray:
    """Standard explicit step: denominators dt and dx**2."""
    u = _as_frame(frame, grid)
    d2 = _second_difference(u, grid.boundary)
    new = u + dt * (problem.a * d2 / grid.dx**2 + problem.b * u)
    return _apply_boundary(new, grid.boundary)


def step_nsfd(problem: PDEProblem, grid: Grid1D, dt: float,
              frame) -> np.ndarray:
    """Nonstandard explicit step: exact sub-equation denominators."""
    u = _as_frame(frame, grid)
    phi = phi_nsfd(dt, problem.b)
    if problem.a > 0.0:
        psi2 = psi2_nsfd(grid.dx, problem.b / problem.a)
        diffusion = problem.a * _second_difference(u, grid.boundary) / psi2
    else:
        diffusion = 0.0
    new = u + phi * (diffusion + problem.b * u)
    return _apply_boundary(new, grid.boundary)


def step_spectral(problem: PDEProblem, grid: Grid1D, dt: float, k: float,
                  s: float, frame) -> np.ndarray:
    """Physical-space spectral step with chosen wave mode k and Laplace mode s."""
    u = _as_frame(frame, grid)
    phi = phi_spectral(dt, problem.a, problem.b, k)
    psi2 = psi2_spectral(grid.dx, problem.a, problem.b, s)
    d2 = _second_difference(u, grid.boundary)
    new = u + phi * (problem.a * d2 / psi2 + problem.b * u)
    return _apply_boundary(new, grid.boundary)


def evolve(problem: PDEProblem, grid: Grid1D, kind: SolverKind,
           n_steps: int) -> FieldTrajectory:
    """Run any solver kind for n_steps from the problem's initial data.

    Explicit steppers stop early if a frame goes non-finite (blow-up is a
    result, not an exception); the returned trajectory then ends at the
    last finite frame.
    """
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps!r}")
    problem.check_grid(grid)
    if isinstance(kind, SpectralModal):
        return evolve_modal(problem, grid, kind.dt, n_steps)
    u = _apply_boundary(problem.initial_condition.copy(), grid.boundary)
    frames = [u]
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(n_steps):
            if isinstance(kind, EulerStd):
                u = step_euler(problem, grid, kind.dt, u)
            elif isinstance(kind, Nsfd):
                u = step_nsfd(problem, grid, kind.dt, u)
            elif isinstance(kind, SpectralPhys):
                u = step_spectral(problem, grid, kind.dt, kind.k, kind.s, u)
            else:
                raise TypeError(f"unknown solver kind {kind!r}")
            if not np.all(np.isfinite(u)):
                break
            frames.append(u)
    times = np.arange(len(frames)) * kind.dt
    return FieldTrajectory(grid=grid, times=times, frames=np.vstack(frames))


def _dft(u: np.ndarray) -> np.ndarray:
    """Naive forward transform, C_k = sum_m u_m exp(-2 pi i k m / M)."""
    m = len(u)
    idx = np.arange(m)
    out = np.empty(m, dtype=complex)
    for k in range(m):
        out[k] = np.sum(u * np.exp(-2j * np.pi * k * idx / m))
    return out


def _idft(c: np.ndarray) -> np.ndarray:
    """Naive inverse transform (1/M normalization)."""
    m = len(c)
    idx = np.arange(m)
    out = np.empty(m, dtype=complex)
    for n in range(m):
        out[n] = np.sum(c * np.exp(2j * np.pi * idx * n / m)) / m
    return out


def grid_wavenumbers(grid: Grid1D) -> np.ndarray:
    """Signed physical wavenumbers 2*pi*n/L of every transform index."""
    m = grid.m_points
    n = np.arange(m)
    n = np.where(n <= m // 2, n, n - m)
    return 2.0 * np.pi * n / grid.length


def _enforce_conjugate_symmetry(c: np.ndarray) -> np.ndarray:
    m = len(c)
    rev = (m - np.arange(m)) % m
    return 0.5 * (c + np.conj(c[rev]))


def evolve_modal(problem: PDEProblem, grid: Grid1D, dt: float,
                 n_steps: int) -> FieldTrajectory:
    """Exact per-mode evolution on a periodic grid.

    Each Fourier mode is multiplied per step by exp((b - a*k^2)*dt), its
    exact growth factor, so the result is exact in dt for band-limited
    initial data.  Realness of the output is enforced through conjugate
    symmetry of the evolved spectrum.
    """
    if not isinstance(grid.boundary, Periodic):
        raise ValueError("modal evolution requires a periodic grid")
    if grid.m_points > MAX_MODAL_POINTS:
        raise ValueError(
            f"naive transform capped at {MAX_MODAL_POINTS} points"
        )
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps!r}")
    problem.check_grid(grid)
    wavenumbers = grid_wavenumbers(grid)
    factors = np.exp((problem.b - problem.a * wavenumbers**2) * dt)
    spectrum = _enforce_conjugate_symmetry(_dft(problem.initial_condition))
    frames = np.empty((n_steps + 1, grid.m_points))
    frames[0] = problem.initial_condition
    for step in range(1, n_steps + 1):
        spectrum = spectrum * factors
        frames[step] = _idft(spectrum).real
    times = np.arange(n_steps + 1) * dt
    return FieldTrajectory(grid=grid, times=times, frames=frames)


def laplace_mode_solve(problem: PDEProblem, grid: Grid1D,
                       s: float) -> np.ndarray:
    """Laplace-mode boundary-value solve with homogeneous Dirichlet walls.

    Solves (Y_{m+1} - 2 Y_m + Y_{m-1})/psi2 + ((b - s)/a) Y_m + u0_m/a = 0
    for the interior, with Y = 0 at both walls.  For s > b the system is
    strictly diagonally dominant, hence uniquely solvable; a vanishing
    pivot is reported as a resonant (singular) mode.
    """
    problem.check_grid(grid)
    if not isinstance(grid.boundary, Dirichlet) or \
            grid.boundary.left_value != 0.0 or grid.boundary.right_value != 0.0:
        raise ValueError("Laplace-mode solve requires homogeneous Dirichlet walls")
    if not (s > problem.b):
        raise ValueError(
            f"need s > b for the decaying transform regime, got s={s!r}, b={problem.b!r}"
        )
    a, b = problem.a, problem.b
    if not (a > 0.0):
        raise ValueError(f"diffusion coefficient must be positive, got {a!r}")
    psi2 = psi2_spectral(grid.dx, a, b, s)
    m = grid.m_points
    n_inner = m - 2
    # interior rows, scaled by psi2: Y_{m-1} + diag*Y_m + Y_{m+1} = rhs
    diag = -2.0 + psi2 * (b - s) / a
    rhs = -psi2 * problem.initial_condition[1:-1] / a

    # Thomas sweep with unit off-diagonals
    c_prime = np.empty(n_inner)
    d_prime = np.empty(n_inner)
    denom = diag
    if abs(denom) < 1e-300:
        raise SingularSystemError("zero pivot: resonant Laplace mode")
    c_prime[0] = 1.0 / denom
    d_prime[0] = rhs[0] / denom
    for i in range(1, n_inner):
        denom = diag - c_prime[i - 1]
        if abs(denom) < 1e-300:
            raise SingularSystemError("zero pivot: resonant Laplace mode")
        c_prime[i] = 1.0 / denom
        d_prime[i] = (rhs[i] - d_prime[i - 1]) / denom
    y_inner = np.empty(n_inner)
    y_inner[-1] = d_prime[-1]
    for i in range(n_inner - 2, -1, -1):
        y_inner[i] = d_prime[i] - c_prime[i] * y_inner[i + 1]

    solution = np.zeros(m)
    solution[1:-1] = y_inner
    return solution


def amplification_factor(kind: SolverKind, problem: PDEProblem, grid: Grid1D,
                         k: float) -> float:
    """Per-step multiplier the solver applies to the spatial mode with
    physical wavenumber k on a periodic grid."""
    a, b, dx = problem.a, problem.b, grid.dx
    sin2 = math.sin(k * dx / 2.0) ** 2
    if isinstance(kind, EulerStd):
        return 1.0 + kind.dt * (b - 4.0 * a * sin2 / dx**2)
    if isinstance(kind, Nsfd):
        phi = phi_nsfd(kind.dt, b)
        diffusion = 4.0 * a * sin2 / psi2_nsfd(dx, b / a) if a > 0.0 else 0.0
        return 1.0 + phi * (b - diffusion)
    if isinstance(kind, SpectralPhys):
        phi = phi_spectral(kind.dt, a, b, kind.k)
        diffusion = (4.0 * a * sin2 / psi2_spectral(dx, a, b, kind.s)
                     if a > 0.0 else 0.0)
        return 1.0 + phi * (b - diffusion)
    if isinstance(kind, SpectralModal):
        return math.exp((b - a * k * k) * kind.dt)
    raise TypeError(f"unknown solver kind {kind!r}")


def default_spectral_params(problem: PDEProblem, grid: Grid1D) -> tuple[float, float]:
    """Default (k, s) for the physical-space spectral scheme.

    k is the dominant wavenumber of the initial data's transform; s is
    b + a*(pi/L)**2, the first regular Laplace mode above the reaction rate.
    """
    problem.check_grid(grid)
    spectrum = np.abs(_dft(problem.initial_condition))
    half = grid.m_points // 2
    j = int(np.argmax(spectrum[: half + 1]))
    k = 2.0 * np.pi * j / grid.length
    s = problem.b + problem.a * (np.pi / grid.length) ** 2
    return float(k), float(s)
