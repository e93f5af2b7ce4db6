import math

import numpy as np
import pytest

from spectralfd.denominators import phi_nsfd, psi2_nsfd, psi2_spectral
from spectralfd.pde_solvers import (
    Dirichlet,
    EulerStd,
    FieldTrajectory,
    Grid1D,
    Nsfd,
    PDEProblem,
    Periodic,
    SpectralModal,
    SpectralPhys,
    _dft,
    _idft,
    amplification_factor,
    default_spectral_params,
    evolve,
    evolve_modal,
    grid_wavenumbers,
    laplace_mode_solve,
    step_euler,
    step_nsfd,
    step_spectral,
)

from oracles import bisect, dense_step_matrix


def periodic_grid(m=64, length=2.0 * math.pi):
    return Grid1D(x0=0.0, dx=length / m, m_points=m, boundary=Periodic())


def dirichlet_grid(m=33, length=math.pi):
    return Grid1D(x0=0.0, dx=length / (m - 1), m_points=m,
                  boundary=Dirichlet(0.0, 0.0))


class TestGridAndProblem:
    def test_grid_validation(self):
        with pytest.raises(ValueError):
            Grid1D(x0=0.0, dx=0.0, m_points=8, boundary=Periodic())
        with pytest.raises(ValueError):
            Grid1D(x0=0.0, dx=0.1, m_points=2, boundary=Periodic())

    def test_periodic_length_counts_wrap_point(self):
        grid = periodic_grid(m=64)
        assert grid.length == pytest.approx(2.0 * math.pi, rel=1e-15)
        assert len(grid.points) == 64

    def test_problem_validation(self):
        with pytest.raises(ValueError):
            PDEProblem(a=-1.0, b=0.0, initial_condition=np.zeros(8))
        with pytest.raises(ValueError):
            PDEProblem(a=1.0, b=0.0, initial_condition=np.array([1.0, np.inf]))
        problem = PDEProblem(a=1.0, b=0.0, initial_condition=np.zeros(8))
        with pytest.raises(ValueError):
            problem.check_grid(periodic_grid(m=16))


class TestStepEuler:
    def test_zero_frame(self):
        grid = periodic_grid(m=16)
        problem = PDEProblem(a=1.0, b=2.0, initial_condition=np.zeros(16))
        assert np.all(step_euler(problem, grid, 0.1, np.zeros(16)) == 0.0)

    def test_identity_when_trivial(self):
        grid = periodic_grid(m=16)
        problem = PDEProblem(a=0.0, b=0.0, initial_condition=np.zeros(16))
        frame = np.sin(grid.points)
        np.testing.assert_array_equal(step_euler(problem, grid, 0.1, frame),
                                      frame)

    def test_single_mode_amplification_matches_matrix(self):
        m = 64
        grid = periodic_grid(m=m)
        problem = PDEProblem(a=1.0, b=0.0,
                             initial_condition=np.sin(grid.points))
        dt = 0.001
        frame = np.sin(grid.points)
        stepped = step_euler(problem, grid, dt, frame)
        g = 1.0 + dt * (0.0 - (4.0 / grid.dx**2)
                        * math.sin(1.0 * grid.dx / 2.0) ** 2)
        np.testing.assert_allclose(stepped, g * frame, rtol=1e-12, atol=1e-15)
        matrix = dense_step_matrix(m, grid.dx, dt, 1.0, 0.0, periodic=True)
        np.testing.assert_allclose(stepped, matrix @ frame, rtol=1e-12,
                                   atol=1e-15)

    def test_dirichlet_rows_pinned(self):
        grid = Grid1D(x0=0.0, dx=0.1, m_points=11,
                      boundary=Dirichlet(2.0, -1.0))
        problem = PDEProblem(a=1.0, b=0.0, initial_condition=np.zeros(11))
        stepped = step_euler(problem, grid, 0.001, np.zeros(11))
        assert stepped[0] == 2.0 and stepped[-1] == -1.0


class TestStepNsfd:
    def test_constant_frame_exact_growth(self):
        grid = periodic_grid(m=32)
        problem = PDEProblem(a=1.0, b=0.7,
                             initial_condition=np.full(32, 3.0))
        for dt in (0.1, 1.0, 5.0):
            stepped = step_nsfd(problem, grid, dt, np.full(32, 3.0))
            expected = 3.0 * math.exp(0.7 * dt)
            np.testing.assert_allclose(stepped, expected, rtol=1e-12)

    def test_steady_mode_preserved(self):
        for m in (17, 33):
            grid = dirichlet_grid(m=m)
            frame = np.sin(grid.points)
            problem = PDEProblem(a=1.0, b=1.0, initial_condition=frame)
            for dt in (0.1, 1.0, 2.0):
                stepped = step_nsfd(problem, grid, dt, frame)
                assert np.max(np.abs(stepped - frame)) <= 1e-12

    def test_steady_mode_large_step_roundoff(self):
        # phi(5, 1) ~ 147 amplifies second-difference roundoff; the mode is
        # preserved to the correspondingly looser floor
        grid = dirichlet_grid(m=33)
        frame = np.sin(grid.points)
        problem = PDEProblem(a=1.0, b=1.0, initial_condition=frame)
        stepped = step_nsfd(problem, grid, 5.0, frame)
        assert np.max(np.abs(stepped - frame)) <= 2e-11

    def test_zero_frame(self):
        grid = periodic_grid(m=16)
        problem = PDEProblem(a=1.0, b=1.0, initial_condition=np.zeros(16))
        assert np.all(step_nsfd(problem, grid, 0.5, np.zeros(16)) == 0.0)

    def test_diffusionless_reduction(self):
        grid = periodic_grid(m=16)
        problem = PDEProblem(a=0.0, b=2.0, initial_condition=np.zeros(16))
        frame = np.cos(grid.points)
        stepped = step_nsfd(problem, grid, 0.3, frame)
        np.testing.assert_allclose(stepped, frame * math.exp(2.0 * 0.3),
                                   rtol=1e-14)


class TestStepSpectral:
    def test_reduces_to_nsfd_at_zero_modes(self):
        rng = np.random.RandomState(7)
        grid = periodic_grid(m=32)
        frame = rng.standard_normal(32)
        problem = PDEProblem(a=1.0, b=0.8, initial_condition=frame)
        nsfd = step_nsfd(problem, grid, 0.4, frame)
        spectral = step_spectral(problem, grid, 0.4, 0.0, 0.0, frame)
        np.testing.assert_allclose(spectral, nsfd, rtol=1e-14, atol=1e-16)

    def test_zero_frame(self):
        grid = periodic_grid(m=16)
        problem = PDEProblem(a=1.0, b=1.0, initial_condition=np.zeros(16))
        stepped = step_spectral(problem, grid, 0.5, 1.0, 2.0, np.zeros(16))
        assert np.all(stepped == 0.0)

    def test_matched_mode_exact_amplification(self):
        # choose s so the discrete spatial eigenvalue equals k0^2 exactly
        m, k0 = 64, 2.0
        grid = periodic_grid(m=m)
        a, b, dt = 1.0, 0.5, 0.8
        target = 4.0 * math.sin(k0 * grid.dx / 2.0) ** 2 / k0**2

        def mismatch(s):
            return psi2_spectral(grid.dx, a, b, s) - target

        s_star = bisect(mismatch, b - 0.9 * a * (math.pi / grid.dx) ** 2,
                        b + 1e6)
        frame = np.sin(k0 * grid.points)
        problem = PDEProblem(a=a, b=b, initial_condition=frame)
        stepped = step_spectral(problem, grid, dt, k0, s_star, frame)
        expected = math.exp((b - a * k0**2) * dt) * frame
        assert np.max(np.abs(stepped - expected)) <= 1e-10

    def test_linearity(self):
        rng = np.random.RandomState(11)
        grid = periodic_grid(m=24)
        u = rng.standard_normal(24)
        v = rng.standard_normal(24)
        alpha, beta = 1.7, -0.6
        for a, b in ((1.0, 0.5), (0.3, -1.0)):
            problem = PDEProblem(a=a, b=b, initial_condition=u)
            for step in (
                lambda f: step_euler(problem, grid, 0.2, f),
                lambda f: step_nsfd(problem, grid, 0.2, f),
                lambda f: step_spectral(problem, grid, 0.2, 1.0, b + a, f),
            ):
                combined = step(alpha * u + beta * v)
                separate = alpha * step(u) + beta * step(v)
                np.testing.assert_allclose(combined, separate, rtol=1e-12,
                                           atol=1e-12)


class TestEvolveModal:
    def test_single_mode_exact_any_step(self):
        grid = periodic_grid(m=64)
        x = grid.points
        problem = PDEProblem(a=1.0, b=1.0, initial_condition=np.sin(2.0 * x))
        for dt in (0.01, 0.1, 1.0):
            n = round(2.0 / dt)
            traj = evolve_modal(problem, grid, dt, n)
            exact = math.exp((1.0 - 4.0) * 2.0) * np.sin(2.0 * x)
            err = np.max(np.abs(traj.frames[-1] - exact)) / np.max(np.abs(exact))
            assert err <= 1e-10

    def test_superposition(self):
        grid = periodic_grid(m=64)
        x = grid.points
        ic = np.sin(x) + 0.25 * np.sin(3.0 * x)
        problem = PDEProblem(a=1.0, b=0.0, initial_condition=ic)
        traj = evolve_modal(problem, grid, 0.5, 4)
        t = 2.0
        exact = (math.exp(-t) * np.sin(x)
                 + 0.25 * math.exp(-9.0 * t) * np.sin(3.0 * x))
        err = np.max(np.abs(traj.frames[-1] - exact)) / np.max(np.abs(exact))
        assert err <= 1e-10

    def test_constant_mode_growth(self):
        grid = periodic_grid(m=16)
        problem = PDEProblem(a=1.0, b=0.4,
                             initial_condition=np.full(16, 2.0))
        traj = evolve_modal(problem, grid, 0.7, 3)
        expected = 2.0 * math.exp(0.4 * 0.7 * 3)
        np.testing.assert_allclose(traj.frames[-1], expected, rtol=1e-12)

    def test_realness_residue(self):
        rng = np.random.RandomState(3)
        grid = periodic_grid(m=32)
        ic = rng.standard_normal(32)
        spectrum = _dft(ic)
        factors = np.exp((0.5 - grid_wavenumbers(grid) ** 2) * 0.3)
        complex_frame = _idft(spectrum * factors**4)
        residue = np.max(np.abs(complex_frame.imag))
        assert residue <= 1e-12 * np.linalg.norm(complex_frame.real)

    def test_requires_periodic(self):
        grid = dirichlet_grid(m=17)
        problem = PDEProblem(a=1.0, b=0.0,
                             initial_condition=np.zeros(17))
        with pytest.raises(ValueError):
            evolve_modal(problem, grid, 0.1, 2)

    def test_transform_size_cap(self):
        m = 5000
        grid = Grid1D(x0=0.0, dx=0.001, m_points=m, boundary=Periodic())
        problem = PDEProblem(a=1.0, b=0.0, initial_condition=np.zeros(m))
        with pytest.raises(ValueError):
            evolve_modal(problem, grid, 0.1, 1)

    def test_transform_roundtrip(self):
        rng = np.random.RandomState(5)
        u = rng.standard_normal(20)
        np.testing.assert_allclose(_idft(_dft(u)).real, u, atol=1e-12)


class TestEvolve:
    def test_blowup_truncates_on_nonfinite(self):
        grid = periodic_grid(m=32)
        problem = PDEProblem(a=1.0, b=0.0,
                             initial_condition=np.sin(grid.points))
        traj = evolve(problem, grid, EulerStd(dt=1.0), 2000)
        assert len(traj.times) < 2001
        assert np.all(np.isfinite(traj.frames))

    def test_solver_reduction_chain(self):
        rng = np.random.RandomState(13)
        grid = periodic_grid(m=24)
        frame = rng.standard_normal(24)
        tiny = 1e-12  # difference scales linearly with the coefficients
        problem = PDEProblem(a=tiny, b=tiny, initial_condition=frame)
        euler = step_euler(problem, grid, 0.3, frame)
        nsfd = step_nsfd(problem, grid, 0.3, frame)
        spectral = step_spectral(problem, grid, 0.3, 0.0, 0.0, frame)
        np.testing.assert_allclose(nsfd, euler, rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(spectral, nsfd, rtol=1e-14, atol=1e-16)


class TestLaplaceModeSolve:
    def test_zero_source_gives_zero(self):
        grid = Grid1D(x0=0.0, dx=0.1, m_points=11, boundary=Dirichlet(0.0, 0.0))
        problem = PDEProblem(a=1.0, b=0.0, initial_condition=np.zeros(11))
        assert np.all(laplace_mode_solve(problem, grid, 2.0) == 0.0)

    def test_convergence_to_analytic_mode(self):
        errors = []
        for m in (11, 21, 41, 81):
            grid = Grid1D(x0=0.0, dx=1.0 / (m - 1), m_points=m,
                          boundary=Dirichlet(0.0, 0.0))
            x = grid.points
            problem = PDEProblem(a=1.0, b=0.0,
                                 initial_condition=np.sin(math.pi * x))
            solution = laplace_mode_solve(problem, grid, 2.0)
            analytic = np.sin(math.pi * x) / (math.pi**2 + 2.0)
            errors.append(np.max(np.abs(solution - analytic)))
        orders = [math.log2(errors[i] / errors[i + 1]) for i in range(3)]
        for p in orders:
            assert p >= 2.0

    def test_large_mode_scaling(self):
        # doubling s roughly halves the solution for s >> a pi^2 - b
        norms = []
        for s in (200.0, 400.0):
            grid = Grid1D(x0=0.0, dx=1.0 / 40, m_points=41,
                          boundary=Dirichlet(0.0, 0.0))
            x = grid.points
            problem = PDEProblem(a=1.0, b=0.0,
                                 initial_condition=np.sin(math.pi * x))
            norms.append(np.max(np.abs(laplace_mode_solve(problem, grid, s))))
        ratio = norms[1] / norms[0]
        assert 0.45 <= ratio <= 0.57

    def test_regime_validation(self):
        grid = Grid1D(x0=0.0, dx=0.1, m_points=11, boundary=Dirichlet(0.0, 0.0))
        problem = PDEProblem(a=1.0, b=1.0,
                             initial_condition=np.zeros(11))
        with pytest.raises(ValueError):
            laplace_mode_solve(problem, grid, 0.5)  # s <= b

    def test_requires_homogeneous_dirichlet(self):
        grid = Grid1D(x0=0.0, dx=0.1, m_points=11, boundary=Dirichlet(1.0, 0.0))
        problem = PDEProblem(a=1.0, b=0.0, initial_condition=np.zeros(11))
        with pytest.raises(ValueError):
            laplace_mode_solve(problem, grid, 2.0)
        with pytest.raises(ValueError):
            laplace_mode_solve(problem, periodic_grid(m=11), 2.0)


class TestAmplificationFactor:
    def test_euler_constant_mode(self):
        grid = periodic_grid(m=16)
        problem = PDEProblem(a=1.0, b=0.0, initial_condition=np.zeros(16))
        assert amplification_factor(EulerStd(dt=0.1), problem, grid, 0.0) == 1.0

    def test_modal_steady_mode(self):
        grid = periodic_grid(m=16)
        problem = PDEProblem(a=1.0, b=1.0, initial_condition=np.zeros(16))
        g = amplification_factor(SpectralModal(dt=123.0), problem, grid, 1.0)
        assert g == pytest.approx(1.0, abs=1e-13)

    def test_euler_nyquist_instability(self):
        grid = Grid1D(x0=0.0, dx=0.1, m_points=20, boundary=Periodic())
        problem = PDEProblem(a=1.0, b=0.0, initial_condition=np.zeros(20))
        k_nyquist = math.pi / grid.dx
        g = amplification_factor(EulerStd(dt=0.01), problem, grid, k_nyquist)
        assert g == pytest.approx(-3.0, rel=1e-12)
        # cross-check with one dense-matrix application of the mode
        matrix = dense_step_matrix(20, 0.1, 0.01, 1.0, 0.0, periodic=True)
        mode = np.cos(k_nyquist * grid.points)
        np.testing.assert_allclose(matrix @ mode, g * mode, atol=1e-10)

    def test_euler_conditional_stability_sweep(self):
        grid = Grid1D(x0=0.0, dx=0.1, m_points=20, boundary=Periodic())
        problem = PDEProblem(a=1.0, b=0.0, initial_condition=np.zeros(20))
        ks = np.abs(grid_wavenumbers(grid))
        bound = grid.dx**2 / 2.0
        dts = np.arange(0.001, 0.01, 0.0002)
        stable = []
        for dt in dts:
            gmax = max(abs(amplification_factor(EulerStd(dt=float(dt)),
                                                problem, grid, float(k)))
                       for k in ks)
            stable.append(gmax <= 1.0 + 1e-12)
        crossing = dts[int(np.sum(stable))]  # first unstable dt
        assert abs(crossing - bound) <= 0.0002 + 1e-12

    def test_nsfd_matches_one_step(self):
        grid = periodic_grid(m=32)
        frame = np.sin(3.0 * grid.points)
        problem = PDEProblem(a=1.0, b=0.5, initial_condition=frame)
        g = amplification_factor(Nsfd(dt=0.7), problem, grid, 3.0)
        stepped = step_nsfd(problem, grid, 0.7, frame)
        np.testing.assert_allclose(stepped, g * frame, rtol=1e-11, atol=1e-13)


class TestDefaults:
    def test_dominant_mode_detection(self):
        grid = periodic_grid(m=32)
        problem = PDEProblem(a=0.5, b=1.0,
                             initial_condition=np.sin(3.0 * grid.points))
        k, s = default_spectral_params(problem, grid)
        assert k == pytest.approx(3.0, rel=1e-12)
        assert s == pytest.approx(1.0 + 0.5 * (math.pi / grid.length) ** 2,
                                  rel=1e-12)


class TestFieldTrajectory:
    def test_shape_validation(self):
        grid = periodic_grid(m=8)
        with pytest.raises(ValueError):
            FieldTrajectory(grid=grid, times=np.array([0.0, 0.1]),
                            frames=np.zeros((2, 7)))
        with pytest.raises(ValueError):
            FieldTrajectory(grid=grid, times=np.array([0.0, 0.1, 0.3]),
                            frames=np.zeros((3, 8)))
