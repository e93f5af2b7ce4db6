import math

import numpy as np
import pytest

from spectralfd.specfun import (
    ConvergenceError,
    GammaPoleError,
    MLParams,
    _asymptotic_negative,
    _series_extended,
    gamma,
    mittag_leffler,
    ml,
)

from oracles import ml_half_oracle


class TestGamma:
    def test_small_integers_exact(self):
        assert gamma(1.0) == 1.0
        assert gamma(5.0) == 24.0
        assert gamma(2.0) == 1.0
        assert gamma(11.0) == float(math.factorial(10))

    def test_half(self):
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_accuracy_against_libm(self):
        # libm gamma is the independent oracle here
        for x in np.linspace(0.1, 50.0, 997):
            ref = math.gamma(float(x))
            assert gamma(float(x)) == pytest.approx(ref, rel=1e-13)

    def test_reflection_negative_arguments(self):
        for x in (-0.5, -1.5, -3.7, -10.2):
            assert gamma(x) == pytest.approx(math.gamma(x), rel=1e-12)

    @pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -17.0])
    def test_pole_raises(self, x):
        with pytest.raises(GammaPoleError):
            gamma(x)

    def test_overflow_signaled(self):
        with pytest.raises(OverflowError):
            gamma(172.0)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            gamma(float("nan"))


class TestMLParams:
    def test_defaults(self):
        p = MLParams(alpha=0.5)
        assert p.beta == 1.0 and p.tol == 1e-12 and p.max_terms == 2000

    @pytest.mark.parametrize("alpha", [0.0, -0.3, 2.0, 2.5])
    def test_alpha_domain(self, alpha):
        with pytest.raises(ValueError):
            MLParams(alpha=alpha)

    def test_tol_and_terms(self):
        with pytest.raises(ValueError):
            MLParams(alpha=0.5, tol=0.0)
        with pytest.raises(ValueError):
            MLParams(alpha=0.5, max_terms=0)


class TestMittagLeffler:
    def test_exponential_point(self):
        assert ml(1.0, 1.0) == pytest.approx(math.e, rel=1e-14)

    def test_zero_argument(self):
        assert ml(0.7, 0.0) == 1.0

    def test_half_order_against_erfc_oracle(self):
        # E_{1/2}(-1) = e * erfc(1) = 0.42758357615580705
        assert ml(0.5, -1.0) == pytest.approx(0.42758357615580705, abs=1e-12)
        assert ml(0.5, -1.0) == pytest.approx(ml_half_oracle(1.0), abs=1e-12)

    def test_exponential_reduction_grid(self):
        for z in range(-10, 6):
            rel = abs(ml(1.0, float(z)) - math.exp(z)) / math.exp(z)
            assert rel <= 1e-10

    def test_normalization_exact(self):
        for alpha in np.arange(0.1, 1.05, 0.1):
            assert ml(float(alpha), 0.0) == 1.0

    def test_complete_monotonicity_proxy(self):
        for alpha in np.arange(0.1, 1.05, 0.1):
            values = [ml(float(alpha), -float(t))
                      for t in np.arange(0.0, 50.0001, 0.1)]
            arr = np.asarray(values)
            assert np.all(arr > 0.0)
            assert np.all(np.diff(arr) < 0.0)

    def test_two_parameter_consistency(self):
        for alpha in (0.3, 0.5, 0.7, 1.0):
            for z in (-4.0, -1.0, -0.25, 0.5, 2.0):
                one = mittag_leffler(MLParams(alpha=alpha), z)
                two = mittag_leffler(MLParams(alpha=alpha, beta=1.0), z)
                assert two == pytest.approx(one, rel=1e-13, abs=1e-300)

    def test_beta_two_identity(self):
        # E_{1,2}(z) = (e^z - 1)/z
        for z in (-3.0, -0.5, 1.0, 4.0):
            ref = math.expm1(z) / z
            got = mittag_leffler(MLParams(alpha=1.0, beta=2.0), z)
            assert got == pytest.approx(ref, rel=1e-12)

    def test_half_half_identity(self):
        # E_{1/2,1/2}(-x) = 1/sqrt(pi) - x * exp(x^2) * erfc(x)
        for x in (0.5, 2.0):
            ref = 1.0 / math.sqrt(math.pi) - x * ml_half_oracle(x)
            got = mittag_leffler(MLParams(alpha=0.5, beta=0.5), -x)
            assert got == pytest.approx(ref, rel=1e-12)

    def test_regime_overlap_agreement(self):
        # both evaluation regimes are valid on [-6, -4] for alpha <= 0.45
        for alpha in (0.3, 0.4, 0.45):
            for x in np.linspace(4.0, 6.0, 9):
                series = _series_extended(alpha, 1.0, 1e-13, 6000, -float(x))
                asym = _asymptotic_negative(alpha, 1.0, 1e-13, 2000, float(x))
                assert abs(series - asym) <= 1e-8

    def test_deep_negative_axis_accuracy(self):
        # erfc oracle covers the asymptotic branch for alpha = 1/2
        for t in (8.0, 12.0, 20.0, 50.0):
            assert ml(0.5, -t) == pytest.approx(ml_half_oracle(t), rel=1e-11)

    def test_non_convergence_error(self):
        with pytest.raises(ConvergenceError):
            mittag_leffler(MLParams(alpha=0.1, max_terms=50), -1.0)

    def test_positive_overflow_signaled(self):
        with pytest.raises((OverflowError, ConvergenceError)):
            mittag_leffler(MLParams(alpha=0.1, max_terms=5000), 10.0)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            ml(0.5, float("inf"))
