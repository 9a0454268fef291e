"""Unit tests for the weighted-space primitives."""

import math

import pytest
from hypothesis import given, strategies as st

from berezin_range.space import (
    DiskPoint,
    InvariantError,
    PowerSeries,
    SpaceParams,
    kernel_norm_sq,
    kernel_taylor_coeff,
    kernel_value,
    monomial_norm_sq,
    normalized_kernel_value,
)


class TestSpaceParams:
    def test_accepts_positive_gamma(self):
        assert SpaceParams(0.1).gamma == 0.1
        assert SpaceParams(2).gamma == 2

    @pytest.mark.parametrize("gamma", [0.0, -1.0, float("nan"), float("inf")])
    def test_rejects_bad_gamma(self, gamma):
        with pytest.raises(InvariantError):
            SpaceParams(gamma)


class TestDiskPoint:
    def test_interior_point(self):
        p = DiskPoint(0.3 + 0.4j)
        assert p.modulus == pytest.approx(0.5)

    @pytest.mark.parametrize("z", [1.0, 1j, -1.0, 2 + 2j])
    def test_rejects_boundary_and_exterior(self, z):
        with pytest.raises(InvariantError):
            DiskPoint(z)


class TestPowerSeries:
    def test_horner_matches_direct_sum(self):
        s = PowerSeries((1, 2j, -3, 0.5))
        z = 0.3 - 0.2j
        direct = sum(c * z**k for k, c in enumerate(s.coeffs))
        assert s(z) == pytest.approx(direct)

    def test_depth_and_conjugate(self):
        s = PowerSeries((1 + 1j, 2 - 3j))
        assert s.depth == 1
        assert s.conjugate_coeffs().coeffs == (1 - 1j, 2 + 3j)
        assert not s.is_real()
        assert PowerSeries((1.0, -2.0)).is_real()

    def test_rejects_empty(self):
        with pytest.raises(InvariantError):
            PowerSeries(())


class TestKernel:
    def test_kernel_value_matches_binomial_power(self):
        # Integer gamma: the kernel is literally 1/(1 - conj(lam) z)^gamma.
        params = SpaceParams(2.0)
        lam = DiskPoint(0.4 + 0.1j)
        z = -0.2 + 0.3j
        expected = 1.0 / (1.0 - lam.value.conjugate() * z) ** 2
        assert kernel_value(params, lam, z) == pytest.approx(expected, rel=1e-14)

    def test_kernel_reproduces_polynomials(self):
        # <p, k_lam> = p(lam): expand p against the monomial basis.
        params = SpaceParams(0.7)
        lam = DiskPoint(0.35 - 0.25j)
        coeffs = [1.0, -2.0 + 1j, 0.5j]
        # <z^n, k_lam> = conj(conj(lam)^n c_n) ||z^n||^2 = lam^n
        recovered = sum(
            c
            * (kernel_taylor_coeff(params, n) * lam.value.conjugate() ** n).conjugate()
            * monomial_norm_sq(params, n)
            for n, c in enumerate(coeffs)
        )
        direct = sum(c * lam.value**n for n, c in enumerate(coeffs))
        assert recovered == pytest.approx(direct, rel=1e-14)

    def test_norm_sq_is_kernel_at_own_point(self):
        params = SpaceParams(1.3)
        lam = DiskPoint(0.6 - 0.2j)
        assert kernel_norm_sq(params, lam) == pytest.approx(
            kernel_value(params, lam, lam.value).real, rel=1e-13
        )

    def test_normalized_kernel_has_unit_norm_value_at_origin(self):
        params = SpaceParams(2.5)
        lam = DiskPoint(0.5)
        # k_hat_lam(0) = 1/||k_lam||
        assert normalized_kernel_value(params, lam, 0.0) == pytest.approx(
            1.0 / math.sqrt(kernel_norm_sq(params, lam))
        )

    def test_rejects_exterior_evaluation(self):
        with pytest.raises(InvariantError):
            kernel_value(SpaceParams(1.0), DiskPoint(0.1), 1.0)


class TestTaylorCoefficients:
    @pytest.mark.parametrize("n", range(6))
    def test_hardy_coefficients_are_one(self, n):
        assert kernel_taylor_coeff(SpaceParams(1.0), n) == pytest.approx(1.0)

    @pytest.mark.parametrize("n", range(6))
    def test_bergman_coefficients_are_n_plus_one(self, n):
        assert kernel_taylor_coeff(SpaceParams(2.0), n) == pytest.approx(n + 1)

    def test_matches_gamma_function_form(self):
        g = 0.37
        params = SpaceParams(g)
        for n in range(10):
            expected = math.gamma(g + n) / (math.gamma(g) * math.factorial(n))
            assert kernel_taylor_coeff(params, n) == pytest.approx(expected, rel=1e-12)

    def test_large_index_does_not_overflow(self):
        v = kernel_taylor_coeff(SpaceParams(1.0), 500)
        assert v == pytest.approx(1.0)

    def test_rejects_negative_index(self):
        with pytest.raises(InvariantError):
            kernel_taylor_coeff(SpaceParams(1.0), -1)


@given(
    gamma=st.floats(0.05, 20.0),
    re=st.floats(-0.65, 0.65),
    im=st.floats(-0.65, 0.65),
)
def test_kernel_norm_consistency_property(gamma, re, im):
    """||k_lam||^2 from the closed form equals the kernel at its own point."""
    if abs(complex(re, im)) >= 0.95:
        return
    params = SpaceParams(gamma)
    lam = DiskPoint(complex(re, im))
    closed = kernel_norm_sq(params, lam)
    direct = kernel_value(params, lam, lam.value)
    assert abs(direct.imag) <= 1e-9 * closed
    assert direct.real == pytest.approx(closed, rel=1e-9)
