import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.integrate import quad
from scipy.special import eval_jacobi

from spinalias import (
    HarmonicIndex,
    h_factor,
    jacobi,
    jacobi_deriv,
    jacobi_norm,
    spin_sph_harm,
    wigner_d,
)

from _invariants import (
    addition_theorem_deviation,
    orthonormality_deviation,
    wigner_parity_deviation,
)


def wigner_d_factorial_sum(l, m1, m2, beta):
    """Independent oracle: the textbook factorial-sum form of d^l_{m1,m2}."""
    kmin = max(0, m1 - m2)
    kmax = min(l + m1, l - m2)
    total = 0.0
    for k in range(kmin, kmax + 1):
        num = (-1) ** (k + m2 - m1) * math.sqrt(
            math.factorial(l + m1)
            * math.factorial(l - m1)
            * math.factorial(l + m2)
            * math.factorial(l - m2)
        )
        den = (
            math.factorial(k)
            * math.factorial(l + m1 - k)
            * math.factorial(l - m2 - k)
            * math.factorial(m2 - m1 + k)
        )
        total += (
            num
            / den
            * math.cos(beta / 2) ** (2 * l + m1 - m2 - 2 * k)
            * math.sin(beta / 2) ** (2 * k + m2 - m1)
        )
    return total


class TestJacobi:
    def test_degree_zero_is_one(self):
        assert jacobi(0, 2.0, 2.0, 0.7) == 1.0

    def test_legendre_p2(self):
        assert_allclose(jacobi(2, 0.0, 0.0, 0.5), -0.125, rtol=1e-15)

    def test_parity_example(self):
        assert_allclose(
            jacobi(3, 2.0, 1.0, -0.3), -jacobi(3, 1.0, 2.0, 0.3), rtol=1e-14
        )

    @pytest.mark.parametrize("nu", [1, 2, 5, 11, 17])
    @pytest.mark.parametrize("alpha,beta", [(0, 0), (2, 2), (1, 3), (0.5, -0.5)])
    def test_against_scipy(self, nu, alpha, beta):
        t = np.linspace(-1, 1, 41)
        assert_allclose(jacobi(nu, alpha, beta, t), eval_jacobi(nu, alpha, beta, t),
                        rtol=1e-12, atol=1e-12)

    def test_parity_sweep(self):
        # relative to each polynomial's scale on the grid (pointwise
        # relative error is meaningless at the roots)
        t = np.linspace(-1, 1, 101)
        worst = 0.0
        for nu in range(31):
            for alpha in range(7):
                for beta in range(7):
                    lhs = np.asarray(jacobi(nu, float(alpha), float(beta), -t))
                    rhs = (-1) ** nu * np.asarray(jacobi(nu, float(beta), float(alpha), t))
                    scale = max(1.0, float(np.abs(rhs).max()))
                    worst = max(worst, float(np.abs(lhs - rhs).max()) / scale)
        assert worst < 1e-12

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            jacobi(2, 0.0, 0.0, 1.5)
        with pytest.raises(ValueError):
            jacobi(-1, 0.0, 0.0, 0.0)

    def test_deriv_matches_difference_quotient(self):
        t = 0.37
        h = 1e-6
        approx = (jacobi(5, 1.0, 2.0, t + h) - jacobi(5, 1.0, 2.0, t - h)) / (2 * h)
        assert_allclose(jacobi_deriv(5, 1.0, 2.0, t), approx, rtol=1e-8)


class TestJacobiNorm:
    def test_legendre_degree_zero(self):
        assert_allclose(jacobi_norm(0, 0.0, 0.0), 2.0, rtol=1e-15)

    def test_legendre_degree_one(self):
        assert_allclose(jacobi_norm(1, 0.0, 0.0), 2.0 / 3.0, rtol=1e-15)

    def test_against_quadrature(self):
        # independent oracle: adaptive quadrature of the weighted square
        def integrand(t):
            return (1 - t) ** 2 * (1 + t) ** 2 * eval_jacobi(2, 2, 2, t) ** 2

        oracle, err = quad(integrand, -1, 1, epsabs=1e-13, epsrel=1e-13)
        assert err < 1e-12
        assert_allclose(jacobi_norm(2, 2.0, 2.0), oracle, rtol=1e-12)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            jacobi_norm(2, -1.0, 0.0)


class TestHFactor:
    def test_cancellation(self):
        assert h_factor(0, 0, 5) == 1.0

    def test_small_exact(self):
        assert_allclose(h_factor(2, 0, 2), math.sqrt(4.0 / 24.0), rtol=1e-15)

    def test_against_factorials(self):
        exact = math.sqrt(
            math.factorial(10 - 3) * math.factorial(10 + 3)
            / (math.factorial(10 + 2) * math.factorial(10 - 2))
        )
        assert_allclose(h_factor(2, 3, 10), exact, rtol=1e-14)

    def test_large_arguments_no_overflow(self):
        val = h_factor(5, 3, 200)
        assert np.isfinite(val) and val > 0

    def test_negative_argument(self):
        with pytest.raises(ValueError):
            h_factor(3, 0, 2)


class TestWignerD:
    def test_identity_element(self):
        assert_allclose(wigner_d(0, 0, 0, 1.234), 1.0, rtol=1e-15)

    def test_degree_two_value(self):
        assert_allclose(wigner_d(2, 0, 2, math.pi / 2), math.sqrt(6) / 4, rtol=1e-14)

    def test_paper_parity_example(self):
        lhs = wigner_d(3, 1, 2, math.pi - 0.8)
        rhs = (-1) ** (3 + 2) * wigner_d(3, -1, 2, 0.8)
        assert_allclose(lhs, rhs, atol=1e-14)

    def test_against_factorial_sum(self):
        for ell in range(7):
            for s in range(-ell, ell + 1):
                for m in range(-ell, ell + 1):
                    for theta in (0.0, 0.37, 1.2, math.pi / 2, 2.6, math.pi):
                        assert_allclose(
                            wigner_d(ell, m, s, theta),
                            wigner_d_factorial_sum(ell, m, -s, theta),
                            atol=5e-13,
                        )

    def test_parity_sweep(self):
        assert wigner_parity_deviation(l_max=20) < 1e-12

    def test_index_error(self):
        with pytest.raises(ValueError):
            wigner_d(1, 2, 0, 0.5)

    def test_theta_domain_error(self):
        with pytest.raises(ValueError):
            wigner_d(2, 0, 0, 3.5)


class TestSpinSphHarm:
    def test_constant_mode(self):
        val = spin_sph_harm(0, 0, 0, 0.3, 1.1)
        assert_allclose(val, 1.0 / math.sqrt(4 * math.pi), rtol=1e-15)

    def test_addition_theorem_value(self):
        total = sum(
            abs(spin_sph_harm(2, m, 2, 0.9, 2.2)) ** 2 for m in range(-2, 3)
        )
        assert_allclose(total, 5.0 / (4 * math.pi), rtol=1e-13)

    def test_modulus_independent_of_phi(self):
        mods = [abs(spin_sph_harm(2, 1, 2, math.pi / 2, phi)) for phi in (0.0, 1.0, math.pi, 5.0)]
        assert_allclose(mods, mods[0], rtol=1e-14)

    def test_addition_theorem_sweep(self):
        assert addition_theorem_deviation(l_max=20, s_max=3) < 1e-12

    def test_orthonormality_dense_quadrature(self):
        assert orthonormality_deviation(l_max=10, s_max=3) < 1e-10

    def test_conjugation_identity(self):
        # conj(Y_{l,m;s}) = (-1)^(s+m) Y_{l,-m;-s}
        for ell, m, s in [(2, 1, 2), (3, -2, 1), (4, 0, 3), (5, 4, 2)]:
            lhs = np.conj(spin_sph_harm(ell, m, s, 1.1, 2.3))
            rhs = (-1) ** (s + m) * spin_sph_harm(ell, -m, -s, 1.1, 2.3)
            assert_allclose(lhs, rhs, atol=1e-14)


class TestHarmonicIndex:
    def test_valid(self):
        idx = HarmonicIndex(3, -2, 1)
        assert (idx.ell, idx.m, idx.s) == (3, -2, 1)

    def test_invalid_ell(self):
        with pytest.raises(ValueError):
            HarmonicIndex(1, 0, 2)

    def test_negative_spin_rejected(self):
        with pytest.raises(ValueError):
            HarmonicIndex(2, 0, -1)
