import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from spinalias import (
    AngularPowerSpectrum,
    HarmonicIndex,
    SamplingGrid,
    SamplingScheme,
    aliased_spectrum,
    build_grid_gauss,
    circular_covariance,
    enumerate_aliases,
    verify_bandlimit,
    wigner_d,
    xi_factors,
)


@pytest.fixture(scope="module")
def grid():
    return build_grid_gauss(6, 2, 1)


class TestAngularPowerSpectrum:
    def test_total(self):
        spec = AngularPowerSpectrum(2, 4, np.array([1.0, 2.0, 3.0]), np.array([0.5, 0.5, 0.5]))
        assert_allclose(spec.C_total, [1.5, 2.5, 3.5])
        assert spec.total_at(3) == 2.5

    def test_flat(self):
        spec = AngularPowerSpectrum.flat(2, 5)
        assert_allclose(spec.C_total, 1.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            AngularPowerSpectrum(2, 4, np.array([1.0]), np.array([1.0]))
        with pytest.raises(ValueError):
            AngularPowerSpectrum(2, 3, np.array([1.0, -0.1]), np.array([0.0, 0.0]))

    def test_out_of_range(self):
        spec = AngularPowerSpectrum.flat(2, 4)
        with pytest.raises(ValueError):
            spec.total_at(5)


class TestXiFactors:
    def test_exact_regime_identity(self):
        # with Q large enough only the r=0 cell is on the lattice, and in
        # the exact regime it carries unit weight: xi0 = 1
        wide = build_grid_gauss(6, 2, 5)
        for ell, m in [(2, 0), (2, 1), (3, -2)]:
            f = xi_factors(wide, ell, m, ell, 2)
            assert_allclose(f.xi, 0.0, atol=1e-24)
            assert_allclose(f.xi0, 1.0, rtol=1e-12)

    def test_non_negative(self, grid):
        for ell_prime in range(2, 9):
            for m in (-2, 0, 1):
                f = xi_factors(grid, 2, m, ell_prime, 2)
                assert f.xi >= 0 and f.xi0 >= 0
                if m == 0:
                    assert f.xi0_m0 is not None and f.xi0_m0 >= 0
                else:
                    assert f.xi0_m0 is None

    def test_consistency_with_enumeration(self, grid):
        # xi0 equals the tau^2 mass of the enumerated cells at each degree,
        # plus the identity cell at the source degree
        source = HarmonicIndex(2, 1, 2)
        amap = enumerate_aliases(source, grid, u_max=10)
        for ell_prime in range(2, 11):
            total = sum(e.tau**2 for e in amap.entries if e.alias.ell == ell_prime)
            if ell_prime == source.ell:
                from spinalias import tau as tau_fn

                total += tau_fn(grid, source, source.ell, source.m) ** 2
            f = xi_factors(grid, source.ell, source.m, ell_prime, 2)
            assert abs(f.xi0 - total) < 1e-12

    def test_xi_excludes_central_wrap(self, grid):
        # at the source degree the r=0 cell is the identity: xi < xi0
        f = xi_factors(grid, 2, 0, 2, 2)
        assert f.xi0 - f.xi == pytest.approx(1.0, rel=1e-12)

    def test_m0_structural_zero(self, grid):
        # odd degree offsets keep no r=0 mass in the m=0 variant
        f = xi_factors(grid, 2, 0, 7, 2)
        assert f.xi0_m0 == f.xi

    def test_empty_grid_gives_zero(self):
        empty = SamplingGrid(
            SamplingScheme.GAUSS_JACOBI, 6, 2, 1,
            np.empty(0), np.empty(0), np.array([0.0, math.pi]),
            np.array([math.pi, math.pi]),
        )
        f = xi_factors(empty, 2, 0, 4, 2)
        assert f.xi == 0.0 and f.xi0 == 0.0 and f.xi0_m0 == 0.0


class TestAliasedSpectrum:
    def test_zero_spectrum(self, grid):
        spec = AngularPowerSpectrum(2, 8, np.zeros(7), np.zeros(7))
        with pytest.warns(UserWarning):
            out = aliased_spectrum(grid, spec, [2, 3, 4], u_max=8)
        assert out == [0.0, 0.0, 0.0]

    def test_bandlimited_fixed_point(self):
        # N - s and Q both exceed the band limit: prediction returns the input
        grid = build_grid_gauss(8, 2, 5)
        spec = AngularPowerSpectrum(
            2, 3, np.array([0.7, 1.3]), np.array([0.3, 0.2])
        )
        with pytest.warns(UserWarning):
            out = aliased_spectrum(grid, spec, [2, 3], u_max=3)
        assert_allclose(out, spec.C_total, rtol=1e-10)

    def test_truncation_warning(self, grid):
        spec = AngularPowerSpectrum.flat(2, 8)
        with pytest.warns(UserWarning, match="truncate"):
            aliased_spectrum(grid, spec, [2], u_max=8)

    def test_umax_validation(self, grid):
        spec = AngularPowerSpectrum.flat(2, 4)
        with pytest.raises(ValueError):
            aliased_spectrum(grid, spec, [2], u_max=6)


class TestCircularCovariance:
    def test_at_zero_separation(self):
        spec = AngularPowerSpectrum(2, 4, np.array([1.0, 0.5, 0.25]), np.zeros(3))
        expected = sum(
            (2 * ell + 1) / (4 * math.pi) * spec.total_at(ell) for ell in range(2, 5)
        )
        assert_allclose(circular_covariance(spec, 0.0), expected, rtol=1e-14)

    def test_zero_spectrum(self):
        spec = AngularPowerSpectrum(2, 4, np.zeros(3), np.zeros(3))
        assert circular_covariance(spec, 1.0) == 0.0

    @pytest.mark.parametrize("ell,s", [(3, 2), (5, 1), (4, 0)])
    def test_single_multipole_matches_wigner_diagonal(self, ell, s):
        # the covariance of one multipole is proportional to d^ell_{s,s}
        n = ell - s + 1
        c_e = np.zeros(n)
        c_e[-1] = 1.0
        spec = AngularPowerSpectrum(s, ell, c_e, np.zeros(n))
        for theta in (0.0, 0.4, 1.3, 2.2, math.pi):
            expected = (2 * ell + 1) / (4 * math.pi) * wigner_d(ell, s, -s, theta)
            assert_allclose(circular_covariance(spec, theta), expected, atol=1e-13)

    def test_domain(self):
        spec = AngularPowerSpectrum.flat(0, 2)
        with pytest.raises(ValueError):
            circular_covariance(spec, 4.0)


class TestVerifyBandlimit:
    def test_passing_configuration(self):
        report = verify_bandlimit(4, 2, 8, 8, seed=1)
        assert report.passed and report.max_abs_error < 1e-10

    def test_failing_configuration(self):
        report = verify_bandlimit(4, 2, 4, 8, seed=1)
        assert not report.passed and report.max_abs_error > 1e-3

    def test_n_above_l0_but_too_few_nodes(self):
        # N > L0 alone is not enough for spin 2: the node count is N - s
        report = verify_bandlimit(4, 2, 5, 8, seed=1)
        assert not report.passed

    def test_constant_mode(self):
        report = verify_bandlimit(0, 0, 1, 1, seed=3)
        assert report.passed

    def test_invalid(self):
        with pytest.raises(ValueError):
            verify_bandlimit(1, 2, 8, 8, seed=0)
