"""Singular-integral representations and their plane-wave eigenvalues."""

import math

import numpy as np
import pytest

from fraclap.constants import DomainError
from fraclap.fields import Gaussian, PlaneWave
from fraclap.flcore import (fl_eigenvalue, fl_order_m, fl_regularized,
                            fl_standard, sphere_rule)
from fraclap.oracle import gaussian_reference

# reference values for the unit Gaussian, computed to 20 digits with
# arbitrary-precision quadrature of the defining integrals
GAUSS_1D = {
    (0.0, 1.5): -1.4464090846320771425,
    (0.9, 1.5): 0.19928414532440982451,
    (0.4, 0.7): -0.76805671778516326923,
    (0.4, 3.4): -2.6641155719627260425,
}
GAUSS_2D_R05_A12 = -1.3526496361592911396
GAUSS_3D_R07_A08 = -0.99669882075647430155


class TestSphereRule:
    @pytest.mark.parametrize("n,measure", [(1, 2.0), (2, 2.0 * math.pi),
                                           (3, 4.0 * math.pi)])
    def test_total_weight(self, n, measure):
        dirs, wts = sphere_rule(n)
        assert np.sum(wts) == pytest.approx(measure, rel=1e-12)
        assert np.allclose(np.linalg.norm(np.atleast_2d(dirs), axis=-1), 1.0)

    def test_integrates_even_polynomial(self):
        # mean of z^2 over the sphere is 1/3 in three dimensions
        dirs, wts = sphere_rule(3)
        got = np.sum(wts * dirs[:, 2] ** 2) / (4.0 * math.pi)
        assert got == pytest.approx(1.0 / 3.0, rel=1e-12)

    def test_rejects_higher_dimension(self):
        with pytest.raises(DomainError):
            sphere_rule(4)


class TestStandard:
    @pytest.mark.parametrize("x,alpha", [(0.0, 1.5), (0.9, 1.5), (0.4, 0.7)])
    def test_gaussian_reference_values(self, x, alpha):
        u = Gaussian(1.0)
        res = fl_standard(u, np.array([x]), alpha)
        assert res.value == pytest.approx(GAUSS_1D[(x, alpha)], abs=2e-9)

    def test_gaussian_2d(self):
        u = Gaussian(1.0, n=2)
        x = np.array([0.5, 0.0])
        res = fl_standard(u, x, 1.2)
        assert res.value == pytest.approx(GAUSS_2D_R05_A12, abs=2e-9)

    def test_gaussian_3d(self):
        u = Gaussian(1.0, n=3)
        x = np.array([0.0, 0.0, 0.7])
        res = fl_standard(u, x, 0.8)
        assert res.value == pytest.approx(GAUSS_3D_R07_A08, abs=2e-9)

    @pytest.mark.parametrize("alpha", [0.0, 2.0, 2.5, -0.3])
    def test_levy_window(self, alpha):
        u = Gaussian(1.0)
        with pytest.raises(DomainError):
            fl_standard(u, np.array([0.0]), alpha)

    def test_result_metadata(self):
        res = fl_standard(Gaussian(1.0), np.array([0.0]), 1.5)
        assert res.representation == "standard"
        assert res.n == 1 and res.m == 1 and res.alpha == 1.5


class TestOrderM:
    def test_matches_standard_in_levy_range(self):
        u = Gaussian(1.0)
        x = np.array([0.9])
        base = fl_order_m(u, x, 1.5, 1).value
        assert base == pytest.approx(GAUSS_1D[(0.9, 1.5)], abs=2e-9)
        for m in (2, 3):
            assert fl_order_m(u, x, 1.5, m).value == pytest.approx(
                base, rel=1e-7)

    def test_above_levy_range(self):
        u = Gaussian(1.0)
        res = fl_order_m(u, np.array([0.4]), 3.4, 2)
        assert res.value == pytest.approx(GAUSS_1D[(0.4, 3.4)], abs=5e-9)

    def test_order_window(self):
        u = Gaussian(1.0)
        with pytest.raises(DomainError):
            fl_order_m(u, np.array([0.0]), 2.5, 1)
        with pytest.raises(DomainError):
            fl_order_m(u, np.array([0.0]), 4.0, 2)


class TestRegularized:
    @pytest.mark.parametrize("x,alpha,tol", [
        (0.0, 1.5, 5e-8), (0.9, 1.5, 5e-8), (0.4, 0.7, 5e-8),
        (0.4, 3.4, 2e-7),
    ])
    def test_gaussian_reference_values(self, x, alpha, tol):
        u = Gaussian(1.0)
        res = fl_regularized(u, np.array([x]), alpha)
        assert res.value == pytest.approx(GAUSS_1D[(x, alpha)], abs=tol)

    @pytest.mark.parametrize("alpha", [0.0, 2.0, 4.0])
    def test_integer_branch_exact(self, alpha):
        u = Gaussian(1.0)
        for x in (0.0, 0.7, 1.3):
            got = fl_regularized(u, np.array([x]), alpha)
            assert got.value == gaussian_reference(alpha, 1.0, x)
            assert got.error == 0.0

    def test_continuous_across_two(self):
        u = Gaussian(1.0)
        x = np.array([0.5])
        at2 = fl_regularized(u, x, 2.0).value
        below = fl_regularized(u, x, 2.0 - 1e-3).value
        above = fl_regularized(u, x, 2.0 + 1e-3).value
        assert below == pytest.approx(at2, rel=2e-2)
        assert above == pytest.approx(at2, rel=2e-2)

    def test_near_integer_warning(self):
        u = Gaussian(1.0)
        with pytest.warns(UserWarning, match="even integer"):
            fl_regularized(u, np.array([0.0]), 2.0 + 1e-4)

    def test_negative_alpha(self):
        with pytest.raises(DomainError):
            fl_regularized(Gaussian(1.0), np.array([0.0]), -0.1)

    def test_alpha_zero_is_negation(self):
        u = Gaussian(1.0)
        x = np.array([0.3])
        assert fl_regularized(u, x, 0.0).value == -float(u(x))

    def test_plane_wave_2d(self):
        k = 1.3
        u = PlaneWave(np.array([k, 0.0]))
        x = np.array([0.2, -0.1])
        res = fl_regularized(u, x, 1.4)
        assert complex(res.value) == pytest.approx(
            -(k ** 1.4) * complex(u(x)), rel=1e-8)


class TestEigenvalue:
    @pytest.mark.parametrize("rep,alpha,m", [
        ("standard", 0.5, 1), ("standard", 1.5, 1),
        ("order_m", 2.5, 2), ("order_m", 4.5, 3),
        ("regularized", 0.5, 1), ("regularized", 3.5, 1),
    ])
    def test_matches_power_law(self, rep, alpha, m):
        for k in (0.5, 1.0, 2.0):
            got = fl_eigenvalue(rep, alpha, k, n=1, m=m)
            assert got == pytest.approx(-(k ** alpha), rel=1e-7)

    def test_dimension_independent(self):
        for n in (1, 2, 3):
            got = fl_eigenvalue("standard", 1.2, 1.5, n=n)
            assert got == pytest.approx(-(1.5 ** 1.2), rel=1e-7)

    def test_bad_inputs(self):
        with pytest.raises(DomainError):
            fl_eigenvalue("standard", 1.0, 0.0)
        with pytest.raises(DomainError):
            fl_eigenvalue("nope", 1.0, 1.0)
