"""Self-similar lattice sums, their dispersion, and the continuum limit."""

import math

import numpy as np
import pytest

from fraclap.constants import DomainError, a_delta, gamma, v_integral
from fraclap.fields import Gaussian, PlaneWave
from fraclap.lattice import (SelfSimilarParams, fractional_continuum_limit,
                             selfsim_laplacian, selfsim_series,
                             wm_dispersion, wm_energy_density,
                             wm_limit_amplitude)


class TestParams:
    def test_zeta_is_log_a(self):
        p = SelfSimilarParams(delta=0.5, a=2.0)
        assert p.zeta == pytest.approx(math.log(2.0))

    @pytest.mark.parametrize("kwargs", [
        dict(delta=0.5, a=0.9),          # dilation below 1
        dict(delta=2.5, a=1.5, m=1),     # delta at or above 2m
        dict(delta=-0.1, a=1.5),
        dict(delta=0.5, a=1.5, h=0.0),
    ])
    def test_rejects_bad_windows(self, kwargs):
        with pytest.raises(DomainError):
            SelfSimilarParams(**kwargs)


class TestWmDispersion:
    def test_zero_at_zero(self):
        p = SelfSimilarParams(delta=0.7, a=1.6)
        assert wm_dispersion(0.0, p) == 0.0

    def test_against_direct_sum(self):
        # independent truncated sum with explicit bounds, moderate levels
        p = SelfSimilarParams(delta=1.05, a=1.5, m=1)
        kh = 1.0
        s = np.arange(-120, 260).astype(float)
        direct = 4.0 * np.sum(
            p.a ** (-p.delta * s) * np.sin(0.5 * kh * p.a ** s) ** 2)
        # the independent sum loses phase accuracy at high levels, so the
        # comparison tolerance reflects that, not the implementation's
        assert wm_dispersion(kh, p) == pytest.approx(direct, abs=1e-9)

    @pytest.mark.parametrize("d,a,m", [(0.45, 1.5, 1), (1.05, 1.5, 1),
                                       (1.5, 2.0, 2)])
    def test_self_similarity(self, d, a, m):
        p = SelfSimilarParams(delta=d, a=a, m=m)
        for kh in (0.5, 1.0):
            lhs = wm_dispersion(a * kh, p)
            rhs = a ** d * wm_dispersion(kh, p)
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_positive(self):
        p = SelfSimilarParams(delta=0.9, a=1.7, m=2)
        assert wm_dispersion(0.8, p) > 0.0

    def test_negative_kh_rejected(self):
        p = SelfSimilarParams(delta=0.9, a=1.7)
        with pytest.raises(DomainError):
            wm_dispersion(-1.0, p)


class TestSelfsimLaplacian:
    def test_plane_wave_eigenvalue(self):
        p = SelfSimilarParams(delta=0.6, a=1.9, m=1)
        kh = 0.7
        u = PlaneWave(np.array([kh]))
        x = np.array([0.3])
        lap = selfsim_laplacian(u, x, p)
        assert lap == pytest.approx(-wm_dispersion(kh, p) * u(x), rel=1e-9)

    def test_plane_wave_eigenvalue_m2(self):
        p = SelfSimilarParams(delta=2.4, a=1.6, m=2)
        kh = 1.1
        u = PlaneWave(np.array([kh]))
        x = np.array([-0.2])
        lap = selfsim_laplacian(u, x, p)
        assert lap == pytest.approx(-wm_dispersion(kh, p) * u(x), rel=1e-9)

    def test_gaussian_against_direct_sum(self):
        # high-precision reference: naive float summation loses the deep
        # negative levels to cancellation
        mp = pytest.importorskip("mpmath")
        p = SelfSimilarParams(delta=0.8, a=1.7, m=1)
        u = Gaussian(1.0)
        x = np.array([0.4])
        with mp.workdps(50):
            xa, aa = mp.mpf("0.4"), mp.mpf(1.7)
            direct = mp.nsum(
                lambda s: aa ** (-mp.mpf("0.8") * s)
                * (mp.exp(-(xa + aa ** s) ** 2) - 2 * mp.exp(-xa ** 2)
                   + mp.exp(-(xa - aa ** s) ** 2)),
                [-mp.inf, mp.inf])
            direct = float(direct)
        assert selfsim_laplacian(u, x, p) == pytest.approx(direct, abs=1e-10)


class TestWmEnergyDensity:
    def test_against_direct_sum(self):
        p = SelfSimilarParams(delta=0.9, a=1.8, m=1)
        u = Gaussian(1.0)
        x = np.array([0.2])
        direct = 0.0
        for s in range(-80, 80):
            h = p.a ** s
            diff = float(u(np.array([0.2 + h])) - u(x))
            direct += p.a ** (-p.delta * s) * diff * diff
        got = wm_energy_density(u, x, p, f_m=2.0)
        assert got == pytest.approx(direct, rel=1e-8)

    def test_scaling_under_h_dilation(self):
        # replacing h by a*h multiplies the density by a^delta
        u = Gaussian(1.0)
        x = np.array([0.0])
        p1 = SelfSimilarParams(delta=0.7, a=1.5, m=1, h=1.0)
        p2 = SelfSimilarParams(delta=0.7, a=1.5, m=1, h=1.5)
        e1 = wm_energy_density(u, x, p1)
        e2 = wm_energy_density(u, x, p2)
        assert e2 == pytest.approx(1.5 ** 0.7 * e1, rel=1e-9)


class TestSelfsimSeries:
    def test_matches_dispersion(self):
        p = SelfSimilarParams(delta=0.6, a=1.9, m=1)
        kh = 0.7
        got = selfsim_series(lambda t: 4.0 * math.sin(0.5 * kh * t) ** 2,
                             0.6, 1.9)
        assert got == pytest.approx(wm_dispersion(kh, p), abs=1e-9)

    def test_rejects_divergent_profile(self):
        # profile without decay at 0 makes the negative tail diverge
        with pytest.raises(DomainError):
            selfsim_series(lambda t: 1.0, 0.5, 1.5, max_levels=2000)


class TestContinuumLimit:
    def test_gamma_integral(self):
        # f = t^2 exp(-t): integral_0^inf t^(1-d) e^-t dt = Gamma(2-d)
        d, h = 0.7, 2.0
        got = fractional_continuum_limit(
            lambda t: t ** 2 * np.exp(-t), d, h=h)
        assert got == pytest.approx(h ** d * gamma(2.0 - d), rel=1e-9)

    def test_oscillatory_mean_route(self):
        # 4 sin^2(t/2) has mean 2 and period 2 pi; the limit value is the
        # m = 1 radial constant
        d = 0.6
        got = fractional_continuum_limit(
            lambda t: 4.0 * np.sin(0.5 * t) ** 2, d,
            mean=2.0, period=2.0 * math.pi)
        assert got == pytest.approx(v_integral(1, d), rel=1e-8)

    def test_cutoff_mode(self):
        d = 0.5
        full = fractional_continuum_limit(
            lambda t: t ** 2 * np.exp(-t), d)
        cut = fractional_continuum_limit(
            lambda t: t ** 2 * np.exp(-t), d, cutoff=60.0)
        assert cut == pytest.approx(full, rel=1e-8)

    def test_domain(self):
        with pytest.raises(DomainError):
            fractional_continuum_limit(lambda t: t, 0.0)
        with pytest.raises(DomainError):
            fractional_continuum_limit(lambda t: t, 0.5, mean=1.0)


class TestWmLimitAmplitude:
    def test_equals_radial_constant(self):
        # for m = 1 and kh = 1 the limit is V(1, delta) = a_delta
        for d in (0.45, 0.9, 1.5):
            p = SelfSimilarParams(delta=d, a=1.5, m=1)
            assert wm_limit_amplitude(p, 1.0) == pytest.approx(
                a_delta(d), rel=1e-8)

    def test_kh_power_law(self):
        p = SelfSimilarParams(delta=0.8, a=1.5, m=1)
        v1 = wm_limit_amplitude(p, 1.0)
        v2 = wm_limit_amplitude(p, 2.0)
        assert v2 == pytest.approx(2.0 ** 0.8 * v1, rel=1e-8)

    def test_level_sum_converges_to_it(self):
        # |ln a| * omega^2 approaches the amplitude as a -> 1
        d, m, kh = 1.5, 1, 1.0
        lim = wm_limit_amplitude(SelfSimilarParams(delta=d, a=2.0, m=m), kh)
        errs = []
        for a in (1.5, 1.1, 1.02):
            p = SelfSimilarParams(delta=d, a=a, m=m)
            errs.append(abs(math.log(a) * wm_dispersion(kh, p) - lim))
        assert errs[2] < errs[1] < errs[0]
        assert errs[2] < 1e-4
