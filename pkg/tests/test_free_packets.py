import numpy as np
import pytest

from relwave.analysis import charge_density, expectation_x, momentum_spectrum
from relwave.free_packets import (ClosedPacketConfig, GaussianPacketConfig,
                                  closed_slice, closed_spectral, gauss_slice,
                                  gauss_spectral, psi_closed, psi_gauss_free,
                                  spectrum_closed, w_of_p)
from relwave.kinematics import FreeMotion

MOTION_QUARTER = FreeMotion(v0=0.25)


def test_w_of_p_rest_energy():
    assert w_of_p(0.0, FreeMotion(v0=0.0)) == 1.0


def test_w_of_p_minimum_at_classical_momentum():
    m = MOTION_QUARTER
    w0 = float(w_of_p(m.p0, m))
    assert abs(w0 - 1.0 / m.gamma0) < 1e-12          # equals -L_cl in value
    h = 1e-6
    deriv = (w_of_p(m.p0 + h, m) - w_of_p(m.p0 - h, m)) / (2 * h)
    assert abs(deriv) < 1e-9


def test_w_of_p_positive_everywhere():
    fast = FreeMotion(v0=0.99)
    p = np.linspace(-50.0, 50.0, 1001)
    assert np.all(w_of_p(p, fast) > 0.0)


def test_config_validation():
    with pytest.raises(ValueError):
        ClosedPacketConfig(vartheta=0.0, motion=MOTION_QUARTER)
    with pytest.raises(ValueError):
        GaussianPacketConfig(sigma0=-1.0)


def test_closed_form_matches_spectral_quadrature():
    cfg = ClosedPacketConfig(vartheta=1.0, motion=MOTION_QUARTER)
    xs = np.linspace(-25.0, 25.0, 161)
    sl = closed_slice(10.0, xs, cfg)
    ref, _ = closed_spectral(cfg, 30.0, 10.0).eval_psi_dpsi(10.0, xs)
    assert np.max(np.abs(sl.psi - ref)) < 1e-6 * np.max(np.abs(ref))
    assert sl.flags == ()


def test_closed_norm_conserved():
    for vt, t in ((1.0, 0.0), (1.0, 10.0), (10.0, 20.0)):
        cfg = ClosedPacketConfig(vartheta=vt, motion=MOTION_QUARTER)
        xs = np.linspace(-35.0, 40.0, 3001)
        assert abs(closed_slice(t, xs, cfg).norm() - 1.0) < 1e-5


def test_closed_single_peak_tracks_classical_position():
    cfg = ClosedPacketConfig(vartheta=100.0, motion=MOTION_QUARTER)
    for t in (0.0, 10.0):
        xs = np.linspace(-40.0 + 0.25 * t, 40.0 + 0.25 * t, 2001)
        sl = closed_slice(t, xs, cfg)
        dens = np.abs(sl.psi) ** 2
        assert abs(xs[int(np.argmax(dens))] - 0.25 * t) < 0.5
        assert abs(expectation_x(xs, dens) - 0.25 * t) < 1e-4


def test_psi_closed_scalar_api():
    cfg = ClosedPacketConfig(vartheta=10.0, motion=MOTION_QUARTER)
    psi, dpsi = psi_closed(5.0, 1.25, cfg)
    assert isinstance(complex(psi), complex)
    psis, dpsis = psi_closed(5.0, np.array([1.25, 2.0]), cfg)
    assert psis[0] == psi and dpsis[0] == dpsi


def test_spectrum_closed_peak_and_ratio():
    cfg = ClosedPacketConfig(vartheta=10.0, motion=MOTION_QUARTER)
    p = np.linspace(-2.0, 3.0, 5001)
    vals = spectrum_closed(p, cfg)
    assert abs(p[int(np.argmax(vals))] - MOTION_QUARTER.p0) < 2e-3

    rest = ClosedPacketConfig(vartheta=10.0, motion=FreeMotion(v0=0.0))
    ratio = spectrum_closed(1.0, rest) / spectrum_closed(0.0, rest)
    assert abs(ratio / np.exp(-20.0 * (np.sqrt(2.0) - 1.0)) - 1.0) < 1e-12


def test_spectrum_closed_matches_slice_transform():
    # the sampled momentum density reproduces the analytic distribution at
    # two different times (it is time independent)
    cfg = ClosedPacketConfig(vartheta=1.0, motion=MOTION_QUARTER)
    xs = np.linspace(-40.0, 45.0, 4001)
    for t in (0.0, 20.0):
        sl = closed_slice(t, xs, cfg)
        spec = momentum_spectrum(sl)
        analytic = spectrum_closed(spec.p, cfg)
        sel = analytic > 1e-3 * analytic.max()
        num = spec.rho_tilde / spec.rho_tilde.max()
        ana = analytic / analytic.max()
        assert np.max(np.abs(num[sel] - ana[sel])) < 1e-4


def test_gauss_initial_slice_is_the_gaussian():
    cfg = GaussianPacketConfig(sigma0=3.0, p0=0.5, x0=1.0)
    xs = np.linspace(-24.0, 26.0, 2001)
    sl = gauss_slice(0.0, xs, cfg)
    ref = (cfg.sigma0 * np.sqrt(np.pi)) ** -0.5 \
        * np.exp(-0.5 * ((xs - 1.0) / 3.0) ** 2 + 1j * 0.5 * (xs - 1.0))
    assert np.max(np.abs(sl.psi - ref)) < 1e-8
    assert np.max(np.abs(sl.psi) ** 2
                  - np.abs(ref) ** 2) < 1e-8


def test_gauss_norm_conserved():
    cfg = GaussianPacketConfig.from_gamma(0.3, 10.0)
    for t in (0.0, 8.0, 16.0):
        xs = np.linspace(-30.0, 30.0 + t, 4001)
        assert abs(gauss_slice(t, xs, cfg).norm() - 1.0) < 1e-5


def test_gauss_narrow_packet_has_negative_density():
    cfg = GaussianPacketConfig(sigma0=0.3)
    xs = np.linspace(-15.0, 15.0, 3001)
    dens = charge_density(gauss_slice(0.0, xs, cfg))
    assert dens.rho.min() < 0.0


def test_gauss_suppression_criterion():
    fast = GaussianPacketConfig.from_gamma(0.3, 10.0)
    assert abs(fast.p0 - np.sqrt(99.0)) < 1e-12    # ~9.95
    xs = np.linspace(-12.0, 12.0, 6001)
    spec = momentum_spectrum(gauss_slice(0.0, xs, fast))
    at = lambda q: float(np.interp(q, spec.p, spec.rho_tilde))
    assert at(-1.0) / at(fast.p0) < np.exp(-9.0)

    slow = GaussianPacketConfig.from_gamma(0.3, 1.0)
    spec2 = momentum_spectrum(gauss_slice(0.0, xs, slow))
    at2 = lambda q: float(np.interp(q, spec2.p, spec2.rho_tilde))
    assert at2(-1.0) / at2(slow.p0) > np.exp(-1.0)


def test_psi_gauss_free_scalar_api():
    cfg = GaussianPacketConfig(sigma0=3.0)
    psi, dpsi = psi_gauss_free(4.0, 0.5, cfg)
    # d/dt weighting is -iE: for a near-rest packet phase rotates at ~ -i m
    assert abs(dpsi / psi + 1j) < 0.2


def test_spectral_packet_unit_norm():
    cfg = GaussianPacketConfig(sigma0=0.3, p0=2.0)
    pk = gauss_spectral(cfg, 20.0, 5.0)
    xs = np.linspace(-20.0, 20.0, 4001)
    assert abs(pk.norm_at_zero(xs) - 1.0) < 1e-6


def test_spectral_time_derivative_against_closed_form():
    # independent route: differentiate the K1 expression analytically,
    # using dK1/dz = -K0 - K1/z
    from relwave.specfun import bessel_k0, bessel_k1

    cfg = ClosedPacketConfig(vartheta=2.0, motion=MOTION_QUARTER)
    m, vt = cfg.motion, cfg.vartheta
    t = 7.0
    xs = np.linspace(-12.0, 17.0, 401)
    sl = closed_slice(t, xs, cfg)

    k1n = bessel_k1(2.0 * vt / m.gamma0).real
    pref = np.sqrt(1.0 / (np.pi * m.gamma0 * k1n))
    f = np.sqrt((xs - 1j * m.v0 * vt) ** 2 - (t - 1j * vt) ** 2 + 0j)
    df_dt = -(t - 1j * vt) / f
    k0, k1 = bessel_k0(f), bessel_k1(f)
    dk1 = -(k0 + k1 / f)
    dpsi_ref = pref * (1j / f * k1
                       - (vt + 1j * t) * df_dt / f**2 * k1
                       + (vt + 1j * t) / f * dk1 * df_dt)
    assert np.max(np.abs(sl.dpsi_dt - dpsi_ref)) < 1e-8 * np.max(np.abs(dpsi_ref))


def test_group_center_slope_across_widths():
    # <x> stays on v0 t for wide and sub-Compton packets alike
    for vt in (1.0, 0.1):
        cfg = ClosedPacketConfig(vartheta=vt, motion=MOTION_QUARTER)
        xs = np.linspace(-16.0, 19.0, 1401)
        sl = closed_slice(10.0, xs, cfg)
        assert abs(expectation_x(xs, np.abs(sl.psi) ** 2) - 2.5) < 1e-3
