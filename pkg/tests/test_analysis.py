import numpy as np
import pytest

from relwave.analysis import (BracketError, DensitySlice, GaussFitResult,
                              WaveSlice, best_sigma, charge_density,
                              expectation_x, find_peaks, gauss_similarity_psi,
                              gauss_similarity_rho, momentum_spectrum,
                              phase_trace)


def _gaussian_wave(xs, sigma, x0=0.0, p0=0.0):
    return (sigma * np.sqrt(np.pi)) ** -0.5 \
        * np.exp(-0.5 * ((xs - x0) / sigma) ** 2 + 1j * p0 * xs)


def test_slice_validation():
    xs = np.linspace(0, 1, 5)
    with pytest.raises(ValueError):
        WaveSlice(t=0.0, xs=xs, psi=np.zeros(4, complex), dpsi_dt=np.zeros(5, complex))
    with pytest.raises(ValueError):
        WaveSlice(t=0.0, xs=xs[::-1], psi=np.zeros(5, complex), dpsi_dt=np.zeros(5, complex))
    with pytest.raises(ValueError):
        DensitySlice(t=0.0, xs=xs, rho=np.zeros(3))
    with pytest.raises(ValueError):
        GaussFitResult(score=1.0, sigma_star=0.0, imag_residual=0.0)


def test_charge_density_stationary_phase():
    xs = np.linspace(-5, 5, 301)
    f = np.exp(-xs**2)
    t = 0.7
    psi = f * np.exp(-1j * t)
    dpsi = -1j * psi
    dens = charge_density(WaveSlice(t=t, xs=xs, psi=psi, dpsi_dt=dpsi))
    assert np.allclose(dens.rho, f * f, atol=1e-14)


def test_charge_density_plane_wave():
    xs = np.linspace(-5, 5, 101)
    p, amp = 2.0, 0.3
    e = np.sqrt(1.0 + p * p)
    psi = amp * np.exp(1j * p * xs)
    dpsi = -1j * e * psi
    dens = charge_density(WaveSlice(t=0.0, xs=xs, psi=psi, dpsi_dt=dpsi))
    assert np.allclose(dens.rho, e * amp**2)
    assert np.all(dens.rho > 0)


def test_charge_density_with_scalar_potential():
    xs = np.linspace(-2, 2, 41)
    psi = np.ones_like(xs) * (1.0 + 0.0j)
    dpsi = -1j * psi
    a0 = lambda t, x: np.full_like(x, 0.25)
    dens = charge_density(WaveSlice(t=0.0, xs=xs, psi=psi, dpsi_dt=dpsi), a0=a0)
    assert np.allclose(dens.rho, 1.0 - 0.25)


def test_best_sigma_quadratic():
    sigma, val = best_sigma(lambda s: -(s - 3.0) ** 2, (0.1, 100.0))
    assert abs(sigma - 3.0) < 3e-6
    assert abs(val) < 1e-10


def test_best_sigma_gaussian_overlap_peaks_at_equal_widths():
    sigma0 = 2.4

    def overlap(s):
        return np.sqrt(2.0 * s * sigma0 / (s * s + sigma0 * sigma0))

    sigma, _ = best_sigma(overlap, (0.05, 50.0))
    assert abs(sigma / sigma0 - 1.0) < 1e-6


def test_best_sigma_bracket_error():
    with pytest.raises(BracketError):
        best_sigma(lambda s: s, (0.1, 10.0))  # maximum at the edge
    with pytest.raises(BracketError):
        best_sigma(lambda s: -s, (0.1, 10.0))


def test_gauss_similarity_psi_self_overlap():
    xs = np.linspace(-20, 20, 3001)
    wave = WaveSlice(t=0.0, xs=xs, psi=_gaussian_wave(xs, 2.0, p0=0.6),
                     dpsi_dt=np.zeros_like(xs, dtype=complex))
    fit = gauss_similarity_psi(wave, 0.0, 0.6)
    assert abs(fit.score - 1.0) < 1e-8
    assert abs(fit.sigma_star - 2.0) < 1e-6


def test_gauss_similarity_phase_invariance():
    xs = np.linspace(-20, 20, 2001)
    psi = _gaussian_wave(xs, 1.3, x0=0.4, p0=0.2)
    base = WaveSlice(t=0.0, xs=xs, psi=psi, dpsi_dt=np.zeros_like(psi))
    rot = WaveSlice(t=0.0, xs=xs, psi=psi * np.exp(1j * 1.234),
                    dpsi_dt=np.zeros_like(psi))
    f0 = gauss_similarity_psi(base, 0.4, 0.2)
    f1 = gauss_similarity_psi(rot, 0.4, 0.2)
    assert abs(f0.score - f1.score) < 1e-12
    assert abs(f0.sigma_star - f1.sigma_star) < 1e-9


def test_gauss_similarity_rho_identity():
    xs = np.linspace(-15, 15, 4001)
    sigma = 1.5
    rho = np.exp(-((xs / sigma) ** 2)) / (sigma * np.sqrt(np.pi))
    fit = gauss_similarity_rho(DensitySlice(t=0.0, xs=xs, rho=rho), 0.0)
    assert abs(fit.score - 1.0) < 1e-7
    assert abs(fit.sigma_star - 1.5) < 1.5e-4
    assert fit.imag_residual == 0.0


def test_gauss_similarity_rho_recovers_generator_width():
    xs = np.linspace(-25, 25, 5001)
    sigma0 = 3.7
    rho = np.exp(-(((xs - 1.0) / sigma0) ** 2)) / (sigma0 * np.sqrt(np.pi))
    fit = gauss_similarity_rho(DensitySlice(t=0.0, xs=xs, rho=rho), 1.0)
    assert abs(fit.sigma_star / sigma0 - 1.0) < 1e-4


def test_gauss_similarity_rho_imag_residual():
    xs = np.linspace(-10, 10, 2001)
    rho = np.exp(-(xs**2)) / np.sqrt(np.pi) - 0.02 * np.exp(-((np.abs(xs) - 2.0) ** 2) * 4)
    fit = gauss_similarity_rho(DensitySlice(t=0.0, xs=xs, rho=rho), 0.0)
    assert fit.imag_residual > 1e-3     # negative lobes surface, not vanish
    assert fit.score < 1.0


def test_momentum_spectrum_gaussian():
    xs = np.linspace(-40, 40, 4096)
    sigma0, p0 = 1.5, 2.0
    wave = WaveSlice(t=0.0, xs=xs, psi=_gaussian_wave(xs, sigma0, p0=p0),
                     dpsi_dt=np.zeros(len(xs), complex))
    spec = momentum_spectrum(wave)
    assert spec.flags == ()
    peak = spec.p[int(np.argmax(spec.rho_tilde))]
    assert abs(peak - p0) < 0.05
    # |FT|^2 of the sigma0 Gaussian has half-width 1/sigma0 in this convention
    ref = (sigma0 / np.sqrt(np.pi)) * np.exp(-sigma0**2 * (spec.p - p0) ** 2)
    assert np.max(np.abs(spec.rho_tilde - ref)) < 1e-6


def test_momentum_spectrum_parseval():
    xs = np.linspace(-30, 30, 2048)
    wave = WaveSlice(t=0.0, xs=xs, psi=_gaussian_wave(xs, 0.8, p0=-1.0),
                     dpsi_dt=np.zeros(len(xs), complex))
    spec = momentum_spectrum(wave)
    mass_p = np.trapezoid(spec.rho_tilde, spec.p)
    mass_x = wave.norm()
    assert abs(mass_p / mass_x - 1.0) < 1e-6


def test_momentum_spectrum_boundary_flag():
    xs = np.linspace(-3, 3, 256)
    wave = WaveSlice(t=0.0, xs=xs, psi=_gaussian_wave(xs, 4.0),
                     dpsi_dt=np.zeros(len(xs), complex))
    spec = momentum_spectrum(wave)
    assert any("boundary-mass" in f for f in spec.flags)


def test_momentum_spectrum_requires_uniform_grid():
    xs = np.concatenate([np.linspace(-1, 0, 50), np.linspace(0.013, 1, 50)])
    wave = WaveSlice(t=0.0, xs=xs, psi=np.ones(100, complex),
                     dpsi_dt=np.zeros(100, complex))
    with pytest.raises(ValueError):
        momentum_spectrum(wave)


def test_expectation_x():
    xs = np.linspace(-10, 18, 1001)
    w = np.exp(-((xs - 4.0) ** 2))
    assert abs(expectation_x(xs, w) - 4.0) < 1e-10
    with pytest.raises(ValueError):
        expectation_x(xs, np.zeros_like(xs))


def test_find_peaks_single_and_double():
    xs = np.linspace(-20, 20, 2001)
    single = DensitySlice(t=0.0, xs=xs, rho=np.exp(-(xs**2)))
    assert len(find_peaks(single)) == 1
    two = DensitySlice(t=0.0, xs=xs,
                       rho=np.exp(-((xs - 6.0) ** 2)) + np.exp(-((xs + 6.0) ** 2)))
    peaks = find_peaks(two)
    assert len(peaks) == 2
    dx = xs[1] - xs[0]
    assert abs(peaks[0][0] + 6.0) <= dx and abs(peaks[1][0] - 6.0) <= dx


def test_find_peaks_empty_for_ramp():
    xs = np.linspace(0, 1, 101)
    assert find_peaks(DensitySlice(t=0.0, xs=xs, rho=xs.copy())) == []


def test_phase_trace_linear_phase():
    omega = 2.2
    tr = phase_trace(lambda t, x: np.exp(-1j * omega * t),
                     lambda t: 0.0,
                     lambda t: -omega * t,
                     np.linspace(0.0, 10.0, 11))
    assert np.max(np.abs(tr.offset)) < 1e-12
    assert np.max(np.abs(tr.phi + omega * tr.ts)) < 1e-12


def test_phase_trace_refines_fast_rotation():
    # increments of ~2.5 rad per step need one bisection level
    omega = 5.0
    tr = phase_trace(lambda t, x: np.exp(-1j * omega * t),
                     lambda t: 0.0,
                     lambda t: -omega * t,
                     np.linspace(0.0, 5.0, 11))
    assert np.max(np.abs(tr.offset)) < 1e-12


def test_phase_trace_unwrap_failure_raises():
    # a genuine phase jump of 0.98 pi survives every bisection level
    with pytest.raises(ArithmeticError):
        phase_trace(lambda t, x: np.exp(1j * 0.98 * np.pi * (t >= 0.5)),
                    lambda t: 0.0, lambda t: 0.0,
                    np.linspace(0.0, 1.0, 6), max_refines=3)


def test_phase_slope_matches_action_rate_at_late_times():
    # initially Gaussian packet at gamma0 = 10: d(phi)/dt -> -1/gamma0 once
    # the dispersion correction ~ E''(p0)/(2 sigma0^2 t ...) has decayed
    from relwave.free_packets import GaussianPacketConfig, gauss_spectral
    from relwave.kinematics import FreeMotion, action_free, free_trajectory

    cfg = GaussianPacketConfig.from_gamma(0.3, 10.0)
    motion = FreeMotion.from_gamma(10.0)
    pk = gauss_spectral(cfg, 205.0, 200.0)
    ts = np.linspace(150.0, 200.0, 51)
    tr = phase_trace(lambda t, x: pk.eval_psi_dpsi(t, np.array([x]))[0][0],
                     lambda t: free_trajectory(t, motion).x,
                     lambda t: action_free(t, motion), ts)
    slope = np.polyfit(tr.ts, tr.phi, 1)[0]
    assert abs(slope / (-1.0 / motion.gamma0) - 1.0) < 0.02
