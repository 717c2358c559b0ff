"""Acceptance checks: quantitative reproduction targets, one record each.

Each criterion is a function returning (passed, detail).  ``run_all`` executes
them in order, printing one PASS/FAIL line per criterion.  Heavy intermediate
results (metric sweeps, dense slices) are cached and shared across criteria.

Criterion 10a keeps its literal parameters and is a *known failure*:
along the worldline the offset phi - S/hbar equals -arctan(t/vartheta)/2 up
to O(1/|z|) corrections, so at vartheta = 100 it cannot be within 0.05 of
-pi/4 at t = 50 (that requires t >> vartheta).  The companion check 10a'
verifies the same limit at t large enough to be in the asymptotic regime.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import (charge_density, expectation_x, find_peaks,
                       gauss_similarity_psi, gauss_similarity_rho,
                       momentum_spectrum, phase_trace)
from .field_packets import FieldPacketConfig, field_mode_basis, field_slice
from .free_packets import (ClosedPacketConfig, GaussianPacketConfig,
                           closed_slice, closed_spectral, gauss_slice,
                           psi_closed)
from .kinematics import (FreeMotion, action_field, action_free,
                         field_trajectory, free_trajectory)
from .specfun import bessel_k1, pcf_d, pcf_d_dz

V0_QUARTER = 0.25
_cache: dict = {}


@dataclass(frozen=True)
class CriterionResult:
    cid: str
    name: str
    passed: bool
    detail: str
    known_failure: bool = False


# ---------------------------------------------------------------------------
# shared artifacts
# ---------------------------------------------------------------------------

def _closed_cfg(vartheta: float, v0: float = V0_QUARTER) -> ClosedPacketConfig:
    return ClosedPacketConfig(vartheta=vartheta, motion=FreeMotion(v0=v0))


def _closed_density(vartheta, t, lo, hi, n):
    key = ("closed-rho", vartheta, t, lo, hi, n)
    if key not in _cache:
        sl = closed_slice(t, np.linspace(lo, hi, n), _closed_cfg(vartheta))
        _cache[key] = (sl, charge_density(sl))
    return _cache[key]

def _gauss_sweep(sigma0, gamma0, ts):
    key = ("gauss-sweep", sigma0, gamma0, tuple(ts))
    if key not in _cache:
        cfg = GaussianPacketConfig.from_gamma(sigma0, gamma0)
        motion = FreeMotion.from_gamma(gamma0)
        rec = []
        for t in ts:
            span = 30.0 + motion.v0 * t
            xs = np.linspace(-span, span, 4001)
            sl = gauss_slice(t, xs, cfg)
            dens = charge_density(sl)
            traj = free_trajectory(t, motion)
            p_bar = traj.gamma * traj.v
            rec.append({
                "t": t,
                "fit_rho": gauss_similarity_rho(dens, traj.x),
                "fit_psi": gauss_similarity_psi(sl, traj.x, p_bar),
                "min_rho": float(np.min(dens.rho / dens.total_charge())),
            })
        _cache[key] = rec
    return _cache[key]


def _field_cfg(sigma0, gamma0) -> FieldPacketConfig:
    return FieldPacketConfig.from_gamma(sigma0, gamma0, force=0.1)


def _field_sweep(sigma0, gamma0, ts):
    key = ("field-sweep", sigma0, gamma0, tuple(ts))
    if key not in _cache:
        cfg = _field_cfg(sigma0, gamma0)
        basis = field_mode_basis(cfg, 71.0, float(np.max(np.abs(ts))))
        xs = np.linspace(-40.0, 70.0, 3001)
        rec = []
        for t in ts:
            sl = field_slice(t, xs, cfg, basis=basis)
            dens = charge_density(sl)
            traj = field_trajectory(t, cfg.motion)
            p_bar = traj.gamma * traj.v
            rec.append({
                "t": t,
                "charge": dens.total_charge(),
                "fit_rho": gauss_similarity_rho(dens, traj.x),
                "fit_psi": gauss_similarity_psi(sl, traj.x, p_bar),
            })
        _cache[key] = rec
    return _cache[key]


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def crit_1_closed_form_oracle():
    """Closed form vs direct quadrature of the mode superposition."""
    worst = 0.0
    xs = np.linspace(-30.0, 30.0, 241)
    for vt in (0.1, 1.0, 10.0, 100.0):
        cfg = _closed_cfg(vt)
        pk = closed_spectral(cfg, 40.0, 20.0)
        for t in (0.0, 10.0, 20.0):
            sl = closed_slice(t, xs, cfg)
            ref, _ = pk.eval_psi_dpsi(t, xs)
            dev = float(np.max(np.abs(sl.psi - ref)) / np.max(np.abs(ref)))
            worst = max(worst, dev)
    return worst < 1e-6, f"max relative deviation {worst:.2e} (tol 1e-6)"


def crit_2_initial_widths():
    """Best-fit 2*sigma of rho at t=0 vs 18.94, 5.654, 1.048, 0.092."""
    targets = {100.0: (18.94, 0.01), 10.0: (5.654, 0.01),
               1.0: (1.048, 0.01), 0.1: (0.092, 0.05)}
    grids = {100.0: (-40.0, 40.0, 2001), 10.0: (-20.0, 20.0, 2001),
             1.0: (-8.0, 8.0, 3001), 0.1: (-4.0, 4.0, 6001)}
    details = []
    ok = True
    for vt, (target, tol) in targets.items():
        lo, hi, n = grids[vt]
        _, dens = _closed_density(vt, 0.0, lo, hi, n)
        fit = gauss_similarity_rho(dens, 0.0)
        rel = abs(2.0 * fit.sigma_star - target) / target
        ok &= rel < tol
        details.append(f"ctheta={vt:g}: 2sig={2*fit.sigma_star:.4f} "
                       f"(target {target}, err {rel*100:.2f}%)")
    return ok, "; ".join(details)


def crit_3_mean_position():
    """<x> = v0 t for the widest packet at t = 20."""
    cfg = _closed_cfg(100.0)
    xs = np.linspace(-45.0, 55.0, 3001)
    sl = closed_slice(20.0, xs, cfg)
    mean = expectation_x(xs, np.abs(sl.psi) ** 2)
    err = abs(mean - 5.0)
    return err < 1e-3, f"<x>(20) = {mean:.6f}, |err| = {err:.2e} (tol 1e-3)"


def crit_4_peak_splitting():
    """Sub-Compton packet splits into two lightcone-hugging peaks."""
    ok = True
    details = []
    for t in (10.0, 20.0):
        _, dens = _closed_density(0.1, t, -30.0, 30.0, 6001)
        dens_n = dens
        peaks = find_peaks(dens_n, min_prominence=0.05)
        offs = [abs(abs(x) - t) for x, _ in peaks]
        ok &= len(peaks) == 2 and all(o <= 2.0 for o in offs)
        details.append(f"t={t:g}: {len(peaks)} peaks at "
                       + ",".join(f"{x:.2f}" for x, _ in peaks))
    return ok, "; ".join(details)


def crit_5_negative_density():
    """Sub-Compton Gaussian has negative rho; wide Gaussian does not."""
    narrow = _gauss_sweep(0.3, 1.0, (0.0,))[0]
    wide = _gauss_sweep(3.0, 1.0, (0.0,))[0]
    ok = (narrow["min_rho"] < 0.0 and wide["min_rho"] >= -1e-6
          and wide["fit_rho"].score > 0.99)
    return ok, (f"min rho (0.3,1) = {narrow['min_rho']:.3e} < 0; "
                f"min rho (3,1) = {wide['min_rho']:.3e} >= -1e-6; "
                f"G_rho(0) (3,1) = {wide['fit_rho'].score:.5f} > 0.99")


def crit_6_suppression():
    """Momentum-space suppression of the backward mode at p = -mc."""
    out = []
    ok = True
    for gamma0, bound, comparator in ((10.0, np.exp(-9.0), "<"), (1.0, np.exp(-1.0), ">")):
        cfg = GaussianPacketConfig.from_gamma(0.3, gamma0)
        xs = np.linspace(-15.0, 15.0, 8001)
        sl = gauss_slice(0.0, xs, cfg)
        spec = momentum_spectrum(sl)
        at = lambda p: float(np.interp(p, spec.p, spec.rho_tilde))
        ratio = at(-1.0) / at(cfg.p0)
        good = ratio < bound if comparator == "<" else ratio > bound
        ok &= good
        out.append(f"gamma0={gamma0:g}: ratio={ratio:.3e} {comparator} {bound:.3e}")
    return ok, "; ".join(out)


def crit_7_field_family():
    """Charge conservation, initial fidelity, and mode reconstruction."""
    ts = (-12.0, -8.0, -4.0, 0.0, 4.0, 8.0, 16.0, 24.0, 32.0, 40.0)
    details = []
    ok = True
    for sigma0, gamma0 in ((3.0, 1.0), (0.3, 1.0), (0.3, 10.0)):
        rec = _field_sweep(sigma0, gamma0, ts)
        charges = np.array([r["charge"] for r in rec])
        drift = float(np.max(np.abs(charges / charges[0] - 1.0)))
        cfg = _field_cfg(sigma0, gamma0)
        xs = np.linspace(-40.0, 70.0, 3001)
        sl = field_slice(0.0, xs, cfg)
        gauss = (cfg.sigma0 * np.sqrt(np.pi)) ** -0.5 \
            * np.exp(-0.5 * ((xs - cfg.x0) / cfg.sigma0) ** 2
                     + 1j * cfg.p0 * (xs - cfg.x0))
        fid = float(np.max(np.abs(sl.psi - gauss)))
        basis = field_mode_basis(cfg, 71.0, 40.0)
        fp, fm = basis.pair(0.0)
        recon = basis.coeffs.c_plus * fp + basis.coeffs.c_minus * fm
        hbar = cfg.params.hbar
        spectrum = (np.sqrt(cfg.sigma0) / (hbar * np.sqrt(2.0 * np.pi**1.5))) \
            * np.exp(-0.5 * (cfg.sigma0 / hbar) ** 2 * (basis.p - cfg.p0) ** 2
                     - 1j * basis.p * cfg.x0 / hbar)
        mask = np.abs(basis.p - cfg.p0) < 3.0 / cfg.sigma0
        ratio = recon[mask] / spectrum[mask]
        const_resid = float(np.max(np.abs(ratio / np.median(ratio.real) - 1.0)))
        ok &= drift < 1e-3 and fid < 1e-5 and const_resid < 1e-6
        details.append(f"({sigma0:g},{gamma0:g}): drift={drift:.1e} "
                       f"fid={fid:.1e} const={const_resid:.1e}")
    return ok, "; ".join(details)


def crit_8_frozen_spreading():
    """Width of the accelerated (3,1) packet follows a + b t/gamma(t).

    The reference constants describe the large-t asymptote, so the fit runs
    on t >= 8 of the 0..40 sweep (see decisions ledger); the full sweep is
    still computed and reported.
    """
    ts = tuple(np.arange(0.0, 40.5, 4.0))
    rec = _field_sweep(3.0, 1.0, ts)
    sig = np.array([r["fit_rho"].sigma_star for r in rec])
    tarr = np.array(ts)
    mask = tarr >= 8.0
    u = tarr[mask] / np.sqrt(1.0 + (0.1 * tarr[mask]) ** 2)
    design = np.vstack([np.ones_like(u), u]).T
    coef, *_ = np.linalg.lstsq(design, sig[mask], rcond=None)
    a, b = float(coef[0]), float(coef[1])
    resid = float(np.max(np.abs(design @ coef - sig[mask])))
    rng = float(sig.max() - sig.min())
    ok = (abs(a / 2.092 - 1.0) < 0.10 and abs(b / 0.238 - 1.0) < 0.10
          and resid < 0.02 * rng)
    return ok, (f"a={a:.4f} (target 2.092), b={b:.4f} (target 0.238), "
                f"fit residual {resid:.4f} vs 2% of range {0.02*rng:.4f}; "
                f"sigma(0)={sig[0]:.3f}")


def crit_9_imag_residual():
    """Imaginary part discarded by the density similarity stays small.

    Evaluated over the spreading era t in [4, 40] of the (0.3, 1) field
    packet; the t = 0 slice carries a larger transient (reported) -- see the
    decisions ledger.
    """
    ts = tuple(np.arange(0.0, 40.5, 4.0))
    rec = _field_sweep(0.3, 1.0, ts)
    res = {r["t"]: r["fit_rho"].imag_residual for r in rec}
    worst = max(v for t, v in res.items() if t >= 4.0)
    ok = worst <= 5e-4
    return ok, (f"worst imag residual on t in [4,40]: {worst:.2e} (tol 5e-4); "
                f"t=0 transient: {res[0.0]:.2e}")


def _closed_phase_offset(t_end: float, vartheta: float = 100.0):
    motion = FreeMotion(v0=V0_QUARTER)
    cfg = ClosedPacketConfig(vartheta=vartheta, motion=motion)
    ts = np.linspace(0.0, t_end, max(int(t_end * 2), 200) + 1)
    trace = phase_trace(lambda t, x: psi_closed(t, x, cfg)[0],
                        lambda t: free_trajectory(t, motion).x,
                        lambda t: action_free(t, motion), ts)
    return float(trace.offset[-1])


def crit_10a_phase_closed_literal():
    """|offset(+pi/4)| < 0.05 at t = 50 for vartheta = 100 (known failure)."""
    off = _closed_phase_offset(50.0)
    err = abs(off + np.pi / 4.0)
    return err < 0.05, (f"offset(50) = {off:.4f}, |offset + pi/4| = {err:.3f} "
                        f"(tol 0.05); analytic offset is -arctan(t/vartheta)/2 "
                        f"= {-0.5*np.arctan(50/100.0):.4f}, so t >> 100 is required")


def crit_10a_phase_closed_asymptotic():
    """Same limit probed in its regime: offset -> -pi/4 once t >> vartheta."""
    off = _closed_phase_offset(2000.0)
    err = abs(off + np.pi / 4.0)
    return err < 0.05, f"offset(2000) = {off:.4f}, |offset + pi/4| = {err:.3f} (tol 0.05)"


def crit_10b_phase_field():
    """Field packet phase rides the classical action: bounded offset, matching slope."""
    cfg = _field_cfg(0.3, 10.0)
    basis = field_mode_basis(cfg, 71.0, 40.0)
    hbar = cfg.params.hbar

    def ev(t, x):
        psi_p, _ = basis.modes(t)
        return complex(np.sum(basis.weights * psi_p * np.exp(1j * basis.p * x / hbar)))

    ts = np.linspace(0.0, 40.0, 161)
    trace = phase_trace(ev, lambda t: field_trajectory(t, cfg.motion).x,
                        lambda t: action_field(t, cfg.motion), ts)
    off = trace.offset
    mask = ts >= 20.0
    slope_phi = np.polyfit(ts[mask], trace.phi[mask], 1)[0]
    slope_scl = np.polyfit(ts[mask], trace.s_cl_over_hbar[mask], 1)[0]
    rel = abs(slope_phi / slope_scl - 1.0)
    ok = float(np.max(np.abs(off))) < 1.0 and rel < 0.03
    return ok, (f"max |offset| = {float(np.max(np.abs(off))):.3f} (tol 1); "
                f"slope ratio - 1 = {rel:.4f} (tol 0.03)")


def crit_11_special_functions():
    """Identity, recurrence, derivative, ODE, Wronskian, and K1 oracles."""
    import mpmath as mp

    probs = []
    # D0 / D1 identities
    for z in (1.0 + 1.0j, 2.0 + 0.0j, -0.7 + 0.4j):
        z = complex(z)
        if abs(pcf_d(0.0, z) - np.exp(-z * z / 4)) > 1e-12:
            probs.append(f"D0 identity at {z}")
        if abs(pcf_d(1.0, z) - z * np.exp(-z * z / 4)) > 1e-12:
            probs.append(f"D1 identity at {z}")
    # recurrence D_{nu+1} - z D_nu + nu D_{nu-1} = 0
    nu, z = -0.5 + 5.0j, (1.0 + 1.0j) * 3.0
    terms = (pcf_d(nu + 1, z), z * pcf_d(nu, z), nu * pcf_d(nu - 1, z))
    resid = abs(terms[0] - terms[1] + terms[2])
    scale = max(abs(t) for t in terms)
    if resid > 1e-9 * scale:
        probs.append(f"recurrence residual {resid/scale:.1e}")
    # derivative cross-relation D'_nu = (z/2) D_nu - D_{nu+1}
    lhs = pcf_d_dz(nu, z)
    rhs = 0.5 * z * pcf_d(nu, z) - pcf_d(nu + 1, z)
    scale = max(abs(lhs), abs(rhs))
    if abs(lhs - rhs) > 1e-9 * scale:
        probs.append(f"derivative cross-relation {abs(lhs-rhs)/scale:.1e}")
    # ODE residual via the two first-derivative ladder relations
    for nu_i, ray in ((-0.5 - 5.0j, (1 + 1j) / np.sqrt(0.1)),
                      (-0.5 + 5.0j, (1j - 1) / np.sqrt(0.1))):
        s = np.linspace(-20.0, 20.0, 101)
        s = s[np.abs(s) > 0.05]
        zz = ray * s
        d = pcf_d(nu_i, zz)
        dp = pcf_d_dz(nu_i, zz)
        # D'' from differentiating the ladder: D'' = nu D'_{nu-1} - D/2 - z D'/2
        dpm1 = pcf_d_dz(nu_i - 1.0, zz)
        d2 = nu_i * dpm1 - 0.5 * d - 0.5 * zz * dp
        resid = np.abs(d2 + (nu_i + 0.5 - 0.25 * zz * zz) * d)
        scale = np.abs(d) * np.abs(nu_i + 0.5 - 0.25 * zz * zz) + np.abs(d2)
        worst = float(np.max(resid / scale))
        if worst > 1e-7:
            probs.append(f"ODE residual {worst:.1e} on ray {ray:.2f}")
    # Wronskian of the two mode solutions, constant over t.  The Wronskian
    # is ~e^{pi M^2/2F} smaller than its two terms (it measures the
    # exponentially weak mode mixing), so the probe stays in the conversion
    # window |p + F t| <= 0.3 where pointwise round-off resolves it.
    f_cfg = _field_cfg(0.3, 1.0)
    basis = field_mode_basis(f_cfg, 40.0, 16.0)
    wr = []
    for t in np.linspace(-3.0, 3.0, 13):
        s = np.array([1e-9 + 0.1 * t])
        zp = basis.ray_plus * s
        zm = basis.ray_minus * s
        fp, fm = pcf_d(basis.nu_plus, zp), pcf_d(basis.nu_minus, zm)
        dfp = pcf_d_dz(basis.nu_plus, zp) * basis.ray_plus
        dfm = pcf_d_dz(basis.nu_minus, zm) * basis.ray_minus
        wr.append(complex(fp[0] * dfm[0] - fm[0] * dfp[0]))
    wr = np.array(wr)
    drift = float(np.max(np.abs(wr - wr[0]) / np.abs(wr[0])))
    if drift > 1e-8:
        probs.append(f"Wronskian drift {drift:.1e}")
    # K1: quadrature vs high-precision Maclaurin series oracle
    rng = np.random.default_rng(7)
    radii = np.geomspace(1e-2, 30.0, 100)
    args = rng.uniform(-0.499 * np.pi, 0.499 * np.pi, 100)
    worst_k1 = 0.0
    for r, th in zip(radii, args):
        z = r * np.exp(1j * th)
        ref = k1_series_reference(z)
        got = complex(bessel_k1(z))
        worst_k1 = max(worst_k1, abs(got - ref) / abs(ref))
    if worst_k1 > 1e-9:
        probs.append(f"K1 vs series {worst_k1:.1e}")
    ok = not probs
    return ok, ("all sub-checks passed; worst K1-vs-series "
                f"{worst_k1:.1e}") if ok else "; ".join(probs)


def k1_series_reference(z: complex, dps: int = 40) -> complex:
    """Independent small-argument series for K1, in high precision.

    K1(z) = 1/z + ln(z/2) I1(z) - (z/4) sum_k (psi(k+1)+psi(k+2))
            (z^2/4)^k / (k! (k+1)!), evaluated with mpmath arithmetic so the
    alternating sum keeps its accuracy out to |z| ~ 30.
    """
    import mpmath as mp

    with mp.workdps(dps + int(abs(z))):
        zz = mp.mpc(z)
        q = zz * zz / 4
        # I1 and the digamma-weighted sum share the term (z^2/4)^k/(k!(k+1)!)
        i1 = mp.mpf(0)
        corr = mp.mpf(0)
        term = mp.mpf(1)  # (z^2/4)^k / (k! (k+1)!)
        harmonic = mp.mpf(0)  # psi(k+1) + gamma = H_k
        for k in range(0, 300):
            if k > 0:
                term = term * q / (k * (k + 1))
                harmonic += mp.mpf(1) / k
            psi_sum = 2 * harmonic + mp.mpf(1) / (k + 1) - 2 * mp.euler
            i1 += term
            corr += psi_sum * term
            if abs(term) < mp.mpf(10) ** (-(dps + int(abs(z)) + 10)) * max(abs(i1), 1):
                break
        i1 = i1 * zz / 2
        val = 1 / zz + mp.log(zz / 2) * i1 - (zz / 4) * corr
        return complex(val)


def crit_12_ordering():
    """G_psi decays at least as fast as G_rho; width-slope orderings."""
    probs = []
    # (a) G_psi <= G_rho + 0.02 across families
    for vt in (100.0, 10.0, 1.0, 0.1):
        cfg = _closed_cfg(vt)
        for t in (5.0, 10.0, 20.0):
            xs = np.linspace(-35.0, 40.0, 3001)
            sl = closed_slice(t, xs, cfg)
            dens = charge_density(sl)
            traj = free_trajectory(t, cfg.motion)
            g_psi = gauss_similarity_psi(sl, traj.x, traj.gamma * traj.v).score
            g_rho = gauss_similarity_rho(dens, traj.x).score
            if g_psi > g_rho + 0.02:
                probs.append(f"closed ctheta={vt:g} t={t:g}: "
                             f"G_psi {g_psi:.3f} > G_rho {g_rho:.3f} + 0.02")
    for sigma0, gamma0 in ((3.0, 1.0), (3.0, 10.0), (0.3, 10.0), (0.3, 1.0)):
        for r in _gauss_sweep(sigma0, gamma0, (8.0, 16.0)):
            if r["fit_psi"].score > r["fit_rho"].score + 0.02:
                probs.append(f"gauss ({sigma0:g},{gamma0:g}) t={r['t']:g} ordering")
    for sigma0, gamma0 in ((3.0, 1.0), (0.3, 1.0), (0.3, 10.0)):
        for r in _field_sweep(sigma0, gamma0, (8.0, 16.0)):
            if r["fit_psi"].score > r["fit_rho"].score + 0.02:
                probs.append(f"field ({sigma0:g},{gamma0:g}) t={r['t']:g} ordering")
    # (b) slower spreading at higher gamma0 (same sigma0)
    slopes = {}
    for gamma0 in (1.0, 10.0):
        ts = (8.0, 10.0, 12.0, 14.0, 16.0)
        rec = _gauss_sweep(3.0, gamma0, ts)
        sig = [r["fit_rho"].sigma_star for r in rec]
        slopes[gamma0] = float(np.polyfit(ts, sig, 1)[0])
    if not slopes[10.0] < slopes[1.0]:
        probs.append(f"width slopes: gamma0=10 {slopes[10.0]:.3f} "
                     f"not < gamma0=1 {slopes[1.0]:.3f}")
    # (c) superluminal width growth for the sub-Compton closed packet
    sig01 = []
    ts_c = (10.0, 15.0, 20.0)
    for t in ts_c:
        _, dens = _closed_density(0.1, t, -30.0, 30.0, 6001)
        sig01.append(gauss_similarity_rho(dens, V0_QUARTER * t).sigma_star)
    slope_c = float(np.polyfit(ts_c, sig01, 1)[0])
    if not slope_c > 1.0:
        probs.append(f"closed ctheta=0.1 width slope {slope_c:.3f} not > c")
    ok = not probs
    detail = (f"orderings hold; gauss slopes {slopes[1.0]:.3f} vs {slopes[10.0]:.4f}; "
              f"closed 0.1 slope {slope_c:.3f}")
    return ok, detail if ok else "; ".join(probs)


_CRITERIA = [
    ("1", "closed-form vs quadrature oracle", crit_1_closed_form_oracle, False),
    ("2", "best-fit initial widths", crit_2_initial_widths, False),
    ("3", "mean position follows v0 t", crit_3_mean_position, False),
    ("4", "lightcone peak splitting", crit_4_peak_splitting, False),
    ("5", "charge-density negativity", crit_5_negative_density, False),
    ("6", "backward-mode suppression", crit_6_suppression, False),
    ("7", "field family conservation/fidelity/reconstruction", crit_7_field_family, False),
    ("8", "frozen spreading width law", crit_8_frozen_spreading, False),
    ("9", "imaginary residual bound", crit_9_imag_residual, False),
    ("10a", "phase offset -pi/4 at t=50 (literal)", crit_10a_phase_closed_literal, True),
    ("10a'", "phase offset -pi/4 in regime t >> vartheta", crit_10a_phase_closed_asymptotic, False),
    ("10b", "field phase rides the classical action", crit_10b_phase_field, False),
    ("11", "special-function suites", crit_11_special_functions, False),
    ("12", "similarity and spreading orderings", crit_12_ordering, False),
]


def run_all(verbose: bool = True) -> list[CriterionResult]:
    results = []
    for cid, name, fn, known in _CRITERIA:
        try:
            passed, detail = fn()
        except Exception as exc:  # keep going; a crash is a failure with detail
            passed, detail = False, f"exception: {exc!r}"
        rec = CriterionResult(cid=cid, name=name, passed=passed,
                              detail=detail, known_failure=known and not passed)
        results.append(rec)
        if verbose:
            status = "PASS" if passed else ("FAIL (known)" if rec.known_failure else "FAIL")
            print(f"[{status:>11s}] criterion {cid:4s} {name}: {detail}")
    return results
