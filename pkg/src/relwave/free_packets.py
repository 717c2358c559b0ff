"""Free-particle wavepackets.

Two families: the closed-form packet of a particle in uniform motion (flat
momentum spectrum over decaying modes, summing to a Bessel-K1 expression),
and the packet that is exactly Gaussian at t = 0, propagated spectrally with
plane-wave modes.  Both expose psi and its exact time derivative; d/dt is
always taken spectrally (each mode weighted by -i E(p)/hbar), never by
finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .analysis import WaveSlice
from .kinematics import FreeMotion, PhysParams
from .quadrature import momentum_grid
from .specfun import bessel_k1

__all__ = [
    "ClosedPacketConfig",
    "GaussianPacketConfig",
    "SpectralPacket",
    "w_of_p",
    "energy",
    "psi_closed",
    "closed_slice",
    "spectrum_closed",
    "psi_gauss_free",
    "gauss_slice",
    "closed_spectral",
    "gauss_spectral",
]

_TAIL_EPS = 1e-12      # spectrum magnitude at the truncation edge
_OVERSAMPLE = 3.0      # nodes per Nyquist interval of the fastest phase


def _quantize(value: float, step: float) -> float:
    """Round an extent up to a step so cached packet builders can be reused."""
    return step * float(np.ceil(max(value, step) / step))


def energy(p, params: PhysParams):
    """Relativistic dispersion E(p) = c sqrt(m^2 c^2 + p^2)."""
    p = np.asarray(p, dtype=float)
    return params.c * np.sqrt((params.m * params.c) ** 2 + p * p)


def w_of_p(p, motion: FreeMotion):
    """Mode decay function W(p) = E(p) - p v0; positive for |v0| < c."""
    pp = motion.params
    return energy(p, pp) - np.asarray(p, dtype=float) * motion.v0


@dataclass(frozen=True)
class ClosedPacketConfig:
    """Closed-form packet: width parameter vartheta (time units) and motion."""

    vartheta: float
    motion: FreeMotion

    def __post_init__(self):
        if self.vartheta <= 0:
            raise ValueError("vartheta must be positive")

    @property
    def params(self) -> PhysParams:
        return self.motion.params


@dataclass(frozen=True)
class GaussianPacketConfig:
    """Initially Gaussian packet of half-width sigma0 and momentum p0."""

    sigma0: float
    p0: float = 0.0
    x0: float = 0.0
    params: PhysParams = field(default_factory=PhysParams)

    def __post_init__(self):
        if self.sigma0 <= 0:
            raise ValueError("sigma0 must be positive")

    @classmethod
    def from_gamma(cls, sigma0: float, gamma0: float, x0: float = 0.0,
                   params: PhysParams | None = None) -> "GaussianPacketConfig":
        params = params or PhysParams()
        p0 = params.m * params.c * np.sqrt(gamma0**2 - 1.0)
        return cls(sigma0=sigma0, p0=float(p0), x0=x0, params=params)


@dataclass(frozen=True)
class SpectralPacket:
    """Wavepacket as weighted momentum modes, evaluable at any (t, x).

    ``kind`` selects the mode family: "closed-ansatz" modes carry the
    exp(-(vartheta + i t) W(p)/hbar) damping and travel with the packet
    (phase p (x - x0 - v0 t)); "plane-wave" modes are exp(i(p x - E t)/hbar).
    ``spectrum`` holds the weight function evaluated on the nodes, ``norm``
    the overall normalization constant.
    """

    kind: str
    p: np.ndarray
    weights: np.ndarray
    spectrum: np.ndarray
    norm: float
    params: PhysParams
    v0: float = 0.0
    x0: float = 0.0
    vartheta: float = 0.0

    def eval_psi_dpsi(self, t: float, xs: np.ndarray):
        """psi(t, xs) and d/dt psi(t, xs); chunked over xs."""
        hbar = self.params.hbar
        e = energy(self.p, self.params)
        if self.kind == "closed-ansatz":
            w = e - self.p * self.v0
            gt = self.norm * self.spectrum * self.weights \
                * np.exp(-(self.vartheta + 1j * t) * w / hbar)
            x_eff = np.asarray(xs, dtype=float) - self.x0 - self.v0 * t
        else:
            gt = self.norm * self.spectrum * self.weights * np.exp(-1j * e * t / hbar)
            x_eff = np.asarray(xs, dtype=float)
        psi = np.empty(len(x_eff), dtype=complex)
        dpsi = np.empty(len(x_eff), dtype=complex)
        dfac = -1j * e / hbar
        for i0 in range(0, len(x_eff), 512):
            block = np.exp(1j * np.outer(x_eff[i0:i0 + 512], self.p) / hbar)
            psi[i0:i0 + 512] = block @ gt
            dpsi[i0:i0 + 512] = block @ (gt * dfac)
        return psi, dpsi

    def norm_at_zero(self, xs: np.ndarray) -> float:
        psi, _ = self.eval_psi_dpsi(0.0, xs)
        return float(np.trapezoid(np.abs(psi) ** 2, xs))


def _node_spacing(params: PhysParams, x_extent: float, t_max: float,
                  sigma_p: float) -> float:
    freq = (x_extent + params.c * abs(t_max)) / params.hbar + 10.0
    return min(2.0 * np.pi / (_OVERSAMPLE * freq), sigma_p / 4.0)


@lru_cache(maxsize=64)
def closed_spectral(cfg: ClosedPacketConfig, x_extent: float, t_max: float) -> SpectralPacket:
    """Flat-spectrum packet over closed-ansatz modes (the quadrature route)."""
    pp = cfg.params
    m = cfg.motion
    hbar, c = pp.hbar, pp.c
    decay = hbar * np.log(1.0 / _TAIL_EPS) / cfg.vartheta
    w0 = float(w_of_p(m.p0, m))
    p_hi = (decay + w0 + 2 * pp.m * c**2) / (c - m.v0)
    p_lo = -(decay + w0 + 2 * pp.m * c**2) / (c + m.v0)
    # curvature scale of exp(-vartheta W/hbar) around p0
    sigma_p = np.sqrt(hbar * pp.m * m.gamma0**3 / cfg.vartheta) / c
    dp = _node_spacing(pp, x_extent, t_max, sigma_p)
    half = 0.5 * (p_hi - p_lo)
    n = int(2 * half / dp) | 1
    nodes, weights = momentum_grid(0.5 * (p_hi + p_lo), half, max(n, 201))
    norm = closed_norm_constant(cfg)
    return SpectralPacket(kind="closed-ansatz", p=nodes, weights=weights,
                          spectrum=np.ones_like(nodes), norm=norm, params=pp,
                          v0=m.v0, x0=m.x0, vartheta=cfg.vartheta)


@lru_cache(maxsize=64)
def gauss_spectral(cfg: GaussianPacketConfig, x_extent: float, t_max: float) -> SpectralPacket:
    """Plane-wave packet with the Gaussian momentum spectrum of the initial data."""
    pp = cfg.params
    hbar = pp.hbar
    sigma_p = hbar / cfg.sigma0
    half = max(12.0 * sigma_p, 12.0 * pp.m * pp.c)
    dp = _node_spacing(pp, x_extent, t_max, sigma_p)
    n = int(2 * half / dp) | 1
    nodes, weights = momentum_grid(cfg.p0, half, max(n, 401))
    spectrum = (np.sqrt(cfg.sigma0) / (hbar * np.sqrt(2.0 * np.pi**1.5))) \
        * np.exp(-0.5 * (cfg.sigma0 / hbar) ** 2 * (nodes - cfg.p0) ** 2
                 - 1j * nodes * cfg.x0 / hbar)
    packet = SpectralPacket(kind="plane-wave", p=nodes, weights=weights,
                            spectrum=spectrum, norm=1.0, params=pp)
    # trim the numerical norm to one (analytically it already is)
    span = max(10.0 * cfg.sigma0, 10.0 * pp.compton_reduced)
    xs = np.linspace(cfg.x0 - span, cfg.x0 + span, 4001)
    norm = packet.norm_at_zero(xs)
    return SpectralPacket(kind="plane-wave", p=nodes, weights=weights,
                          spectrum=spectrum, norm=1.0 / np.sqrt(norm), params=pp)


def closed_norm_constant(cfg: ClosedPacketConfig) -> float:
    """Normalization N of the flat-spectrum superposition, from
    |N|^2 = 1 / (4 pi hbar m c gamma0 K1(2 m c^2 vartheta / (hbar gamma0)))."""
    pp = cfg.params
    g0 = cfg.motion.gamma0
    k1 = bessel_k1(2.0 * pp.m * pp.c**2 * cfg.vartheta / (pp.hbar * g0))
    return float(1.0 / np.sqrt(4.0 * np.pi * pp.hbar * pp.m * pp.c * g0 * k1.real))


def _closed_form_psi(t: float, xs: np.ndarray, cfg: ClosedPacketConfig):
    pp = cfg.params
    m = cfg.motion
    hbar, c = pp.hbar, pp.c
    vt = cfg.vartheta
    g0 = m.gamma0
    k1_norm = bessel_k1(2.0 * pp.m * c**2 * vt / (hbar * g0)).real
    pref = np.sqrt(pp.m * c / (hbar * np.pi * g0 * k1_norm))
    xr = np.asarray(xs, dtype=float) - m.x0
    branch_arg = (xr - 1j * m.v0 * vt) ** 2 - c**2 * (t - 1j * vt) ** 2
    f_arg = np.sqrt(branch_arg + 0j)
    psi = pref * (vt + 1j * t) * c / f_arg * bessel_k1(pp.m * c * f_arg / hbar)
    return psi, branch_arg


def psi_closed(t: float, x, cfg: ClosedPacketConfig):
    """Closed-form psi and spectral d/dt psi at (t, x); x scalar or array."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    psi, _ = _closed_form_psi(t, xs, cfg)
    pk = closed_spectral(cfg, _quantize(float(np.max(np.abs(xs - cfg.motion.x0))) + 1.0, 10.0),
                         _quantize(abs(t), 5.0))
    _, dpsi = pk.eval_psi_dpsi(t, xs)
    if np.ndim(x) == 0:
        return psi[0], dpsi[0]
    return psi, dpsi


def closed_slice(t: float, xs: np.ndarray, cfg: ClosedPacketConfig) -> WaveSlice:
    """Sampled closed packet on a grid, with branch-continuity checking.

    The principal square root keeps Re F > 0 for all (t, x) when |v0| < c
    and vartheta > 0, so the flag is not expected to fire; if an amplitude
    discontinuity is detected the slice is recomputed spectrally.
    """
    xs = np.asarray(xs, dtype=float)
    psi, branch_arg = _closed_form_psi(t, xs, cfg)
    pk = closed_spectral(cfg, _quantize(float(np.max(np.abs(xs - cfg.motion.x0))) + 1.0, 10.0),
                         _quantize(abs(t), 5.0))
    # a genuine branch problem needs the square-root argument to cross the
    # negative real axis between neighbours, together with a visible |psi|
    # discontinuity; for |v0| < c and vartheta > 0 this cannot happen
    im = np.imag(branch_arg)
    re = np.real(branch_arg)
    crossing = (np.sign(im[:-1]) != np.sign(im[1:])) \
        & ((re[:-1] < 0.0) | (re[1:] < 0.0))
    jumps = np.abs(np.diff(psi))
    scale = float(np.max(np.abs(psi)))
    flags: tuple[str, ...] = ()
    if scale > 0 and np.any(crossing & (jumps > 0.5 * scale)):
        flags = ("branch-ambiguity: closed form replaced by quadrature",)
        psi, dpsi = pk.eval_psi_dpsi(t, xs)
    else:
        _, dpsi = pk.eval_psi_dpsi(t, xs)
    return WaveSlice(t=t, xs=xs, psi=psi, dpsi_dt=dpsi, flags=flags)


def spectrum_closed(p, cfg: ClosedPacketConfig):
    """Momentum distribution 2 pi hbar |N|^2 exp(-2 vartheta W(p)/hbar).

    Time independent; normalized so it integrates to one over p.
    """
    pp = cfg.params
    g0 = cfg.motion.gamma0
    k1 = bessel_k1(2.0 * pp.m * pp.c**2 * cfg.vartheta / (pp.hbar * g0)).real
    w = w_of_p(p, cfg.motion)
    return np.exp(-2.0 * cfg.vartheta * w / pp.hbar) / (2.0 * pp.m * pp.c * g0 * k1)


def psi_gauss_free(t: float, x, cfg: GaussianPacketConfig):
    """psi and d/dt psi of the initially Gaussian free packet at (t, x)."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    pk = gauss_spectral(cfg, _quantize(float(np.max(np.abs(xs))) + 1.0, 10.0),
                         _quantize(abs(t), 5.0))
    psi, dpsi = pk.eval_psi_dpsi(t, xs)
    if np.ndim(x) == 0:
        return psi[0], dpsi[0]
    return psi, dpsi


def gauss_slice(t: float, xs: np.ndarray, cfg: GaussianPacketConfig) -> WaveSlice:
    xs = np.asarray(xs, dtype=float)
    pk = gauss_spectral(cfg, _quantize(float(np.max(np.abs(xs))) + 1.0, 10.0),
                         _quantize(abs(t), 5.0))
    psi, dpsi = pk.eval_psi_dpsi(t, xs)
    return WaveSlice(t=t, xs=xs, psi=psi, dpsi_dt=dpsi)
