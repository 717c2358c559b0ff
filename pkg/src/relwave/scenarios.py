"""Named scenario runner: builds packets, sweeps grids, writes CSV/JSON.

Each builtin scenario reproduces the data behind one figure of the study at
desk scale.  Output files use fixed schemas:

    density  -> t,x,rho,re_psi,im_psi
    metrics  -> t,G_psi,sigma_psi,G_rho,sigma_rho,imag_residual
    spectrum -> t,p,rho_tilde
    phase    -> t,phi,s_cl_over_hbar,offset
    widths   -> t,sigma_rho,sigma_psi

Floats are written with 17 significant digits; repeated runs of the same
configuration produce byte-identical files.
"""

from __future__ import annotations

import configparser
import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field, asdict
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (WaveSlice, charge_density, gauss_similarity_psi,
                       gauss_similarity_rho, phase_trace)
from .field_packets import FieldPacketConfig, field_mode_basis, field_slice
from .free_packets import (ClosedPacketConfig, GaussianPacketConfig,
                           closed_slice, gauss_slice, gauss_spectral,
                           spectrum_closed, psi_closed)
from .kinematics import (FreeMotion, action_field, action_free,
                         field_trajectory, free_trajectory)

__all__ = [
    "Scenario",
    "RunManifest",
    "ScenarioError",
    "builtin_scenarios",
    "list_scenarios",
    "load_config",
    "run",
]

_FAMILIES = ("closed-free", "gauss-free", "uniform-field")
_OUTPUTS = ("density", "metrics", "spectrum", "phase", "widths")
_NORMALIZATIONS = ("unit-charge", "unit-norm", "peak-normalized")


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    """One configuration-driven sweep.

    ``cases`` lists the per-curve physical parameters: for closed-free each
    case is {"vartheta": ..., "v0": ...}; for gauss-free {"sigma0", "gamma0"};
    for uniform-field {"sigma0", "gamma0", "force"}.  x0 may be given per
    case.  ``t_list`` may contain negative times.
    """

    name: str
    family: str
    cases: tuple
    t_list: tuple
    x_min: float = -30.0
    x_max: float = 30.0
    x_count: int = 2001
    outputs: tuple = ("density",)
    normalization: str = "unit-charge"
    description: str = ""
    phase_t_max: float = 50.0
    phase_dt: float = 0.25
    p_min: float = -8.0
    p_max: float = 8.0
    p_count: int = 1601

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ScenarioError(f"unknown family {self.family!r}")
        if len(self.t_list) == 0:
            raise ScenarioError("t_list must be non-empty")
        if self.x_count < 64:
            raise ScenarioError("x_count must be >= 64")
        if self.normalization not in _NORMALIZATIONS:
            raise ScenarioError(f"unknown normalization {self.normalization!r}")
        for out in self.outputs:
            if out not in _OUTPUTS:
                raise ScenarioError(f"unknown output kind {out!r}")
        if not self.cases:
            raise ScenarioError("scenario needs at least one case")


@dataclass
class RunManifest:
    scenario: dict
    tool_version: str
    quadrature_settings: dict
    wall_time_s: float = 0.0
    flags: list = dc_field(default_factory=list)
    outputs: dict = dc_field(default_factory=dict)  # filename -> sha256

    def to_json(self) -> str:
        return json.dumps(
            {
                "scenario": self.scenario,
                "tool_version": self.tool_version,
                "quadrature_settings": self.quadrature_settings,
                "wall_time_s": round(self.wall_time_s, 3),
                "flags": self.flags,
                "outputs": self.outputs,
            },
            indent=2,
            sort_keys=True,
        )


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_csv(path: Path, header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    path.write_text(text)
    return hashlib.sha256(text.encode()).hexdigest()


# ---------------------------------------------------------------------------
# case helpers
# ---------------------------------------------------------------------------

def _case_label(family: str, case: dict) -> str:
    family = case.get("family", family)
    if family == "closed-free":
        return f"ctheta{case['vartheta']:g}"
    if family == "gauss-free":
        return f"sigma{case['sigma0']:g}_gamma{case['gamma0']:g}"
    return f"sigma{case['sigma0']:g}_gamma{case['gamma0']:g}_F{case['force']:g}"


def _slice_for(scn: Scenario, case: dict, t: float, xs: np.ndarray) -> WaveSlice:
    if scn.family == "closed-free":
        cfg = ClosedPacketConfig(vartheta=case["vartheta"],
                                 motion=FreeMotion(v0=case.get("v0", 0.0),
                                                   x0=case.get("x0", 0.0)))
        return closed_slice(t, xs, cfg)
    if scn.family == "gauss-free":
        cfg = GaussianPacketConfig.from_gamma(case["sigma0"], case["gamma0"],
                                              x0=case.get("x0", 0.0))
        return gauss_slice(t, xs, cfg)
    cfg = FieldPacketConfig.from_gamma(case["sigma0"], case["gamma0"],
                                       case["force"], x0=case.get("x0"))
    basis = field_mode_basis(cfg, max(abs(xs[0]), abs(xs[-1])) + 1.0,
                             float(np.max(np.abs(scn.t_list))))
    return field_slice(t, xs, cfg, basis=basis)


def _classical(family: str, case: dict, t: float):
    """Reference (x_bar, p_bar) for the similarity metrics."""
    if family == "closed-free":
        motion = FreeMotion(v0=case.get("v0", 0.0), x0=case.get("x0", 0.0))
        s = free_trajectory(t, motion)
    elif family == "gauss-free":
        motion = FreeMotion.from_gamma(case["gamma0"], x0=case.get("x0", 0.0))
        s = free_trajectory(t, motion)
    else:
        cfg = FieldPacketConfig.from_gamma(case["sigma0"], case["gamma0"], case["force"],
                                           x0=case.get("x0"))
        s = field_trajectory(t, cfg.motion)
        # trajectory convention already starts at x0 = c/alpha
    return s.x, s.gamma * s.v  # p_bar = m v gamma (natural units m=1)


# ---------------------------------------------------------------------------
# output generators
# ---------------------------------------------------------------------------

def _gen_density(scn: Scenario, case: dict, xs: np.ndarray, flags: list):
    rows = []
    for t in scn.t_list:
        sl = _slice_for(scn, case, t, xs)
        flags.extend(f"t={t}: {f}" for f in sl.flags)
        dens = charge_density(sl)
        rho = dens.rho
        if scn.normalization == "unit-charge":
            rho = rho / dens.total_charge()
        elif scn.normalization == "peak-normalized":
            rho = rho / np.max(np.abs(rho))
        rows.extend(zip([t] * len(xs), xs, rho, sl.psi.real, sl.psi.imag))
    return "t,x,rho,re_psi,im_psi", rows


def _gen_metrics(scn: Scenario, case: dict, xs: np.ndarray, flags: list):
    rows = []
    for t in scn.t_list:
        sl = _slice_for(scn, case, t, xs)
        flags.extend(f"t={t}: {f}" for f in sl.flags)
        dens = charge_density(sl)
        x_bar, p_bar = _classical(scn.family, case, t)
        fit_psi = gauss_similarity_psi(sl, x_bar, p_bar)
        fit_rho = gauss_similarity_rho(dens, x_bar)
        rows.append((t, fit_psi.score, fit_psi.sigma_star,
                     fit_rho.score, fit_rho.sigma_star, fit_rho.imag_residual))
    return "t,G_psi,sigma_psi,G_rho,sigma_rho,imag_residual", rows


def _gen_widths(scn: Scenario, case: dict, xs: np.ndarray, flags: list):
    header, rows = _gen_metrics(scn, case, xs, flags)
    slim = [(r[0], r[4], r[2]) for r in rows]
    return "t,sigma_rho,sigma_psi", slim


def _gen_spectrum(scn: Scenario, case: dict, xs: np.ndarray, flags: list):
    ps = np.linspace(scn.p_min, scn.p_max, scn.p_count)
    rows = []
    if scn.family == "closed-free":
        cfg = ClosedPacketConfig(vartheta=case["vartheta"],
                                 motion=FreeMotion(v0=case.get("v0", 0.0)))
        vals = spectrum_closed(ps, cfg)
        for t in scn.t_list:  # time independent; emitted per requested t
            rows.extend(_spec_rows(t, ps, vals, scn.normalization))
    elif scn.family == "gauss-free":
        cfg = GaussianPacketConfig.from_gamma(case["sigma0"], case["gamma0"])
        vals = np.exp(-cfg.sigma0**2 * (ps - cfg.p0) ** 2) \
            * (cfg.sigma0 / (2.0 * np.pi**1.5))
        for t in scn.t_list:
            rows.extend(_spec_rows(t, ps, vals, scn.normalization))
    else:
        cfg = FieldPacketConfig.from_gamma(case["sigma0"], case["gamma0"],
                                           case["force"], x0=case.get("x0"))
        basis = field_mode_basis(cfg, scn.x_max + 1.0,
                                 float(np.max(np.abs(scn.t_list))))
        peak0 = None
        for t in scn.t_list:
            psi_p, _ = basis.modes(t)
            vals = np.interp(ps, basis.p, np.abs(psi_p) ** 2, left=0.0, right=0.0)
            if peak0 is None:
                psi_p0, _ = basis.modes(0.0)
                peak0 = float(np.max(np.abs(psi_p0) ** 2))
            if scn.normalization == "peak-normalized":
                rows.extend(zip([t] * len(ps), ps, vals / peak0))
            else:
                rows.extend(zip([t] * len(ps), ps, vals))
    return "t,p,rho_tilde", rows


def _spec_rows(t, ps, vals, normalization):
    out = vals
    if normalization == "peak-normalized":
        out = vals / np.max(vals)
    return list(zip([t] * len(ps), ps, out))


def _gen_phase(scn: Scenario, case: dict, xs: np.ndarray, flags: list):
    family = case.get("family", scn.family)
    t_max = case.get("t_max", scn.phase_t_max)
    ts = np.arange(0.0, t_max + 0.5 * scn.phase_dt, scn.phase_dt)
    if family == "closed-free":
        motion = FreeMotion(v0=case.get("v0", 0.0))
        cfg = ClosedPacketConfig(vartheta=case["vartheta"], motion=motion)
        trace = phase_trace(lambda t, x: psi_closed(t, x, cfg)[0],
                            lambda t: free_trajectory(t, motion).x,
                            lambda t: action_free(t, motion), ts)
    elif family == "gauss-free":
        cfg = GaussianPacketConfig.from_gamma(case["sigma0"], case["gamma0"])
        motion = FreeMotion.from_gamma(case["gamma0"])
        pk = gauss_spectral(cfg, motion.v0 * t_max + 5.0, t_max)
        trace = phase_trace(lambda t, x: pk.eval_psi_dpsi(t, np.array([x]))[0][0],
                            lambda t: free_trajectory(t, motion).x,
                            lambda t: action_free(t, motion), ts)
    else:
        cfg = FieldPacketConfig.from_gamma(case["sigma0"], case["gamma0"],
                                           case["force"], x0=case.get("x0"))
        basis = field_mode_basis(cfg, scn.x_max + 1.0, t_max)
        hbar = cfg.params.hbar

        def ev(t, x):
            psi_p, _ = basis.modes(t)
            return complex(np.sum(basis.weights * psi_p * np.exp(1j * basis.p * x / hbar)))

        trace = phase_trace(ev, lambda t: field_trajectory(t, cfg.motion).x,
                            lambda t: action_field(t, cfg.motion), ts)
    rows = list(zip(trace.ts, trace.phi, trace.s_cl_over_hbar, trace.offset))
    return "t,phi,s_cl_over_hbar,offset", rows


_GENERATORS = {
    "density": _gen_density,
    "metrics": _gen_metrics,
    "widths": _gen_widths,
    "spectrum": _gen_spectrum,
    "phase": _gen_phase,
}


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------

def run(scenario: Scenario, out_dir: str | Path = "out", threads: int = 1) -> RunManifest:
    """Execute a scenario, writing one CSV per (case, output) plus a manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    started = time.time()
    manifest = RunManifest(
        scenario=asdict(scenario),
        tool_version=__version__,
        quadrature_settings={
            "oversample": 3.0,
            "tail_eps": 1e-12,
            "momentum_window_factor": 12.0,
        },
    )
    xs = np.linspace(scenario.x_min, scenario.x_max, scenario.x_count)
    jobs = [(case, kind) for case in scenario.cases for kind in scenario.outputs]

    def _one(job):
        case, kind = job
        flags: list = []
        header, rows = _GENERATORS[kind](scenario, dict(case), xs, flags)
        return case, kind, header, rows, flags

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_one, jobs))
    else:
        results = [_one(j) for j in jobs]

    for case, kind, header, rows, flags in results:
        fname = f"{scenario.name}_{kind}_{_case_label(scenario.family, dict(case))}.csv"
        digest = _write_csv(out / fname, header, rows)
        manifest.outputs[fname] = digest
        manifest.flags.extend(f"{fname}: {f}" for f in flags)

    manifest.wall_time_s = time.time() - started
    (out / f"{scenario.name}_manifest.json").write_text(manifest.to_json())
    return manifest


# ---------------------------------------------------------------------------
# builtin catalog
# ---------------------------------------------------------------------------

def _cases_closed(*varthetas, v0=0.25):
    return tuple({"vartheta": vt, "v0": v0} for vt in varthetas)


_GAUSS_FOUR = ({"sigma0": 3.0, "gamma0": 1.0}, {"sigma0": 3.0, "gamma0": 10.0},
               {"sigma0": 0.3, "gamma0": 10.0}, {"sigma0": 0.3, "gamma0": 1.0})

_FIELD_THREE = ({"sigma0": 3.0, "gamma0": 1.0, "force": 0.1},
                {"sigma0": 0.3, "gamma0": 1.0, "force": 0.1},
                {"sigma0": 0.3, "gamma0": 10.0, "force": 0.1})


def builtin_scenarios() -> dict[str, Scenario]:
    cat = {
        "fig1": Scenario(
            name="fig1", family="closed-free",
            cases=_cases_closed(100.0, 10.0, 1.0, 0.1),
            t_list=(0.0, 10.0, 20.0), x_min=-30.0, x_max=30.0, x_count=2001,
            outputs=("density",), normalization="unit-charge",
            description="Closed-form packets at v0=c/4: charge density at t=0,10,20 "
                        "for c*vartheta=100,10,1,0.1 (unit total charge)."),
        "fig2": Scenario(
            name="fig2", family="closed-free",
            cases=_cases_closed(100.0, 10.0, 1.0, 0.1),
            t_list=tuple(np.arange(0.0, 20.5, 2.0)), x_min=-35.0, x_max=40.0,
            x_count=3001, outputs=("metrics", "widths"), normalization="unit-norm",
            description="Gaussian-similarity scores and best-fit half-widths vs t "
                        "for the closed-form packets."),
        "fig3": Scenario(
            name="fig3", family="closed-free",
            cases=_cases_closed(100.0, 10.0, 1.0, 0.1),
            t_list=(0.0,), outputs=("spectrum",), normalization="unit-norm",
            p_min=-6.0, p_max=6.0, p_count=2401,
            description="Momentum distributions of the closed-form packets "
                        "(time independent)."),
        "fig4": Scenario(
            name="fig4", family="gauss-free",
            cases=_GAUSS_FOUR,
            t_list=(0.0, 4.0, 8.0, 12.0, 16.0), x_min=-30.0, x_max=46.0,
            x_count=3001, outputs=("density",), normalization="unit-charge",
            description="Initially Gaussian free packets, four (sigma0, gamma0) "
                        "cases: density at t=0..16."),
        "fig5": Scenario(
            name="fig5", family="gauss-free",
            cases=_GAUSS_FOUR,
            t_list=tuple(np.arange(0.0, 16.5, 2.0)), x_min=-30.0, x_max=46.0,
            x_count=3001, outputs=("metrics", "widths"), normalization="unit-norm",
            description="Similarity scores and best-fit widths for the initially "
                        "Gaussian free packets."),
        "fig6": Scenario(
            name="fig6", family="closed-free",
            cases=({"vartheta": 0.3, "v0": 0.99498743710662},
                   {"vartheta": 96.0, "v0": 0.99498743710662},
                   {"vartheta": 10.0, "v0": 0.0}),
            t_list=(0.0,), outputs=("spectrum",), normalization="peak-normalized",
            p_min=-3.0, p_max=22.0, p_count=2501,
            description="Peak-normalized momentum spectra comparing closed-form "
                        "packets against Gaussian spectra (gamma0=10 and v0=0)."),
        "fig7": Scenario(
            name="fig7", family="uniform-field",
            cases=_FIELD_THREE,
            t_list=(-12.0, -8.0, -4.0, 0.0, 4.0, 8.0, 12.0, 16.0),
            x_min=-40.0, x_max=70.0, x_count=2201,
            outputs=("density", "spectrum"), normalization="peak-normalized",
            p_min=-25.0, p_max=35.0, p_count=2401,
            description="Uniform-field packets (F=0.1): density and mode spectra, "
                        "including backward evolution."),
        "fig8": Scenario(
            name="fig8", family="uniform-field",
            cases=_FIELD_THREE,
            t_list=tuple(np.arange(0.0, 40.5, 4.0)),
            x_min=-40.0, x_max=70.0, x_count=2201,
            outputs=("metrics", "widths"), normalization="unit-norm",
            description="Similarity scores and best-fit widths for the "
                        "uniform-field packets over t=0..40."),
        "fig9": Scenario(
            name="fig9", family="closed-free",
            cases=({"family": "closed-free", "vartheta": 100.0, "v0": 0.25},
                   {"family": "gauss-free", "sigma0": 0.3, "gamma0": 10.0},
                   {"family": "uniform-field", "sigma0": 0.3, "gamma0": 10.0,
                    "force": 0.1, "t_max": 40.0}),
            t_list=(0.0,), outputs=("phase",), normalization="unit-norm",
            phase_t_max=50.0, phase_dt=0.25, x_max=70.0,
            description="Phase along the classical worldline vs classical action "
                        "for the closed-form, Gaussian, and uniform-field packets."),
    }
    return cat


_ALIASES = {
    "fig7-lowerleft": ("fig7", ("spectrum",)),
    "fig7-upperleft": ("fig7", ("density",)),
}


def resolve_scenario(name: str) -> Scenario:
    cat = builtin_scenarios()
    if name in cat:
        return cat[name]
    if name in _ALIASES:
        base, outputs = _ALIASES[name]
        scn = cat[base]
        return Scenario(**{**asdict(scn), "name": name, "outputs": outputs,
                           "cases": scn.cases, "t_list": scn.t_list})
    raise ScenarioError(
        f"scenario {name!r} not found; available: "
        + ", ".join(sorted(list(cat) + list(_ALIASES)))
    )


def list_scenarios() -> list[tuple[str, str]]:
    """(name, description) pairs for the builtin catalog."""
    return [(name, scn.description) for name, scn in builtin_scenarios().items()]


# ---------------------------------------------------------------------------
# config files
# ---------------------------------------------------------------------------

_FLOAT_KEYS = {"x_min", "x_max", "p_min", "p_max", "phase_t_max", "phase_dt"}
_INT_KEYS = {"x_count", "p_count"}


def load_config(path: str | Path) -> list[Scenario]:
    """Parse an INI-style config, one section per scenario.

    Keys: family, outputs (comma list), t_list (comma list), cases (semicolon
    separated groups of comma-separated key=value pairs), plus the grid and
    normalization fields of Scenario.
    """
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ScenarioError(f"config file {path!r} not found or empty")
    scenarios = []
    for section in parser.sections():
        raw = dict(parser[section])
        try:
            family = raw.pop("family")
            t_list = tuple(float(v) for v in raw.pop("t_list").split(","))
            cases_raw = raw.pop("cases")
            cases = []
            for group in cases_raw.split(";"):
                case = {}
                for item in group.split(","):
                    key, _, val = item.partition("=")
                    case[key.strip()] = float(val)
                cases.append(case)
            kwargs = {"name": section, "family": family,
                      "cases": tuple(cases), "t_list": t_list}
            if "outputs" in raw:
                kwargs["outputs"] = tuple(v.strip() for v in raw.pop("outputs").split(","))
            if "normalization" in raw:
                kwargs["normalization"] = raw.pop("normalization").strip()
            for key, val in raw.items():
                if key in _FLOAT_KEYS:
                    kwargs[key] = float(val)
                elif key in _INT_KEYS:
                    kwargs[key] = int(val)
                else:
                    raise ScenarioError(f"[{section}] unknown key {key!r}")
            scenarios.append(Scenario(**kwargs))
        except ScenarioError:
            raise
        except Exception as exc:
            raise ScenarioError(f"[{section}] {exc}") from exc
    if not scenarios:
        raise ScenarioError(f"no scenario sections in {path!r}")
    return scenarios
