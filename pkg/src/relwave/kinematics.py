"""Physical constants and classical reference motion.

Free motion, hyperbolic motion in a uniform electric field, Lorentz factors,
proper time, and the classical actions the wavepacket phases are compared
against.  Natural units m = c = hbar = q = 1 are the default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import QuadratureSpec, integrate_complex

__all__ = [
    "PhysParams",
    "FreeMotion",
    "FieldMotion",
    "TrajectorySample",
    "free_trajectory",
    "field_trajectory",
    "action_free",
    "action_field",
    "lagrangian_free",
]


@dataclass(frozen=True)
class PhysParams:
    """Particle constants; defaults are the natural-unit convention."""

    m: float = 1.0
    c: float = 1.0
    hbar: float = 1.0
    q: float = 1.0

    def __post_init__(self):
        if self.m <= 0 or self.c <= 0 or self.hbar <= 0:
            raise ValueError("m, c, hbar must be strictly positive")
        if self.q == 0:
            raise ValueError("q must be nonzero")

    @property
    def compton_reduced(self) -> float:
        return self.hbar / (self.m * self.c)


@dataclass(frozen=True)
class FreeMotion:
    """Uniform motion at velocity v0 starting from x0."""

    v0: float
    x0: float = 0.0
    params: PhysParams = field(default_factory=PhysParams)

    def __post_init__(self):
        if abs(self.v0) >= self.params.c:
            raise ValueError(f"|v0| must be < c, got v0={self.v0}")

    @property
    def gamma0(self) -> float:
        return 1.0 / math.sqrt(1.0 - (self.v0 / self.params.c) ** 2)

    @property
    def p0(self) -> float:
        return self.params.m * self.v0 * self.gamma0

    @classmethod
    def from_gamma(cls, gamma0: float, x0: float = 0.0,
                   params: PhysParams | None = None) -> "FreeMotion":
        if gamma0 < 1.0:
            raise ValueError("gamma0 must be >= 1")
        params = params or PhysParams()
        v0 = params.c * math.sqrt(1.0 - 1.0 / gamma0**2)
        return cls(v0=v0, x0=x0, params=params)


@dataclass(frozen=True)
class FieldMotion:
    """Hyperbolic motion under a constant force (charge times field).

    The trajectory convention puts the worldline so that x(0) = c/alpha when
    p0 = 0, with alpha = force/(m c) and t0 = p0/force.
    """

    force: float
    p0: float = 0.0
    params: PhysParams = field(default_factory=PhysParams)

    def __post_init__(self):
        if self.force == 0:
            raise ValueError("force must be nonzero")

    @property
    def alpha(self) -> float:
        return self.force / (self.params.m * self.params.c)

    @property
    def t0(self) -> float:
        return self.p0 / self.force


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    x: float
    v: float
    gamma: float
    tau: float


def free_trajectory(t: float, motion: FreeMotion) -> TrajectorySample:
    g0 = motion.gamma0
    return TrajectorySample(
        t=t,
        x=motion.x0 + motion.v0 * t,
        v=motion.v0,
        gamma=g0,
        tau=t / g0,
    )


def field_trajectory(t: float, motion: FieldMotion) -> TrajectorySample:
    """Sample of the uniformly accelerated worldline at coordinate time t.

    x(t) = c sqrt(alpha^-2 + (t+t0)^2) - c sqrt(alpha^-2 + t0^2) + c/alpha,
    gamma(t) = sqrt(1 + alpha^2 (t+t0)^2); t may be negative.
    """
    c = motion.params.c
    a = motion.alpha
    t0 = motion.t0
    u = a * (t + t0)
    gamma = math.sqrt(1.0 + u * u)
    x = c * math.sqrt(a**-2 + (t + t0) ** 2) - c * math.sqrt(a**-2 + t0**2) + c / a
    v = c * u / gamma
    tau = (math.asinh(u) - math.asinh(a * t0)) / a
    return TrajectorySample(t=t, x=x, v=v, gamma=gamma, tau=tau)


def lagrangian_free(motion: FreeMotion) -> float:
    """Classical Lagrangian of free motion, -m c^2 / gamma0."""
    p = motion.params
    return -p.m * p.c**2 / motion.gamma0


def action_free(t: float, motion: FreeMotion) -> float:
    """Classical action of free motion, -(m c^2 / gamma0) t."""
    return lagrangian_free(motion) * t


def action_field(t: float, motion: FieldMotion, rel_tol: float = 1e-10) -> float:
    """Classical action under a uniform force, by quadrature.

    S(t) = -m c^2 int_0^t (1 + a^2 s (s+t0)) / sqrt(1 + a^2 (s+t0)^2) ds.
    """
    if t == 0.0:
        return 0.0
    a = motion.alpha
    t0 = motion.t0
    p = motion.params

    def integrand(s):
        u = a * (s + t0)
        return (1.0 + a * a * s * (s + t0)) / np.sqrt(1.0 + u * u)

    lo, hi = (0.0, t) if t > 0 else (t, 0.0)
    spec = QuadratureSpec(lower=lo, upper=hi, node_count=129,
                          refinement="doubling", rel_tol=rel_tol,
                          max_node_count=1 << 19)
    res = integrate_complex(integrand, spec)
    if not res.converged:
        raise ArithmeticError(
            f"action_field quadrature did not converge (error {res.error:.2e})"
        )
    sign = 1.0 if t > 0 else -1.0
    return -p.m * p.c**2 * sign * res.value.real
