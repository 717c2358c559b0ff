"""Deterministic quadrature for complex-valued integrands.

Single integration authority for the package: composite trapezoid after an
optional change of variable, with explicit truncation of infinite domains
and optional node-doubling refinement.  Summation uses numpy's pairwise
reduction on arrays in a fixed order, so repeated runs are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "QuadratureError",
    "NonFiniteIntegrandError",
    "QuadratureSpec",
    "QuadResult",
    "integrate_complex",
    "momentum_grid",
    "trapezoid_weights",
]

_SUBSTITUTIONS = ("identity", "sinh", "rescale")
_REFINEMENTS = ("none", "doubling")


class QuadratureError(Exception):
    pass


class NonFiniteIntegrandError(QuadratureError):
    """Raised when the integrand returns a non-finite value at a node."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Description of one quadrature rule.

    ``lower``/``upper`` may be ``-inf``/``+inf``; infinite endpoints require a
    non-identity substitution (``sinh``) together with ``mapped_halfwidth``,
    the explicit truncation half-width in the mapped coordinate.  The caller
    owns the tail bound justifying the truncation.  ``rescale`` maps a finite
    interval to [-1, 1] before applying the trapezoid rule.
    """

    lower: float
    upper: float
    node_count: int = 129
    substitution: str = "identity"
    mapped_halfwidth: float | None = None
    refinement: str = "none"
    abs_tol: float = 0.0
    rel_tol: float = 1e-12
    max_node_count: int = 1 << 21

    def __post_init__(self):
        if self.node_count < 2:
            raise QuadratureError(f"node_count must be >= 2, got {self.node_count}")
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise QuadratureError("tolerances must be non-negative")
        if self.substitution not in _SUBSTITUTIONS:
            raise QuadratureError(f"unknown substitution {self.substitution!r}")
        if self.refinement not in _REFINEMENTS:
            raise QuadratureError(f"unknown refinement {self.refinement!r}")
        infinite = np.isinf(self.lower) or np.isinf(self.upper)
        if infinite and self.substitution == "identity" and self.mapped_halfwidth is None:
            raise QuadratureError(
                "infinite domain requires a substitution or an explicit "
                "mapped_halfwidth truncation"
            )
        if infinite and self.substitution == "sinh" and self.mapped_halfwidth is None:
            raise QuadratureError("sinh substitution requires mapped_halfwidth")
        if not infinite and self.lower >= self.upper:
            raise QuadratureError("need lower < upper")
        if self.max_node_count < self.node_count:
            raise QuadratureError("max_node_count < node_count")


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    converged: bool
    nodes_used: int


def trapezoid_weights(nodes: np.ndarray) -> np.ndarray:
    """Composite trapezoid weights for an ordered 1-d node array."""
    w = np.zeros(len(nodes))
    d = np.diff(nodes)
    w[:-1] += 0.5 * d
    w[1:] += 0.5 * d
    return w


def _mapped_nodes(spec: QuadratureSpec, n: int):
    """Return (nodes in original coordinate, weights incl. Jacobian)."""
    if spec.substitution == "sinh":
        # x = sinh(u); covers (-inf, inf) or [0, inf) truncated at u = +-T
        t = spec.mapped_halfwidth
        lo = 0.0 if spec.lower == 0.0 else -t
        u = np.linspace(lo, t, n)
        x = np.sinh(u)
        jac = np.cosh(u)
        w = trapezoid_weights(u) * jac
        return x, w
    if spec.substitution == "rescale":
        u = np.linspace(-1.0, 1.0, n)
        half = 0.5 * (spec.upper - spec.lower)
        x = spec.lower + (u + 1.0) * half
        w = trapezoid_weights(u) * half
        return x, w
    # identity; infinite endpoints are truncated at +-mapped_halfwidth
    lo, hi = spec.lower, spec.upper
    if np.isinf(lo):
        lo = -spec.mapped_halfwidth
    if np.isinf(hi):
        hi = spec.mapped_halfwidth
    x = np.linspace(lo, hi, n)
    return x, trapezoid_weights(x)


def _evaluate(f, spec: QuadratureSpec, n: int) -> complex:
    x, w = _mapped_nodes(spec, n)
    y = np.asarray(f(x), dtype=complex)
    if y.shape != x.shape:
        raise QuadratureError("integrand must be vectorized: f(x) shaped like x")
    bad = ~np.isfinite(y)
    if np.any(bad):
        raise NonFiniteIntegrandError(
            f"integrand non-finite at x={x[bad][0]!r} (value {y[bad][0]!r})"
        )
    return complex(np.sum(w * y))


def integrate_complex(f, spec: QuadratureSpec) -> QuadResult:
    """Integrate a vectorized complex integrand under the given spec.

    With ``refinement='doubling'`` the node count is doubled (2n-1) until the
    difference between the last two levels meets abs_tol/rel_tol or the node
    cap is reached; the result then carries ``converged=False`` rather than
    being silently accepted.
    """
    n = spec.node_count
    value = _evaluate(f, spec, n)
    if spec.refinement == "none":
        return QuadResult(value, 0.0, True, n)
    prev = value
    while True:
        n = 2 * n - 1
        if n > spec.max_node_count:
            err = abs(value - prev)
            return QuadResult(value, err, False, (n + 1) // 2)
        prev = value
        value = _evaluate(f, spec, n)
        err = abs(value - prev)
        if err <= max(spec.abs_tol, spec.rel_tol * abs(value)):
            return QuadResult(value, err, True, n)


def momentum_grid(p_center: float, half_width: float, node_count: int):
    """Symmetric uniform nodes about ``p_center`` with trapezoid weights.

    Weights sum to the interval length ``2 * half_width``.
    """
    if half_width <= 0:
        raise QuadratureError("half_width must be positive")
    if node_count < 2:
        raise QuadratureError("node_count must be >= 2")
    nodes = np.linspace(p_center - half_width, p_center + half_width, node_count)
    return nodes, trapezoid_weights(nodes)
