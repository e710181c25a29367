"""Problem abstraction for smooth difference-of-convex minimization.

A problem ``min f(x)`` with ``f = g - h`` is described by value and
gradient oracles for the two convex parts, together with the constants
the convergence checks need:

* ``mu``, a strong-convexity constant for ``g`` in the convention

      g(y) >= g(x) + <grad g(x), y - x> + mu * ||y - x||^2,

  note the absence of the customary 1/2 factor, so ``g(x) = x^2/2``
  has ``mu = 1/2``;
* ``lipschitz_h``, a Lipschitz constant for ``grad h``.

Oracles are pure functions of the point.  Instances are immutable
after construction and safe to share between concurrent runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = [
    "DcError",
    "OutOfDomainError",
    "Interval",
    "DcInstance",
    "FiniteDiffReport",
    "as_point",
    "f_value",
    "f_grad",
    "finite_diff_check",
    "make_quadratic_dc",
    "strong_convexity_margin",
    "lipschitz_excess",
]

ValueOracle = Callable[[np.ndarray], float]
GradOracle = Callable[[np.ndarray], np.ndarray]


class DcError(Exception):
    """Base class for errors raised by this package."""


class OutOfDomainError(DcError):
    """A point lies outside the region where an instance is defined."""


def as_point(x, dim: Optional[int] = None) -> np.ndarray:
    """Coerce ``x`` to a finite 1-D float64 vector.

    Scalars become vectors of length one.  Non-finite coordinates are
    rejected, as is a dimension mismatch when ``dim`` is given.
    """
    p = np.atleast_1d(np.asarray(x, dtype=float))
    if p.ndim != 1:
        raise ValueError(f"point must be one-dimensional, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError(f"point has non-finite coordinates: {p!r}")
    if dim is not None and p.size != dim:
        raise ValueError(f"point has dimension {p.size}, expected {dim}")
    return p


@dataclass(frozen=True)
class Interval:
    """Closed interval restriction, applied to every coordinate."""

    lower: float = -math.inf
    upper: float = math.inf

    def contains(self, x: np.ndarray, margin: float = 0.0) -> bool:
        return bool(np.all(x >= self.lower + margin)
                    and np.all(x <= self.upper - margin))


@dataclass(frozen=True)
class DcInstance:
    """Oracles and constants describing one problem ``min g(x) - h(x)``.

    Optional registrations used by the solvers when present:

    ``lipschitz_g``
        Lipschitz constant of ``grad g``; enables the fixed-step inner
        solve and the default steepest-descent step size.
    ``g_grad_inverse``
        Closed-form solve of ``grad g(x) = t`` for ``x``; makes the
        inner step exact to rounding.
    ``f_grad_fused``
        Single oracle for ``grad g(x) - grad h(x)``.  Matters when the
        two gradients are large and nearly equal, where forming them
        separately would lose the difference to cancellation.
    ``domain``
        Explicit interval on which the oracles are defined.  ``None``
        means all of R^n.
    """

    g_value: ValueOracle
    g_grad: GradOracle
    h_value: ValueOracle
    h_grad: GradOracle
    mu: float
    lipschitz_h: float
    f_low: Optional[float] = None
    dim: int = 1
    domain: Optional[Interval] = None
    lipschitz_g: Optional[float] = None
    g_grad_inverse: Optional[GradOracle] = None
    f_grad_fused: Optional[GradOracle] = None
    label: str = ""

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if not self.lipschitz_h > 0:
            raise ValueError(f"lipschitz_h must be positive, got {self.lipschitz_h}")
        if self.dim < 1:
            raise ValueError(f"dim must be at least 1, got {self.dim}")

    def in_domain(self, x: np.ndarray, margin: float = 0.0) -> bool:
        return self.domain is None or self.domain.contains(x, margin)


def _require_in_domain(inst: DcInstance, x: np.ndarray) -> None:
    if not inst.in_domain(x):
        raise OutOfDomainError(
            f"point {x!r} outside domain {inst.domain} of instance {inst.label or inst!r}")


def f_value(inst: DcInstance, x) -> float:
    """Objective value ``g(x) - h(x)``.

    Raises
    ------
    OutOfDomainError
        If ``x`` lies outside the instance domain.
    """
    x = as_point(x, inst.dim)
    _require_in_domain(inst, x)
    return float(inst.g_value(x)) - float(inst.h_value(x))


def f_grad(inst: DcInstance, x) -> np.ndarray:
    """Objective gradient ``grad g(x) - grad h(x)``, componentwise.

    Uses the instance's fused oracle when one is registered, which
    evaluates the same difference without forming the two large terms.
    """
    x = as_point(x, inst.dim)
    _require_in_domain(inst, x)
    if inst.f_grad_fused is not None:
        return np.asarray(inst.f_grad_fused(x), dtype=float)
    return (np.asarray(inst.g_grad(x), dtype=float)
            - np.asarray(inst.h_grad(x), dtype=float))


@dataclass(frozen=True)
class FiniteDiffReport:
    max_rel_error: float
    rel_errors: np.ndarray
    analytic: np.ndarray
    numeric: np.ndarray


def finite_diff_check(inst: DcInstance, x, step: float) -> FiniteDiffReport:
    """Compare the analytic gradient against central finite differences.

    The relative error of coordinate ``i`` is
    ``|numeric_i - analytic_i| / max(1, |analytic_i|)``.

    Parameters
    ----------
    x : point interior to the domain with margin at least ``step``.
    step : positive difference step.
    """
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    x = as_point(x, inst.dim)
    if not inst.in_domain(x, margin=step):
        raise OutOfDomainError(
            f"point {x!r} not interior to {inst.domain} with margin {step}")
    analytic = f_grad(inst, x)
    numeric = np.empty_like(analytic)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = step
        numeric[i] = (f_value(inst, x + e) - f_value(inst, x - e)) / (2.0 * step)
    rel = np.abs(numeric - analytic) / np.maximum(1.0, np.abs(analytic))
    return FiniteDiffReport(float(rel.max()), rel, analytic, numeric)


def make_quadratic_dc(b) -> DcInstance:
    """Smoke-test instance ``f(x) = ||x||^2/2 - <b, x>``.

    Split as ``g(x) = ||x||^2`` and ``h(x) = ||x||^2/2 + <b, x>``, so
    ``mu = 1``, ``lipschitz_h = 1``, and the minimum is ``-||b||^2/2``
    at ``x = b``.
    """
    b = as_point(b)
    f_low = -0.5 * float(np.dot(b, b))
    return DcInstance(
        g_value=lambda x: float(np.dot(x, x)),
        g_grad=lambda x: 2.0 * x,
        h_value=lambda x: 0.5 * float(np.dot(x, x)) + float(np.dot(b, x)),
        h_grad=lambda x: x + b,
        mu=1.0,
        lipschitz_h=1.0,
        f_low=f_low,
        dim=b.size,
        lipschitz_g=2.0,
        g_grad_inverse=lambda t: 0.5 * t,
        label=f"quadratic_dc(b={b.tolist()})",
    )


def strong_convexity_margin(inst: DcInstance, x, y) -> float:
    """``g(y) - g(x) - <grad g(x), y - x> - mu ||y - x||^2``.

    Nonnegative (up to rounding) whenever ``g`` really is strongly
    convex with the instance's ``mu``.
    """
    x = as_point(x, inst.dim)
    y = as_point(y, inst.dim)
    d = y - x
    return (float(inst.g_value(y)) - float(inst.g_value(x))
            - float(np.dot(np.asarray(inst.g_grad(x), dtype=float), d))
            - inst.mu * float(np.dot(d, d)))


def lipschitz_excess(inst: DcInstance, x, y) -> float:
    """``||grad h(x) - grad h(y)|| - lipschitz_h * ||x - y||``.

    Nonpositive (up to rounding) whenever ``grad h`` really is
    Lipschitz with the instance's constant.
    """
    x = as_point(x, inst.dim)
    y = as_point(y, inst.dim)
    dg = (np.asarray(inst.h_grad(x), dtype=float)
          - np.asarray(inst.h_grad(y), dtype=float))
    d = x - y
    return (math.sqrt(float(np.dot(dg, dg)))
            - inst.lipschitz_h * math.sqrt(float(np.dot(d, d))))
