"""Fixed-step steepest descent on ``f``, ignoring the convex split.

Used to compare iteration counts against the splitting iteration on
the same instances.  Records the same history schema, so every check
in :mod:`dclab.rates` that only needs ``f`` and gradient norms applies
unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import DcInstance, OutOfDomainError, as_point
from .solver import IterateRecord, TerminationReason, Trajectory

__all__ = ["GdConfig", "run_steepest_descent"]


@dataclass(frozen=True)
class GdConfig:
    """Step size, tolerance, and cap for the descent baseline.

    ``step_size=None`` selects ``1/(lipschitz_g + lipschitz_h)`` from
    the instance's registered constants.
    """

    epsilon: float
    max_iter: int
    step_size: Optional[float] = None

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")
        if self.step_size is not None and not self.step_size > 0:
            raise ValueError(f"step_size must be positive, got {self.step_size}")


def _resolve_step(inst: DcInstance, cfg: GdConfig) -> float:
    if cfg.step_size is not None:
        return cfg.step_size
    if inst.lipschitz_g is None:
        raise ValueError(
            "no step size given and the instance registers no gradient "
            "Lipschitz constant for g")
    return 1.0 / (inst.lipschitz_g + inst.lipschitz_h)


def run_steepest_descent(inst: DcInstance, x0, cfg: GdConfig) -> Trajectory:
    """Iterate ``x <- x - step * grad f(x)`` from ``x0``.

    Termination mirrors the splitting solver: gradient norm at or below
    ``cfg.epsilon`` (tested at every iterate including the start), the
    iteration cap, or the next iterate leaving the domain.
    """
    x = as_point(x0, inst.dim)
    if not inst.in_domain(x):
        raise OutOfDomainError(f"starting point {x!r} outside instance domain")
    step = _resolve_step(inst, cfg)

    records = []
    reason = TerminationReason.max_iter
    fused = inst.f_grad_fused
    for k in range(cfg.max_iter + 1):
        gv = float(inst.g_value(x))
        hv = float(inst.h_value(x))
        if fused is not None:
            grad = np.asarray(fused(x), dtype=float)
        else:
            grad = (np.asarray(inst.g_grad(x), dtype=float)
                    - np.asarray(inst.h_grad(x), dtype=float))
        gn = math.sqrt(float(np.dot(grad, grad)))
        rec = IterateRecord(k=k, x=x, f=gv - hv, g=gv, h=hv, grad_f_norm=gn)
        records.append(rec)
        if gn <= cfg.epsilon:
            reason = TerminationReason.epsilon_reached
            break
        if k == cfg.max_iter:
            reason = TerminationReason.max_iter
            break
        x_next = x - step * grad
        if not inst.in_domain(x_next):
            reason = TerminationReason.domain_exhausted
            break
        d = x_next - x
        rec.step_norm = math.sqrt(float(np.dot(d, d)))
        x = x_next
    return Trajectory(records=records, terminated_by=reason)
