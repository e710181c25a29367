"""Convex-splitting iteration with exact or iterative inner solves.

Each outer step solves ``grad g(x) = grad h(x_k)`` for the next
iterate, which is the minimizer of the convex model
``g(x) - <grad h(x_k), x - x_k>``.  Because ``h`` is convex this model
overestimates ``f`` up to a constant, so the objective never increases
along the run.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional

import numpy as np

from .core import DcError, DcInstance, OutOfDomainError, as_point

__all__ = [
    "SubproblemError",
    "TerminationReason",
    "SolverConfig",
    "IterateRecord",
    "Trajectory",
    "solve_subproblem",
    "dca_step",
    "run_dca",
]

class SubproblemError(DcError):
    """The inner gradient solve could not reach its tolerance.

    When raised from a run, the partial history is attached as the
    ``trajectory`` attribute (its ``terminated_by`` is ``None``).
    """

    def __init__(self, message: str, trajectory: "Trajectory | None" = None):
        super().__init__(message)
        self.trajectory = trajectory


class TerminationReason(enum.Enum):
    epsilon_reached = "epsilon_reached"
    max_iter = "max_iter"
    domain_exhausted = "domain_exhausted"


@dataclass(frozen=True)
class SolverConfig:
    """Outer tolerance and iteration cap plus inner-solve controls.

    ``epsilon`` is the gradient-norm stopping tolerance, tested at every
    iterate including the starting point.  ``subproblem_tol`` is the
    residual tolerance of the iterative inner solve (unused when a
    closed-form inverse gradient is registered).
    """

    epsilon: float
    max_iter: int
    subproblem_tol: float = 1e-12
    subproblem_max_iter: int = 10_000

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")
        if not self.subproblem_tol > 0:
            raise ValueError(
                f"subproblem_tol must be positive, got {self.subproblem_tol}")
        if self.subproblem_max_iter < 1:
            raise ValueError("subproblem_max_iter must be at least 1")


@dataclass
class IterateRecord:
    """One row of a run history.

    ``step_norm`` is ``||x_{k+1} - x_k||`` and stays 0.0 on the final
    record.  ``g`` and ``h`` are ``None`` for records parsed from files
    that do not carry the split values.
    """

    k: int
    x: np.ndarray
    f: float
    g: Optional[float]
    h: Optional[float]
    grad_f_norm: float
    step_norm: float = 0.0


@dataclass(eq=False)
class Trajectory:
    """Ordered iterate history with cached column views."""

    records: List[IterateRecord]
    terminated_by: Optional[TerminationReason]

    def __len__(self) -> int:
        return len(self.records)

    @cached_property
    def f_values(self) -> np.ndarray:
        return np.array([r.f for r in self.records])

    @cached_property
    def grad_norms(self) -> np.ndarray:
        return np.array([r.grad_f_norm for r in self.records])

    @cached_property
    def step_norms(self) -> np.ndarray:
        return np.array([r.step_norm for r in self.records])

    @cached_property
    def points(self) -> np.ndarray:
        return np.array([r.x for r in self.records])


def _norm(v: np.ndarray) -> float:
    return math.sqrt(float(np.dot(v, v)))


def solve_subproblem(inst: DcInstance, target, cfg: SolverConfig) -> np.ndarray:
    """Return ``x`` with ``||grad g(x) - target|| <= cfg.subproblem_tol``.

    Uses the instance's closed-form inverse-gradient oracle when one is
    registered (exact to rounding).  Otherwise minimizes the strongly
    convex model ``g(x) - <target, x>`` by gradient descent: fixed step
    ``1/lipschitz_g`` when that constant is registered, else a
    backtracking search halving from step 1 until the residual norm
    contracts to ``(1 - mu*alpha)`` of its value.  Strong convexity of
    ``g`` makes that contraction achievable once ``alpha`` is small
    enough, and testing the residual rather than the model value avoids
    stalling at the float resolution of the model near the solution.

    Raises
    ------
    SubproblemError
        If the iterative solve exceeds ``cfg.subproblem_max_iter``
        without meeting the tolerance.
    """
    target = as_point(target, inst.dim)
    if inst.g_grad_inverse is not None:
        return as_point(inst.g_grad_inverse(target), inst.dim)

    x = target.copy()
    fixed = None if inst.lipschitz_g is None else 1.0 / inst.lipschitz_g
    for _ in range(cfg.subproblem_max_iter):
        r = np.asarray(inst.g_grad(x), dtype=float) - target
        rn = _norm(r)
        if rn <= cfg.subproblem_tol:
            return x
        if fixed is not None:
            x = x - fixed * r
            continue
        alpha = 1.0
        while True:
            cand = x - alpha * r
            r_new = np.asarray(inst.g_grad(cand), dtype=float) - target
            if _norm(r_new) <= (1.0 - inst.mu * alpha) * rn:
                break
            alpha *= 0.5
            if alpha < 1e-20:
                raise SubproblemError(
                    "backtracking found no contracting step; the gradient "
                    "oracle of g may not be strongly monotone with the "
                    "registered mu")
        x = cand
    raise SubproblemError(
        f"inner solve residual above {cfg.subproblem_tol} after "
        f"{cfg.subproblem_max_iter} iterations (tolerance unachievable)")


def dca_step(inst: DcInstance, x_k, cfg: SolverConfig) -> np.ndarray:
    """One update: the ``x`` solving ``grad g(x) = grad h(x_k)``."""
    x_k = as_point(x_k, inst.dim)
    if not inst.in_domain(x_k):
        raise OutOfDomainError(f"iterate {x_k!r} outside instance domain")
    target = np.asarray(inst.h_grad(x_k), dtype=float)
    return solve_subproblem(inst, target, cfg)


def run_dca(inst: DcInstance, x0, cfg: SolverConfig) -> Trajectory:
    """Iterate from ``x0``, recording every iterate including the start.

    Terminates when the gradient norm falls to ``cfg.epsilon``, after
    ``cfg.max_iter`` steps, or when the next iterate would leave the
    instance domain.  A zero-length step with the gradient still above
    tolerance raises :class:`SubproblemError` (stagnation) with the
    partial history attached.
    """
    x = as_point(x0, inst.dim)
    if not inst.in_domain(x):
        raise OutOfDomainError(f"starting point {x!r} outside instance domain")

    records: List[IterateRecord] = []
    reason = TerminationReason.max_iter
    g_value, h_value = inst.g_value, inst.h_value
    g_grad, h_grad = inst.g_grad, inst.h_grad
    fused = inst.f_grad_fused
    try:
        for k in range(cfg.max_iter + 1):
            gv = float(g_value(x))
            hv = float(h_value(x))
            if fused is not None:
                grad = np.asarray(fused(x), dtype=float)
            else:
                grad = np.asarray(g_grad(x), dtype=float) - np.asarray(h_grad(x), dtype=float)
            gn = _norm(grad)
            rec = IterateRecord(k=k, x=x, f=gv - hv, g=gv, h=hv, grad_f_norm=gn)
            records.append(rec)
            if gn <= cfg.epsilon:
                reason = TerminationReason.epsilon_reached
                break
            if k == cfg.max_iter:
                reason = TerminationReason.max_iter
                break
            target = np.asarray(h_grad(x), dtype=float)
            x_next = solve_subproblem(inst, target, cfg)
            if not inst.in_domain(x_next):
                reason = TerminationReason.domain_exhausted
                break
            sn = _norm(x_next - x)
            if sn == 0.0:
                raise SubproblemError(
                    f"stagnated at {x!r} with gradient norm {gn} above "
                    f"epsilon={cfg.epsilon}")
            rec.step_norm = sn
            x = x_next
    except SubproblemError as err:
        err.trajectory = Trajectory(records=records, terminated_by=None)
        raise
    return Trajectory(records=records, terminated_by=reason)
