"""Inequality and rate checks over recorded runs.

Two families of checks operate on a :class:`~dclab.solver.Trajectory`:

* the descent-sum inequality
  ``f(x_j) - f(x_{k+1}) >= mu * sum_{i=j..k} ||x_{i+1} - x_i||^2``,
  which follows from strong convexity of ``g`` and convexity of ``h``;
* the averaged-gradient bound, which divides that telescoped decrease
  over the trailing half-window of squared gradient norms:

      (1/d) * sum_{i=m..k} ||grad f(x_i)||^2
          <= L_h^2 * (f(x_m) - f(x_{k+1})) / (mu * d),

  with ``m = ceil(k/2)`` and ``d = floor(k/2) + 1``, together with the
  looser final form whose denominator is ``mu * k / 2``.

On the averaged bound, note that ``grad f`` at an iterate equals the
difference of consecutive ``grad h`` values and is therefore bounded by
``L_h`` times the length of the step INTO that iterate, not the step
out of it.  The window that the descent-sum argument actually proves is
therefore ``[m+1, k+1]`` (``shift=1`` below).  The unshifted window
(``shift=0``, the default) additionally holds whenever the gradient
norm at an iterate does not exceed ``L_h`` times the outgoing step, as
on the slow piecewise-quadratic instance, but it can fail elsewhere:
on the quadratic smoke instance the gradient at an iterate is exactly
twice the outgoing step, and the unshifted bound fails for every ``k``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .solver import Trajectory

__all__ = [
    "BoundCheck",
    "SumCheck",
    "ScaledRateTable",
    "RateReport",
    "averaged_gradient_check",
    "averaged_gradient_scan",
    "descent_sum_check",
    "iterations_to_eps",
    "scaled_rate_table",
    "monotone_violations",
    "build_rate_report",
]

REL_SLACK = 1e-9


def _pass_le(lhs: float, rhs: float, rel_slack: float) -> bool:
    return lhs <= rhs + rel_slack * (1.0 + abs(rhs))


@dataclass(frozen=True)
class BoundCheck:
    """One evaluation of the averaged-gradient bound at index ``k``."""

    k: int
    lhs: float
    rhs: float
    rhs_loose: float
    passed: bool


@dataclass(frozen=True)
class SumCheck:
    """One evaluation of the descent-sum inequality over ``[j, k]``."""

    j: int
    k: int
    lhs: float
    rhs: float
    passed: bool


@dataclass(frozen=True)
class ScaledRateTable:
    """Gradient norms next to their rate-compensated values.

    ``scaled[k] = grad_norm[k] * (k+1)^(1/2+delta)`` is identically 1
    exactly when the run follows the slow-instance rate.
    """

    k: np.ndarray
    grad_norm: np.ndarray
    scaled: np.ndarray


def _window(k: int, shift: int):
    if k < 2:
        raise ValueError(f"the averaged bound needs k >= 2, got {k}")
    if shift not in (0, 1):
        raise ValueError(f"shift must be 0 or 1, got {shift}")
    m = (k + 1) // 2
    d = k // 2 + 1
    return m, d


def averaged_gradient_check(traj: Trajectory, mu: float, lipschitz_h: float,
                            k: int, shift: int = 0,
                            rel_slack: float = REL_SLACK) -> BoundCheck:
    """Evaluate the averaged-gradient bound at index ``k``.

    ``lhs`` averages the squared gradient norms over iterations
    ``m+shift .. k+shift`` with ``m = ceil(k/2)``; ``rhs`` is
    ``L_h^2 (f(x_m) - f(x_{k+1})) / (mu * d)`` with
    ``d = floor(k/2) + 1``; ``rhs_loose`` replaces the denominator by
    ``mu * k / 2``.  ``passed`` requires ``lhs <= rhs <= rhs_loose`` up
    to the relative slack.  See the module notes on the two windows.

    Requires records ``0 .. k+1+shift``.
    """
    m, d = _window(k, shift)
    n = len(traj)
    if n < k + 2 + shift:
        raise ValueError(
            f"trajectory has {n} records, needs {k + 2 + shift} for k={k}, "
            f"shift={shift}")
    g2 = traj.grad_norms[m + shift:k + 1 + shift] ** 2
    lhs = float(np.sum(g2)) / d
    numerator = float(traj.f_values[m] - traj.f_values[k + 1])
    rhs = lipschitz_h ** 2 * numerator / (mu * d)
    rhs_loose = 2.0 * lipschitz_h ** 2 * numerator / (mu * k)
    passed = (_pass_le(lhs, rhs, rel_slack)
              and _pass_le(rhs, rhs_loose, rel_slack))
    return BoundCheck(k=k, lhs=lhs, rhs=rhs, rhs_loose=rhs_loose, passed=passed)


def averaged_gradient_scan(traj: Trajectory, mu: float, lipschitz_h: float,
                           shift: int = 0,
                           rel_slack: float = REL_SLACK) -> List[BoundCheck]:
    """Vectorized :func:`averaged_gradient_check` over every valid ``k``."""
    if shift not in (0, 1):
        raise ValueError(f"shift must be 0 or 1, got {shift}")
    n = len(traj)
    k_max = n - 2 - shift
    if k_max < 2:
        return []
    ks = np.arange(2, k_max + 1)
    m = (ks + 1) // 2
    d = ks // 2 + 1
    g2 = traj.grad_norms ** 2
    cum = np.concatenate([[0.0], np.cumsum(g2)])
    lhs = (cum[ks + 1 + shift] - cum[m + shift]) / d
    numerator = traj.f_values[m] - traj.f_values[ks + 1]
    rhs = lipschitz_h ** 2 * numerator / (mu * d)
    rhs_loose = 2.0 * lipschitz_h ** 2 * numerator / (mu * ks)
    ok = ((lhs <= rhs + rel_slack * (1.0 + np.abs(rhs)))
          & (rhs <= rhs_loose + rel_slack * (1.0 + np.abs(rhs_loose))))
    return [BoundCheck(int(k), float(a), float(b), float(c), bool(p))
            for k, a, b, c, p in zip(ks, lhs, rhs, rhs_loose, ok)]


def descent_sum_check(traj: Trajectory, mu: float, j: int, k: int,
                      rel_slack: float = REL_SLACK) -> SumCheck:
    """Check ``f(x_j) - f(x_{k+1}) >= mu * sum_{i=j..k} step_norm_i^2``."""
    n = len(traj)
    if not 0 <= j <= k:
        raise ValueError(f"need 0 <= j <= k, got j={j}, k={k}")
    if n < k + 2:
        raise ValueError(f"trajectory has {n} records, needs {k + 2} for k={k}")
    lhs = float(traj.f_values[j] - traj.f_values[k + 1])
    rhs = mu * float(np.sum(traj.step_norms[j:k + 1] ** 2))
    passed = _pass_le(rhs, lhs, rel_slack)
    return SumCheck(j=j, k=k, lhs=lhs, rhs=rhs, passed=passed)


def iterations_to_eps(traj: Trajectory, eps: float) -> Optional[int]:
    """Smallest ``k`` with ``||grad f(x_k)|| <= eps``, or ``None``."""
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    hits = np.nonzero(traj.grad_norms <= eps)[0]
    return int(hits[0]) if hits.size else None


def scaled_rate_table(traj: Trajectory, delta: float) -> ScaledRateTable:
    """Rate-compensated gradient norms (see :class:`ScaledRateTable`)."""
    if len(traj) == 0:
        raise ValueError("trajectory is empty")
    ks = np.arange(len(traj))
    g = traj.grad_norms
    scaled = g * (ks + 1.0) ** (0.5 + delta)
    return ScaledRateTable(k=ks, grad_norm=g.copy(), scaled=scaled)


def monotone_violations(traj: Trajectory, slack: float = 1e-12) -> Optional[int]:
    """Index of the first increase of ``f`` beyond ``slack``, or ``None``."""
    f = traj.f_values
    bad = np.nonzero(f[1:] > f[:-1] + slack)[0]
    return int(bad[0] + 1) if bad.size else None


@dataclass
class RateReport:
    """Aggregated check results for one trajectory.

    ``per_k`` holds the averaged-gradient bound at every valid ``k``;
    ``descent_sum_checks`` a sample of window checks;
    ``numerator_sequence`` the decrease ``f(x_m) - f(x_{k+1})`` for each
    entry of ``per_k``; ``monotone_violation_k`` the first index where
    ``f`` increased (``None`` if never).
    """

    per_k: List[BoundCheck] = field(default_factory=list)
    descent_sum_checks: List[SumCheck] = field(default_factory=list)
    iterations_to_eps: Optional[int] = None
    numerator_sequence: List[float] = field(default_factory=list)
    monotone_violation_k: Optional[int] = None
    scaled_rate: Optional[ScaledRateTable] = None

    @property
    def all_passed(self) -> bool:
        return (self.monotone_violation_k is None
                and all(c.passed for c in self.per_k)
                and all(c.passed for c in self.descent_sum_checks))

    def failing_ks(self) -> List[int]:
        return [c.k for c in self.per_k if not c.passed]

    def to_json_dict(self) -> dict:
        out = {
            "per_k": [{"k": c.k, "lhs": c.lhs, "rhs": c.rhs,
                       "rhs_loose": c.rhs_loose, "pass": c.passed}
                      for c in self.per_k],
            "descent_sum_checks": [{"j": c.j, "k": c.k, "lhs": c.lhs,
                                    "rhs": c.rhs, "pass": c.passed}
                                   for c in self.descent_sum_checks],
            "iterations_to_eps": self.iterations_to_eps,
            "numerator_sequence": self.numerator_sequence,
            "monotone": {"pass": self.monotone_violation_k is None,
                         "first_violation_k": self.monotone_violation_k},
        }
        if self.scaled_rate is not None:
            out["scaled_rate_table"] = [
                {"k": int(k), "grad_norm": float(g), "scaled": float(s)}
                for k, g, s in zip(self.scaled_rate.k,
                                   self.scaled_rate.grad_norm,
                                   self.scaled_rate.scaled)]
        return out

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def build_rate_report(traj: Trajectory, mu: float, lipschitz_h: float, *,
                      delta: Optional[float] = None,
                      eps: Optional[float] = None,
                      n_descent_pairs: int = 1000,
                      seed: int = 0,
                      shift: int = 0,
                      rel_slack: float = REL_SLACK) -> RateReport:
    """Run every check family on a trajectory and collect the results.

    Descent-sum windows ``(j, k)`` are sampled with a seeded generator
    so reports are reproducible.
    """
    report = RateReport()
    report.monotone_violation_k = monotone_violations(traj)
    report.per_k = averaged_gradient_scan(traj, mu, lipschitz_h,
                                          shift=shift, rel_slack=rel_slack)
    f = traj.f_values
    report.numerator_sequence = [
        float(f[(c.k + 1) // 2] - f[c.k + 1]) for c in report.per_k]

    n = len(traj)
    if n >= 2 and n_descent_pairs > 0:
        rng = np.random.default_rng(seed)
        ks = rng.integers(0, n - 1, size=n_descent_pairs)
        js = rng.integers(0, ks + 1)
        cum = np.concatenate([[0.0], np.cumsum(traj.step_norms ** 2)])
        for j, k in zip(js, ks):
            lhs = float(f[j] - f[k + 1])
            rhs = mu * float(cum[k + 1] - cum[j])
            report.descent_sum_checks.append(
                SumCheck(j=int(j), k=int(k), lhs=lhs, rhs=rhs,
                         passed=_pass_le(rhs, lhs, rel_slack)))
    if eps is not None:
        report.iterations_to_eps = iterations_to_eps(traj, eps)
    if delta is not None and n > 0:
        report.scaled_rate = scaled_rate_table(traj, delta)
    return report
