"""Worst-case instance on which the convex-splitting iteration is slow.

The instance is univariate with ``g(x) = x^2/2`` and a convex,
continuously differentiable, piecewise-quadratic ``h`` built so that
the iteration started at ``x = 0`` advances by exactly
``(k+1)^(-(1/2+delta))`` at step ``k``.  The gradient norm of
``f = g - h`` at iterate ``k`` equals that step length, so the squared
gradient norm decays like ``(k+1)^(-(1+2*delta))``: slower than any
geometric rate, and arbitrarily close to ``1/k`` for small ``delta``.

Construction.  Knots ``x_0 = 0 > x_1 > x_2 > ...`` satisfy
``x_k - x_{k+1} = (k+1)^(-(1/2+delta))``.  The gradient of ``h`` is
pinned to ``grad h(x_k) = x_{k+1}``, which makes ``x_{k+1}`` the exact
minimizer of the convex model solved at ``x_k``.  On each interval
``[x_{k+1}, x_k]`` the function is the quadratic anchored at the right
knot with constant curvature ``c_k = ((k+1)/(k+2))^(1/2+delta)``, the
unique choice making the gradient continuous across knots.  For
``x > 0`` the function continues linearly with slope ``-1``.  Since
``c_k`` lies in ``(0, 1]``, ``h`` is convex with a 1-Lipschitz
gradient, and ``f`` has curvature ``1 - c_k > 0`` on every interval.

All knot data are precomputed at build time from the recurrences, so
evaluation is a binary search plus a two-term Taylor step, and the
stored values are reused exactly.  The instance exists only on
``[x_{K+1}, +inf)`` for a finite horizon ``K``; evaluating below the
last knot raises instead of extrapolating, since silent extrapolation
would corrupt rate measurements.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .core import DcInstance, Interval, OutOfDomainError

__all__ = [
    "HorizonExceededError",
    "AdversarialInstance",
    "build_adversarial",
    "adv_h_eval",
    "adv_f_grad",
    "theoretical_grad_norm",
    "zeta_series",
    "zeta_lower_bound",
    "figure_data",
]


class HorizonExceededError(OutOfDomainError):
    """Evaluation below the last constructed knot.

    Signals the caller to rebuild the instance with a larger horizon.
    """


@dataclass(frozen=True)
class AdversarialInstance:
    """Knot data of the construction plus its oracle view.

    Arrays (all read-only):

    ``knots``
        ``x_0 = 0 > x_1 > ... > x_{K+1}``, shape ``(K+2,)``.
    ``grad_at_knots``
        ``grad h(x_k) = x_{k+1}`` for ``k = 0..K``; a view of
        ``knots[1:]``.
    ``h_at_knots``
        ``h(x_k)`` for ``k = 0..K+1``, from the interval recurrence
        with ``h(0) = 0``.
    ``curvatures``
        ``c_k`` of interval ``[x_{k+1}, x_k]`` for ``k = 0..K``.
    ``steps``
        ``(k+1)^(-(1/2+delta))`` for ``k = 0..K``; equals
        ``x_k - x_{k+1}`` exactly in real arithmetic and is the stored
        high-accuracy form of that difference.

    ``dc`` is the :class:`~dclab.core.DcInstance` consumed by the
    solvers (``mu = 1/2``, ``lipschitz_h = 1``, domain
    ``[x_{K+1}, +inf)``).
    """

    delta: float
    horizon: int
    knots: np.ndarray
    grad_at_knots: np.ndarray
    h_at_knots: np.ndarray
    curvatures: np.ndarray
    steps: np.ndarray
    f_low: float
    dc: DcInstance


def build_adversarial(delta: float, horizon: int) -> AdversarialInstance:
    """Construct the slow instance for a given ``delta > 0`` and horizon.

    The horizon ``K >= 1`` is the largest knot index for which the
    piecewise definition exists; the instance domain is
    ``[x_{K+1}, +inf)``.
    """
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if horizon < 1:
        raise ValueError(f"horizon must be at least 1, got {horizon}")
    big_k = int(horizon)
    expo = 0.5 + delta

    k = np.arange(big_k + 1, dtype=float)
    steps = (k + 1.0) ** (-expo)
    curvatures = ((k + 1.0) / (k + 2.0)) ** expo

    knots = np.empty(big_k + 2)
    knots[0] = 0.0
    np.cumsum(-steps, out=knots[1:])
    grad_at_knots = knots[1:]

    # Anchor each interval at its right knot and reuse the stored knot
    # spacing, so values at knots reproduce the recurrence exactly.
    dx = np.diff(knots)
    h_at_knots = np.empty(big_k + 2)
    h_at_knots[0] = 0.0
    np.cumsum(grad_at_knots * dx + 0.5 * curvatures * dx * dx, out=h_at_knots[1:])

    for arr in (steps, curvatures, knots, h_at_knots):
        arr.setflags(write=False)

    f_low = zeta_lower_bound(delta)

    # Scalar fast path for the solver loop: plain-float lists and bisect.
    knots_l = knots.tolist()
    grads_l = knots_l[1:]
    h_l = h_at_knots.tolist()
    curv_l = curvatures.tolist()
    steps_l = steps.tolist()
    neg_knots = [-v for v in knots_l]
    bottom = knots_l[-1]

    def _anchor(x: float) -> int:
        if x < bottom:
            raise HorizonExceededError(
                f"x={x!r} below last knot {bottom!r} (horizon {big_k}); "
                "rebuild with a larger horizon")
        a = bisect.bisect_right(neg_knots, -x) - 1
        return a if a <= big_k else big_k

    def h_value_scalar(x: float) -> float:
        if x > 0.0:
            return -x
        a = _anchor(x)
        d = x - knots_l[a]
        return h_l[a] + grads_l[a] * d + 0.5 * curv_l[a] * d * d

    def h_grad_scalar(x: float) -> float:
        if x > 0.0:
            return -1.0
        a = _anchor(x)
        return grads_l[a] + curv_l[a] * (x - knots_l[a])

    def f_grad_scalar(x: float) -> float:
        # Fused form of x - grad h(x).  Within a piece the difference is
        # (x - x_a)(1 - c_a) + (x_a - x_{a+1}); substituting the stored
        # step for the trailing term avoids cancellation between the
        # O(|x_a|) terms, which otherwise dominates the small result.
        if x > 0.0:
            return x + 1.0
        a = _anchor(x)
        return (x - knots_l[a]) * (1.0 - curv_l[a]) + steps_l[a]

    dc = DcInstance(
        g_value=lambda p: 0.5 * p[0] * p[0],
        g_grad=lambda p: p.copy(),
        h_value=lambda p: h_value_scalar(p[0]),
        h_grad=lambda p: np.array([h_grad_scalar(p[0])]),
        mu=0.5,
        lipschitz_h=1.0,
        f_low=f_low,
        dim=1,
        domain=Interval(lower=bottom),
        lipschitz_g=1.0,
        g_grad_inverse=lambda t: t.copy(),
        f_grad_fused=lambda p: np.array([f_grad_scalar(p[0])]),
        label=f"adversarial(delta={delta}, horizon={big_k})",
    )

    return AdversarialInstance(
        delta=delta,
        horizon=big_k,
        knots=knots,
        grad_at_knots=grad_at_knots,
        h_at_knots=h_at_knots,
        curvatures=curvatures,
        steps=steps,
        f_low=f_low,
        dc=dc,
    )


def _anchors(inst: AdversarialInstance, x: np.ndarray) -> np.ndarray:
    a = np.searchsorted(-inst.knots, -x, side="right") - 1
    return np.clip(a, 0, inst.horizon)


def adv_h_eval(inst: AdversarialInstance, x):
    """Evaluate ``(h(x), grad h(x))`` at a scalar or array of scalars.

    Raises
    ------
    HorizonExceededError
        If any entry lies below the last knot ``x_{K+1}``.
    """
    scalar = np.ndim(x) == 0
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(arr < inst.knots[-1]):
        raise HorizonExceededError(
            f"input below last knot {inst.knots[-1]!r} (horizon {inst.horizon}); "
            "rebuild with a larger horizon")
    a = _anchors(inst, arr)
    d = arr - inst.knots[a]
    val = (inst.h_at_knots[a] + inst.grad_at_knots[a] * d
           + 0.5 * inst.curvatures[a] * d * d)
    grad = inst.grad_at_knots[a] + inst.curvatures[a] * d
    pos = arr > 0.0
    val = np.where(pos, -arr, val)
    grad = np.where(pos, -1.0, grad)
    if scalar:
        return float(val[0]), float(grad[0])
    return val, grad


def adv_f_grad(inst: AdversarialInstance, x):
    """Fused ``grad f`` at a scalar or array of scalars (see module notes)."""
    scalar = np.ndim(x) == 0
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(arr < inst.knots[-1]):
        raise HorizonExceededError(
            f"input below last knot {inst.knots[-1]!r} (horizon {inst.horizon})")
    a = _anchors(inst, arr)
    out = (arr - inst.knots[a]) * (1.0 - inst.curvatures[a]) + inst.steps[a]
    out = np.where(arr > 0.0, arr + 1.0, out)
    if scalar:
        return float(out[0])
    return out


def theoretical_grad_norm(delta: float, k: int) -> float:
    """Closed-form ``||grad f(x_k)|| = (k+1)^(-(1/2+delta))`` on this instance."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    return (k + 1.0) ** (-(0.5 + delta))


def zeta_series(s: float, terms: int = 1000) -> float:
    """Riemann zeta for ``s > 1``.

    Truncated series plus the integral tail and two boundary
    correction terms; absolute error is far below 1e-12 throughout
    ``s >= 1.05`` (the next omitted correction is O(terms^(-s-3))).
    """
    if not s > 1.0:
        raise ValueError(f"zeta series requires s > 1, got {s}")
    n = float(terms)
    partial = math.fsum(np.arange(1.0, n) ** (-s))
    tail = (n ** (1.0 - s) / (s - 1.0)
            + 0.5 * n ** (-s)
            + s * n ** (-s - 1.0) / 12.0
            - s * (s + 1.0) * (s + 2.0) * n ** (-s - 3.0) / 720.0)
    return partial + tail


def zeta_lower_bound(delta: float) -> float:
    """Lower bound ``-zeta(1 + 2*delta) - 2`` on ``f`` over the domain."""
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    return -zeta_series(1.0 + 2.0 * delta) - 2.0


def figure_data(delta: float, n_knots: int = 25, samples_per_interval: int = 8):
    """Sample ``x, f, g, h`` on ``[x_{n_knots}, 0]`` for curve plots.

    Each of the ``n_knots`` intervals contributes ``samples_per_interval``
    points (left endpoint included, right excluded) and the origin is
    appended, so there are ``n_knots * samples_per_interval + 1`` rows,
    ordered by increasing ``x``.
    """
    if samples_per_interval < 2:
        raise ValueError(
            f"samples_per_interval must be at least 2, got {samples_per_interval}")
    if n_knots < 1:
        raise ValueError(f"n_knots must be at least 1, got {n_knots}")
    adv = build_adversarial(delta, horizon=n_knots)
    segments = []
    for k in range(n_knots - 1, -1, -1):
        left, right = adv.knots[k + 1], adv.knots[k]
        segments.append(np.linspace(left, right, samples_per_interval + 1)[:-1])
    segments.append(np.array([0.0]))
    x = np.concatenate(segments)
    h, _ = adv_h_eval(adv, x)
    g = 0.5 * x * x
    f = g - h
    return x, f, g, h
