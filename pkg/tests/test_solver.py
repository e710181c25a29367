import math

import numpy as np
import pytest

from dclab import (
    DcInstance,
    OutOfDomainError,
    SolverConfig,
    SubproblemError,
    TerminationReason,
    adv_h_eval,
    build_adversarial,
    dca_step,
    make_quadratic_dc,
    run_dca,
    solve_subproblem,
)

CFG = SolverConfig(epsilon=1e-9, max_iter=50)


def exp_instance():
    """g(x) = x^2/2 + e^x with no closed-form inverse gradient."""
    return DcInstance(
        g_value=lambda x: 0.5 * x[0] * x[0] + math.exp(x[0]),
        g_grad=lambda x: np.array([x[0] + math.exp(x[0])]),
        h_value=lambda x: 0.0,
        h_grad=lambda x: np.zeros(1),
        mu=0.5,
        lipschitz_h=1.0,
    )


def bisect_inverse(fn, target, lo, hi, tol=1e-14):
    """Independent root bracket for monotone fn(x) = target."""
    flo, fhi = fn(lo) - target, fn(hi) - target
    assert flo < 0 < fhi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if fn(mid) - target < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestSolveSubproblem:
    def test_identity_inverse(self, adv_half):
        out = solve_subproblem(adv_half.dc, [-2.5], CFG)
        np.testing.assert_array_equal(out, [-2.5])

    def test_quadratic_halves_target(self, quad_b1):
        out = solve_subproblem(quad_b1, [3.0], CFG)
        np.testing.assert_array_equal(out, [1.5])

    def test_iterative_backtracking(self):
        inst = exp_instance()
        out = solve_subproblem(inst, [1.0], CFG)
        # x + e^x = 1 is solved by x = 0; cross-check with bisection
        ref = bisect_inverse(lambda v: v + math.exp(v), 1.0, -1.0, 1.0)
        assert abs(ref) <= 1e-13
        assert abs(out[0] - ref) <= 1e-11
        residual = abs(out[0] + math.exp(out[0]) - 1.0)
        assert residual <= CFG.subproblem_tol

    def test_iterative_fixed_step(self):
        b = np.array([3.0, -2.0])
        inst = DcInstance(
            g_value=lambda x: float(np.dot(x, x)),
            g_grad=lambda x: 2.0 * x,
            h_value=lambda x: float(np.dot(b, x)),
            h_grad=lambda x: b.copy(),
            mu=1.0, lipschitz_h=1.0, dim=2, lipschitz_g=2.0,
        )
        out = solve_subproblem(inst, b, CFG)
        np.testing.assert_allclose(out, [1.5, -1.0], atol=1e-12)
        residual = np.linalg.norm(2.0 * out - b)
        assert residual <= CFG.subproblem_tol

    def test_unachievable_tolerance(self):
        inst = exp_instance()
        tight = SolverConfig(epsilon=1e-9, max_iter=10,
                             subproblem_tol=1e-12, subproblem_max_iter=2)
        with pytest.raises(SubproblemError):
            solve_subproblem(inst, [1.0], tight)


class TestDcaStep:
    def test_adversarial_from_origin(self, adv_half):
        np.testing.assert_array_equal(dca_step(adv_half.dc, 0.0, CFG), [-1.0])

    def test_adversarial_from_first_knot(self, adv_half):
        np.testing.assert_array_equal(dca_step(adv_half.dc, -1.0, CFG), [-1.5])

    def test_quadratic_halves_gap(self, quad_b1):
        np.testing.assert_array_equal(dca_step(quad_b1, 0.0, CFG), [0.5])

    def test_out_of_domain(self, adv_half):
        with pytest.raises(OutOfDomainError):
            dca_step(adv_half.dc, adv_half.knots[-1] - 1.0, CFG)


class TestRunDca:
    def test_adversarial_first_iterates(self, adv_half):
        traj = run_dca(adv_half.dc, 0.0, SolverConfig(epsilon=1e-9, max_iter=3))
        xs = [r.x[0] for r in traj.records]
        np.testing.assert_allclose(xs, [0.0, -1.0, -1.5, -11.0 / 6.0],
                                   rtol=0, atol=1e-15)
        assert traj.terminated_by is TerminationReason.max_iter

    def test_quadratic_epsilon_stop(self, quad_b1):
        traj = run_dca(quad_b1, 0.0, SolverConfig(epsilon=0.1, max_iter=100))
        assert traj.records[-1].k == 4
        assert traj.records[-1].grad_f_norm == 0.0625
        assert traj.terminated_by is TerminationReason.epsilon_reached

    def test_loose_epsilon_stops_at_start(self, adv_half):
        traj = run_dca(adv_half.dc, 0.0, SolverConfig(epsilon=2.0, max_iter=100))
        assert len(traj) == 1
        assert traj.records[0].step_norm == 0.0
        assert traj.terminated_by is TerminationReason.epsilon_reached

    def test_indices_consecutive(self, adv_half_traj):
        assert [r.k for r in adv_half_traj.records] == list(range(len(adv_half_traj)))

    def test_record_split_consistency(self, adv_half_traj):
        for r in adv_half_traj.records:
            assert r.f == r.g - r.h
            assert r.grad_f_norm >= 0.0

    def test_monotone_decrease(self, adv_half_traj, quad_traj):
        for traj in (adv_half_traj, quad_traj):
            f = traj.f_values
            assert np.all(f[1:] <= f[:-1] + 1e-12)

    def test_optimality_residual(self, adv_half, adv_half_traj):
        # grad g(x_{k+1}) must equal grad h(x_k) to the inner tolerance;
        # the closed-form path is exact
        xs = adv_half_traj.points[:, 0]
        _, grads = adv_h_eval(adv_half, xs[:-1])
        residual = np.abs(xs[1:] - grads)
        assert residual.max() == 0.0

    def test_optimality_residual_quadratic(self, quad_traj):
        xs = quad_traj.points[:, 0]
        residual = np.abs(2.0 * xs[1:] - (xs[:-1] + 1.0))
        assert residual.max() == 0.0

    def test_gradient_matches_incoming_step(self, adv_half, adv_half_traj):
        # ||grad f(x_k)|| equals ||grad h(x_k) - grad h(x_{k-1})||, the
        # gradient change over the step INTO x_k, within inner slack
        xs = adv_half_traj.points[:, 0]
        _, grads = adv_h_eval(adv_half, xs)
        tol = 1e-12 * (1.0 + adv_half.dc.lipschitz_h)
        for k in range(1, len(xs)):
            assert abs(adv_half_traj.records[k].grad_f_norm
                       - abs(grads[k] - grads[k - 1])) <= tol

    def test_gradient_bounded_by_incoming_step(self, adv_half_traj, quad_traj, adv_half, quad_b1):
        for traj, inst in ((adv_half_traj, adv_half.dc), (quad_traj, quad_b1)):
            tol = 1e-12 * (1.0 + inst.lipschitz_h)
            for k in range(1, len(traj)):
                incoming = traj.records[k - 1].step_norm
                assert traj.records[k].grad_f_norm <= inst.lipschitz_h * incoming + tol

    def test_deterministic_replay(self, adv_half):
        cfg = SolverConfig(epsilon=1e-15, max_iter=150)
        t1 = run_dca(adv_half.dc, 0.0, cfg)
        t2 = run_dca(adv_half.dc, 0.0, cfg)
        np.testing.assert_array_equal(t1.points, t2.points)
        np.testing.assert_array_equal(t1.f_values, t2.f_values)
        np.testing.assert_array_equal(t1.grad_norms, t2.grad_norms)
        assert t1.terminated_by == t2.terminated_by

    def test_domain_exhaustion(self):
        adv = build_adversarial(0.5, 3)
        traj = run_dca(adv.dc, 0.0, SolverConfig(epsilon=1e-15, max_iter=10))
        assert traj.terminated_by is TerminationReason.domain_exhausted
        # iterates reach the domain edge x_{K+1} and stop there
        assert len(traj) == 5
        assert traj.records[-1].x[0] == adv.knots[-1]
        assert traj.records[-1].step_norm == 0.0

    def test_x0_out_of_domain(self, adv_half):
        with pytest.raises(OutOfDomainError):
            run_dca(adv_half.dc, adv_half.knots[-1] - 0.5, CFG)

    def test_stagnation_raises_with_partial_history(self):
        # fixed point of the update with a gradient oracle that still
        # reports a large norm: the stagnation pathway must trigger
        inst = DcInstance(
            g_value=lambda x: 0.5 * x[0] * x[0],
            g_grad=lambda x: x.copy(),
            h_value=lambda x: 0.5 * x[0] * x[0],
            h_grad=lambda x: x.copy(),
            mu=0.5,
            lipschitz_h=1.0,
            g_grad_inverse=lambda t: t.copy(),
            f_grad_fused=lambda x: np.ones(1),
        )
        with pytest.raises(SubproblemError) as info:
            run_dca(inst, 0.7, SolverConfig(epsilon=1e-9, max_iter=10))
        partial = info.value.trajectory
        assert partial is not None
        assert len(partial) == 1
        assert partial.terminated_by is None


class TestSolverConfigValidation:
    @pytest.mark.parametrize("kwargs", [
        dict(epsilon=0.0, max_iter=10),
        dict(epsilon=1e-9, max_iter=0),
        dict(epsilon=1e-9, max_iter=10, subproblem_tol=0.0),
        dict(epsilon=1e-9, max_iter=10, subproblem_max_iter=0),
    ])
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            SolverConfig(**kwargs)
