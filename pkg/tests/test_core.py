import math

import numpy as np
import pytest

from dclab import (
    DcInstance,
    Interval,
    OutOfDomainError,
    as_point,
    f_grad,
    f_value,
    finite_diff_check,
    lipschitz_excess,
    make_quadratic_dc,
    strong_convexity_margin,
)


class TestAsPoint:
    def test_scalar_becomes_length_one(self):
        p = as_point(3.0)
        assert p.shape == (1,) and p[0] == 3.0

    def test_list_preserved(self):
        np.testing.assert_array_equal(as_point([1.0, 2.0]), [1.0, 2.0])

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            as_point([0.0, float("nan")])

    def test_inf_rejected(self):
        with pytest.raises(ValueError):
            as_point(float("inf"))

    def test_dim_mismatch_rejected(self):
        with pytest.raises(ValueError):
            as_point([1.0, 2.0], dim=3)

    def test_matrix_rejected(self):
        with pytest.raises(ValueError):
            as_point([[1.0, 2.0]])


class TestInterval:
    def test_contains(self):
        box = Interval(-2.0, 3.0)
        assert box.contains(np.array([-2.0, 3.0]))
        assert not box.contains(np.array([-2.1]))
        assert not box.contains(np.array([-2.0]), margin=0.5)

    def test_half_line(self):
        assert Interval(lower=-1.0).contains(np.array([1e300]))


class TestValueAndGrad:
    def test_quadratic_value_at_one(self, quad_b1):
        assert f_value(quad_b1, 1.0) == pytest.approx(-0.5, abs=1e-15)

    def test_adversarial_value_at_origin(self, adv_half):
        assert f_value(adv_half.dc, 0.0) == 0.0

    def test_adversarial_value_at_first_knot(self, adv_half):
        # g = 1/2, h = 1.25 from the interval recurrence
        assert f_value(adv_half.dc, -1.0) == pytest.approx(-0.75, abs=1e-15)

    def test_adversarial_grad_at_origin(self, adv_half):
        np.testing.assert_allclose(f_grad(adv_half.dc, 0.0), [1.0], atol=1e-15)

    def test_adversarial_grad_mid_interval(self, adv_half):
        np.testing.assert_allclose(f_grad(adv_half.dc, -0.5), [0.75], atol=1e-15)

    def test_quadratic_grad_at_minimizer(self, quad_b1):
        np.testing.assert_array_equal(f_grad(quad_b1, 1.0), [0.0])

    def test_out_of_domain_raises(self, adv_half):
        below = adv_half.knots[-1] - 1.0
        with pytest.raises(OutOfDomainError):
            f_value(adv_half.dc, below)
        with pytest.raises(OutOfDomainError):
            f_grad(adv_half.dc, below)

    def test_oracles_deterministic(self, adv_half):
        x = -2.34567
        assert f_value(adv_half.dc, x) == f_value(adv_half.dc, x)
        np.testing.assert_array_equal(f_grad(adv_half.dc, x),
                                      f_grad(adv_half.dc, x))


class TestFiniteDiff:
    def test_quadratic_smooth_point(self, quad_b1):
        report = finite_diff_check(quad_b1, 0.3, 1e-5)
        assert report.max_rel_error <= 1e-6

    def test_adversarial_interior_point(self, adv_half):
        report = finite_diff_check(adv_half.dc, -0.5, 1e-6)
        assert report.max_rel_error <= 1e-5

    def test_adversarial_linear_region(self, adv_half):
        # h is exactly linear for x > 0, so f is a plain quadratic there
        report = finite_diff_check(adv_half.dc, 1.0, 1e-6)
        assert report.max_rel_error <= 1e-8

    def test_margin_violation(self, adv_half):
        edge = adv_half.knots[-1] + 1e-8
        with pytest.raises(OutOfDomainError):
            finite_diff_check(adv_half.dc, edge, 1e-6)

    def test_bad_step(self, quad_b1):
        with pytest.raises(ValueError):
            finite_diff_check(quad_b1, 0.0, 0.0)

    @pytest.mark.parametrize("maker", ["quad", "quad2d", "adv"])
    def test_random_points(self, maker, quad_b1, adv_half):
        rng = np.random.default_rng(7)
        if maker == "quad":
            inst, lo, hi = quad_b1, -5.0, 5.0
        elif maker == "quad2d":
            inst, lo, hi = make_quadratic_dc([3.0, 4.0]), -5.0, 5.0
        else:
            inst, lo, hi = adv_half.dc, adv_half.knots[-1] + 0.01, 3.0
        for _ in range(100):
            x = rng.uniform(lo, hi, size=inst.dim)
            assert finite_diff_check(inst, x, 1e-6).max_rel_error <= 1e-5


class TestQuadraticInstance:
    def test_f_low_b1(self):
        assert make_quadratic_dc([1.0]).f_low == -0.5

    def test_f_low_zero_shift(self):
        assert make_quadratic_dc([0.0]).f_low == 0.0

    def test_f_low_2d(self):
        assert make_quadratic_dc([3.0, 4.0]).f_low == -12.5

    def test_constants(self, quad_b1):
        assert quad_b1.mu == 1.0
        assert quad_b1.lipschitz_h == 1.0
        assert quad_b1.dim == 1

    def test_value_above_f_low(self, quad_b1):
        rng = np.random.default_rng(0)
        for _ in range(100):
            x = rng.uniform(-10, 10, size=1)
            assert f_value(quad_b1, x) >= quad_b1.f_low - 1e-12


class TestSampledConvexityProperties:
    @pytest.mark.parametrize("which", ["quad", "quad2d", "adv"])
    def test_strong_convexity(self, which, quad_b1, adv_half):
        rng = np.random.default_rng(11)
        if which == "quad":
            inst, lo, hi = quad_b1, -5.0, 5.0
        elif which == "quad2d":
            inst, lo, hi = make_quadratic_dc([3.0, 4.0]), -5.0, 5.0
        else:
            inst, lo, hi = adv_half.dc, adv_half.knots[-1], 3.0
        for _ in range(100):
            x = rng.uniform(lo, hi, size=inst.dim)
            y = rng.uniform(lo, hi, size=inst.dim)
            assert strong_convexity_margin(inst, x, y) >= -1e-12

    @pytest.mark.parametrize("which", ["quad", "quad2d", "adv"])
    def test_lipschitz_gradient(self, which, quad_b1, adv_half):
        rng = np.random.default_rng(13)
        if which == "quad":
            inst, lo, hi = quad_b1, -5.0, 5.0
        elif which == "quad2d":
            inst, lo, hi = make_quadratic_dc([3.0, 4.0]), -5.0, 5.0
        else:
            inst, lo, hi = adv_half.dc, adv_half.knots[-1], 3.0
        for _ in range(100):
            x = rng.uniform(lo, hi, size=inst.dim)
            y = rng.uniform(lo, hi, size=inst.dim)
            assert lipschitz_excess(inst, x, y) <= 1e-12


class TestInstanceValidation:
    def test_bad_mu(self):
        with pytest.raises(ValueError):
            DcInstance(g_value=lambda x: 0.0, g_grad=lambda x: x,
                       h_value=lambda x: 0.0, h_grad=lambda x: x,
                       mu=0.0, lipschitz_h=1.0)

    def test_bad_lipschitz(self):
        with pytest.raises(ValueError):
            DcInstance(g_value=lambda x: 0.0, g_grad=lambda x: x,
                       h_value=lambda x: 0.0, h_grad=lambda x: x,
                       mu=1.0, lipschitz_h=-1.0)
