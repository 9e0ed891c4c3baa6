"""Knot vectors, generator families, and their integral ladders."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gbspline import (
    active_region,
    adaptive_simpson,
    build_family,
    build_integral_table,
    knot_function_value,
    validate_open_knot_vector,
)
from gbspline.errors import (
    IntervalStraddle,
    InvalidFamily,
    NotNondecreasing,
    NotOpen,
    OutOfInterval,
    TooShort,
)
from conftest import ALL_KINDS


class TestValidation:
    def test_degree_four_with_interior_knot(self):
        kv = validate_open_knot_vector([0, 0, 0, 0, 0, .5, 1, 1, 1, 1, 1], 4)
        assert kv.m == 11
        assert kv.n_basis == 6

    def test_degenerate_degree_zero(self):
        kv = validate_open_knot_vector([0, 1], 0)
        assert kv.n_basis == 1

    def test_rejects_decreasing(self):
        with pytest.raises(NotNondecreasing):
            validate_open_knot_vector([0, 0, 1, 0], 1)

    def test_rejects_unclamped_ends(self):
        with pytest.raises(NotOpen):
            validate_open_knot_vector([0, 0, 0.5, 1, 1, 2], 2)

    def test_rejects_short_vector(self):
        with pytest.raises(TooShort):
            validate_open_knot_vector([0, 0, 0, 1, 1], 2)


class TestActiveRegion:
    def test_interior_knot(self):
        kv = validate_open_knot_vector([0, 0, 0, 0, 0, .5, 1, 1, 1, 1, 1], 4)
        np.testing.assert_array_equal(active_region(kv), [0, .5, 1])

    def test_interior_multiplicity_retained(self):
        kv = validate_open_knot_vector([0, 0, 0, .5, .5, 1, 1, 1], 2)
        np.testing.assert_array_equal(active_region(kv), [0, .5, .5, 1])

    def test_degree_zero(self):
        kv = validate_open_knot_vector([0, 1], 0)
        np.testing.assert_array_equal(active_region(kv), [0, 1])

    def test_length_and_endpoints(self):
        kv = validate_open_knot_vector([0, 0, 0, .2, .7, .7, 1, 1, 1], 2)
        reg = active_region(kv)
        assert len(reg) == kv.m - 2 * kv.degree
        assert reg[0] == kv.knots[kv.degree]
        assert reg[-1] == kv.knots[kv.m - kv.degree - 1]


class TestFamilies:
    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_endpoint_normalization(self, kind):
        fam = build_family([0.0, 0.3, 1.1, 2.0], kind=kind, omega=1.2)
        for slot in range(fam.n_spans):
            left, right = fam.spans[slot]
            assert fam.value(slot, "u", 0, left) == pytest.approx(0.0, abs=1e-12)
            assert fam.value(slot, "u", 0, right) == pytest.approx(1.0, abs=1e-12)
            assert fam.value(slot, "v", 0, left) == pytest.approx(1.0, abs=1e-12)
            assert fam.value(slot, "v", 0, right) == pytest.approx(0.0, abs=1e-12)

    @settings(deadline=None, max_examples=40)
    @given(st.sampled_from(ALL_KINDS),
           st.floats(min_value=0.1, max_value=2.0),
           st.floats(min_value=0.2, max_value=1.5))
    def test_normalization_random_intervals(self, kind, h, omega):
        fam = build_family([0.0, h], kind=kind, omega=omega)
        assert fam.value(0, "u", 0, 0.0) == pytest.approx(0.0, abs=1e-12)
        assert fam.value(0, "u", 0, h) == pytest.approx(1.0, abs=1e-12)
        assert fam.value(0, "v", 0, 0.0) == pytest.approx(1.0, abs=1e-12)
        assert fam.value(0, "v", 0, h) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("kind", ALL_KINDS)
    @pytest.mark.parametrize("which", ["u", "v"])
    @pytest.mark.parametrize("order", [1, 2, 3, 4, 5])
    def test_ladder_derivative_consistency(self, kind, which, order):
        """Central difference of order k matches the order k-1 closed form."""
        h = 0.8
        fam = build_family([0.25, 0.25 + h], kind=kind, omega=1.3)
        step = 1e-6 * h
        for t in np.linspace(0.25 + 0.05 * h, 0.25 + 0.95 * h, 10):
            numeric = (fam.value(0, which, order, t + step)
                       - fam.value(0, which, order, t - step)) / (2 * step)
            exact = fam.value(0, which, order - 1, t)
            assert numeric == pytest.approx(exact, rel=1e-6, abs=1e-9)

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_positive_orders_vanish_at_left(self, kind):
        fam = build_family([0.5, 1.75], kind=kind, omega=1.1)
        for which in "uv":
            for order in (1, 2, 3):
                assert fam.value(0, which, order, 0.5) == pytest.approx(0.0, abs=1e-14)

    def test_rejects_trig_interval_too_wide(self):
        with pytest.raises(InvalidFamily):
            build_family([0, 1], kind="trigonometric", omega=math.pi)

    def test_rejects_unknown_kind(self):
        with pytest.raises(InvalidFamily):
            build_family([0, 1], kind="rational")

    def test_rejects_spec_count_mismatch(self):
        with pytest.raises(InvalidFamily):
            build_family([0, .5, 1], kinds=("linear",), omegas=[1.0])

    def test_out_of_interval(self):
        fam = build_family([0, 1], kind="linear")
        with pytest.raises(OutOfInterval):
            fam.value(0, "u", 0, 1.5)

    def test_zero_length_intervals_skipped(self):
        fam = build_family([0, 0, .5, 1, 1], kind="linear")
        assert fam.n_spans == 2
        assert fam.slot_for_interval(0) == -1
        assert fam.slot_for_interval(1) == 0
        assert fam.slot_for_interval(3) == -1


class TestKnotFunctionValue:
    def test_linear_generator(self):
        fam = build_family([0, 1], kind="linear")
        assert knot_function_value(fam, 0, "u", 0, 0.5) == pytest.approx(0.5)

    def test_trig_endpoint(self):
        fam = build_family([0, 1], kind="trigonometric", omega=math.pi / 2)
        assert knot_function_value(fam, 0, "u", 0, 1.0) == pytest.approx(1.0)

    def test_trig_first_integral_against_quadrature(self):
        fam = build_family([0, 1], kind="trigonometric", omega=math.pi / 2)
        # independent check: integrate u(t) = sin(pi t / 2) from 0 to 1
        oracle = adaptive_simpson(lambda t: math.sin(math.pi * t / 2), 0.0, 1.0)
        got = knot_function_value(fam, 0, "u", 1, 1.0)
        assert got == pytest.approx(oracle, abs=1e-9)
        assert got == pytest.approx(2 / math.pi, abs=1e-12)


class TestIntegralTable:
    def test_trig_split_interval(self):
        fam = build_family([0, 1], kind="trigonometric", omega=math.pi / 2)
        table = build_integral_table(fam, [0, .5, 1], 0, 0)
        # generator of the containing interval evaluated at the split point
        assert table[0, 1, 0, 0] == pytest.approx(math.sin(math.pi / 4))
        oracle = math.sin(math.pi / 2 * 0.5)
        assert table[0, 1, 0, 0] == pytest.approx(oracle, abs=1e-12)

    def test_linear_derivative_offset(self):
        fam = build_family([0, .5, 1], kind="linear")
        table = build_integral_table(fam, [0, .5, 1], 1, 2)
        np.testing.assert_allclose(table[0, :, :, 0], 1 / 0.5)  # u' = 1/h

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_matching_interval_is_normalized(self, kind):
        fam = build_family([0, 1], kind=kind, omega=1.0)
        table = build_integral_table(fam, [0, 1], 0, 0)
        np.testing.assert_allclose(table[0, 0, 0], [0, 1], atol=1e-12)  # left: u, v
        np.testing.assert_allclose(table[0, 0, 1], [1, 0], atol=1e-12)  # right: u, v

    def test_order_zero_matches_generator(self):
        fam = build_family([0, 1], kind="exponential", omega=2.0)
        table = build_integral_table(fam, [0, .25, 1], 0, 3)
        assert table[0, 0, 0, 0] == pytest.approx(fam.value(0, "u", 0, 0.0))
        assert table[0, 1, 1, 1] == pytest.approx(fam.value(0, "v", 0, 1.0))

    def test_ladder_orders_differentiate(self):
        fam = build_family([0, 1], kind="trigonometric", omega=1.0)
        breaks = [0, .5, 1]
        step = 1e-6
        hi = build_integral_table(fam, [0, .5 + step, 1], 0, 3)
        lo = build_integral_table(fam, [0, .5 - step, 1], 0, 3)
        mid = build_integral_table(fam, breaks, 0, 3)
        for k in (1, 2, 3):
            for w in (0, 1):
                numeric = (hi[k, 0, 1, w] - lo[k, 0, 1, w]) / (2 * step)
                assert numeric == pytest.approx(mid[k - 1, 0, 1, w], rel=1e-6, abs=1e-9)

    def test_straddling_interval_rejected(self):
        fam = build_family([0, .5, 1], kind="linear")
        with pytest.raises(IntervalStraddle):
            build_integral_table(fam, [0, .6, 1], 0, 1)

    def test_zero_length_target_rows_are_zero(self):
        fam = build_family([0, 1], kind="linear")
        table = build_integral_table(fam, [0, .5, .5, 1], 0, 1)
        np.testing.assert_array_equal(table[:, 1], 0.0)
