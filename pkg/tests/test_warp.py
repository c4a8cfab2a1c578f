import math

import numpy as np
import pytest

from warpgeo import (
    Domain,
    DomainError,
    Point,
    WarpSpec,
    make_warp,
    warp_custom,
    warp_flat,
    warp_neg2,
    warp_one_over_r,
    warp_r,
)


class TestPoint:
    def test_valid(self):
        p = Point(2.0, -3.5)
        assert p.r == 2.0 and p.t == -3.5

    @pytest.mark.parametrize("r", [0.0, -1.0, math.nan, math.inf])
    def test_rejects_bad_radius(self, r):
        with pytest.raises(ValueError):
            Point(r, 0.0)

    def test_rejects_nonfinite_t(self):
        with pytest.raises(ValueError):
            Point(1.0, math.inf)


class TestDomain:
    def test_membership_is_strict(self):
        d = Domain(0.0, 5.0)
        assert d.contains(2.5)
        assert not d.contains(0.0)
        assert not d.contains(5.0)
        assert not d.contains(5.0 - 1e-14)  # inside the margin

    def test_require_raises(self):
        with pytest.raises(DomainError):
            Domain(1.0, 2.0).require(0.5)

    def test_vectorized(self):
        d = Domain(0.0)
        res = d.contains(np.array([0.5, -1.0, 3.0]))
        assert res.tolist() == [True, False, True]

    def test_invalid_interval(self):
        with pytest.raises(ValueError):
            Domain(3.0, 2.0)


class TestWarpSpec:
    def test_from_string_with_params(self):
        spec = WarpSpec.from_string("flat:2,5")
        assert spec.kind == "flat" and spec.params == (2.0, 5.0)

    def test_from_string_bare(self):
        assert WarpSpec.from_string("one_over_r").kind == "one_over_r"

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            WarpSpec("parabolic")

    def test_wrong_arity(self):
        with pytest.raises(ValueError):
            WarpSpec("flat", (1.0,))

    def test_round_trip_dict(self):
        spec = WarpSpec("neg2", (1.0, -1.0, 1.0))
        assert WarpSpec.from_dict(spec.to_dict()) == spec


class TestBuiltinFamilies:
    def test_one_over_r_values(self):
        w = warp_one_over_r()
        assert w.h(2.0) == 0.5
        assert w.log_deriv(2.0) == -0.5

    def test_r_values(self):
        w = warp_r()
        assert w.h(3.0) == 3.0
        assert w.log_deriv(3.0) == pytest.approx(1.0 / 3.0, rel=1e-15)

    def test_flat_minus1_0_equals_one_over_r(self):
        w = warp_flat(-1.0, 0.0)
        ref = warp_one_over_r()
        assert w.domain.lo == 0.0 and math.isinf(w.domain.hi)
        for r in (0.1, 1.0, 7.0, 250.0):
            assert w.h(r) == pytest.approx(ref.h(r), rel=1e-15)
            assert w.log_deriv(r) == pytest.approx(ref.log_deriv(r), rel=1e-14)

    def test_flat_1_5_domain(self):
        w = warp_flat(1.0, 5.0)
        assert (w.domain.lo, w.domain.hi) == (0.0, 5.0)
        assert w.h(2.0) == pytest.approx(1.0 / 3.0)
        with pytest.raises(DomainError):
            w.h(5.5)

    def test_flat_zero_amplitude_rejected(self):
        with pytest.raises(ValueError):
            warp_flat(0.0, 1.0)

    def test_flat_no_positive_interval(self):
        # a0 > 0 with the pole left of the half plane: h < 0 everywhere.
        with pytest.raises(ValueError):
            warp_flat(1.0, -2.0)

    def test_neg2_1_1_0_is_radial(self):
        w = warp_neg2(1.0, 1.0, 0.0)
        for r in (0.3, 1.0, 8.0):
            assert w.h(r) == pytest.approx(r, rel=1e-15)

    def test_neg2_pole_excluded(self):
        w = warp_neg2(1.0, -1.0, 1.0)  # pole of h at r = 1
        assert w.domain.lo == pytest.approx(1.0)
        assert w.h(2.0) == pytest.approx(2.0 / 7.0)
        with pytest.raises(DomainError):
            w.h(0.5)

    def test_neg2_mirror_side(self):
        # Flipping the sign of c0 selects the other side of the pole.
        w = warp_neg2(-1.0, -1.0, 1.0)
        assert (w.domain.lo, w.domain.hi) == (0.0, pytest.approx(1.0))
        assert w.h(0.5) > 0.0

    def test_neg2_degenerate_denominator(self):
        with pytest.raises(ValueError):
            warp_neg2(1.0, 0.0, 0.0)


class TestMakeWarp:
    @pytest.mark.parametrize(
        "text", ["one_over_r", "r", "exp", "flat:-1,0", "flat:2,5", "neg2:1,1,1"]
    )
    def test_all_kinds_pass_consistency(self, text):
        w = make_warp(text)
        grid = w.domain.sample(17)
        assert np.all(np.asarray(w.h(grid)) > 0)

    def test_domain_restriction(self):
        w = make_warp("one_over_r", domain=(1.0, 2.0))
        assert (w.domain.lo, w.domain.hi) == (1.0, 2.0)
        with pytest.raises(DomainError):
            w.h(0.5)

    def test_empty_restriction(self):
        with pytest.raises(ValueError):
            make_warp("flat:1,5", domain=(6.0, 7.0))


class TestCustomWarp:
    def test_fd_derivatives(self):
        w = warp_custom(lambda r: 2.0 + np.sin(r), domain=(0.0, 20.0))
        for r in (0.5, 2.0, 9.0):
            assert w.dh(r) == pytest.approx(math.cos(r), abs=1e-8)
            assert w.d2h(r) == pytest.approx(-math.sin(r), abs=1e-4)

    def test_supplied_derivatives_checked(self):
        with pytest.raises(ValueError, match="inconsistent"):
            warp_custom(
                lambda r: 2.0 + np.sin(r),
                dh=lambda r: np.cos(r) + 0.1,  # deliberately wrong
                domain=(0.0, 20.0),
            )

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            warp_custom(lambda r: np.sin(r), domain=(0.0, 20.0))

    def test_unit_warp(self):
        w = warp_custom(
            lambda r: np.ones_like(np.asarray(r, dtype=float)) if np.ndim(r) else 1.0,
            domain=(0.0, 100.0),
        )
        assert w.h(3.0) == 1.0
        assert w.log_deriv(3.0) == pytest.approx(0.0, abs=1e-12)
