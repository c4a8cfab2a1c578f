import math

import numpy as np
import pytest

from warpgeo import (
    DomainError,
    FlatGeodesic,
    GeodesicPath,
    GeodesicState,
    Neg2Geodesic,
    escape_length,
    geodesic_field,
    integrate,
    path_length,
    path_length_quadrature,
    transverse_unit_b_form,
    warp_flat,
)


class TestField:
    def test_horizontal_ray_flat(self, flat_warp):
        ds = geodesic_field(flat_warp, GeodesicState(1.0, 0.0, 1.0, 0.0))
        assert ds == (1.0, 0.0, 0.0, 0.0)

    def test_vertical_shot_flat(self, flat_warp):
        # H(1) = -1 for h = 1/r, so the radial acceleration is +g^2.
        ds = geodesic_field(flat_warp, GeodesicState(1.0, 0.0, 0.0, 1.0))
        assert ds == (0.0, 1.0, 1.0, 0.0)

    def test_transverse_rest_is_equilibrium(self, warp_family):
        for w in warp_family.values():
            ds = geodesic_field(w, GeodesicState(1.5, 0.7, 1.0, 0.0))
            assert ds[2] == 0.0 and ds[3] == 0.0

    def test_outside_domain(self):
        w = warp_flat(1.0, 5.0)
        with pytest.raises(DomainError):
            geodesic_field(w, GeodesicState(6.0, 0.0, 1.0, 0.0))


class TestIntegrate:
    def test_inward_ray_escapes_with_unit_length(self, flat_warp):
        path = integrate(flat_warp, GeodesicState(1.0, 0.0, -1.0, 0.0), 5.0)
        assert path.escaped
        assert path.total_length == pytest.approx(1.0, abs=1e-6)

    def test_vertical_shot_endpoint(self, flat_warp):
        path = integrate(flat_warp, GeodesicState(1.0, 0.0, 0.0, 1.0), 1.0)
        end = path.endpoint
        assert end.r == pytest.approx(math.sqrt(2.0), abs=1e-8)
        assert end.t == pytest.approx(math.pi / 4.0, abs=1e-8)

    def test_horizontal_ray_never_escapes_upward(self, neg2_warp):
        path = integrate(neg2_warp, GeodesicState(1.0, 0.0, 1.0, 0.0), 3.0)
        assert not path.escaped
        end = path.endpoint
        assert end.r == pytest.approx(4.0, abs=1e-10)
        assert end.t == 0.0

    def test_rejects_non_unit_speed(self, flat_warp):
        with pytest.raises(ValueError, match="unit speed"):
            integrate(flat_warp, GeodesicState(1.0, 0.0, 1.0, 0.5), 1.0)

    def test_rejects_non_positive_span(self, flat_warp):
        with pytest.raises(ValueError):
            integrate(flat_warp, GeodesicState(1.0, 0.0, 1.0, 0.0), 0.0)

    def test_unit_speed_drift(self, flat_warp, rng):
        for _ in range(5):
            ang = rng.uniform(0.0, math.pi)
            path = integrate(flat_warp, GeodesicState.from_angle(1.0, 0.0, ang), 3.0)
            drift = np.abs(path.f**2 + path.g**2 - 1.0)
            assert drift.max() <= 1e-9

    def test_clairaut_first_integral(self, warp_family, rng):
        # g / h(r) is conserved along every geodesic of every warp.
        for w in warp_family.values():
            lo = max(w.domain.lo + 0.5, 0.8)
            ang = rng.uniform(0.2, math.pi - 0.2)
            init = GeodesicState.from_angle(lo + 0.5, 0.0, ang)
            path = integrate(w, init, 1.5)
            ratio = path.g / np.asarray(w.h(np.maximum(path.r, w.domain.lo + 1e-9)))
            ratio = ratio / ratio[0]
            assert np.max(np.abs(ratio - 1.0)) < 1e-8

    def test_straight_rays_for_every_warp(self, warp_family):
        for w in warp_family.values():
            r0 = max(w.domain.lo + 0.4, 0.5)
            path = integrate(w, GeodesicState(r0, 1.3, 1.0, 0.0), 0.8)
            assert np.all(path.t == 1.3)
            assert np.max(np.abs(path.r - (r0 + path.s))) < 1e-9

    def test_renormalized_variant_matches(self, neg2_warp):
        init = GeodesicState.from_angle(1.0, 0.0, 1.0)
        plain = integrate(neg2_warp, init, 1.2)
        renorm = integrate(neg2_warp, init, 1.2, renormalize=True)
        assert np.max(np.abs(renorm.f**2 + renorm.g**2 - 1.0)) < 1e-15
        assert np.max(np.abs(plain.r - renorm.r)) < 1e-8
        assert np.max(np.abs(plain.t - renorm.t)) < 1e-8

    def test_escape_at_upper_boundary(self):
        w = warp_flat(1.0, 5.0)  # domain (0, 5)
        path = integrate(w, GeodesicState(4.0, 0.0, 1.0, 0.0), 5.0)
        assert path.escaped
        assert path.total_length == pytest.approx(1.0, abs=1e-6)


class TestEscapeLength:
    def test_flat_inward_unit(self, flat_warp):
        assert escape_length(flat_warp, GeodesicState(1.0, 0.0, -1.0, 0.0), 10.0) == pytest.approx(
            1.0, abs=1e-6
        )

    def test_radial_inward_unit(self, neg2_warp):
        assert escape_length(neg2_warp, GeodesicState(1.0, 0.0, -1.0, 0.0), 10.0) == pytest.approx(
            1.0, abs=1e-6
        )

    def test_outward_exceeds_cap(self, flat_warp):
        assert escape_length(flat_warp, GeodesicState(1.0, 0.0, 1.0, 0.0), 10.0) is None

    def test_neg2_arch_escapes(self, neg2_warp):
        # Non-horizontal h = r geodesics end at finite length where r -> 0.
        geo = Neg2Geodesic(r0=1.0, t0=0.0, b=0.5, sign=1.0)
        expected = geo.arch()[1]
        got = escape_length(neg2_warp, geo.initial_state(), 50.0)
        assert got == pytest.approx(expected, abs=1e-6)


class TestPathLength:
    def test_horizontal_segment(self, flat_warp):
        path = integrate(flat_warp, GeodesicState(1.0, 0.0, 1.0, 0.0), 1.0)
        assert path_length(path) == pytest.approx(1.0, abs=1e-12)

    def test_escaped_ray(self, flat_warp):
        path = integrate(flat_warp, GeodesicState(1.0, 0.0, -1.0, 0.0), 5.0)
        assert path_length(path) == pytest.approx(1.0, abs=1e-6)

    def test_zero_span(self):
        path = GeodesicPath(
            s=np.array([0.0]),
            r=np.array([1.0]),
            t=np.array([0.0]),
            f=np.array([1.0]),
            g=np.array([0.0]),
            escaped=False,
            total_length=0.0,
        )
        assert path_length(path) == 0.0

    def test_quadrature_cross_check(self, flat_warp):
        geo = FlatGeodesic(r0=1.0, t0=0.0, a=0.0, sign=1.0)
        path = integrate(flat_warp, geo.initial_state(), 2.0, n_samples=257)
        assert path_length_quadrature(flat_warp, path) == pytest.approx(
            path_length(path), abs=1e-4
        )


class TestFlatGeodesic:
    def test_initial_condition(self):
        geo = FlatGeodesic(r0=2.0, t0=-1.0, a=0.5, sign=-1.0)
        p = geo.point(0.0)
        assert (p.r, p.t) == (2.0, -1.0)

    def test_reference_point(self):
        geo = FlatGeodesic(r0=1.0, t0=0.0, a=0.0, sign=1.0)
        p = geo.point(1.0)
        assert p.r == pytest.approx(math.sqrt(2.0), rel=1e-15)
        assert p.t == pytest.approx(math.pi / 4.0, rel=1e-15)

    def test_angle_continues_through_pole(self):
        # At s = sqrt(2) the naive arctangent argument passes through its
        # pole; the continuous angle reaches pi/2.
        geo = FlatGeodesic(r0=1.0, t0=0.0, a=-1.0 / math.sqrt(2.0), sign=1.0)
        p = geo.point(math.sqrt(2.0))
        assert p.r == pytest.approx(1.0, abs=1e-12)
        assert p.t == pytest.approx(math.pi / 2.0, abs=1e-12)

    def test_sweep_stays_below_half_turn(self):
        geo = FlatGeodesic(r0=1.0, t0=0.0, a=-0.9, sign=1.0)
        ss = np.geomspace(1e-3, 1e6, 200)
        assert np.all(np.abs(geo.angle(ss)) < math.pi)

    def test_family_parameter_bounds(self):
        with pytest.raises(ValueError):
            FlatGeodesic(r0=1.0, t0=0.0, a=1.0)

    def test_matches_integration(self, flat_warp, rng):
        for _ in range(10):
            r0 = rng.uniform(0.3, 3.0)
            a = r0 * rng.uniform(-0.95, 0.95)
            sign = float(rng.choice([-1.0, 1.0]))
            geo = FlatGeodesic(r0=r0, t0=rng.uniform(-2, 2), a=a, sign=sign)
            path = integrate(flat_warp, geo.initial_state(), 3.0, n_samples=31)
            r_cf, t_cf = geo.point(path.s)
            assert np.max(np.abs(path.r - r_cf)) < 1e-6
            assert np.max(np.abs(path.t - t_cf)) < 1e-6

    def test_ode_residual_by_second_differences(self, flat_warp):
        # r'' = -(h'/h^3) t'^2 and t'' = 2 (h'/h) r' t' in coordinates;
        # h = 1/r gives r'' = r t'^2 ... with h'/h^3 = -r.
        geo = FlatGeodesic(r0=1.0, t0=0.0, a=-0.4, sign=1.0)
        hstep = 1e-4
        ss = np.linspace(0.5, 2.5, 21)
        r_m, t_m = geo.point(ss - hstep)
        r_0, t_0 = geo.point(ss)
        r_p, t_p = geo.point(ss + hstep)
        rdd = (r_p - 2 * r_0 + r_m) / hstep**2
        tdd = (t_p - 2 * t_0 + t_m) / hstep**2
        rd = (r_p - r_m) / (2 * hstep)
        td = (t_p - t_m) / (2 * hstep)
        res_r = rdd - r_0 * td**2
        res_t = tdd + (2.0 / r_0) * rd * td
        assert np.max(np.abs(res_r)) < 1e-6
        assert np.max(np.abs(res_t)) < 1e-6

    def test_state_is_unit_speed(self):
        geo = FlatGeodesic(r0=1.4, t0=0.2, a=0.9, sign=-1.0)
        for s in (-2.0, 0.0, 0.7, 5.0):
            st = geo.state(s)
            assert st.speed_sq == pytest.approx(1.0, abs=1e-14)

    def test_branch_integration_constant(self):
        # The single-branch arctangent form with constant d matches the
        # continuous angle wherever the branch argument stays off its pole.
        geo = FlatGeodesic(r0=1.0, t0=0.5, a=-0.3, sign=1.0)
        for s in (0.0, 0.2, 0.5):
            naive = geo.sign * math.atan((s + geo.a) / math.sqrt(geo.beta)) + geo.d
            assert naive == pytest.approx(geo.point(s).t, abs=1e-12)


class TestNeg2Geodesic:
    def test_apex_start(self):
        geo = Neg2Geodesic(r0=2.0, t0=0.0, b=0.5, sign=1.0)
        st = geo.initial_state()
        assert st.f == pytest.approx(0.0, abs=1e-12)
        assert st.g == pytest.approx(1.0, abs=1e-12)

    def test_radius_closed_form(self):
        geo = Neg2Geodesic(r0=1.0, t0=0.0, b=0.5, sign=1.0)
        assert geo.radius(0.0) == pytest.approx(1.0, rel=1e-15)
        # r(s) = 2 sin(s/2 + pi/6)
        for s in (0.3, 1.0, 2.0):
            assert geo.radius(s) == pytest.approx(
                2.0 * math.sin(s / 2.0 + math.pi / 6.0), rel=1e-14
            )

    def test_matches_integration(self, neg2_warp, rng):
        for _ in range(10):
            r0 = rng.uniform(0.3, 2.5)
            b = rng.uniform(0.05, 1.0) / r0
            sign = float(rng.choice([-1.0, 1.0]))
            geo = Neg2Geodesic(r0=r0, t0=rng.uniform(-2, 2), b=b, sign=sign)
            s_hi = 0.95 * geo.arch()[1]
            path = integrate(neg2_warp, geo.initial_state(), s_hi, n_samples=31)
            r_cf, t_cf = geo.point(path.s)
            assert np.max(np.abs(path.r - r_cf)) < 1e-6
            assert np.max(np.abs(path.t - t_cf)) < 1e-6

    def test_endpoint_example(self, neg2_warp):
        geo = Neg2Geodesic(r0=1.0, t0=0.0, b=0.5, sign=1.0)
        path = integrate(neg2_warp, geo.initial_state(), 0.5, n_samples=3)
        end = path.endpoint
        p = geo.point(0.5)
        assert end.r == pytest.approx(p.r, abs=1e-6)
        assert end.t == pytest.approx(p.t, abs=1e-6)

    def test_arch_bounds_enforced(self):
        geo = Neg2Geodesic(r0=1.0, t0=0.0, b=0.5, sign=1.0)
        lo, hi = geo.arch()
        assert geo.radius(hi - 1e-9) > 0.0
        with pytest.raises(DomainError):
            geo.radius(hi + 1e-6)
        with pytest.raises(DomainError):
            geo.point(lo - 1e-6)

    def test_momentum_bounds(self):
        with pytest.raises(ValueError):
            Neg2Geodesic(r0=2.0, t0=0.0, b=0.6)  # b > 1/r0
        with pytest.raises(ValueError):
            Neg2Geodesic(r0=2.0, t0=0.0, b=0.0)

    def test_unit_b_form_exact_only_at_unit_momentum(self):
        ss = np.linspace(0.0, 1.2, 13)
        at_unit = Neg2Geodesic(r0=0.8, t0=0.3, b=1.0, sign=1.0)
        dev = np.abs(np.asarray(at_unit.transverse(ss)) - transverse_unit_b_form(at_unit, ss))
        assert dev.max() < 1e-14
        off_unit = Neg2Geodesic(r0=1.0, t0=0.0, b=0.5, sign=1.0)
        ss2 = np.linspace(0.0, 2.0, 13)
        dev2 = np.abs(
            np.asarray(off_unit.transverse(ss2)) - transverse_unit_b_form(off_unit, ss2)
        )
        assert dev2.max() > 1e-1  # the simplified form is wrong off b = 1

    def test_state_is_unit_speed(self):
        geo = Neg2Geodesic(r0=1.0, t0=0.0, b=0.7, sign=-1.0)
        for s in (0.0, 0.3, 0.9):
            st = geo.state(s)
            assert st.speed_sq == pytest.approx(1.0, abs=1e-12)


class TestCsvExport:
    def test_round_trip(self, flat_warp, tmp_path):
        path = integrate(flat_warp, GeodesicState(1.0, 0.0, 0.0, 1.0), 1.0, n_samples=5)
        target = tmp_path / "path.csv"
        path.to_csv(target)
        lines = target.read_text().strip().split("\n")
        assert lines[0] == "s,r,t,f,g"
        assert len(lines) == 6
        parsed = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
        assert np.array_equal(parsed[:, 1], path.r)  # 17 digits round-trip exactly
