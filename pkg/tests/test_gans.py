import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hgauss import gans
from hgauss.gans import GansDomainError, GansIsometry, GansPoint
from hgauss.harness.oracle import fd_jacobian2

coord = st.floats(-4, 4, allow_nan=False)


class TestMaps:
    @pytest.mark.parametrize("xyz,uv", [
        ((0, 0, 1), (0, 0)),
        ((1 / math.sqrt(2), 0, 1 / math.sqrt(2)), (1, 0)),
        ((0, 0.5, math.sqrt(3) / 2), (0, 1 / math.sqrt(3))),
    ])
    def test_hemisphere(self, xyz, uv):
        p = gans.hemisphere_to_plane(*xyz)
        assert p.u == pytest.approx(uv[0], abs=1e-15) and p.v == pytest.approx(uv[1], abs=1e-15)

    def test_hemisphere_domain(self):
        with pytest.raises(GansDomainError):
            gans.hemisphere_to_plane(1, 0, 0)
        with pytest.raises(GansDomainError):
            gans.hemisphere_to_plane(0, 0.6, -0.8)
        with pytest.raises(GansDomainError):
            gans.hemisphere_to_plane(0, 0, 0.9)

    def test_disk(self):
        assert gans.disk_to_gans(0, 0) == GansPoint(0, 0)
        p = gans.disk_to_gans(0.5, 0)
        assert (p.u, p.v) == pytest.approx((4 / 3, 0))
        assert gans.gans_to_disk(gans.disk_to_gans(0.3, -0.2)) == pytest.approx((0.3, -0.2), abs=1e-12)
        with pytest.raises(GansDomainError):
            gans.disk_to_gans(0.6, 0.8)

    @given(coord, coord)
    def test_round_trip(self, u, v):
        back = gans.disk_to_gans(*gans.gans_to_disk(GansPoint(u, v)))
        assert back.u == pytest.approx(u, abs=1e-12 * (1 + abs(u) + abs(v)))
        assert back.v == pytest.approx(v, abs=1e-12 * (1 + abs(u) + abs(v)))


class TestMetric:
    def test_values(self):
        assert gans.metric_at(GansPoint(0, 0)) == gans.Metric2(1, 0, 1)
        assert gans.metric_at(GansPoint(1, 0)) == gans.Metric2(0.5, 0, 1)
        assert gans.metric_at(GansPoint(1, 1)).det == pytest.approx(1 / 3, abs=1e-15)

    @given(coord, coord)
    def test_det_and_positivity(self, u, v):
        m = gans.metric_at(GansPoint(u, v))
        assert m.h11 > 0
        assert m.det == pytest.approx(1 / (1 + u * u + v * v), rel=1e-12)


class TestChristoffel:
    def test_origin_zero(self):
        assert np.all(gans.christoffel_at(GansPoint(0, 0)).array() == 0)

    def test_at_one_zero(self):
        g = gans.christoffel_at(GansPoint(1, 0))
        assert g[0][0][0] == -0.5 and g[1][0][0] == 0 and g[0][1][1] == -1 and g[1][1][1] == 0
        assert g[0][0][1] == 0 and g[1][0][1] == 0

    @settings(max_examples=50)
    @given(coord, coord)
    def test_symmetric_and_matches_metric(self, u, v):
        p = GansPoint(u, v)
        table = gans.christoffel_at(p).array()
        assert np.all(table[:, 0, 1] == table[:, 1, 0])
        derived = gans.christoffel_from_metric(gans.metric_at, p).array()
        assert np.max(np.abs(table - derived)) <= 1e-10


class TestGeodesic:
    def test_sinh(self):
        path = gans.geodesic(GansPoint(0, 0), (1, 0), 2.0, 1e-3)
        assert np.max(np.abs(path.u - np.sinh(path.t))) <= 1e-6
        assert np.all(path.v == 0)

    def test_swap_symmetry(self):
        a = gans.geodesic(GansPoint(0, 0), (1, 0), 1.5, 1e-2)
        b = gans.geodesic(GansPoint(0, 0), (0, 1), 1.5, 1e-2)
        assert np.array_equal(a.u, b.v) and np.array_equal(a.v, b.u)

    def test_velocity_normalised(self):
        path = gans.geodesic(GansPoint(0.4, -1), (3, 5), 1.0, 1e-2)
        assert np.max(np.abs(path.speed() - 1)) <= 1e-6

    @settings(max_examples=15, deadline=None)
    @given(st.floats(-2, 2), st.floats(-2, 2), st.floats(0, 2 * math.pi))
    def test_second_difference_law(self, u, v, ang):
        h = 1e-3
        path = gans.geodesic(GansPoint(u, v), (math.cos(ang), math.sin(ang)), 2.0, h)
        for arr in (path.u, path.v):
            resid = (arr[2:] - 2 * arr[1:-1] + arr[:-2]) / h**2 - arr[1:-1]
            assert np.max(np.abs(resid)) <= 1e-5
        assert np.max(np.abs(path.speed() - 1)) <= 1e-6

    def test_errors(self):
        with pytest.raises(ValueError):
            gans.geodesic(GansPoint(0, 0), (0, 0), 1.0, 0.1)
        with pytest.raises(ValueError):
            gans.geodesic(GansPoint(0, 0), (1, 0), 1.0, -0.1)


ISOMETRIES = [
    GansIsometry.rotation(0.3),
    GansIsometry.reflection(0.0, 1.0),
    GansIsometry.reflection(2.0, -1.0),
    GansIsometry.mobius(0.3),
    GansIsometry.mobius(0.2 - 0.6j, 1.2),
    GansIsometry.mobius(-0.4 + 0.1j, -0.5, conjugate=True),
]


class TestIsometry:
    def test_rotation_quarter(self):
        p = gans.apply_isometry(GansIsometry.rotation(math.pi / 2), GansPoint(1, 0))
        assert (p.u, p.v) == pytest.approx((0, 1), abs=1e-15)

    def test_reflect_u_axis(self):
        assert gans.apply_isometry(GansIsometry.reflection(0, 1), GansPoint(2, 3)) == GansPoint(2, -3)

    def test_mobius_round_trip(self):
        iso = GansIsometry.mobius(0.3)
        p = GansPoint(1.7, -0.4)
        q = gans.apply_isometry(iso.inverse(), gans.apply_isometry(iso, p))
        assert (q.u, q.v) == pytest.approx((p.u, p.v), abs=1e-12)

    def test_invalid(self):
        with pytest.raises(ValueError):
            GansIsometry.mobius(1.0)
        with pytest.raises(ValueError):
            GansIsometry("shear")
        with pytest.raises(ValueError):
            GansIsometry.reflection(0, 0)

    @pytest.mark.parametrize("iso", ISOMETRIES, ids=lambda i: i.kind)
    @settings(max_examples=20)
    @given(st.floats(-3, 3), st.floats(-3, 3))
    def test_preserves_metric(self, iso, u, v):
        J = fd_jacobian2(lambda a, b: np.array(list(gans.apply_isometry(iso, GansPoint(a, b)))), u, v)
        img = gans.apply_isometry(iso, GansPoint(u, v))
        pulled = J.T @ gans.metric_at(img).matrix() @ J
        assert np.max(np.abs(pulled - gans.metric_at(GansPoint(u, v)).matrix())) <= 1e-8

    @pytest.mark.parametrize("iso", ISOMETRIES, ids=lambda i: i.kind)
    def test_inverse(self, iso):
        for p in [GansPoint(0, 0), GansPoint(2.5, -1), GansPoint(-0.3, 0.8)]:
            q = gans.apply_isometry(iso.inverse(), gans.apply_isometry(iso, p))
            assert (q.u, q.v) == pytest.approx((p.u, p.v), abs=1e-12)

    def test_maps_geodesics_to_geodesics(self):
        # the image of the u-axis under a Mobius isometry still solves u'' = u
        iso = GansIsometry.mobius(0.2 + 0.3j, 0.7)
        t = np.linspace(-1, 1, 2001)
        pts = [gans.apply_isometry(iso, GansPoint(math.sinh(s), 0.0)) for s in t]
        u = np.array([p.u for p in pts])
        h = t[1] - t[0]
        assert np.max(np.abs((u[2:] - 2 * u[1:-1] + u[:-2]) / h**2 - u[1:-1])) <= 1e-5
