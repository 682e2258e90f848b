import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import maxabs, random_graph, unit_point
from hgauss.expr import parse
from hgauss.harness.oracle import richardson_jet
from hgauss.heis import FrameVector
from hgauss.surface import (
    DegenerateFormsError,
    FundamentalForms,
    GraphSurface,
    SurfaceError,
    VerticalSurface,
    catalog,
    cmc_admissible_interval,
    cmc_vertical_profile,
    forms_graph,
    forms_vertical,
    graph_point,
    mean_curvature,
    minimal_residual_graph,
    tangent_basis,
    unit_normal,
    weingarten,
)

S6 = math.sqrt(6)


def graph(text, **params):
    return GraphSurface(parse(text, parameters=list(params)), params)


def vertical(text):
    return VerticalSurface(parse(text, ("t",)))


class TestGraphPoint:
    def test_plane(self):
        d = graph_point(graph("a*x+b*y+c", a=1.5, b=-2.0, c=4.0), 0, 0)
        assert (d.p, d.q, d.w) == (1.5, -2.0, math.sqrt(1 + 2.25 + 4))

    def test_saddle(self):
        for y in (-1.0, 0.3, 2.0):
            d = graph("x*y/2").point(0.7, y)
            assert d.p == pytest.approx(y, abs=1e-15) and d.q == pytest.approx(0, abs=1e-15)
            assert d.w == pytest.approx(math.sqrt(1 + y * y))

    def test_flat(self):
        d = graph("0").point(0, 0)
        assert (d.p, d.q, d.w) == (0, 0, 1)

    def test_vertical_rejected(self):
        with pytest.raises(SurfaceError):
            graph_point(catalog("vertical_plane"), 0, 0)

    @given(random_graph, unit_point)
    def test_w_invariants(self, spec, xy):
        d = spec.point(*xy)
        assert d.w >= 1 and d.w**2 == pytest.approx(1 + d.p**2 + d.q**2, rel=1e-15)


class TestNormal:
    def test_flat(self):
        assert unit_normal(graph("0").point(0, 0)) == FrameVector(0, 0, 1)

    def test_plane(self):
        n = unit_normal(graph("x + 2*y").point(0, 0))
        assert n.as_array() == pytest.approx([-1 / S6, -2 / S6, 1 / S6], abs=1e-15)

    @given(random_graph, unit_point)
    def test_unit_and_orthogonal(self, spec, xy):
        d = spec.point(*xy)
        n = unit_normal(d)
        Xx, Xy = tangent_basis(d)
        assert n.norm() == pytest.approx(1, abs=1e-12)
        assert abs(n.dot(Xx)) <= 1e-12 * d.w and abs(n.dot(Xy)) <= 1e-12 * d.w


class TestForms:
    def test_plane(self):
        f = forms_graph(graph("x + 2*y").point(0, 0))
        assert (f.E, f.F, f.G) == (2, 2, 5)
        assert (f.L, f.M, f.N) == pytest.approx((2 / S6, 3 / (2 * S6), -2 / S6), abs=1e-15)

    def test_flat_off_axis(self):
        d = graph("0").point(2, 0)
        f = forms_graph(d)
        assert (d.p, d.q, d.w) == (0, -1, math.sqrt(2))
        assert (f.E, f.F, f.G, f.L, f.N) == (1, 0, 2, 0, 0)
        assert f.M == pytest.approx(1 / (2 * math.sqrt(2)), abs=1e-16)

    def test_scherk_closed_form(self):
        # p = y, q = 2k sqrt(1+y^2), f_xy = 1/2, f_yy = 2ky/sqrt(1+y^2)
        k, x, y = 1.0, 0.3, 0.5
        d = catalog("scherk", {"k": k}).point(x, y)
        p, q = y, 2 * k * math.sqrt(1 + y * y)
        w = math.sqrt(1 + p * p + q * q)
        fyy = 2 * k * y / math.sqrt(1 + y * y)
        f = forms_graph(d)
        expect = (1 + p * p, p * q, 1 + q * q, p * q / w, (0.5 + (q * q - p * p) / 2) / w, (fyy - p * q) / w)
        assert (f.E, f.F, f.G, f.L, f.M, f.N) == pytest.approx(expect, rel=1e-14)

    @given(random_graph, unit_point)
    def test_detI_is_w_squared(self, spec, xy):
        d = spec.point(*xy)
        assert forms_graph(d).detI == pytest.approx(d.w**2, rel=1e-12)

    def test_kernel_row_matches(self, random_graphs):
        for spec in random_graphs:
            d = spec.point(0.2, -0.9)
            f = forms_graph(d)
            assert [d[n] for n in "EFGLMN"] == pytest.approx([f.E, f.F, f.G, f.L, f.M, f.N], rel=1e-13, abs=1e-14)
            assert d["H"] == pytest.approx(mean_curvature(f), abs=1e-13)


class TestVerticalForms:
    def test_identity_profile(self):
        f = forms_vertical(vertical("t"), 1.0)
        assert (f.E, f.F, f.G, f.L, f.N) == (2, 0, 1, 0, 0)
        assert f.M == pytest.approx(math.sqrt(2) / 2)

    @pytest.mark.parametrize("c", [0.0, 1.0, -3.0])
    def test_constant_profile(self, c):
        f = forms_vertical(VerticalSurface(parse("c", ("t",), ("c",)), {"c": c}), 0.8)
        assert (f.E, f.F, f.G, f.L, f.M, f.N) == pytest.approx((1 + c * c / 4, c / 2, 1, c / 2, 0.5, 0), abs=1e-15)

    @given(st.sampled_from(["t^2", "sin(3*t)", "exp(t) - t^3", "ln(1+t^2)"]), st.floats(-2, 2))
    def test_detI(self, text, t):
        v = vertical(text)
        ad = v.profile_jet(t)[1]
        assert forms_vertical(v, t).detI == pytest.approx(1 + ad * ad, rel=1e-12)

    def test_normal_is_unit_and_horizontal(self):
        n = vertical("t^2").unit_normal(0.7)
        assert n.norm() == pytest.approx(1) and n.c3 == 0


class TestMeanCurvature:
    @pytest.mark.parametrize("abc", [(0, 0, 0), (1, 2, 0), (-3.5, 0.25, 7)])
    def test_planes_minimal(self, abc):
        spec = catalog("plane", dict(zip("abc", abc)))
        for d in spec.points(*spec.grid(4, 4)):
            assert abs(mean_curvature(forms_graph(d))) <= 1e-15

    def test_parabola_profile_at_vertex(self):
        assert mean_curvature(forms_vertical(vertical("t^2"), 0.0)) == -1.0

    @given(st.sampled_from(["t^2", "sin(t)", "t^3/3 + t", "cosh(t)"]), st.floats(-1.5, 1.5))
    def test_vertical_closed_form(self, text, t):
        v = vertical(text)
        _, ad, add = v.profile_jet(t)
        H = mean_curvature(forms_vertical(v, t))
        assert H == pytest.approx(-add / (2 * (1 + ad * ad) ** 1.5), abs=1e-12)

    @pytest.mark.parametrize("k", [0.5, 1.0, 2.0])
    def test_scherk_minimal(self, k):
        rng = np.random.default_rng(5)
        spec = catalog("scherk", {"k": k})
        for x, y in rng.uniform(-2, 2, size=(20, 2)):
            assert abs(mean_curvature(forms_graph(spec.point(x, y)))) <= 1e-10

    def test_degenerate(self):
        with pytest.raises(DegenerateFormsError):
            mean_curvature(FundamentalForms(1, 1, 1, 0, 0, 0))


class TestResidual:
    def test_plane_and_paraboloid(self):
        assert minimal_residual_graph(catalog("plane").point(0.3, 0.1)) == 0
        assert minimal_residual_graph(catalog("paraboloid").point(0, 0)) == 2

    @given(random_graph, unit_point)
    def test_equals_2Hw3(self, spec, xy):
        d = spec.point(*xy)
        assert minimal_residual_graph(d) / (2 * d.w**3) == pytest.approx(mean_curvature(forms_graph(d)), abs=1e-10)


class TestCMCProfile:
    def test_value(self):
        # -2Ht = 1/2 and 1 + 2Ht = 1/2, so the radicand is 1
        assert cmc_vertical_profile(-0.5, 0.5) == 0.5
        assert cmc_vertical_profile(-0.5, 0.25) == pytest.approx(0.25 * math.sqrt(1 / 3), rel=1e-15)

    def test_limit_at_zero(self):
        assert cmc_vertical_profile(-0.5, 1e-12) == pytest.approx(0, abs=1e-11)
        assert cmc_vertical_profile(2.0, -1e-9) == pytest.approx(0, abs=1e-8)

    def test_domain(self):
        assert cmc_admissible_interval(-0.5) == (0.0, 1.0)
        assert cmc_admissible_interval(0.25) == (-2.0, 0.0)
        with pytest.raises(SurfaceError):
            cmc_vertical_profile(-0.5, 1.0)
        with pytest.raises(SurfaceError):
            cmc_vertical_profile(-0.5, 1.5)
        with pytest.raises(SurfaceError):
            cmc_admissible_interval(0.0)

    def test_circle_profile_has_constant_H(self):
        # a profile of constant Euclidean curvature gives |H| = curvature / 2
        v = VerticalSurface(parse("sqrt(4 - t^2)", ("t",)))
        Hs = [abs(mean_curvature(forms_vertical(v, t))) for t in np.linspace(-1.9, 1.9, 30)]
        assert maxabs(np.array(Hs) - 0.25) <= 1e-12


class TestWeingarten:
    @settings(max_examples=40)
    @given(random_graph, unit_point)
    def test_reproduces_second_form(self, spec, xy):
        d = spec.point(*xy)
        f = forms_graph(d)
        Xx, Xy = tangent_basis(d)
        Ax, Ay = weingarten(d, (1, 0)), weingarten(d, (0, 1))
        got = [Ax.dot(Xx), Ax.dot(Xy), Ay.dot(Xx), Ay.dot(Xy)]
        assert got == pytest.approx([f.L, f.M, f.M, f.N], abs=1e-8)

    def test_flat_origin(self):
        d = graph("0").point(0, 0)
        # the twist of the normal cancels the frame rotation, so L = M = N = 0
        for v in ((1, 0), (0, 1)):
            assert weingarten(d, v).as_array() == pytest.approx([0, 0, 0], abs=1e-16)

    def test_linear_in_direction(self, random_graphs):
        d = random_graphs[0].point(0.1, 0.5)
        lhs = weingarten(d, (2.0, -3.0)).as_array()
        rhs = 2 * weingarten(d, (1, 0)).as_array() - 3 * weingarten(d, (0, 1)).as_array()
        assert lhs == pytest.approx(rhs, abs=1e-14)


class TestDaniel:
    def test_minimal_on_grid(self):
        spec = catalog("daniel")
        pts = spec.points(*spec.grid(6, 6))
        assert max(abs(mean_curvature(forms_graph(d))) for d in pts) <= 1e-8

    @pytest.mark.parametrize("x,s", [(0.7, 0.5), (-1.2, 1.0), (1.5, 2.2)])
    def test_jet_against_fd_of_height(self, x, s):
        spec = catalog("daniel")
        d = spec.point_s(x, s)
        fd = richardson_jet(spec.height, d.x, d.y, 1e-2)
        assert fd.as_array() == pytest.approx(d.jet.as_array(), abs=1e-6)

    def test_inverse_parameter(self):
        spec = catalog("daniel")
        for s in (0.2, 0.9, 3.0):
            assert spec.s_of_y(spec.y_of_s(s)) == pytest.approx(s, rel=1e-13)
        d = spec.point(0.4, spec.y_of_s(1.3))
        assert d.jet.as_array() == pytest.approx(spec.point_s(0.4, 1.3).jet.as_array(), rel=1e-10, abs=1e-12)


class TestCatalog:
    def test_plane(self):
        spec = catalog("plane", {"a": 1, "b": 2, "c": 0})
        assert spec.expression == parse("a*x + b*y + c", parameters=["a", "b", "c"])
        assert dict(spec.params) == {"a": 1.0, "b": 2.0, "c": 0.0}

    def test_scherk(self):
        spec = catalog("scherk", {"k": 1})
        assert spec.expression.root == parse("x*y/2 + k*(ln(y+sqrt(1+y^2)) + y*sqrt(1+y^2))", parameters=["k"]).root

    def test_vertical_plane(self):
        spec = catalog("vertical_plane", {"A": 1, "B": 1, "C": 0})
        assert isinstance(spec, VerticalSurface)
        for t in (-1.0, 0.5, 2.0):
            assert spec.profile_jet(t)[0] == -t

    def test_vertical_plane_needs_B(self):
        with pytest.raises(SurfaceError):
            catalog("vertical_plane", {"B": 0})

    def test_defaults_and_domains(self):
        assert catalog("plane").domain == (-2.0, 2.0, -2.0, 2.0)
        assert catalog("daniel").domain[2:] == (0.2, 3.0)
        lo, hi = catalog("cmc_vertical").interval
        assert 0 < lo < hi < 1

    def test_errors(self):
        with pytest.raises(SurfaceError):
            catalog("helicoid")
        with pytest.raises(SurfaceError):
            catalog("scherk", {"q": 1})
