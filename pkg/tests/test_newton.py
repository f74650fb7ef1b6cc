import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bsroots.errors import DegenerateInput, NonReduced, NonvanishingAtOrigin, ZeroPolynomial
from bsroots.mpoly import MPoly
from bsroots.multiplier import lct_g, min_exponent_from_bfunction
from bsroots.newton import (
    det,
    fan_rays,
    newton_polygon,
    nondegeneracy_check,
    regular_subdivision,
    resolution_from_newton,
)
from bsroots.resolution import min_exponent_lower_bound
from corpus import CROSS_CHECK, MONOMIAL_G, PLANE_CURVES, bounds_for, oracle, poly

F = Fraction


def records(res):
    return {(d.label, d.a, d.k, d.b, d.exceptional) for d in res.divisors}


def test_polygon_examples():
    cusp = newton_polygon(poly("x^2+y^3"))
    assert [f.normal for f in cusp.compact_faces] == [(3, 2)]
    xy = newton_polygon(poly("x*y"))
    assert xy.vertices == ((1, 1),) and xy.compact_faces == ()
    quad = newton_polygon(poly("x^2+x*y+y^2"))
    assert [f.normal for f in quad.compact_faces] == [(1, 1)]


def test_polygon_errors():
    with pytest.raises(ZeroPolynomial):
        newton_polygon(MPoly.zero(2))
    with pytest.raises(NonvanishingAtOrigin):
        newton_polygon(poly("x^2+y^3+1"))


@pytest.mark.parametrize("ftext, expected", [
    ("x^2+y^3", True),
    ("x^2+2*x*y+y^2", False),
    ("x^2+y^2", True),
    ("x^2-y^2", True),
    ("x^3+y^3", True),
])
def test_nondegeneracy(ftext, expected):
    assert nondegeneracy_check(poly(ftext)) is expected


def test_cusp_resolution():
    res = resolution_from_newton(poly("x^2+y^3"))
    assert records(res) == {
        ("ray(2,1)", 3, 2, 0, True),
        ("ray(3,2)", 6, 4, 0, True),
        ("ray(1,1)", 2, 1, 0, True),
        ("strict", 1, 0, 0, False),
    }
    assert res.reduced and res.strict_transform_smooth


def test_xy_resolution():
    res = resolution_from_newton(poly("x*y"))
    assert records(res) == {
        ("ray(1,1)", 2, 1, 0, True),
        ("ray(1,0)", 1, 0, 0, False),
        ("ray(0,1)", 1, 0, 0, False),
    }


def test_circle_resolution():
    res = resolution_from_newton(poly("x^2+y^2"))
    assert records(res) == {("ray(1,1)", 2, 1, 0, True), ("strict", 1, 0, 0, False)}


def test_monomial_g_orders():
    res = resolution_from_newton(poly("x^2+y^3"), (1, 0))
    by_label = {d.label: d for d in res.divisors}
    assert by_label["ray(3,2)"].b == 3
    assert by_label["ray(1,0)"].a == 0 and by_label["ray(1,0)"].b == 1


def test_resolution_errors():
    with pytest.raises(DegenerateInput):
        resolution_from_newton(poly("x^2+2*x*y+y^2"))
    with pytest.raises(NonReduced):
        resolution_from_newton(poly("x^2*y"))


@pytest.mark.parametrize("ftext", [f for f, _ in PLANE_CURVES] + ["x^5+y^7", "x^4+x^2*y^2+y^5"])
def test_fan_is_regular(ftext):
    fan = fan_rays(poly(ftext))
    assert fan[0] == (1, 0) and fan[-1] == (0, 1)
    for u, w in zip(fan, fan[1:]):
        assert det(u, w) == 1
        assert math.gcd(*w) == 1 and min(w) >= 0


@given(st.lists(st.tuples(st.integers(1, 12), st.integers(1, 12)), max_size=4))
def test_subdivision_of_any_fan_is_regular(inner):
    rays = {(1, 0), (0, 1)} | {(p // math.gcd(p, q), q // math.gcd(p, q)) for p, q in inner}
    rays = sorted(rays, key=lambda v: F(v[1], v[0]) if v[0] else F(10 ** 9))
    fan = regular_subdivision(rays)
    assert set(rays) <= set(fan)
    assert all(det(u, w) == 1 for u, w in zip(fan, fan[1:]))


@pytest.mark.parametrize("ftext", [f for f, _ in PLANE_CURVES])
@pytest.mark.parametrize("g", list(MONOMIAL_G.values()))
def test_lct_independent_of_extra_ray(ftext, g):
    f = poly(ftext)
    base = lct_g(resolution_from_newton(f, g))
    fan = fan_rays(f)
    for u, w in zip(fan, fan[1:]):
        extra = (u[0] + w[0], u[1] + w[1])
        refined = resolution_from_newton(f, g, extra_rays=[extra])
        refined_fan = fan_rays(f, [extra])
        assert all(det(p, q) == 1 for p, q in zip(refined_fan, refined_fan[1:]))
        assert lct_g(refined) == base


@pytest.mark.parametrize("ftext", CROSS_CHECK)
@pytest.mark.parametrize("gname", list(MONOMIAL_G))
def test_lct_matches_oracle(ftext, gname):
    res = resolution_from_newton(poly(ftext), MONOMIAL_G[gname])
    assert lct_g(res) == -oracle(ftext, gname, bounds_for(ftext)).largest_root()


def test_min_exponent_tight_for_cusp():
    res = resolution_from_newton(poly("x^2+y^3"))
    assert min_exponent_lower_bound(res) == F(5, 6)
    assert min_exponent_from_bfunction(oracle("x^2+y^3")) == F(5, 6)
