"""Toric resolutions of Newton-nondegenerate plane curves.

The fan of the positive quadrant is subdivided by the inner normals of the
compact Newton polygon faces and then refined to a regular fan.  Each ray
``v`` of the refined fan gives a divisor with ``a = min <v, m>`` over the
support of ``f``, discrepancy ``k = v1 + v2 - 1`` and ``b = <v, g>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import DegenerateInput, NonReduced, NonvanishingAtOrigin, ZeroPolynomial
from .mpoly import MPoly, gcd, is_squarefree
from .resolution import DivisorRecord, ResolutionData

Vec = Tuple[int, int]


def det(u: Vec, w: Vec) -> int:
    return u[0] * w[1] - u[1] * w[0]


def primitive(v: Vec) -> Vec:
    g = math.gcd(v[0], v[1])
    return (v[0] // g, v[1] // g)


@dataclass(frozen=True)
class Face:
    start: Vec  # upper-left endpoint
    end: Vec    # lower-right endpoint
    normal: Vec


@dataclass(frozen=True)
class NewtonPolygon2D:
    support: Tuple[Vec, ...]
    vertices: Tuple[Vec, ...]
    compact_faces: Tuple[Face, ...]

    def pairing_min(self, v: Vec) -> int:
        return min(v[0] * m[0] + v[1] * m[1] for m in self.support)


def newton_polygon(f: MPoly) -> NewtonPolygon2D:
    if f.nvars != 2:
        raise ValueError("Newton polygons are built for two variables only")
    if f.is_zero():
        raise ZeroPolynomial("f is zero")
    if f.constant_term() != 0:
        raise NonvanishingAtOrigin("f does not vanish at the origin")
    support = tuple(sorted(f.support()))
    # lower-left hull: for each x keep the lowest y, then walk the lower hull
    lowest = {}
    for x, y in support:
        lowest[x] = min(y, lowest.get(x, y))
    pts = sorted(lowest.items())
    staircase = []
    best_y = None
    for x, y in pts:
        if best_y is None or y < best_y:
            staircase.append((x, y))
            best_y = y
    hull: List[Vec] = []
    for p in staircase:
        while len(hull) >= 2 and det(
            (hull[-1][0] - hull[-2][0], hull[-1][1] - hull[-2][1]),
            (p[0] - hull[-2][0], p[1] - hull[-2][1]),
        ) <= 0:
            hull.pop()
        hull.append(p)
    faces = []
    for p, q in zip(hull, hull[1:]):
        faces.append(Face(p, q, primitive((p[1] - q[1], q[0] - p[0]))))
    return NewtonPolygon2D(support, tuple(hull), tuple(faces))


def face_polynomial(f: MPoly, face: Face) -> List[Fraction]:
    """Coefficients ``c_t`` of ``f`` at ``start + t * step`` along the face."""
    dx, dy = face.end[0] - face.start[0], face.end[1] - face.start[1]
    length = math.gcd(dx, dy)
    step = (dx // length, dy // length)
    return [f.coeff((face.start[0] + t * step[0], face.start[1] + t * step[1]))
            for t in range(length + 1)]


def nondegeneracy_check(f: MPoly, np: NewtonPolygon2D | None = None) -> bool:
    """Every face polynomial is square-free as a polynomial in the face
    monomial, i.e. has no critical point on the torus."""
    np = newton_polygon(f) if np is None else np
    for face in np.compact_faces:
        coeffs = face_polynomial(f, face)
        h = MPoly(1, {(t,): c for t, c in enumerate(coeffs) if c})
        if not gcd(h, h.diff(0)).is_constant():
            return False
    return True


def _first_ray(u: Vec, w: Vec) -> Vec:
    """First ray after ``u`` in the minimal regular subdivision of cone(u, w)."""
    d = det(u, w)
    # a lattice vector v0 with det(u, v0) = 1, from the extended gcd
    g, s, t = _ext_gcd(u[0], u[1])
    assert g == 1
    v0 = (-t, s)
    # det(v0 + j u, w) = det(v0, w) + j d; take the value in [1, d-1]
    r = det(v0, w)
    j = (1 - r + d - 1) // d
    v = (v0[0] + j * u[0], v0[1] + j * u[1])
    while det(v, w) > d - 1:
        v = (v[0] - u[0], v[1] - u[1])
    while det(v, w) < 1:
        v = (v[0] + u[0], v[1] + u[1])
    return v


def _ext_gcd(a: int, b: int):
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def regular_subdivision(rays: Sequence[Vec]) -> List[Vec]:
    """Refine consecutive cones (rays ordered counterclockwise) until every
    adjacent pair has determinant 1."""
    out = [rays[0]]
    for w in rays[1:]:
        u = out[-1]
        while det(u, w) > 1:
            u = _first_ray(u, w)
            out.append(u)
        out.append(w)
    return out


def _ordered_rays(np: NewtonPolygon2D) -> List[Vec]:
    normals = {face.normal for face in np.compact_faces}
    rays = {(1, 0), (0, 1)} | normals
    # counterclockwise from (1, 0) to (0, 1)
    return sorted(rays, key=lambda v: Fraction(v[1], v[0]) if v[0] else Fraction(10 ** 18))


def fan_rays(f: MPoly, extra: Sequence[Vec] = ()) -> List[Vec]:
    np = newton_polygon(f)
    rays = _ordered_rays(np)
    if extra:
        rays = sorted(set(rays) | set(extra),
                      key=lambda v: Fraction(v[1], v[0]) if v[0] else Fraction(10 ** 18))
    fan = regular_subdivision(rays)
    x_mult, y_mult = np.pairing_min((1, 0)), np.pairing_min((0, 1))
    if len(fan) == 2 and x_mult > 0 and y_mult > 0:
        # both axes lie in D: blow up the origin so their strict transforms separate
        fan = [(1, 0), (1, 1), (0, 1)]
    return fan


def resolution_from_newton(f: MPoly, g: Sequence[int] = (0, 0),
                           extra_rays: Sequence[Vec] = ()) -> ResolutionData:
    """Resolution table of the toric resolution of ``f`` at the origin, with
    ``b`` computed for the monomial ``x^g[0] y^g[1]``."""
    np = newton_polygon(f)
    if not nondegeneracy_check(f, np):
        raise DegenerateInput("f is degenerate with respect to its Newton polygon")
    if not is_squarefree(f):
        raise NonReduced("f is not reduced")
    g = tuple(int(x) for x in g)
    if len(g) != 2 or any(x < 0 for x in g):
        raise ValueError("g must be an exponent pair")
    fan = fan_rays(f, extra_rays)
    records = []
    for v in fan[1:-1]:
        records.append(DivisorRecord(
            f"ray({v[0]},{v[1]})",
            a=np.pairing_min(v),
            k=v[0] + v[1] - 1,
            b=v[0] * g[0] + v[1] * g[1],
            exceptional=True,
        ))
    for axis, gi in (((1, 0), g[0]), ((0, 1), g[1])):
        a = np.pairing_min(axis)
        if a > 0 or gi > 0:
            records.append(DivisorRecord(f"ray({axis[0]},{axis[1]})", a=a, k=0, b=gi,
                                         exceptional=False))
    if not f.is_monomial():
        records.append(DivisorRecord("strict", a=1, k=0, b=0, exceptional=False))
    return ResolutionData(tuple(records), strict_transform_smooth=True, reduced=True)
