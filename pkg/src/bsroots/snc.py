"""Closed-form b-function bounds for monomials and for shifted elements.

For ``f = prod x_i^a_i`` and ``g = prod x_i^b_i`` the b-function of
``g * d_t^m f^s`` divides explicit products of linear factors; each bound
is returned as a :class:`BFunction` so that checking an oracle answer is
multiset containment.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .bfunction import BFunction
from .errors import MissingRootMinusOne, NonzeroShift, PreconditionViolated
from .mpoly import MPoly


@dataclass(frozen=True)
class MonomialData:
    a: Tuple[int, ...]
    b: Tuple[int, ...]
    m: int = 0

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if len(self.a) != len(self.b):
            raise ValueError("exponent vectors of f and g must have equal length")
        if any(x < 0 for x in self.a + self.b) or self.m < 0:
            raise ValueError("exponents and m must be non-negative")

    @property
    def f(self) -> MPoly:
        return MPoly.monomial(self.a)

    @property
    def g(self) -> MPoly:
        return MPoly.monomial(self.b)

    def g_over_f_regular(self) -> bool:
        return all(bi >= ai for ai, bi in zip(self.a, self.b))


def _factor_roots(a, b, m, skip_first=False):
    roots = []
    for idx, (ai, bi) in enumerate(zip(a, b)):
        if skip_first and idx == 0:
            continue
        for j in range(1, ai + 1):
            roots.append(m - Fraction(bi + j, ai))
    return roots


def lem33_bound_general(d: MonomialData) -> BFunction:
    """``(s+1) * prod_i prod_{j=1..a_i} (s - m + (b_i+j)/a_i)``."""
    return BFunction.from_roots([-1] + _factor_roots(d.a, d.b, d.m))


def lem33_bound_m0(d: MonomialData) -> BFunction:
    """``prod_i prod_{j=1..a_i} (s + (b_i+j)/a_i)``; only for ``m = 0``."""
    if d.m != 0:
        raise NonzeroShift(f"this bound needs m = 0, got m = {d.m}", field="m")
    return BFunction.from_roots(_factor_roots(d.a, d.b, 0))


def lem33_bound_smooth_factor(d: MonomialData) -> BFunction:
    """Bound when ``x_1`` appears in ``f`` to the first power and not in ``g``."""
    if not d.a or d.a[0] != 1 or d.b[0] != 0:
        raise PreconditionViolated("requires a_1 = 1 and b_1 = 0", field="a")
    return BFunction.from_roots([-1] + _factor_roots(d.a, d.b, d.m, skip_first=True))


def lem27_shift_bound(b_gfs: BFunction, m: int) -> BFunction:
    """``(s+1) * btilde(s - m)`` where ``btilde = b_gfs / (s+1)``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if not b_gfs.multiplicity(-1):
        raise MissingRootMinusOne(f"-1 is not a root of {b_gfs.factored()}")
    return b_gfs.without_root(-1).shifted(m).with_root(-1)
