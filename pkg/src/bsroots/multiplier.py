"""Multiplier ideals, V-levels and the minimal exponent.

Membership of ``g`` in a multiplier ideal is read off a resolution table;
the V-filtration is only ever represented through the V-level of a single
element, the negated largest root of its b-function.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

from .bfunction import BFunction
from .mpoly import MPoly
from .rational import format_rational, to_rational
from .resolution import (
    UNBOUNDED,
    ResolutionData,
    is_negative_integer,
    min_exponent_lower_bound,
)
from .weyl import DEFAULT_BOUNDS, Bounds, reduced_bfunction, solve_bfunction


@dataclass(frozen=True)
class MonomialIdealSNC:
    """Principal monomial ideal ``(prod x_i^e_i)``."""

    e: Tuple[int, ...]

    @classmethod
    def of_power(cls, a: Sequence[int], lam) -> "MonomialIdealSNC":
        """Multiplier ideal of ``prod x_i^a_i`` at exponent ``lam``."""
        lam = to_rational(lam)
        return cls(tuple(math.floor(lam * ai) for ai in a))

    def contains(self, exponents: Sequence[int]) -> bool:
        return all(b >= e for b, e in zip(exponents, self.e))


@dataclass(frozen=True)
class VLevel:
    value: Fraction


def multiplier_membership(res: ResolutionData, lam) -> bool:
    """``b_i + k_i >= floor(lam * a_i)`` for every divisor."""
    lam = to_rational(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    return all(d.b + d.k >= math.floor(lam * d.a) for d in res.divisors)


def lct_g(res: ResolutionData) -> Fraction:
    res.require_nontrivial()
    return min(d.quotient() for d in res.active)


def jumping_numbers_snc(a: Sequence[int], T) -> List[Fraction]:
    """Exponents in ``(0, T]`` where the multiplier ideal of ``prod x_i^a_i``
    changes (identity resolution)."""
    T = to_rational(T)
    if T <= 0:
        raise ValueError("T must be positive")
    if not any(a):
        raise ValueError("exponent vector must be nonzero")
    out = set()
    for ai in a:
        for j in range(1, math.floor(T * ai) + 1):
            out.add(Fraction(j, ai))
    return sorted(out)


def candidate_jumping_numbers(res: ResolutionData, ell_max: int) -> List[Fraction]:
    """For a general table only candidates ``(k_i+1+b_i+l)/a_i`` can be listed."""
    return sorted({Fraction(d.k + 1 + d.b + ell, d.a) for d in res.active for ell in range(ell_max + 1)})


def v_level_from_bfunction(b: BFunction) -> VLevel:
    if b.degree == 0:
        raise ValueError("b-function has no roots")
    return VLevel(-b.largest_root())


def floor_below(alpha, a: int) -> int:
    """``floor((alpha - eps) * a)`` for all sufficiently small ``eps > 0``."""
    x = to_rational(alpha) * a
    if x.denominator == 1:
        return int(x) - 1
    return math.floor(x)


@lru_cache(maxsize=None)
def _monomial_bfunction(a: Tuple[int, ...], b: Tuple[int, ...], bounds: Bounds) -> BFunction:
    return solve_bfunction(MPoly.monomial(a), MPoly.monomial(b), bounds).bfunction


def _solve_job(args):
    a, b, bounds = args
    return _monomial_bfunction(a, b, bounds)


@dataclass(frozen=True)
class BudurSaitoReport:
    a: Tuple[int, ...]
    alpha: Fraction
    cap: int
    side_a: Tuple[Tuple[int, ...], ...]
    side_b: Tuple[Tuple[int, ...], ...]
    bfunctions: Tuple[Tuple[Tuple[int, ...], BFunction], ...]
    bounds: Bounds

    @property
    def symmetric_difference(self):
        return tuple(sorted(set(self.side_a) ^ set(self.side_b)))

    @property
    def agrees(self) -> bool:
        return not self.symmetric_difference

    def to_json(self) -> dict:
        return {
            "a": list(self.a),
            "alpha": format_rational(self.alpha),
            "cap": self.cap,
            "bounds": self.bounds.to_json(),
            "side_a": [list(e) for e in self.side_a],
            "side_b": [list(e) for e in self.side_b],
            "symmetric_difference": [list(e) for e in self.symmetric_difference],
            "agrees": self.agrees,
            "bfunctions": [
                {"g": list(e), **b.to_json()} for e, b in self.bfunctions
            ],
        }


def monomial_bfunctions(a: Sequence[int], cap: int, bounds: Bounds = DEFAULT_BOUNDS,
                        workers: int = 1) -> Dict[Tuple[int, ...], BFunction]:
    """Oracle b-functions of ``g f^s`` for every monomial ``g`` with all
    exponents ``<= cap``; results are cached across calls."""
    a = tuple(int(x) for x in a)
    monos = list(product(range(cap + 1), repeat=len(a)))
    jobs = [(a, e, bounds) for e in monos]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_solve_job, jobs))
    else:
        results = [_solve_job(j) for j in jobs]
    return dict(zip(monos, results))


def budur_saito_check(a: Sequence[int], alpha, cap: int, bounds: Bounds = DEFAULT_BOUNDS,
                      workers: int = 1) -> BudurSaitoReport:
    """Compare ``{g : g f^s in V^alpha}`` (oracle side) with the multiplier
    ideal just below ``alpha`` (resolution side) over monomials ``g``."""
    alpha = to_rational(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    a = tuple(int(x) for x in a)
    bfuns = monomial_bfunctions(a, cap, bounds, workers)
    thresholds = [floor_below(alpha, ai) for ai in a]
    side_a, side_b = [], []
    for e, b in sorted(bfuns.items()):
        if v_level_from_bfunction(b).value >= alpha:
            side_a.append(e)
        if all(bi >= t for bi, t in zip(e, thresholds)):
            side_b.append(e)
    return BudurSaitoReport(a, alpha, cap, tuple(side_a), tuple(side_b),
                            tuple(sorted(bfuns.items())), bounds)


def min_exponent_from_bfunction(b_f: BFunction):
    """Negated largest root of ``b_f / (s+1)``; ``UNBOUNDED`` if that is 1."""
    reduced = reduced_bfunction(b_f)
    if reduced.degree == 0:
        return UNBOUNDED
    return -reduced.largest_root()


def sandwich_for_shifted(b_f: BFunction, m: int) -> Tuple[BFunction, BFunction]:
    """``btilde(s-m)`` divides ``b_{d_t^m f^s}``, which divides ``(s+1) btilde(s-m)``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    lower = reduced_bfunction(b_f).shifted(m)
    return lower, lower.with_root(-1)


def split_exponent(q: Fraction) -> Tuple[int, Fraction]:
    """Write ``q > 0`` as ``m + alpha`` with integer ``m >= 0`` and ``alpha`` in (0, 1]."""
    m = math.ceil(q) - 1
    return m, q - m


def saito_criterion_check(b_f: BFunction, res: ResolutionData) -> bool:
    """Confirm that the sandwich roots for ``d_t^m f^s`` are all ``<= -alpha``
    (or negative integers), where the lower bound on the minimal exponent
    is ``m + alpha``."""
    bound = min_exponent_lower_bound(res)
    if bound is UNBOUNDED:
        return True
    m, alpha = split_exponent(bound)
    lower, upper = sandwich_for_shifted(b_f, m)
    return all(r <= -alpha or is_negative_integer(r)
               for poly in (lower, upper) for r in poly.distinct_roots())
