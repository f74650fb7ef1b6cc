"""Log-resolution tables and the root bounds read off from them.

A :class:`ResolutionData` is only the combinatorial table of a resolution:
for each divisor ``E_i`` its multiplicity ``a`` in the pullback of ``f``,
its coefficient ``k`` in the relative canonical divisor, the order ``b`` of
``g`` along it, and whether it is exceptional.  Nothing here checks that a
table comes from an actual resolution.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Set, Tuple

from .errors import HypothesisViolated, ParseError


class Unbounded:
    """Value of a minimum over an empty set (or an infinite exponent)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNBOUNDED"

    def __str__(self):
        return "inf"

    def _cmp(self, other):
        if other is self:
            return 0
        return 1

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("bsroots.Unbounded")

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self


UNBOUNDED = Unbounded()


@dataclass(frozen=True)
class DivisorRecord:
    label: str
    a: int
    k: int
    b: int = 0
    exceptional: bool = False

    def __post_init__(self):
        for name in ("a", "k", "b"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ParseError(f"{name} must be a non-negative integer", field=name)

    def quotient(self, with_b: bool = True, extra: int = 0):
        """``(k + 1 + b + extra) / a``, unbounded when ``a = 0``."""
        if self.a == 0:
            return UNBOUNDED
        return Fraction(self.k + 1 + (self.b if with_b else 0) + extra, self.a)

    def to_json(self) -> dict:
        return {"label": self.label, "a": self.a, "k": self.k, "b": self.b,
                "exceptional": self.exceptional}


@dataclass(frozen=True)
class ResolutionData:
    divisors: Tuple[DivisorRecord, ...]
    strict_transform_smooth: bool = False
    reduced: bool = False

    def __post_init__(self):
        object.__setattr__(self, "divisors", tuple(self.divisors))
        if not self.divisors:
            raise ParseError("a resolution table needs at least one divisor", field="divisors")

    @property
    def active(self) -> List[DivisorRecord]:
        """Records with ``a > 0``."""
        return [d for d in self.divisors if d.a > 0]

    def require_nontrivial(self):
        if not self.active:
            raise HypothesisViolated("every divisor has a = 0 (f is invertible)", field="divisors")

    def with_g_orders(self, orders) -> "ResolutionData":
        """Same table with the ``b`` column replaced."""
        orders = list(orders)
        if len(orders) != len(self.divisors):
            raise ValueError("need one order per divisor")
        return ResolutionData(
            tuple(DivisorRecord(d.label, d.a, d.k, int(o), d.exceptional)
                  for d, o in zip(self.divisors, orders)),
            self.strict_transform_smooth,
            self.reduced,
        )

    def to_json(self) -> dict:
        return {
            "divisors": [d.to_json() for d in self.divisors],
            "reduced": self.reduced,
            "strict_transform_smooth": self.strict_transform_smooth,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ResolutionData":
        if not isinstance(data, dict):
            raise ParseError("resolution must be an object", field="resolution")
        divs = data.get("divisors")
        if not isinstance(divs, list):
            raise ParseError("'divisors' must be a list", field="resolution.divisors")
        records = []
        for i, d in enumerate(divs):
            path = f"resolution.divisors[{i}]"
            if not isinstance(d, dict):
                raise ParseError("divisor must be an object", field=path)
            try:
                records.append(DivisorRecord(
                    label=str(d.get("label", f"E{i + 1}")),
                    a=d["a"], k=d["k"], b=d.get("b", 0),
                    exceptional=bool(d.get("exceptional", False)),
                ))
            except KeyError as exc:
                raise ParseError(f"missing field {exc.args[0]!r}", field=f"{path}.{exc.args[0]}")
            except ParseError as exc:
                raise ParseError(str(exc), field=f"{path}.{exc.field}")
        for flag in ("reduced", "strict_transform_smooth"):
            if not isinstance(data.get(flag, False), bool):
                raise ParseError(f"'{flag}' must be a boolean", field=f"resolution.{flag}")
        return cls(tuple(records), bool(data.get("strict_transform_smooth", False)),
                   bool(data.get("reduced", False)))


def identity_resolution(a, b=None) -> ResolutionData:
    """Table of the identity map for the SNC monomial ``prod x_i^a_i``."""
    b = [0] * len(a) if b is None else list(b)
    return ResolutionData(
        tuple(DivisorRecord(f"x{i + 1}", int(ai), 0, int(bi), False)
              for i, (ai, bi) in enumerate(zip(a, b))),
        strict_transform_smooth=all(ai <= 1 for ai in a) and sum(1 for ai in a if ai) <= 1,
        reduced=all(ai <= 1 for ai in a),
    )


# ---------------------------------------------------------------------------
# candidate sets


def lichtin_candidates(res: ResolutionData, ell_max: int) -> Set[Fraction]:
    res.require_nontrivial()
    return {-Fraction(d.k + 1 + ell, d.a) for d in res.active for ell in range(ell_max + 1)}


def thm12_upper_bound(res: ResolutionData, m: int) -> Fraction:
    """``-min{1, -m + min_i (k_i+1+b_i)/a_i}``, reported without clamping."""
    res.require_nontrivial()
    inner = -m + min(d.quotient() for d in res.active)
    return -min(Fraction(1), inner)


def thm12_m0_bound(res: ResolutionData) -> Fraction:
    res.require_nontrivial()
    return -min(d.quotient() for d in res.active)


def _g1_records(res: ResolutionData, exceptional_only: bool) -> List[DivisorRecord]:
    if exceptional_only:
        if not (res.reduced and res.strict_transform_smooth):
            raise HypothesisViolated(
                "restricting to exceptional divisors needs a reduced divisor "
                "with smooth strict transform", field="resolution")
        return [d for d in res.active if d.exceptional]
    return res.active


def thm12_g1_candidates(res: ResolutionData, m: int, ell_max: int,
                        exceptional_only: bool = False) -> Tuple[Set[Fraction], bool]:
    """Candidates ``m - (k_i+1+l)/a_i`` for ``g = 1``; negative integers are
    always admissible as well (the returned flag)."""
    res.require_nontrivial()
    recs = _g1_records(res, exceptional_only)
    cands = {m - Fraction(d.k + 1 + ell, d.a) for d in recs for ell in range(ell_max + 1)}
    return cands, True


def remark_g_candidates(res: ResolutionData, m: int, ell_max: int) -> Tuple[Set[Fraction], bool]:
    """Candidates ``m - (k_i+1+b_i+l)/a_i``.  The caller vouches that ``g``
    is SNC-compatible off the zero locus of ``f``.  For ``m = 0`` negative
    integers are not automatically admissible."""
    res.require_nontrivial()
    cands = {m - Fraction(d.k + 1 + d.b + ell, d.a) for d in res.active for ell in range(ell_max + 1)}
    return cands, m != 0


def candidate_witness(root, res: ResolutionData, m: int = 0, with_b: bool = False,
                      exceptional_only: bool = False) -> Optional[Tuple[str, int]]:
    """Find ``(label, l)`` with ``root = m - (k+1+[b]+l)/a`` and ``l >= 0``.

    This is the exact membership test for the infinite candidate sets: it
    solves for ``l`` instead of enumerating up to a cutoff.
    """
    root = Fraction(root)
    recs = _g1_records(res, exceptional_only) if exceptional_only else res.active
    for d in recs:
        ell = (m - root) * d.a - d.k - 1 - (d.b if with_b else 0)
        if ell.denominator == 1 and ell >= 0:
            return d.label, int(ell)
    return None


def is_negative_integer(q) -> bool:
    q = Fraction(q)
    return q.denominator == 1 and q < 0


def min_exponent_lower_bound(res: ResolutionData):
    """``min (k_i+1)/a_i`` over exceptional divisors, or ``UNBOUNDED``."""
    if not (res.reduced and res.strict_transform_smooth):
        raise HypothesisViolated(
            "the minimal exponent bound needs a reduced divisor with smooth strict transform",
            field="resolution")
    vals = [Fraction(d.k + 1, d.a) for d in res.divisors if d.exceptional and d.a > 0]
    return min(vals) if vals else UNBOUNDED


def ell_needed(res: ResolutionData, roots, with_b: bool = False, m: int = 0) -> int:
    """Smallest ``ell_max`` such that every root lies in the enumerated set,
    or -1 if some root is not a candidate at all."""
    worst = 0
    for r in roots:
        best = None
        for d in res.active:
            ell = (m - Fraction(r)) * d.a - d.k - 1 - (d.b if with_b else 0)
            if ell.denominator == 1 and ell >= 0:
                best = int(ell) if best is None else min(best, int(ell))
        if best is None:
            return -1
        worst = max(worst, best)
    return worst
