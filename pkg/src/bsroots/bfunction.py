"""Monic polynomials in ``s`` that split over the rationals.

b-functions have rational roots, so a :class:`BFunction` is stored as its
root multiset; divisibility is multiset containment.  The canonical root
order puts ``-1`` first (the factor every non-invertible ``f`` forces) and
the remaining roots in decreasing order, e.g. ``(s+1)(s+5/6)(s+7/6)``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import IrreducibleRemainder
from .mpoly import MPoly
from .rational import format_rational, to_rational

MINUS_ONE = Fraction(-1)


def _root_key(r: Fraction):
    return (r != MINUS_ONE, -r)


@dataclass(frozen=True)
class BFunction:
    roots: Tuple[Tuple[Fraction, int], ...] = ()

    def __post_init__(self):
        merged: Dict[Fraction, int] = {}
        for r, k in self.roots:
            if k < 0:
                raise ValueError("negative multiplicity")
            if k:
                merged[Fraction(r)] = merged.get(Fraction(r), 0) + int(k)
        canon = tuple(sorted(merged.items(), key=lambda t: _root_key(t[0])))
        object.__setattr__(self, "roots", canon)

    @classmethod
    def from_roots(cls, roots: Iterable) -> "BFunction":
        """Build from a flat list of roots, repeated by multiplicity."""
        c = Counter(to_rational(r) for r in roots)
        return cls(tuple(c.items()))

    @classmethod
    def one(cls) -> "BFunction":
        return cls(())

    # multiset view -----------------------------------------------------

    def multiset(self) -> Counter:
        return Counter(dict(self.roots))

    def multiplicity(self, r) -> int:
        return dict(self.roots).get(Fraction(r), 0)

    def root_list(self) -> List[Fraction]:
        out = []
        for r, k in self.roots:
            out.extend([r] * k)
        return out

    def distinct_roots(self) -> List[Fraction]:
        return [r for r, _ in self.roots]

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.roots)

    def largest_root(self) -> Fraction | None:
        if not self.roots:
            return None
        return max(r for r, _ in self.roots)

    def divides(self, other: "BFunction") -> bool:
        mine, theirs = self.multiset(), other.multiset()
        return all(theirs[r] >= k for r, k in mine.items())

    # algebra ------------------------------------------------------------

    def __mul__(self, other: "BFunction") -> "BFunction":
        return BFunction(self.roots + other.roots)

    def with_root(self, r, k: int = 1) -> "BFunction":
        return BFunction(self.roots + ((to_rational(r), k),))

    def without_root(self, r) -> "BFunction":
        r = to_rational(r)
        m = self.multiset()
        if not m[r]:
            raise ValueError(f"{format_rational(r)} is not a root")
        m[r] -= 1
        return BFunction(tuple(m.items()))

    def shifted(self, m) -> "BFunction":
        """Roots moved by ``+m``: the polynomial ``b(s - m)``."""
        m = to_rational(m)
        return BFunction(tuple((r + m, k) for r, k in self.roots))

    def coefficients(self) -> List[Fraction]:
        """Coefficients of the expanded monic polynomial, lowest degree first."""
        coeffs = [Fraction(1)]
        for r in self.root_list():
            nxt = [Fraction(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] += c
                nxt[i] -= r * c
            coeffs = nxt
        return coeffs

    def evaluate(self, s) -> Fraction:
        s = to_rational(s)
        out = Fraction(1)
        for r in self.root_list():
            out *= s - r
        return out

    # rendering ----------------------------------------------------------

    def factored(self) -> str:
        if not self.roots:
            return "1"
        parts = []
        for r, k in self.roots:
            if r == 0:
                body = "(s)"
            elif r < 0:
                body = f"(s+{format_rational(-r)})"
            else:
                body = f"(s-{format_rational(r)})"
            parts.append(body if k == 1 else f"{body}^{k}")
        return "".join(parts)

    def to_json(self) -> dict:
        return {
            "factored": self.factored(),
            "roots": [format_rational(r) for r in self.root_list()],
            "degree": self.degree,
        }

    def __str__(self):
        return self.factored()


# ---------------------------------------------------------------------------


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _as_coefficients(p) -> List[Fraction]:
    if isinstance(p, MPoly):
        if p.nvars != 1:
            raise ValueError("expected a univariate polynomial")
        deg = p.degree()
        return [p.coeff((i,)) for i in range(deg + 1)]
    return [to_rational(c) for c in p]


def _eval_homogeneous(ints: Sequence[int], num: int, den: int) -> int:
    # den^n * p(num/den), with ints lowest degree first
    n = len(ints) - 1
    total = 0
    for i, a in enumerate(ints):
        total += a * num ** i * den ** (n - i)
    return total


def _deflate(ints: List[int], num: int, den: int) -> List[int]:
    """Exact division of an integer polynomial by ``den*s - num``."""
    n = len(ints) - 1
    q = [0] * n
    q[n - 1] = ints[n] // den
    for k in range(n - 1, 0, -1):
        q[k - 1] = (ints[k] + num * q[k]) // den
    return q


def factor_rational_roots(p) -> BFunction:
    """Split a monic univariate rational polynomial into linear factors.

    ``p`` is an :class:`MPoly` in one variable or a coefficient sequence
    (lowest degree first).  Raises :class:`IrreducibleRemainder` when a
    factor without rational roots is left over.
    """
    coeffs = _as_coefficients(p)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial")
    if coeffs[-1] != 1:
        raise ValueError("polynomial is not monic")
    den = 1
    for c in coeffs:
        den = math.lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    roots: Counter = Counter()
    while len(ints) > 1 and ints[0] == 0:
        roots[Fraction(0)] += 1
        ints = ints[1:]
    while len(ints) > 1:
        found = None
        lead, const = ints[-1], ints[0]
        for q in _divisors(lead):
            for pnum in _divisors(const):
                for cand in (-pnum, pnum):
                    if math.gcd(cand, q) != 1:
                        continue
                    if _eval_homogeneous(ints, cand, q) == 0:
                        found = (cand, q)
                        break
                if found:
                    break
            if found:
                break
        if not found:
            rest = ", ".join(format_rational(Fraction(a, ints[-1])) for a in ints)
            raise IrreducibleRemainder(
                f"factor without rational roots remains (coefficients, low first: {rest})"
            )
        num, q = found
        roots[Fraction(num, q)] += 1
        ints = _deflate(ints, num, q)
        g = 0
        for a in ints:
            g = math.gcd(g, a)
        ints = [a // g for a in ints]
    return BFunction(tuple(roots.items()))
