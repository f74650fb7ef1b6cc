"""Multivariate polynomials with exact rational coefficients.

An :class:`MPoly` is an immutable map from exponent tuples to nonzero
``Fraction`` coefficients.  Terms are kept in graded lexicographic order
(largest first) so that iteration, printing and serialization are
deterministic.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import ParseError, VariableMismatch
from .rational import format_rational, to_rational

Exponent = Tuple[int, ...]


def grlex_key(e: Exponent):
    return (sum(e), e)


class MPoly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Dict[Exponent, Fraction] | None = None):
        if nvars < 0:
            raise ValueError("variable count must be non-negative")
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise VariableMismatch(f"exponent {e} does not have {nvars} entries")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self._terms = dict(sorted(clean.items(), key=lambda t: grlex_key(t[0]), reverse=True))
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def _raw(cls, nvars, terms):
        # terms must already be free of zeros
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = dict(sorted(terms.items(), key=lambda t: grlex_key(t[0]), reverse=True))
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars, c):
        c = Fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars):
        return cls.constant(nvars, 1)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1):
        e = tuple(int(x) for x in exponent)
        return cls(len(e), {e: Fraction(coeff)})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e)

    # basic queries ------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def coeff(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, i) -> int:
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def support(self):
        return list(self._terms)

    def leading_term(self) -> Tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return next(iter(self._terms.items()))

    def is_monomial(self):
        return len(self._terms) == 1

    # arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(self.nvars, to_rational(other))
        if other.nvars != self.nvars:
            raise VariableMismatch(f"{self.nvars} vs {other.nvars} variables")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return MPoly.zero(self.nvars)
        return MPoly._raw(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, e: Sequence[int], coeff=1):
        """Multiply by the monomial ``coeff * x^e``."""
        coeff = Fraction(coeff)
        if not coeff:
            return MPoly.zero(self.nvars)
        return MPoly._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(k, e)): coeff * c for k, c in self._terms.items()},
        )

    def diff(self, i: int):
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MPoly._raw(self.nvars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise VariableMismatch("point has wrong dimension")
        pt = [to_rational(p) for p in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for x, k in zip(pt, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def extend(self, extra: int = 1):
        """Embed into a ring with ``extra`` further variables appended."""
        pad = (0,) * extra
        return MPoly._raw(self.nvars + extra, {e + pad: c for e, c in self._terms.items()})

    def drop_last(self, k: int = 1):
        """Inverse of :meth:`extend`; the dropped variables must not occur."""
        out = {}
        for e, c in self._terms.items():
            if any(e[self.nvars - k:]):
                raise VariableMismatch("dropped variable occurs in polynomial")
            out[e[: self.nvars - k]] = c
        return MPoly._raw(self.nvars - k, out)

    def monic(self):
        if not self._terms:
            return self
        return self.scale(1 / self.leading_term()[1])

    def divmod(self, divisor: "MPoly"):
        """Multivariate division by a single polynomial (grlex).

        The remainder is zero exactly when ``divisor`` divides ``self``.
        """
        divisor = self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = divisor.leading_term()
        rem = dict(self._terms)
        quot: Dict[Exponent, Fraction] = {}
        out_rem: Dict[Exponent, Fraction] = {}
        while rem:
            e = max(rem, key=grlex_key)
            c = rem.pop(e)
            if all(a >= b for a, b in zip(e, le)):
                qe = tuple(a - b for a, b in zip(e, le))
                qc = c / lc
                quot[qe] = quot.get(qe, 0) + qc
                for de, dc in divisor._terms.items():
                    if de == le:
                        continue
                    te = tuple(a + b for a, b in zip(de, qe))
                    v = rem.get(te, 0) - qc * dc
                    if v:
                        rem[te] = v
                    else:
                        rem.pop(te, None)
            else:
                out_rem[e] = c
        return (
            MPoly._raw(self.nvars, {e: c for e, c in quot.items() if c}),
            MPoly._raw(self.nvars, out_rem),
        )

    def divides(self, other: "MPoly") -> bool:
        return other.divmod(self)[1].is_zero()

    def exact_div(self, divisor: "MPoly"):
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ValueError("polynomial division is not exact")
        return q

    def __floordiv__(self, divisor):
        return self.exact_div(divisor)

    # comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.nvars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self._terms.items())))
        return self._hash

    # serialization ------------------------------------------------------

    def to_json(self) -> List:
        return [[format_rational(c), list(e)] for e, c in self._terms.items()]

    @classmethod
    def from_json(cls, nvars: int, data) -> "MPoly":
        terms: Dict[Exponent, Fraction] = {}
        for item in data:
            if not isinstance(item, (list, tuple)) or len(item) != 2:
                raise ParseError(f"term must be [coefficient, exponents], got {item!r}")
            c, e = item
            if not isinstance(e, (list, tuple)) or len(e) != nvars:
                raise ParseError(f"exponent vector must have {nvars} entries, got {e!r}")
            if not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in e):
                raise ParseError(f"exponents must be non-negative integers, got {e!r}")
            e = tuple(e)
            terms[e] = terms.get(e, Fraction(0)) + to_rational(c)
        return cls(nvars, terms)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names else default_names(self.nvars)
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.to_str()!r})"


def default_names(nvars: int) -> List[str]:
    if nvars <= 3:
        return ["x", "y", "z"][:nvars]
    return [f"x{i + 1}" for i in range(nvars)]


# ---------------------------------------------------------------------------
# infix grammar: sums of products of literals, variables, parenthesized
# expressions and non-negative integer powers; no division operator.

_TOKEN_RE = re.compile(r"\s*(?:(\d+/\d+|\d+)|(x\d+|[xyz])|(\*\*|[\^*+\-()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos} in {text!r}")
        num, var, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif var is not None:
            tokens.append(("var", var))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


def parse_poly(text: str, nvars: int) -> MPoly:
    """Parse ``"x^2+y^3"``-style input.  Variables are ``x, y, z`` (for up to
    three variables) or ``x1 .. xn``."""
    if not isinstance(text, str):
        raise ParseError(f"polynomial must be a string, got {type(text).__name__}")
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial")
    index = {f"x{i + 1}": i for i in range(nvars)}
    if nvars <= 3:
        index.update({n: i for i, n in enumerate(["x", "y", "z"][:nvars])})
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expr():
        kind, val = peek()
        sign = 1
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        acc = term().scale(sign)
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                t = term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term():
        acc = power()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                acc = acc * power()
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = acc * power()
            else:
                return acc

    def power():
        base = atom()
        kind, val = peek()
        if kind == "op" and val == "^":
            take()
            kind, val = peek()
            if kind != "num" or "/" in val:
                raise ParseError(f"exponent must be a non-negative integer in {text!r}")
            take()
            return base ** int(val)
        return base

    def atom():
        if pos >= len(tokens):
            raise ParseError(f"unexpected end of input in {text!r}")
        kind, val = take()
        if kind == "num":
            return MPoly.constant(nvars, to_rational(val))
        if kind == "var":
            if val not in index:
                raise ParseError(f"unknown variable {val!r} for {nvars} variables")
            return MPoly.variable(nvars, index[val])
        if val == "(":
            inner = expr()
            if peek() != ("op", ")"):
                raise ParseError(f"missing ')' in {text!r}")
            take()
            return inner
        raise ParseError(f"unexpected {val!r} in {text!r}")

    result = expr()
    if pos != len(tokens):
        raise ParseError(f"trailing input {tokens[pos][1]!r} in {text!r}")
    return result


def as_poly(value, nvars: int) -> MPoly:
    """Accept either the infix string form or the term-list form."""
    if isinstance(value, MPoly):
        if value.nvars != nvars:
            raise VariableMismatch(f"expected {nvars} variables")
        return value
    if isinstance(value, str):
        return parse_poly(value, nvars)
    if isinstance(value, (list, tuple)):
        return MPoly.from_json(nvars, value)
    raise ParseError(f"cannot read a polynomial from {value!r}")


# ---------------------------------------------------------------------------
# gcd via recursive primitive pseudo-remainder sequences


def _main_var(a: MPoly, b: MPoly):
    for i in reversed(range(a.nvars)):
        if a.degree_in(i) > 0 or b.degree_in(i) > 0:
            return i
    return None


def _to_univariate(p: MPoly, i: int) -> List[MPoly]:
    """Coefficient list (low degree first) in variable ``i``."""
    deg = p.degree_in(i)
    coeffs = [dict() for _ in range(deg + 1)]
    for e, c in p.items():
        k = e[i]
        ne = list(e)
        ne[i] = 0
        coeffs[k][tuple(ne)] = c
    return [MPoly._raw(p.nvars, c) for c in coeffs]


def _from_univariate(coeffs: List[MPoly], i: int) -> MPoly:
    out = MPoly.zero(coeffs[0].nvars if coeffs else 0)
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * c.nvars
            e[i] = k
            out = out + c.shift(e)
    return out


def _trim(coeffs):
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _content(coeffs: List[MPoly]) -> MPoly:
    g = MPoly.zero(coeffs[0].nvars)
    for c in coeffs:
        g = gcd(g, c)
        if g.is_constant() and not g.is_zero():
            return MPoly.one(g.nvars)
    return g


def _prem(a: List[MPoly], b: List[MPoly]) -> List[MPoly]:
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for k, c in enumerate(b):
            a[k + shift] = a[k + shift] - c * la
        _trim(a)
    return a


def gcd(a: MPoly, b: MPoly) -> MPoly:
    """Greatest common divisor, normalized to have leading coefficient 1.

    ``gcd(0, 0)`` is 0; a nonzero constant gcd is returned as 1.
    """
    if a.nvars != b.nvars:
        raise VariableMismatch("gcd of polynomials in different rings")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return MPoly.one(a.nvars)
    i = _main_var(a, b)
    ua, ub = _to_univariate(a, i), _to_univariate(b, i)
    ca, cb = _content(ua), _content(ub)
    cont = gcd(ca, cb)
    ua = [c.exact_div(ca) for c in ua]
    ub = [c.exact_div(cb) for c in ub]
    if len(ua) < len(ub):
        ua, ub = ub, ua
    while len(ub) > 1:
        r = _prem(ua, ub)
        if not r:
            break
        rc = _content(r)
        ua, ub = ub, [c.exact_div(rc) for c in r]
    if len(ub) == 1:
        # the primitive parts are coprime in the main variable
        return cont.monic()
    g = _from_univariate(ub, i)
    return (g * cont).monic()


def is_squarefree(f: MPoly) -> bool:
    """True when no nonconstant polynomial squared divides ``f`` (char 0)."""
    if f.is_zero():
        return False
    g = f
    for i in range(f.nvars):
        g = gcd(g, f.diff(i))
        if g.is_constant():
            return True
    return g.is_constant()
