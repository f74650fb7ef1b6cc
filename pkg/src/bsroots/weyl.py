"""Differential operators acting on ``g * f^s`` and the b-function ansatz.

The oracle looks for ``b(s)`` and ``P`` in ``D[s]`` with

    b(s) * g * f^s = P . (g * f * f^s)

by fixing the shape of ``P`` (operator order, degree of the coefficients
in ``x``, degree in ``s``), clearing denominators with ``f^D`` (``D`` the
operator order bound) and matching coefficients of every ``x^a s^j``.  The
result is a linear system over the rationals; the smallest-degree monic
``b`` in its solution space is returned with a witness operator, after the
identity has been re-checked by applying the operator directly.

When ``f`` and ``g`` are homogeneous for some torus weights, only operator
terms of the matching weight are kept.  Dropping the other terms cannot
change the answer, since each weight component of the identity must hold
on its own, and it shrinks the system by orders of magnitude for the
monomial and quasi-homogeneous inputs this package is exercised on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, NamedTuple, Tuple

from .bfunction import BFunction, factor_rational_roots
from .errors import BoundsExhausted, MissingRootMinusOne, ParseError, VariableMismatch
from .linalg import rref_sparse, solve_linear_exact
from .mpoly import MPoly

Multi = Tuple[int, ...]


def multi_indices(n: int, max_degree: int) -> Iterator[Multi]:
    """All exponent vectors of length ``n`` with total degree <= max_degree,
    ordered by degree and then lexicographically (largest first)."""
    for d in range(max_degree + 1):
        level = [e for e in product(range(d + 1), repeat=n) if sum(e) == d]
        yield from sorted(level, reverse=True)


@dataclass(frozen=True)
class Bounds:
    order: int = 4
    coeff_degree: int = 6
    s_degree: int = 3
    b_degree: int = 8

    def __post_init__(self):
        for name in ("order", "coeff_degree", "s_degree", "b_degree"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ParseError(f"bound {name} must be a non-negative integer", field=name)
        if self.order < 1:
            raise ParseError("operator order bound must be at least 1", field="order")

    @classmethod
    def parse(cls, text: str) -> "Bounds":
        parts = [p.strip() for p in str(text).split(",")]
        if len(parts) != 4 or not all(p.isdigit() for p in parts):
            raise ParseError(f"bounds must look like 'ord,deg,sdeg,bdeg', got {text!r}")
        return cls(*(int(p) for p in parts))

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeff_degree": self.coeff_degree,
            "s_degree": self.s_degree,
            "b_degree": self.b_degree,
        }

    def __str__(self):
        return f"{self.order},{self.coeff_degree},{self.s_degree},{self.b_degree}"


DEFAULT_BOUNDS = Bounds()


class WeylOperator:
    """Finite sum of ``c(x) * s^j * d^beta`` (coefficients written on the left).

    ``terms`` maps ``(beta, j)`` to the coefficient polynomial in ``x``.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Dict[Tuple[Multi, int], MPoly] | None = None):
        self.nvars = nvars
        clean = {}
        for (beta, j), c in (terms or {}).items():
            beta = tuple(beta)
            if len(beta) != nvars or c.nvars != nvars:
                raise VariableMismatch("operator term has the wrong number of variables")
            key = (beta, int(j))
            total = clean.get(key, MPoly.zero(nvars)) + c
            if total.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = total
        self._terms = dict(sorted(clean.items(), key=lambda t: (sum(t[0][0]), t[0])))

    @classmethod
    def identity(cls, nvars):
        return cls(nvars, {((0,) * nvars, 0): MPoly.one(nvars)})

    @classmethod
    def partial(cls, nvars, i):
        beta = [0] * nvars
        beta[i] = 1
        return cls(nvars, {(tuple(beta), 0): MPoly.one(nvars)})

    @classmethod
    def multiplication(cls, c: MPoly):
        return cls(c.nvars, {((0,) * c.nvars, 0): c})

    @classmethod
    def s(cls, nvars):
        return cls(nvars, {((0,) * nvars, 1): MPoly.one(nvars)})

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    @property
    def order(self) -> int:
        return max((sum(b) for b, _ in self._terms), default=0)

    @property
    def s_degree(self) -> int:
        return max((j for _, j in self._terms), default=0)

    @property
    def coeff_degree(self) -> int:
        return max((c.degree() for c in self._terms.values()), default=0)

    def __add__(self, other: "WeylOperator"):
        merged = dict(self._terms)
        for k, c in other._terms.items():
            merged[k] = merged.get(k, MPoly.zero(self.nvars)) + c
        return WeylOperator(self.nvars, merged)

    def __mul__(self, other):
        """Composition ``self * other``, normal-ordered via Leibniz' rule."""
        if isinstance(other, (int, Fraction)):
            return WeylOperator(self.nvars, {k: c.scale(other) for k, c in self._terms.items()})
        if other.nvars != self.nvars:
            raise VariableMismatch("operators in different numbers of variables")
        out: Dict[Tuple[Multi, int], MPoly] = {}
        for (beta, j), a in self._terms.items():
            for (delta, k), c in other._terms.items():
                # d^beta . c = sum_gamma binom(beta, gamma) (d^gamma c) d^(beta-gamma)
                for gamma in product(*(range(b + 1) for b in beta)):
                    dc = c
                    for i, gi in enumerate(gamma):
                        for _ in range(gi):
                            dc = dc.diff(i)
                    if dc.is_zero():
                        continue
                    mult = 1
                    for b, gi in zip(beta, gamma):
                        mult *= math.comb(b, gi)
                    key = (tuple(b - gi + d for b, gi, d in zip(beta, gamma, delta)), j + k)
                    term = (a * dc).scale(mult)
                    out[key] = out.get(key, MPoly.zero(self.nvars)) + term
        return WeylOperator(self.nvars, out)

    def __eq__(self, other):
        return isinstance(other, WeylOperator) and self.nvars == other.nvars and self._terms == other._terms

    def to_json(self) -> List[dict]:
        return [
            {"d": list(beta), "s": j, "coeff": c.to_json()}
            for (beta, j), c in self._terms.items()
        ]

    def __repr__(self):
        parts = []
        for (beta, j), c in self._terms.items():
            d = "".join(f"d{i + 1}^{b}" if b > 1 else f"d{i + 1}" for i, b in enumerate(beta) if b)
            sp = "" if j == 0 else ("s" if j == 1 else f"s^{j}")
            parts.append("*".join(p for p in (f"({c})", sp, d) if p))
        return "WeylOperator(" + " + ".join(parts) + ")"


class FPowerElement:
    """``(numerator / f^d) * f^s`` with ``numerator`` a polynomial in ``x`` and ``s``.

    The numerator lives in ``nvars + 1`` variables; the last one is ``s``.
    """

    __slots__ = ("base", "numerator", "d")

    def __init__(self, base: MPoly, numerator: MPoly, d: int = 0):
        if numerator.nvars == base.nvars:
            numerator = numerator.extend(1)
        if numerator.nvars != base.nvars + 1:
            raise VariableMismatch("numerator must have one more variable (s) than f")
        if d < 0:
            raise ValueError("denominator exponent must be non-negative")
        self.base = base
        self.numerator = numerator
        self.d = d

    def normalized(self) -> "FPowerElement":
        """Cancel powers of ``f`` that divide the numerator exactly."""
        num, d = self.numerator, self.d
        if num.is_zero():
            return FPowerElement(self.base, num, 0)
        fe = self.base.extend(1)
        while d > 0:
            q, r = num.divmod(fe)
            if not r.is_zero():
                break
            num, d = q, d - 1
        return FPowerElement(self.base, num, d)

    def __eq__(self, other):
        if not isinstance(other, FPowerElement):
            return NotImplemented
        if self.base != other.base:
            return False
        fe = self.base.extend(1)
        return self.numerator * fe ** other.d == other.numerator * fe ** self.d

    def __repr__(self):
        return f"FPowerElement(({self.numerator}) / f^{self.d}, f={self.base})"


def _derive(u: FPowerElement, i: int) -> FPowerElement:
    # d_i((h/f^d) f^s) = ((d_i h) f - d h d_i f + s h d_i f) / f^(d+1) f^s
    n = u.base.nvars
    fe = u.base.extend(1)
    dfe = u.base.diff(i).extend(1)
    h = u.numerator
    s_var = MPoly.variable(n + 1, n)
    num = h.diff(i) * fe + h * dfe * (s_var - u.d)
    return FPowerElement(u.base, num, u.d + 1)


def _derivatives(u: FPowerElement, betas) -> Dict[Multi, FPowerElement]:
    cache: Dict[Multi, FPowerElement] = {(0,) * u.base.nvars: u}

    def get(beta):
        if beta in cache:
            return cache[beta]
        i = next(k for k, b in enumerate(beta) if b)
        prev = list(beta)
        prev[i] -= 1
        cache[beta] = _derive(get(tuple(prev)), i)
        return cache[beta]

    for beta in betas:
        get(tuple(beta))
    return cache


def apply(P: WeylOperator, u: FPowerElement) -> FPowerElement:
    """Left action of ``P`` on ``u``; ``s`` acts by multiplication."""
    n = u.base.nvars
    if P.nvars != n:
        raise VariableMismatch(f"operator has {P.nvars} variables, element has {n}")
    derivs = _derivatives(u, [beta for beta, _ in P.terms])
    top = u.d + P.order
    fe = u.base.extend(1)
    total = MPoly.zero(n + 1)
    for (beta, j), c in P.terms.items():
        v = derivs[beta]
        coeff = c.extend(1).shift((0,) * n + (j,))
        total = total + coeff * v.numerator * fe ** (top - v.d)
    return FPowerElement(u.base, total, top).normalized()


class SolveResult(NamedTuple):
    bfunction: BFunction
    witness: WeylOperator


def torus_gradings(f: MPoly, g: MPoly) -> List[Tuple[int, ...]]:
    """Integer weight vectors for which both ``f`` and ``g`` are homogeneous."""
    n = f.nvars
    rows = []
    for p in (f, g):
        supp = p.support()
        for m in supp[1:]:
            rows.append([a - b for a, b in zip(m, supp[0])])
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    sol = solve_linear_exact(rows, [0] * len(rows))
    out = []
    for v in sol.kernel:
        den = 1
        for x in v:
            den = math.lcm(den, x.denominator)
        out.append(tuple(int(x * den) for x in v))
    return out


def _check_inputs(f: MPoly, g: MPoly):
    if f.is_zero():
        raise ValueError("f must be nonzero")
    if g.is_zero():
        raise ValueError("g must be nonzero")
    if f.nvars != g.nvars:
        raise VariableMismatch("f and g live in different rings")


def solve_bfunction(f: MPoly, g: MPoly | None = None, bounds: Bounds = DEFAULT_BOUNDS,
                    use_grading: bool = True) -> SolveResult:
    """Minimal monic ``b`` (within ``bounds``) with ``b(s) g f^s = P . (g f f^s)``.

    Raises :class:`BoundsExhausted` when no such ``b`` of degree at most
    ``bounds.b_degree`` exists for operators of the allowed shape.
    """
    n = f.nvars
    g = MPoly.one(n) if g is None else g
    _check_inputs(f, g)
    if f.is_constant():
        # f is a unit: g f^s = f^-1 . (g f f^s)
        witness = WeylOperator.multiplication(MPoly.constant(n, 1 / f.constant_term()))
        return SolveResult(BFunction.one(), witness)

    D = bounds.order
    weights = torus_gradings(f, g) if use_grading else []
    f_exp = f.support()[0]
    targets = [-sum(w_i * e_i for w_i, e_i in zip(w, f_exp)) for w in weights]

    def allowed(alpha, beta):
        for w, t in zip(weights, targets):
            if sum(wi * (a - b) for wi, a, b in zip(w, alpha, beta)) != t:
                return False
        return True

    betas = list(multi_indices(n, D))
    alphas = list(multi_indices(n, bounds.coeff_degree))
    u = FPowerElement(f, g * f, 0)
    derivs = _derivatives(u, betas)
    fe = f.extend(1)
    fpow = [MPoly.one(n + 1)]
    for _ in range(D):
        fpow.append(fpow[-1] * fe)

    columns: List[MPoly] = []
    labels: List[Tuple[Multi, Multi, int]] = []
    cleared = {}
    for beta in betas:
        used = [a for a in alphas if allowed(a, beta)]
        if not used:
            continue
        cleared[beta] = derivs[beta].numerator * fpow[D - sum(beta)]
        for alpha in used:
            for j in range(bounds.s_degree + 1):
                columns.append(cleared[beta].shift(alpha + (j,)))
                labels.append((alpha, beta, j))
    n_c = len(columns)
    lhs = -(g.extend(1) * fpow[D])
    for k in range(bounds.b_degree + 1):
        columns.append(lhs.shift((0,) * n + (k,)))

    row_of: Dict[Multi, int] = {}
    rows: List[Dict[int, Fraction]] = []
    for col, poly in enumerate(columns):
        for e, c in poly.items():
            r = row_of.get(e)
            if r is None:
                r = row_of[e] = len(rows)
                rows.append({})
            rows[r][col] = c
    order = sorted(row_of, key=lambda e: (sum(e), e), reverse=True)
    rows = [rows[row_of[e]] for e in order]

    ech = rref_sparse(rows, len(columns))
    pivset = set(ech.pivots)
    free_b = [k for k in range(bounds.b_degree + 1) if n_c + k not in pivset]
    if not free_b:
        raise BoundsExhausted(
            f"no b-function of degree <= {bounds.b_degree} found with bounds {bounds}",
            bounds=bounds,
        )
    deg = free_b[0]
    values: Dict[int, Fraction] = {n_c + deg: Fraction(1)}
    for k in range(deg):
        row = ech.pivot_row(n_c + k)
        values[n_c + k] = -row.get(n_c + deg, Fraction(0)) if row is not None else Fraction(0)
    b_coeffs = [values[n_c + k] for k in range(deg + 1)]
    bfun = factor_rational_roots(b_coeffs)

    witness_terms: Dict[Tuple[Multi, int], MPoly] = {}
    for col in range(n_c):
        row = ech.pivot_row(col)
        if row is None:
            continue
        val = -sum((row.get(q, 0) * v for q, v in values.items()), Fraction(0))
        if val:
            alpha, beta, j = labels[col]
            key = (beta, j)
            witness_terms[key] = witness_terms.get(key, MPoly.zero(n)) + MPoly.monomial(alpha, val)
    witness = WeylOperator(n, witness_terms)

    if not verify_witness(f, g, bfun, witness):
        raise AssertionError("witness operator failed re-verification; linear solve is inconsistent")
    return SolveResult(bfun, witness)


def verify_witness(f: MPoly, g: MPoly, b: BFunction, P: WeylOperator) -> bool:
    """Check ``P . (g f f^s) == b(s) g f^s`` by direct substitution."""
    n = f.nvars
    image = apply(P, FPowerElement(f, g * f, 0))
    s_poly = MPoly.zero(n + 1)
    for k, c in enumerate(b.coefficients()):
        s_poly = s_poly + MPoly.monomial((0,) * n + (k,), c)
    target = FPowerElement(f, s_poly * g.extend(1), 0)
    return image == target


def reduced_bfunction(b: BFunction) -> BFunction:
    """Divide out one factor ``(s+1)``."""
    if not b.multiplicity(-1):
        raise MissingRootMinusOne(f"-1 is not a root of {b.factored()}")
    return b.without_root(-1)
