from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bsroots.bfunction import BFunction, factor_rational_roots
from bsroots.errors import IrreducibleRemainder, NoSolution, ParseError, VariableMismatch
from bsroots.linalg import rref_sparse, solve_linear_exact
from bsroots.mpoly import MPoly, as_poly, gcd, is_squarefree, parse_poly
from bsroots.rational import format_rational, to_rational

F = Fraction

small_q = st.builds(F, st.integers(-6, 6), st.integers(1, 4))
nonzero_q = small_q.filter(bool)


@st.composite
def polys(draw, nvars=2, max_terms=5, max_deg=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(nvars))
        terms[e] = draw(nonzero_q)
    return MPoly(nvars, terms)


# -- rationals ---------------------------------------------------------------


def test_rational_transport():
    assert to_rational("3/6") == F(1, 2)
    assert to_rational("-4") == -4
    assert to_rational(7) == 7
    assert format_rational(F(-10, 4)) == "-5/2"
    assert format_rational(F(6, 3)) == "2"


@pytest.mark.parametrize("bad", [0.5, True, "1/0", "x", "1.5", None])
def test_rational_rejects(bad):
    with pytest.raises(ParseError):
        to_rational(bad)


@given(small_q)
def test_rational_roundtrip(q):
    assert to_rational(format_rational(q)) == q
    assert q.denominator > 0


# -- polynomials ---------------------------------------------------------------


def test_no_zero_coefficients_stored():
    x, y = MPoly.variable(2, 0), MPoly.variable(2, 1)
    p = (x + y) - y
    assert p == x
    assert p.terms == {(1, 0): 1}
    assert (x - x).is_zero()


def test_canonical_order_and_json():
    p = parse_poly("y^3 + x^2 + 3/2 x y - 1", 2)
    assert p.to_json() == [["1", [0, 3]], ["1", [2, 0]], ["3/2", [1, 1]], ["-1", [0, 0]]]
    assert MPoly.from_json(2, p.to_json()) == p


def test_parser_grammar():
    x, y = MPoly.variable(2, 0), MPoly.variable(2, 1)
    assert parse_poly("x^2+y^3", 2) == x ** 2 + y ** 3
    assert parse_poly("2xy - (x+y)**2", 2) == x * y * 2 - (x + y) ** 2
    assert parse_poly("-1/3 x1 x3", 3) == MPoly.monomial((1, 0, 1), F(-1, 3))
    assert parse_poly("x4", 4) == MPoly.variable(4, 3)


@pytest.mark.parametrize("text", ["x/y", "x^", "x^-1", "w", "x +", "(x", "1/0", "x^1.5"])
def test_parser_rejects(text):
    with pytest.raises(ParseError):
        parse_poly(text, 2)


def test_as_poly_forms():
    assert as_poly("x*y", 2) == as_poly([["1", [1, 1]]], 2)
    with pytest.raises(VariableMismatch):
        as_poly(MPoly.one(3), 2)


@given(polys(), polys(), st.tuples(small_q, small_q))
def test_ring_ops_commute_with_evaluation(p, q, pt):
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p - q).evaluate(pt) == p.evaluate(pt) - q.evaluate(pt)


@given(polys(), polys())
def test_leibniz_rule(p, q):
    for i in range(2):
        assert (p * q).diff(i) == p.diff(i) * q + p * q.diff(i)


@given(polys())
def test_string_and_json_roundtrip(p):
    assert parse_poly(str(p), 2) == p
    assert MPoly.from_json(2, p.to_json()) == p


@given(polys(), polys().filter(lambda q: not q.is_zero()))
def test_exact_division(p, q):
    assert (p * q).exact_div(q) == p
    quo, rem = (p * q + MPoly.one(2)).divmod(q)
    if not q.is_constant():
        assert not rem.is_zero()


@settings(max_examples=40, deadline=None)
@given(polys(max_terms=3, max_deg=2), polys(max_terms=3, max_deg=2), polys(max_terms=3, max_deg=2))
def test_gcd_divides_and_captures_common_factor(a, b, c):
    if a.is_zero() or b.is_zero() or c.is_zero():
        return
    g = gcd(a * c, b * c)
    assert g.divides(a * c) and g.divides(b * c)
    assert c.divides(g) or c.is_constant()


def test_gcd_examples():
    x, y = MPoly.variable(2, 0), MPoly.variable(2, 1)
    assert gcd(x ** 2 - y ** 2, x ** 2 + 2 * x * y + y ** 2) == x + y
    assert gcd(x ** 2 + y ** 3, x * y).is_constant()
    assert is_squarefree(x ** 2 + y ** 3)
    assert not is_squarefree((x + y) ** 2)
    assert not is_squarefree(x ** 2 * y)


# -- linear algebra ----------------------------------------------------------------


def test_solve_identity():
    sol = solve_linear_exact([[1, 0], [0, 1]], [F(1, 2), -3])
    assert sol.particular == (F(1, 2), F(-3))
    assert sol.kernel == ()


def test_solve_underdetermined():
    sol = solve_linear_exact([[1, 1]], [0])
    assert sol.particular == (0, 0)
    assert sol.kernel == ((1, -1),)


def test_solve_inconsistent():
    with pytest.raises(NoSolution):
        solve_linear_exact([[1], [2]], [1, 3])


def _matvec(A, v):
    return [sum(F(a) * x for a, x in zip(row, v)) for row in A]


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(small_q, min_size=n, max_size=n), min_size=m, max_size=m)))


@given(matrices, st.data())
def test_solution_space_is_exact(A, data):
    n = len(A[0])
    x0 = data.draw(st.lists(small_q, min_size=n, max_size=n))
    rhs = _matvec(A, x0)
    sol = solve_linear_exact(A, rhs)
    assert _matvec(A, sol.particular) == rhs
    for v in sol.kernel:
        assert all(c == 0 for c in _matvec(A, v))
    # rank-nullity: pivots + kernel dimension = number of unknowns
    ech = rref_sparse([{j: F(a) for j, a in enumerate(r) if a} for r in A], n)
    assert len(ech.pivots) + len(sol.kernel) == n


@given(matrices, st.lists(small_q, min_size=4, max_size=4))
def test_solver_never_returns_a_wrong_answer(A, b):
    rhs = b[: len(A)] + [F(0)] * (len(A) - len(b))
    try:
        sol = solve_linear_exact(A, rhs)
    except NoSolution:
        return
    assert _matvec(A, sol.particular) == rhs


@given(matrices)
def test_solver_deterministic(A):
    rhs = [F(0)] * len(A)
    assert solve_linear_exact(A, rhs) == solve_linear_exact([list(r) for r in A], list(rhs))


# -- b-function values and factoring -----------------------------------------------


def test_factor_examples():
    assert factor_rational_roots([1, 1]) == BFunction.from_roots([-1])
    assert factor_rational_roots([F(1, 2), F(3, 2), 1]) == BFunction.from_roots([-1, F(-1, 2)])
    with pytest.raises(IrreducibleRemainder):
        factor_rational_roots([1, 0, 1])


def test_factor_accepts_mpoly():
    s = MPoly.variable(1, 0)
    p = (s + 1) ** 2 * (s + F(5, 6))
    assert factor_rational_roots(p) == BFunction.from_roots([-1, -1, F(-5, 6)])


@given(st.lists(small_q, max_size=6))
def test_factor_roundtrip(roots):
    b = BFunction.from_roots(roots)
    assert factor_rational_roots(b.coefficients()) == b
    for r in roots:
        assert b.evaluate(r) == 0


@given(st.lists(small_q, max_size=5), st.lists(small_q, max_size=5))
def test_divisibility_is_multiset_containment(r1, r2):
    a, b = BFunction.from_roots(r1), BFunction.from_roots(r2)
    assert a.divides(a * b) and b.divides(a * b)
    assert (a * b).degree == a.degree + b.degree
    assert a.divides(b) == (not (a.multiset() - b.multiset()))


def test_bfunction_rendering():
    b = BFunction.from_roots([F(-5, 6), -1, F(-7, 6)])
    assert b.factored() == "(s+1)(s+5/6)(s+7/6)"
    assert [format_rational(r) for r in b.root_list()] == ["-1", "-5/6", "-7/6"]
    assert BFunction.from_roots([-1, -1, F(3, 2), 0]).factored() == "(s+1)^2(s-3/2)(s)"
    assert BFunction.one().factored() == "1"
    assert b.to_json() == {"factored": "(s+1)(s+5/6)(s+7/6)",
                           "roots": ["-1", "-5/6", "-7/6"], "degree": 3}
