import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import random_expr, random_space
from varinverse.jetcore import (
    Expr,
    JetError,
    JetSpace,
    eval_at_point,
    format_expr,
    homogeneous_components,
    independent,
    jet,
    partial_derivative,
    scale_dependent,
    substitute,
)

X = JetSpace(("x",), ("u",), 2)
TX = JetSpace(("t", "x"), ("u",), 2)


def var(space, name):
    for v in space.variables():
        if space.name(v) == name:
            return Expr.var(space, v)
    raise KeyError(name)


u, u_x, u_xx, x = (var(X, n) for n in ("u", "u_x", "u_xx", "x"))


def seeds():
    return st.integers(min_value=0, max_value=2**32 - 1)


def expr_from_seed(seed, space=None):
    rng = random.Random(seed)
    space = space or random_space(rng)
    return random_expr(rng, space)


# -- space and variables ----------------------------------------------------------


def test_space_counts_and_names():
    assert (TX.n, TX.l, TX.k) == (2, 1, 2)
    assert TX.name(jet(0, (1, 0))) == "u_tx"
    assert jet(0, (1, 0)) == jet(0, (0, 1))
    assert [TX.name(v) for v in TX.variables()][:6] == ["t", "x", "u", "u_t", "u_x", "u_tt"]


@pytest.mark.parametrize(
    "args",
    [
        ((), ()),  # no dependent variable
        (("x",), ("x",)),  # duplicate name
        (("x",), ("u",), -1),
        ((), ("q",), 1),  # order without independents
    ],
)
def test_space_rejects_bad_declarations(args):
    with pytest.raises(JetError):
        JetSpace(*args)


def test_variable_outside_space_is_rejected():
    with pytest.raises(JetError):
        Expr.var(X, jet(0, (0, 0, 0)))
    with pytest.raises(JetError):
        partial_derivative(u, independent(3))


# -- canonical form ---------------------------------------------------------------


def test_zero_coefficients_are_dropped():
    e = Expr.from_terms(X, [({jet(0): 1}, 2), ({jet(0): 1}, -2), ({}, 0)])
    assert e.is_zero()
    assert e.terms == {}
    assert format_expr(e) == "0"


def test_coefficients_are_reduced_rationals():
    e = u * Fraction(6, 4)
    (c,) = e.terms.values()
    assert (c.numerator, c.denominator) == (3, 2)


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        u * 0.5


def test_equality_ignores_order_bound():
    a = Expr.var(JetSpace(("x",), ("u",), 1), jet(0, (0,)))
    assert a == u_x
    assert hash(a) == hash(u_x)


@given(seeds())
def test_canonical_form_is_idempotent(seed):
    e = expr_from_seed(seed)
    again = Expr(e.space, dict(reversed(list(e.terms.items()))))
    assert again == e
    assert format_expr(again) == format_expr(e)


@settings(max_examples=60)
@given(seeds())
def test_ring_laws(seed):
    rng = random.Random(seed)
    space = random_space(rng)
    a, b, c = (random_expr(rng, space) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == Expr.zero(space)
    assert a**2 == a * a


# -- partial derivatives -------------------------------------------------------------


def test_partial_derivative_examples():
    assert partial_derivative(u * u_x, jet(0)) == u_x
    assert partial_derivative(u_x**2, jet(0, (0,))) == 2 * u_x
    assert partial_derivative(x * u_xx + u, jet(0, (0, 0))) == x


@settings(max_examples=60)
@given(seeds())
def test_partials_commute(seed):
    rng = random.Random(seed)
    e = expr_from_seed(seed)
    vs = e.space.variables()
    v, w = rng.choice(vs), rng.choice(vs)
    assert partial_derivative(partial_derivative(e, v), w) == partial_derivative(partial_derivative(e, w), v)


@settings(max_examples=60)
@given(seeds())
def test_partial_derivative_leibniz(seed):
    rng = random.Random(seed)
    space = random_space(rng)
    a, b = random_expr(rng, space), random_expr(rng, space)
    v = rng.choice(space.variables())
    lhs = partial_derivative(a * b, v)
    assert lhs == partial_derivative(a, v) * b + a * partial_derivative(b, v)


# -- grading and evaluation --------------------------------------------------------------


def test_scale_dependent_examples():
    assert scale_dependent(u_xx) == [(1, u_xx)]
    assert scale_dependent(u * u_xx + x * u) == [(2, u * u_xx), (1, x * u)]
    assert scale_dependent(Expr.const(X, 3)) == [(0, Expr.const(X, 3))]


@given(seeds(), st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_scale_dependent_matches_substitution(seed, t):
    # oracle: literally substitute y_J -> t*y_J
    e = expr_from_seed(seed)
    scaled = substitute(e, {v: Expr.var(e.space, v) * t for v in e.space.variables() if v.kind == 1})
    rebuilt = Expr.zero(e.space)
    for d, piece in scale_dependent(e):
        rebuilt = rebuilt + piece * t**d
    assert rebuilt == scaled


def test_homogeneous_components_use_total_degree():
    assert homogeneous_components(x * u + u_x) == [(2, x * u), (1, u_x)]


def test_eval_examples():
    assert eval_at_point(u_x**2, {jet(0, (0,)): 3}) == 9
    assert eval_at_point(x * u - u, {independent(0): 1, jet(0): 5}) == 0
    assert eval_at_point(Fraction(1, 2) * u**2, {jet(0): 3}) == Fraction(9, 2)


def test_eval_missing_variable():
    with pytest.raises(JetError):
        eval_at_point(u * u_x, {jet(0): 1})


@settings(max_examples=60)
@given(seeds())
def test_eval_is_a_ring_homomorphism(seed):
    rng = random.Random(seed)
    space = random_space(rng)
    a, b = random_expr(rng, space), random_expr(rng, space)
    point = {v: Fraction(rng.randint(-7, 7), rng.randint(1, 3)) for v in space.variables()}
    assert eval_at_point(a * b, point) == eval_at_point(a, point) * eval_at_point(b, point)
    assert eval_at_point(a + b, point) == eval_at_point(a, point) + eval_at_point(b, point)


# -- rendering -------------------------------------------------------------------


def test_format_conventions():
    assert format_expr(-Fraction(1, 2) * u_x**2) == "-1/2*u_x^2"
    assert format_expr(u_xx - u) == "-u + u_xx"
    assert format_expr(x * u * 3 + 1) == "3*x*u + 1"


def test_graded_order_puts_high_degree_first():
    e = u + u**3 + Fraction(2) * u * u_x
    assert format_expr(e) == "u^3 + 2*u*u_x + u"
