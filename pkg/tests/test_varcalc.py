import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import lagrangian_corpus, random_expr, random_source_form, random_space
from oracles import same, sympy_euler_lagrange, sympy_symbols, sympy_total_derivative, to_sympy
from varinverse.jetcore import JetSpace
from varinverse.varcalc import (
    Lagrangian,
    SourceForm,
    coordinate,
    euler_lagrange,
    helmholtz,
    tonti_lagrangian,
    total_derivative,
)

TX = JetSpace(("t", "x"), ("u",), 2)
X = JetSpace(("x",), ("u",), 2)
half = Fraction(1, 2)


def c(space, name):
    return coordinate(space, name)


def system(space, *components):
    return SourceForm(space, tuple(components))


# -- total derivative -------------------------------------------------------------


def test_total_derivative_examples():
    u, u_x, u_xx, x = (c(X, n) for n in ("u", "u_x", "u_xx", "x"))
    assert total_derivative(u * u_x, 0) == u_x**2 + u * u_xx
    assert total_derivative(x * u, 0) == u + x * u_x
    assert total_derivative(c(TX, "u_x"), 0) == c(TX.with_order(2), "u_tx")


def test_total_derivative_raises_order():
    e = c(TX, "u_tx")
    d = total_derivative(e, 1)
    assert d.space.order == 3
    assert d.jet_order() == 3


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_total_derivative_matches_sympy(seed):
    rng = random.Random(seed)
    space = random_space(rng)
    e = random_expr(rng, space)
    j = rng.randrange(space.n)
    xs, funcs = sympy_symbols(space)
    assert same(to_sympy(total_derivative(e, j), xs, funcs), sympy_total_derivative(e, j))


@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1))
def test_total_derivatives_commute(seed):
    rng = random.Random(seed)
    space = random_space(rng)
    e = random_expr(rng, space)
    i, j = rng.randrange(space.n), rng.randrange(space.n)
    assert total_derivative(total_derivative(e, i), j) == total_derivative(total_derivative(e, j), i)


# -- Euler-Lagrange --------------------------------------------------------------------


def test_euler_lagrange_examples():
    u_x, u_t = c(TX, "u_x"), c(TX, "u_t")
    E = euler_lagrange(Lagrangian(X, half * c(X, "u_x") ** 2))
    assert E.components == (-c(X, "u_xx"),)
    E = euler_lagrange(Lagrangian(TX, half * u_t**2 - half * u_x**2))
    assert E.components == (-c(TX, "u_tt") + c(TX, "u_xx"),)
    E = euler_lagrange(Lagrangian(X, half * c(X, "u") * c(X, "u_xx")))
    assert E.components == (c(X, "u_xx"),)


def test_euler_lagrange_order_bound():
    E = euler_lagrange(Lagrangian(TX, c(TX, "u_tx") ** 2))
    assert E.space.order == 4
    assert all(comp.jet_order() <= 4 for comp in E.components)


def test_null_lagrangian_has_zero_euler_lagrange_form():
    # a total divergence d_x(u * u_x) is a null Lagrangian
    L = total_derivative(c(X, "u") * c(X, "u_x"), 0)
    assert euler_lagrange(Lagrangian(L.space, L)) == SourceForm.zero(L.space)


@pytest.mark.parametrize("L", lagrangian_corpus(40, seed=11), ids=lambda L: str(L.density)[:40])
def test_euler_lagrange_matches_sympy(L):
    ours = euler_lagrange(L)
    xs, funcs = sympy_symbols(L.space)
    ref = sympy_euler_lagrange(L.density)
    for comp, r in zip(ours.components, ref):
        assert same(to_sympy(comp, xs, funcs), r)


# -- Helmholtz ---------------------------------------------------------------------


def test_wave_and_harmonic_are_variational():
    wave = helmholtz(system(TX, c(TX, "u_tt") - c(TX, "u_xx")))
    assert wave.variational
    assert all(e.is_zero() for e in wave.entries.values())
    harmonic = helmholtz(system(X, c(X, "u_xx")))
    assert harmonic.variational


def test_heat_equation_witness():
    rep = helmholtz(system(TX, c(TX, "u_t") - c(TX, "u_xx")))
    assert not rep.variational
    assert rep.witnesses == ((0, 0, (0,)),)
    assert rep.entries[(0, 0, (0,))] == 2
    assert rep.label((0, 0, (0,))) == "H[u,u,(t)]"


def test_helmholtz_covers_every_multi_index():
    rep = helmholtz(system(TX, c(TX, "u_tt") - c(TX, "u_xx")))
    # (sigma, mu) = (0, 0) with |J| = 0, 1, 2 over two independents: 1 + 2 + 3
    assert len(rep.entries) == 6


def test_two_component_coupling():
    S = JetSpace(("x",), ("u", "v"), 1)
    # E = (v, -u) is the Euler-Lagrange form of -u*v ... up to symmetry: it is not
    rep = helmholtz(SourceForm(S, (c(S, "v"), -c(S, "u"))))
    assert not rep.variational
    assert rep.entries[(0, 1, ())] == 2
    rep = helmholtz(SourceForm(S, (c(S, "v"), c(S, "u"))))
    assert rep.variational


def test_first_order_antisymmetric_system_is_variational():
    # E = (v_x, -u_x) comes from L = u*v_x
    S = JetSpace(("x",), ("u", "v"), 1)
    E = SourceForm(S, (c(S, "v_x"), -c(S, "u_x")))
    assert helmholtz(E).variational
    assert euler_lagrange(Lagrangian(S, c(S, "u") * c(S, "v_x"))) == E


def test_zero_source_form():
    E = SourceForm.zero(TX)
    assert helmholtz(E).variational
    assert tonti_lagrangian(E).density.is_zero()


@pytest.mark.parametrize("L", lagrangian_corpus(30, seed=5), ids=lambda L: str(L.density)[:40])
def test_master_identity_sample(L):
    E = euler_lagrange(L)
    rep = helmholtz(E)
    assert rep.variational
    assert all(e.jet_order() <= 2 * E.space.order for e in rep.entries.values())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_verdict_agrees_with_homotopy_criterion(seed):
    # Independent decision procedure: on a star-shaped domain E is an
    # Euler-Lagrange form iff it is reproduced by its homotopy Lagrangian.
    E = random_source_form(random.Random(seed))
    rebuilt = euler_lagrange(tonti_lagrangian(E))
    assert helmholtz(E).variational == (rebuilt == E)


# -- Tonti ---------------------------------------------------------------------------


def test_tonti_examples():
    u = c(X, "u")
    assert tonti_lagrangian(system(X, u)).density == half * u**2
    L = tonti_lagrangian(system(X, c(X, "u_xx")))
    assert L.density == half * u * c(X, "u_xx")
    wave = system(TX, c(TX, "u_tt") - c(TX, "u_xx"))
    L = tonti_lagrangian(wave)
    assert L.density == half * c(TX, "u") * (c(TX, "u_tt") - c(TX, "u_xx"))
    assert euler_lagrange(L) == wave


def test_tonti_independent_terms_weighted_by_one():
    # a source with no jet dependence contributes y * E
    E = system(X, c(X, "x") ** 2)
    assert tonti_lagrangian(E).density == c(X, "u") * c(X, "x") ** 2


@pytest.mark.parametrize("L", lagrangian_corpus(30, seed=9), ids=lambda L: str(L.density)[:40])
def test_tonti_round_trip_sample(L):
    E = euler_lagrange(L)
    assert euler_lagrange(tonti_lagrangian(E)) == E


def test_tonti_lagrangian_differs_from_original_by_null_lagrangian():
    L = Lagrangian(TX, half * c(TX, "u_t") ** 2 - half * c(TX, "u_x") ** 2)
    T = tonti_lagrangian(euler_lagrange(L))
    diff = Lagrangian(T.space, T.density - L.density)
    assert euler_lagrange(diff) == SourceForm.zero(T.space)
    assert not diff.density.is_zero()
