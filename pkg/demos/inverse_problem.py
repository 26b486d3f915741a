#!/usr/bin/env python3
"""
Which differential equations come from a Lagrangian?
=====================================================

A system E[u] = 0 is the Euler-Lagrange system of some Lagrangian exactly
when its linearization is self-adjoint.  The Helmholtz expressions measure
the failure of self-adjointness entry by entry.  This script walks through
the classical pair.  The wave equation passes and gets its Lagrangian back
from the homotopy formula; the heat equation fails with an explicit witness.

Run with ``python3 demos/inverse_problem.py``.
"""

from fractions import Fraction

from varinverse import JetSpace, Lagrangian, SourceForm, euler_lagrange, helmholtz, tonti_lagrangian
from varinverse.varcalc import coordinate

TX = JetSpace(("t", "x"), ("u",), 2)
u_t, u_tt, u_xx = (coordinate(TX, name) for name in ("u_t", "u_tt", "u_xx"))


def report(name, E):
    rep = helmholtz(E)
    print(f"{name}: E = {E.components[0]}")
    if rep.variational:
        print("  every Helmholtz expression vanishes")
    for w in rep.witnesses:
        print(f"  nonzero entry {rep.label(w)} = {rep.entries[w]}")
    return rep


# Wave equation.  Its Helmholtz expressions all vanish.
wave = SourceForm(TX, (u_tt - u_xx,))
report("wave", wave)

# The homotopy Lagrangian L = int_0^1 u * E[t u] dt reproduces the system.
L = tonti_lagrangian(wave)
print(f"  homotopy Lagrangian L = {L.density}")
print(f"  euler_lagrange(L) == E: {euler_lagrange(L) == wave}")

# The textbook Lagrangian 1/2 u_t^2 - 1/2 u_x^2 yields -E.  Its negative
# differs from L by a total divergence, a null Lagrangian.
textbook = Lagrangian(TX, Fraction(1, 2) * (u_t**2 - coordinate(TX, "u_x") ** 2))
print(f"  textbook Lagrangian gives {euler_lagrange(textbook).components[0]}")
null = Lagrangian(TX, L.density + textbook.density)
print(f"  L + textbook is null: {euler_lagrange(null) == SourceForm.zero(TX)}\n")

# Heat equation.  The first-order entry witnesses that no Lagrangian exists:
# the time derivative is antisymmetric under adjoint, the Laplacian is not.
heat = SourceForm(TX, (u_t - u_xx,))
report("heat", heat)
back = euler_lagrange(tonti_lagrangian(heat))
print(f"  the homotopy Lagrangian gives back {back.components[0]}, not the heat operator")
