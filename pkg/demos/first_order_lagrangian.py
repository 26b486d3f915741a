#!/usr/bin/env python3
"""
A Lagrangian for a first-order system
=====================================

A vector field f on phase space that preserves a closed two-form w is the
Euler-Lagrange system of a degenerate Lagrangian, linear in velocities.
The potentials are explicit: B with dB = w and E with dE = i_f w, both
from the radial homotopy formula, and then L = -B_j v^j - E.

We run this for the harmonic oscillator, check the Euler-Lagrange
equations of L against q' = f(q) symbolically, and then watch the
construction refuse a flow that does not preserve w.

Run with ``python3 demos/first_order_lagrangian.py``.
"""

from varinverse.mech import (
    HypothesisError,
    PhaseChart,
    SymTwoForm,
    SymVectorField,
    cartan_data,
    fode_lagrangian,
)

QP = PhaseChart(("q", "p"))
q, p = QP.coords()
w = SymTwoForm(QP, {(0, 1): QP.zero() + 1})  # dq ^ dp

oscillator = SymVectorField(QP, (p, -q))
res = fode_lagrangian(oscillator, w)
print("harmonic oscillator q' = p, p' = -q")
print(f"  B = {res.B.coefficients[0]} dq + {res.B.coefficients[1]} dp")
print(f"  E = {res.E}")
print(f"  L = {res.lagrangian}")
print(f"  Euler-Lagrange expressions on q' = f: {[str(r) for r in res.residual]}")

# The Cartan objects of L give back w and E, which is why its
# Euler-Lagrange equations are i_X w = dE.
_, wL, EL = cartan_data(res.lagrangian, res.tangent)
print(f"  Cartan two-form coefficient of dq ^ dp: {wL[0, 1]}")
print(f"  Cartan energy: {EL}")

# w is nondegenerate here; the determinant is sampled, not decided.
dets = {str(s["determinant"]) for s in res.determinant_samples}
print(f"  det(w) at {len(res.determinant_samples)} random points: {sorted(dets)}\n")

# A dilation q' = q stretches area, so no such Lagrangian exists.
dilation = SymVectorField(QP, (q, QP.zero()))
try:
    fode_lagrangian(dilation, w)
except HypothesisError as exc:
    print(f"dilation q' = q: {exc}")
    print(f"  Lie derivative of w: {exc.witness[0, 1]} dq ^ dp")
