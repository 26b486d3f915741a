"""Variational calculus on jet spaces.

Total derivatives, Euler-Lagrange expressions, Helmholtz expressions of a
source form and the homotopy (Tonti-Vainberg) Lagrangian of a variational
source form.  Everything is exact: a verdict never depends on round-off.

Multi-indices are sorted tuples, so ``u_tx`` and ``u_xt`` are the same
coordinate.  Sums over multi-indices are taken over sorted multi-indices
with multinomial multiplicities where the Leibniz rule calls for them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable

from .jetcore import (
    Expr,
    JetSpace,
    format_expr,
    jet,
    partial_derivative,
    scale_dependent,
)

__all__ = [
    "SourceForm",
    "Lagrangian",
    "HelmholtzReport",
    "total_derivative",
    "total_derivative_multi",
    "euler_lagrange",
    "helmholtz",
    "tonti_lagrangian",
    "coordinate",
]


@dataclass(frozen=True)
class SourceForm:
    """Coefficients ``E_s`` of a source form, one per dependent variable."""

    space: JetSpace
    components: tuple[Expr, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != self.space.l:
            raise ValueError(
                f"expected {self.space.l} components, got {len(comps)}"
            )
        for c in comps:
            if not c.space.compatible(self.space):
                raise ValueError("components must share the source form's space")
        object.__setattr__(self, "components", comps)

    @classmethod
    def zero(cls, space: JetSpace) -> "SourceForm":
        return cls(space, tuple(Expr.zero(space) for _ in range(space.l)))

    def __eq__(self, other):
        if not isinstance(other, SourceForm):
            return NotImplemented
        return self.space.compatible(other.space) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return "(" + ", ".join(format_expr(c) for c in self.components) + ")"


@dataclass(frozen=True)
class Lagrangian:
    space: JetSpace
    density: Expr

    def __eq__(self, other):
        if not isinstance(other, Lagrangian):
            return NotImplemented
        return self.space.compatible(other.space) and self.density == other.density

    def __hash__(self):
        return hash(self.density)

    def __str__(self):
        return format_expr(self.density)


HelmholtzKey = tuple[int, int, tuple[int, ...]]


@dataclass(frozen=True)
class HelmholtzReport:
    """All Helmholtz expressions ``H[s, mu, J]`` of a source form.

    ``entries`` is keyed by ``(sigma, mu, J)`` with ``J`` a sorted
    multi-index of length ``0..k``; ``witnesses`` lists the keys whose
    expression is nonzero, in key order.
    """

    space: JetSpace
    entries: dict[HelmholtzKey, Expr] = field(repr=False)
    witnesses: tuple[HelmholtzKey, ...] = ()

    @property
    def variational(self) -> bool:
        return not self.witnesses

    def label(self, key: HelmholtzKey) -> str:
        s, mu, J = key
        names = self.space.independent
        dep = self.space.dependent
        return f"H[{dep[s]},{dep[mu]},({''.join(names[j] for j in J)})]"


def _raise_order(space: JetSpace, by: int = 1) -> JetSpace:
    return space.with_order(space.order + by)


def total_derivative(e: Expr, j: int) -> Expr:
    """Total derivative ``d_j`` of ``e``; the result lives one order higher."""
    space = e.space
    if not 0 <= j < space.n:
        raise ValueError(f"independent index {j} out of range for {space}")
    new_space = _raise_order(space)
    out: dict = {}
    for m, c in e.terms.items():
        for i, (v, p) in enumerate(m):
            if v.kind == 0:
                if v.index != j:
                    continue
                rest = list(m[:i]) + ([(v, p - 1)] if p > 1 else []) + list(m[i + 1:])
            else:
                w = jet(v.index, v.multi + (j,))
                rest = list(m[:i]) + ([(v, p - 1)] if p > 1 else []) + list(m[i + 1:])
                # insert w keeping the monomial sorted
                merged = False
                for q, (u, r) in enumerate(rest):
                    if u == w:
                        rest[q] = (u, r + 1)
                        merged = True
                        break
                if not merged:
                    rest.append((w, 1))
                    rest.sort()
            key = tuple(rest)
            out[key] = out.get(key, 0) + c * p
    return Expr._raw(new_space, {k: c for k, c in out.items() if c})


def total_derivative_multi(e: Expr, multi: Iterable[int]) -> Expr:
    """Apply ``d_{j1} ... d_{jm}``; total derivatives commute."""
    for j in multi:
        e = total_derivative(e, j)
    return e


def euler_lagrange(L: Lagrangian) -> SourceForm:
    """Euler-Lagrange expressions of ``L``.

    ``E_s = dL/dy^s + sum_{m>=1} (-1)^m d_J (dL/dy^s_J)`` with ``J`` over
    sorted multi-indices of length ``m``.  The result has order ``2k``.
    """
    space = L.space
    k = max(space.order, L.density.jet_order())
    space = space.with_order(k)
    density = L.density.with_space(space)
    out_space = space.with_order(2 * k)
    comps = []
    for s in range(space.l):
        acc = partial_derivative(density, jet(s)).with_space(out_space)
        for m in range(1, k + 1):
            sign = -1 if m % 2 else 1
            for J in space.multi_indices(m):
                dL = partial_derivative(density, jet(s, J))
                if dL.is_zero():
                    continue
                acc = acc + total_derivative_multi(dL, J) * sign
        comps.append(acc.with_space(out_space))
    return SourceForm(out_space, tuple(comps))


def _multiset_difference(big: tuple[int, ...], small: tuple[int, ...]) -> tuple[int, ...] | None:
    cb, cs = Counter(big), Counter(small)
    if any(cs[i] > cb[i] for i in cs):
        return None
    return tuple(sorted((cb - cs).elements()))


def _multinomial_binomial(big: tuple[int, ...], small: tuple[int, ...]) -> int:
    cb, cs = Counter(big), Counter(small)
    out = 1
    for i, n in cb.items():
        out *= comb(n, cs.get(i, 0))
    return out


def helmholtz(E: SourceForm) -> HelmholtzReport:
    """Helmholtz expressions of a source form and the variationality verdict.

    For sorted multi-indices ``I`` (``|I| = m``)::

        H[s, mu, I] = dE_s/dy^mu_I - (-1)^m dE_mu/dy^s_I
                      - sum_{J > I} (-1)^{|J|} C(J, I) d_{J-I} dE_mu/dy^s_J

    where ``J`` runs over sorted multi-indices strictly containing ``I``
    (as multisets) and ``C(J, I)`` is the product of per-variable binomial
    coefficients.  These are the coefficients of ``D_E - D_E^*`` (Frechet
    derivative minus its formal adjoint) and all vanish exactly when ``E``
    is locally an Euler-Lagrange form.
    """
    space = E.space
    k = max([space.order] + [c.jet_order() for c in E.components])
    space = space.with_order(k)
    comps = [c.with_space(space) for c in E.components]

    # partials[(s, mu, J)] = dE_s / dy^mu_J
    partials: dict[HelmholtzKey, Expr] = {}
    for s in range(space.l):
        for mu in range(space.l):
            for m in range(k + 1):
                for J in space.multi_indices(m):
                    partials[(s, mu, J)] = partial_derivative(comps[s], jet(mu, J))

    entries: dict[HelmholtzKey, Expr] = {}
    witnesses = []
    for s in range(space.l):
        for mu in range(space.l):
            for m in range(k + 1):
                for I in space.multi_indices(m):
                    sign = -1 if m % 2 else 1
                    h = partials[(s, mu, I)] - partials[(mu, s, I)] * sign
                    for r in range(m + 1, k + 1):
                        rsign = -1 if r % 2 else 1
                        for J in space.multi_indices(r):
                            rest = _multiset_difference(J, I)
                            if rest is None:
                                continue
                            p = partials[(mu, s, J)]
                            if p.is_zero():
                                continue
                            coeff = rsign * _multinomial_binomial(J, I)
                            h = h - total_derivative_multi(p, rest) * coeff
                    key = (s, mu, I)
                    entries[key] = h
                    if not h.is_zero():
                        witnesses.append(key)
    return HelmholtzReport(space, entries, tuple(witnesses))


def tonti_lagrangian(E: SourceForm) -> Lagrangian:
    """Homotopy Lagrangian ``y^s * int_0^1 E_s(x, t y, t y_J, ...) dt``.

    A component of ``E_s`` of jet degree ``d`` contributes with weight
    ``1/(d+1)``.  Reproduces ``E`` under :func:`euler_lagrange` when ``E``
    is variational.
    """
    space = E.space
    k = max([space.order] + [c.jet_order() for c in E.components])
    space = space.with_order(k)
    density = Expr.zero(space)
    for s, comp in enumerate(E.components):
        integral = Expr.zero(space)
        for d, piece in scale_dependent(comp.with_space(space)):
            integral = integral + piece * Fraction(1, d + 1)
        density = density + Expr.var(space, jet(s)) * integral
    return Lagrangian(space, density)


def coordinate(space: JetSpace, name: str) -> Expr:
    """Convenience lookup of a coordinate expression by display name."""
    for v in space.variables():
        if space.name(v) == name:
            return Expr.var(space, v)
    raise KeyError(name)

