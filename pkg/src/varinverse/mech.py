"""Finite-dimensional inverse problem for first- and second-order ODEs.

Forms and vector fields have polynomial coefficients over a coordinate
chart.  A two-form is stored by its upper-triangular coefficients
``w[(j, k)]`` with ``j < k``, meaning ``sum_{j<k} w_jk dq^j ^ dq^k``, and
acts as ``w(X, Y) = sum_{j,k} w_jk X^j Y^k`` with ``w_kj = -w_jk``.

The central construction is :func:`fode_lagrangian`: for a vector field
``f^j d/dq^j`` preserving a symplectic form ``w = dB`` it returns the
degenerate Lagrangian ``B_j v^j - E`` with ``i_f w = dE``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .jetcore import (
    Expr,
    JetSpace,
    eval_at_point,
    format_expr,
    homogeneous_components,
    jet,
    partial_derivative,
    substitute,
)

__all__ = [
    "HypothesisError",
    "PhaseChart",
    "TangentChart",
    "SymVectorField",
    "SymOneForm",
    "SymTwoForm",
    "exterior_closed",
    "exterior_derivative",
    "lie_derivative",
    "contract",
    "poincare_homotopy",
    "hamiltonian_field",
    "nondegeneracy_samples",
    "fode_lagrangian",
    "FodeResult",
    "cartan_data",
    "sode_check",
    "SodeReport",
    "sode_from_lagrangian",
]


class HypothesisError(ValueError):
    """A precondition of a construction fails; ``witness`` shows where."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class PhaseChart:
    """Coordinates ``q^0 .. q^{d-1}`` realized as an order-0 jet space."""

    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not self.names:
            raise ValueError("a chart needs at least one coordinate")

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def space(self) -> JetSpace:
        return JetSpace((), self.names, 0)

    def coord(self, j: int) -> Expr:
        return Expr.var(self.space, jet(j))

    def coords(self) -> list[Expr]:
        return [self.coord(j) for j in range(self.dim)]

    def zero(self) -> Expr:
        return Expr.zero(self.space)

    def d(self, e: Expr, j: int) -> Expr:
        return partial_derivative(e, jet(j))


@dataclass(frozen=True)
class TangentChart(PhaseChart):
    """Doubled chart ``(q^0..q^{d-1}, v^0..v^{d-1})``; positions come first."""

    def __post_init__(self):
        super().__post_init__()
        if len(self.names) % 2:
            raise ValueError("a tangent chart has an even number of coordinates")

    @classmethod
    def over(cls, base: PhaseChart, prefix: str = "v") -> "TangentChart":
        return cls(base.names + tuple(prefix + n for n in base.names))

    @property
    def half(self) -> int:
        return self.dim // 2

    def position(self, j: int) -> int:
        return j

    def velocity(self, j: int) -> int:
        return self.half + j


def _check_chart(a: PhaseChart, b: PhaseChart):
    if a.names != b.names:
        raise ValueError(f"chart mismatch: {a.names} vs {b.names}")


@dataclass(frozen=True)
class SymVectorField:
    chart: PhaseChart
    components: tuple[Expr, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != self.chart.dim:
            raise ValueError(f"expected {self.chart.dim} components, got {len(comps)}")
        object.__setattr__(self, "components", tuple(c.with_space(self.chart.space) for c in comps))

    def __call__(self, e: Expr) -> Expr:
        """Directional derivative ``f^j de/dq^j``."""
        out = self.chart.zero()
        for j, f in enumerate(self.components):
            if not f.is_zero():
                out = out + f * self.chart.d(e, j)
        return out


@dataclass(frozen=True)
class SymOneForm:
    chart: PhaseChart
    coefficients: tuple[Expr, ...]

    def __post_init__(self):
        comps = tuple(self.coefficients)
        if len(comps) != self.chart.dim:
            raise ValueError(f"expected {self.chart.dim} coefficients, got {len(comps)}")
        object.__setattr__(self, "coefficients", tuple(c.with_space(self.chart.space) for c in comps))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def __str__(self):
        parts = [
            f"({format_expr(c)})*d{n}" for n, c in zip(self.chart.names, self.coefficients) if not c.is_zero()
        ]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class SymTwoForm:
    chart: PhaseChart
    upper: Mapping[tuple[int, int], Expr] = field(default_factory=dict)

    def __post_init__(self):
        d = self.chart.dim
        clean = {}
        for (j, k), e in dict(self.upper).items():
            if not (0 <= j < d and 0 <= k < d) or j == k:
                raise ValueError(f"invalid two-form index pair {(j, k)}")
            if j > k:
                j, k, e = k, j, -e
            e = e.with_space(self.chart.space)
            clean[(j, k)] = clean.get((j, k), self.chart.zero()) + e
        object.__setattr__(self, "upper", {key: e for key, e in sorted(clean.items()) if not e.is_zero()})

    def __getitem__(self, jk: tuple[int, int]) -> Expr:
        j, k = jk
        if j == k:
            return self.chart.zero()
        if j < k:
            return self.upper.get((j, k), self.chart.zero())
        return -self.upper.get((k, j), self.chart.zero())

    def is_zero(self) -> bool:
        return not self.upper

    def matrix(self) -> list[list[Expr]]:
        d = self.chart.dim
        return [[self[j, k] for k in range(d)] for j in range(d)]

    def __eq__(self, other):
        if not isinstance(other, SymTwoForm):
            return NotImplemented
        return self.chart.names == other.chart.names and self.upper == other.upper

    def __hash__(self):
        return hash((self.chart.names, tuple(self.upper)))

    def __str__(self):
        n = self.chart.names
        parts = [f"({format_expr(e)})*d{n[j]}^d{n[k]}" for (j, k), e in self.upper.items()]
        return " + ".join(parts) or "0"


# -- exterior calculus ---------------------------------------------------


def exterior_derivative(alpha: SymOneForm) -> SymTwoForm:
    """``(d alpha)_jk = d_j alpha_k - d_k alpha_j``."""
    ch = alpha.chart
    a = alpha.coefficients
    return SymTwoForm(
        ch,
        {
            (j, k): ch.d(a[k], j) - ch.d(a[j], k)
            for j in range(ch.dim)
            for k in range(j + 1, ch.dim)
        },
    )


def differential(chart: PhaseChart, f: Expr) -> SymOneForm:
    return SymOneForm(chart, tuple(chart.d(f, j) for j in range(chart.dim)))


def exterior_closed(w: SymTwoForm) -> tuple[bool, dict[tuple[int, int, int], Expr]]:
    """Closedness test; returns the verdict and the nonzero ``dw`` coefficients.

    The residual entry at ``(i, j, k)``, ``i < j < k``, is the cyclic sum
    ``d_i w_jk + d_j w_ki + d_k w_ij``.
    """
    ch = w.chart
    residual = {}
    for i in range(ch.dim):
        for j in range(i + 1, ch.dim):
            for k in range(j + 1, ch.dim):
                r = ch.d(w[j, k], i) + ch.d(w[k, i], j) + ch.d(w[i, j], k)
                if not r.is_zero():
                    residual[(i, j, k)] = r
    return not residual, residual


def one_form_closed(alpha: SymOneForm) -> tuple[bool, SymTwoForm]:
    dw = exterior_derivative(alpha)
    return dw.is_zero(), dw


def lie_derivative(gamma: SymVectorField, w: SymTwoForm) -> SymTwoForm:
    """``(L_f w)_jk = f^i d_i w_jk + w_ik d_j f^i + w_ji d_k f^i``."""
    _check_chart(gamma.chart, w.chart)
    ch = w.chart
    f = gamma.components
    df = [[ch.d(f[i], j) for j in range(ch.dim)] for i in range(ch.dim)]
    out = {}
    for j in range(ch.dim):
        for k in range(j + 1, ch.dim):
            acc = gamma(w[j, k])
            for i in range(ch.dim):
                if not df[i][j].is_zero():
                    acc = acc + w[i, k] * df[i][j]
                if not df[i][k].is_zero():
                    acc = acc + w[j, i] * df[i][k]
            out[(j, k)] = acc
    return SymTwoForm(ch, out)


def contract(gamma: SymVectorField, w: SymTwoForm) -> SymOneForm:
    """Interior product ``(i_f w)_k = f^j w_jk``."""
    _check_chart(gamma.chart, w.chart)
    ch = w.chart
    coeffs = []
    for k in range(ch.dim):
        acc = ch.zero()
        for j, f in enumerate(gamma.components):
            if not f.is_zero():
                acc = acc + f * w[j, k]
        coeffs.append(acc)
    return SymOneForm(ch, tuple(coeffs))


def poincare_homotopy(form):
    """Potential of a closed one- or two-form by radial homotopy at the origin.

    For a one-form returns ``E`` with ``dE = alpha``; for a two-form
    returns a one-form ``B`` with ``dB = w``.  Homogeneous pieces of degree
    ``d`` are weighted by ``1/(d+1)`` (one-forms) or ``1/(d+2)``
    (two-forms), which is the exact value of the radial integral.
    """
    if isinstance(form, SymOneForm):
        ok, dw = one_form_closed(form)
        if not ok:
            raise HypothesisError("one-form is not closed", dw)
        ch = form.chart
        q = ch.coords()
        E = ch.zero()
        for j, a in enumerate(form.coefficients):
            for deg, piece in homogeneous_components(a):
                E = E + piece * q[j] * Fraction(1, deg + 1)
        if differential(ch, E) != form:
            raise AssertionError("homotopy potential failed verification")
        return E
    if isinstance(form, SymTwoForm):
        ok, residual = exterior_closed(form)
        if not ok:
            raise HypothesisError("two-form is not closed", residual)
        ch = form.chart
        q = ch.coords()
        B = []
        for k in range(ch.dim):
            acc = ch.zero()
            for j in range(ch.dim):
                for deg, piece in homogeneous_components(form[j, k]):
                    acc = acc + piece * q[j] * Fraction(1, deg + 2)
            B.append(acc)
        B = SymOneForm(ch, tuple(B))
        if exterior_derivative(B) != form:
            raise AssertionError("homotopy potential failed verification")
        return B
    raise TypeError(f"expected a SymOneForm or SymTwoForm, got {type(form).__name__}")


# -- exact linear algebra --------------------------------------------------


def _determinant(rows: list[list[Fraction]]) -> Fraction:
    a = [row[:] for row in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for cc in range(c, n):
                    a[r][cc] -= f * a[c][cc]
    return det


def _solve(matrix: list[list[Fraction]], rhs: list[Expr]) -> list[Expr]:
    n = len(matrix)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise HypothesisError("two-form is degenerate")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c][:n]] + [a[c][n] * (1 / piv)]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [a[r][cc] - f * a[c][cc] for cc in range(n)] + [a[r][n] - a[c][n] * f]
    return [a[i][n] for i in range(n)]


def hamiltonian_field(w: SymTwoForm, H: Expr) -> SymVectorField:
    """The field ``f`` with ``i_f w = dH`` for constant, nondegenerate ``w``."""
    ch = w.chart
    consts = []
    for row in w.matrix():
        vals = []
        for e in row:
            c = e.constant_value()
            if c is None:
                raise ValueError("hamiltonian_field needs constant coefficients")
            vals.append(c)
        consts.append(vals)
    # i_f w = dH  <=>  sum_j f^j w_jk = d_k H  <=>  W^T f = dH
    transposed = [[consts[j][k] for j in range(ch.dim)] for k in range(ch.dim)]
    dH = [ch.d(H, k) for k in range(ch.dim)]
    return SymVectorField(ch, tuple(_solve(transposed, dH)))


def nondegeneracy_samples(w: SymTwoForm, count: int = 10, seed: int = 0) -> list[dict]:
    """Determinant of ``w`` at seeded random rational points.

    Symbolic rank of a polynomial matrix is not decided; a nonzero sample is
    a certificate of nondegeneracy on an open dense set.
    """
    ch = w.chart
    rng = random.Random(seed)
    mat = w.matrix()
    out = []
    for _ in range(count):
        point = {jet(j): Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for j in range(ch.dim)}
        rows = [[eval_at_point(e, point) for e in row] for row in mat]
        out.append({
            "point": {ch.names[j]: str(point[jet(j)]) for j in range(ch.dim)},
            "determinant": _determinant(rows),
        })
    return out


# -- first-order systems -------------------------------------------------


@dataclass(frozen=True)
class FodeResult:
    """Output of :func:`fode_lagrangian`.

    ``B`` and ``E`` satisfy ``dB = w`` and ``dE = i_f w``.  ``lagrangian``
    is ``-B_j v^j - E`` over ``tangent``; its Cartan form ``-d(dL/dv^j dq^j)``
    is ``w`` and its energy ``v^j dL/dv^j - L`` is ``E``.  ``residual``
    holds its Euler-Lagrange expressions ``(dB)_jk v^j - d_k E`` evaluated
    on ``v = f``, which must vanish identically.
    """

    B: SymOneForm
    E: Expr
    lagrangian: Expr
    tangent: TangentChart
    residual: tuple[Expr, ...]
    determinant_samples: list[dict]

    @property
    def certified(self) -> bool:
        return all(r.is_zero() for r in self.residual)


def fode_lagrangian(gamma: SymVectorField, w: SymTwoForm, samples: int = 10) -> FodeResult:
    """Degenerate Lagrangian whose Euler-Lagrange equations are ``q' = f(q)``.

    Raises :class:`HypothesisError` with the offending coefficients if
    ``w`` is not closed or not preserved by ``gamma``.
    """
    _check_chart(gamma.chart, w.chart)
    ch = w.chart
    ok, residual = exterior_closed(w)
    if not ok:
        raise HypothesisError("two-form is not closed", residual)
    lw = lie_derivative(gamma, w)
    if not lw.is_zero():
        raise HypothesisError("the vector field does not preserve the two-form", lw)
    B = poincare_homotopy(w)
    E = poincare_homotopy(contract(gamma, w))

    tangent = TangentChart.over(ch)
    lift = {jet(j): Expr.var(tangent.space, jet(j)) for j in range(ch.dim)}
    L = -substitute(E, lift, tangent.space)
    for j, b in enumerate(B.coefficients):
        L = L - substitute(b, lift, tangent.space) * tangent.coord(tangent.velocity(j))
    return FodeResult(B, E, L, tangent, _on_shell_residual(L, tangent, gamma), nondegeneracy_samples(w, samples))


def _on_shell_residual(L: Expr, tangent: TangentChart, gamma: SymVectorField) -> tuple[Expr, ...]:
    """Euler-Lagrange expressions of a Lagrangian affine in ``v``, on ``v = f(q)``.

    Momenta of such a Lagrangian depend on ``q`` only, so along a curve
    ``d/dt (dL/dv^k) = v^j d_j (dL/dv^k)``.
    """
    d = tangent.half
    lift = {jet(j): tangent.coord(j) for j in range(d)}
    on_shell = {jet(tangent.velocity(j)): substitute(f, lift, tangent.space) for j, f in enumerate(gamma.components)}
    lower = {jet(j): gamma.chart.coord(j) for j in range(d)}
    out = []
    for k in range(d):
        momentum = tangent.d(L, tangent.velocity(k))
        if any(tangent.d(momentum, tangent.velocity(j)).terms for j in range(d)):
            raise ValueError("Lagrangian is not affine in the velocities")
        el = tangent.d(L, tangent.position(k))
        for j in range(d):
            el = el - tangent.coord(tangent.velocity(j)) * tangent.d(momentum, tangent.position(j))
        el = substitute(el, on_shell, tangent.space)
        out.append(substitute(el, lower, gamma.chart.space))
    return tuple(out)


# -- second-order systems ------------------------------------------------


def cartan_data(L: Expr, chart: TangentChart) -> tuple[SymOneForm, SymTwoForm, Expr]:
    """Cartan one-form, two-form and energy of a Lagrangian on a tangent chart.

    ``theta = (dL/dv^j) dq^j``, ``w_L = -d theta`` and
    ``E_L = v^j dL/dv^j - L``.
    """
    L = L.with_space(chart.space)
    d = chart.half
    zero = chart.zero()
    theta = [chart.d(L, chart.velocity(j)) for j in range(d)] + [zero] * d
    theta = SymOneForm(chart, tuple(theta))
    w = exterior_derivative(theta)
    w = SymTwoForm(chart, {key: -e for key, e in w.upper.items()})
    energy = -L
    for j in range(d):
        energy = energy + chart.coord(chart.velocity(j)) * chart.d(L, chart.velocity(j))
    return theta, w, energy


@dataclass(frozen=True)
class SodeReport:
    second_order: bool
    second_order_defects: dict[str, Expr]
    lie_derivative: SymTwoForm
    vertical_block: dict[tuple[str, str], Expr]
    note: str = "hypotheses verified; no Lagrangian construction is available for this case"

    @property
    def lie_invariant(self) -> bool:
        return self.lie_derivative.is_zero()

    @property
    def vertical_isotropic(self) -> bool:
        return not self.vertical_block

    @property
    def hypotheses_hold(self) -> bool:
        return self.second_order and self.lie_invariant and self.vertical_isotropic


def sode_check(gamma: SymVectorField, w: SymTwoForm) -> SodeReport:
    """Check the hypotheses for a second-order field on a tangent chart.

    Reports whether ``gamma`` is second order (its ``dq^j`` component is
    ``v^j``), the coefficients of ``L_gamma w`` and the nonzero entries of
    the vertical block ``w(d/dv^j, d/dv^k)``.
    """
    _check_chart(gamma.chart, w.chart)
    ch = gamma.chart
    if not isinstance(ch, TangentChart):
        ch = TangentChart(ch.names)
        gamma = SymVectorField(ch, gamma.components)
        w = SymTwoForm(ch, w.upper)
    d = ch.half
    defects = {}
    for j in range(d):
        diff = gamma.components[ch.position(j)] - ch.coord(ch.velocity(j))
        if not diff.is_zero():
            defects[ch.names[j]] = diff
    vertical = {}
    for j in range(d):
        for k in range(j + 1, d):
            e = w[ch.velocity(j), ch.velocity(k)]
            if not e.is_zero():
                vertical[(ch.names[ch.velocity(j)], ch.names[ch.velocity(k)])] = e
    return SodeReport(not defects, defects, lie_derivative(gamma, w), vertical)


def sode_from_lagrangian(L: Expr, chart: TangentChart) -> SymVectorField:
    """Second-order field solving ``i_f w_L = dE_L`` when ``w_L`` is constant."""
    _, w, energy = cartan_data(L, chart)
    return hamiltonian_field(w, energy)
