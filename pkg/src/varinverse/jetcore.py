"""Exact polynomial expressions over jet coordinates.

An :class:`Expr` is a polynomial with :class:`fractions.Fraction`
coefficients in the coordinates of a finite jet space: independent
variables ``x^j``, dependent variables ``y^s`` and their derivatives
``y^s_J`` indexed by a sorted multi-index ``J``.  Terms are stored in a
canonical dictionary so that structural equality decides polynomial
equality.

Indices are 0-based throughout (``x^0`` is the first independent
variable).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, NamedTuple, Union


class JetError(ValueError):
    """A variable or expression does not fit the jet space it is used in."""


class JetVar(NamedTuple):
    """One jet coordinate.

    The tuple layout doubles as the fixed variable enumeration used for
    the monomial order: independents first (by index), then derivatives
    by order, dependent index and multi-index.
    """

    kind: int  # 0 independent, 1 jet
    order: int
    index: int
    multi: tuple[int, ...]

    @property
    def is_independent(self) -> bool:
        return self.kind == 0


def independent(j: int) -> JetVar:
    """The independent coordinate ``x^j``."""
    return JetVar(0, 0, j, ())


def jet(sigma: int, multi: Iterable[int] = ()) -> JetVar:
    """The jet coordinate ``y^sigma_J``; ``multi`` is sorted on the way in."""
    m = tuple(sorted(multi))
    return JetVar(1, len(m), sigma, m)


Monomial = tuple[tuple[JetVar, int], ...]
Number = Union[int, Fraction]


@dataclass(frozen=True)
class JetSpace:
    """Finite coordinate model of the k-th jet bundle.

    Parameters
    ----------
    independent : tuple of str
        Names of ``x^0 .. x^{n-1}``.  May be empty for a bare phase-space
        chart (order 0).
    dependent : tuple of str
        Names of ``y^0 .. y^{l-1}``.
    order : int
        Maximum derivative order ``k``.
    """

    independent: tuple[str, ...]
    dependent: tuple[str, ...]
    order: int = 0

    def __post_init__(self):
        object.__setattr__(self, "independent", tuple(self.independent))
        object.__setattr__(self, "dependent", tuple(self.dependent))
        names = self.independent + self.dependent
        if not self.dependent:
            raise JetError("a jet space needs at least one dependent variable")
        if len(set(names)) != len(names):
            raise JetError(f"variable names must be unique: {names}")
        if self.order < 0:
            raise JetError("derivative order must be nonnegative")
        if not self.independent and self.order != 0:
            raise JetError("a space without independent variables has order 0")

    @property
    def n(self) -> int:
        return len(self.independent)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.dependent)

    @property
    def k(self) -> int:
        return self.order

    def with_order(self, order: int) -> "JetSpace":
        if order == self.order:
            return self
        return JetSpace(self.independent, self.dependent, order)

    def compatible(self, other: "JetSpace") -> bool:
        return self.independent == other.independent and self.dependent == other.dependent

    def contains(self, v: JetVar) -> bool:
        if v.kind == 0:
            return 0 <= v.index < self.n
        return (
            0 <= v.index < self.l
            and v.order <= self.order
            and all(0 <= j < self.n for j in v.multi)
        )

    def check(self, v: JetVar) -> None:
        if not self.contains(v):
            raise JetError(f"{self.name(v)!s} is not a coordinate of {self}")

    def multi_indices(self, order: int) -> Iterator[tuple[int, ...]]:
        """Sorted multi-indices of exactly ``order`` entries."""
        from itertools import combinations_with_replacement

        return combinations_with_replacement(range(self.n), order)

    def variables(self) -> list[JetVar]:
        """Every coordinate of the space in enumeration order."""
        out = [independent(j) for j in range(self.n)]
        for m in range(self.order + 1):
            for s in range(self.l):
                out.extend(jet(s, J) for J in self.multi_indices(m))
        return out

    def name(self, v: JetVar) -> str:
        try:
            if v.kind == 0:
                return self.independent[v.index]
            base = self.dependent[v.index]
            if not v.multi:
                return base
            return base + "_" + "".join(self.independent[j] for j in v.multi)
        except IndexError:
            return repr(v)

    def __str__(self) -> str:
        return (
            f"J^{self.order}(x: {', '.join(self.independent) or '-'}; "
            f"y: {', '.join(self.dependent)})"
        )


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def jet_degree(m: Monomial) -> int:
    """Total degree in the dependent-variable coordinates only."""
    return sum(e for v, e in m if v.kind == 1)


def mono_order_key(m: Monomial):
    """Graded lexicographic key; sorting ascending puts leading terms first."""
    return (-mono_degree(m), m)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


@dataclass(frozen=True, eq=False)
class Expr:
    """Canonical polynomial over a jet space.

    ``terms`` maps monomials to nonzero coefficients.  Two expressions are
    equal when they live over compatible spaces (same variable names; the
    order bound is not compared) and have identical term maps.
    """

    space: JetSpace
    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", _normalize(self.terms))

    @classmethod
    def _raw(cls, space: JetSpace, terms: dict) -> "Expr":
        # terms already canonical
        e = object.__new__(cls)
        object.__setattr__(e, "space", space)
        object.__setattr__(e, "terms", terms)
        return e

    @classmethod
    def const(cls, space: JetSpace, c: Number) -> "Expr":
        c = _as_fraction(c)
        return cls._raw(space, {(): c} if c else {})

    @classmethod
    def var(cls, space: JetSpace, v: JetVar) -> "Expr":
        space.check(v)
        return cls._raw(space, {((v, 1),): Fraction(1)})

    @classmethod
    def zero(cls, space: JetSpace) -> "Expr":
        return cls._raw(space, {})

    @classmethod
    def from_terms(cls, space: JetSpace, terms: Iterable[tuple[Mapping[JetVar, int], Number]]) -> "Expr":
        """Build from ``(powers, coefficient)`` pairs; repeated monomials add up."""
        acc: dict[Monomial, Fraction] = {}
        for powers, c in terms:
            for v, p in powers.items():
                space.check(v)
                if p < 0:
                    raise JetError("exponents must be nonnegative")
            m = tuple(sorted((v, p) for v, p in powers.items() if p))
            acc[m] = acc.get(m, Fraction(0)) + _as_fraction(c)
        return cls(space, acc)

    # -- structure -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[JetVar]:
        return {v for m in self.terms for v, _ in m}

    def jet_order(self) -> int:
        """Highest derivative order that actually occurs (0 if none)."""
        return max((v.order for v in self.variables() if v.kind == 1), default=0)

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: mono_order_key(t[0]))

    def constant_value(self) -> Fraction | None:
        """The value if the expression is constant, else ``None``."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def with_space(self, space: JetSpace) -> "Expr":
        if not space.compatible(self.space):
            raise JetError(f"cannot move expression from {self.space} to {space}")
        for v in self.variables():
            space.check(v)
        return Expr._raw(space, self.terms)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "Expr":
        if isinstance(other, Expr):
            if not other.space.compatible(self.space):
                raise JetError(f"incompatible spaces {self.space} and {other.space}")
            return other
        return Expr.const(self.space, other)

    def _joint_space(self, other: "Expr") -> JetSpace:
        if other.space.order > self.space.order:
            return other.space
        return self.space

    def __add__(self, other) -> "Expr":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Expr._raw(self._joint_space(other), out)

    __radd__ = __add__

    def __neg__(self) -> "Expr":
        return Expr._raw(self.space, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Expr":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Expr":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Expr":
        if not isinstance(other, Expr):
            c = _as_fraction(other)
            if not c:
                return Expr.zero(self.space)
            return Expr._raw(self.space, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return Expr._raw(self._joint_space(other), {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Expr":
        if isinstance(other, Expr):
            raise JetError("division by an expression is not polynomial")
        return self * (1 / _as_fraction(other))

    def __pow__(self, p: int) -> "Expr":
        if not isinstance(p, int) or p < 0:
            raise JetError("only nonnegative integer powers are polynomial")
        out = Expr.const(self.space, 1)
        base = self
        while p:
            if p & 1:
                out = out * base
            base = base * base
            p >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Expr):
            return self.space.compatible(other.space) and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.space.independent, self.space.dependent, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Expr({format_expr(self)!r})"

    def __str__(self) -> str:
        return format_expr(self)


def _normalize(terms: Mapping) -> dict:
    out = {}
    for m, c in terms.items():
        c = _as_fraction(c)
        if c:
            out[tuple(m)] = c
    return out


# -- operations ---------------------------------------------------------


def partial_derivative(e: Expr, v: JetVar) -> Expr:
    """Formal partial derivative of ``e`` with respect to the coordinate ``v``."""
    e.space.check(v)
    out: dict[Monomial, Fraction] = {}
    for m, c in e.terms.items():
        for i, (w, p) in enumerate(m):
            if w == v:
                rest = m[:i] + (((w, p - 1),) if p > 1 else ()) + m[i + 1 :]
                out[rest] = out.get(rest, 0) + c * p
                break
    return Expr._raw(e.space, {m: c for m, c in out.items() if c})


def scale_dependent(e: Expr) -> list[tuple[int, Expr]]:
    """Split ``e`` into components homogeneous in the jet coordinates.

    Substituting ``y_J -> t*y_J`` (independents untouched) turns ``e`` into
    ``sum(t**d * component)``; the pairs ``(d, component)`` are returned in
    decreasing ``d``.
    """
    buckets: dict[int, dict] = {}
    for m, c in e.terms.items():
        buckets.setdefault(jet_degree(m), {})[m] = c
    return [(d, Expr._raw(e.space, buckets[d])) for d in sorted(buckets, reverse=True)]


def homogeneous_components(e: Expr) -> list[tuple[int, Expr]]:
    """Split ``e`` by total degree in all coordinates, decreasing degree."""
    buckets: dict[int, dict] = {}
    for m, c in e.terms.items():
        buckets.setdefault(mono_degree(m), {})[m] = c
    return [(d, Expr._raw(e.space, buckets[d])) for d in sorted(buckets, reverse=True)]


def eval_at_point(e: Expr, assignment: Mapping[JetVar, Number]) -> Fraction:
    """Exact value of ``e`` at a rational point."""
    total = Fraction(0)
    for m, c in e.terms.items():
        val = c
        for v, p in m:
            try:
                x = assignment[v]
            except KeyError:
                raise JetError(f"no value assigned to {e.space.name(v)}") from None
            val *= _as_fraction(x) ** p
        total += val
    return total


def substitute(e: Expr, values: Mapping[JetVar, Expr], space: JetSpace | None = None) -> Expr:
    """Replace coordinates by expressions; unmapped coordinates stay."""
    space = space or e.space
    out = Expr.zero(space)
    cache: dict[tuple[JetVar, int], Expr] = {}
    for m, c in e.terms.items():
        term = Expr.const(space, c)
        for v, p in m:
            if v in values:
                key = (v, p)
                if key not in cache:
                    cache[key] = values[v] ** p
                term = term * cache[key]
            else:
                term = term * Expr._raw(space, {((v, p),): Fraction(1)})
        out = out + term
    return out


def format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(space: JetSpace, m: Monomial) -> str:
    return "*".join(space.name(v) + (f"^{p}" if p > 1 else "") for v, p in m)


def format_expr(e: Expr) -> str:
    """Render in canonical order with ``*``, ``^`` and ``p/q`` literals."""
    if not e.terms:
        return "0"
    parts = []
    for i, (m, c) in enumerate(e.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        body = format_monomial(e.space, m)
        if not body:
            s = format_coefficient(a)
        elif a == 1:
            s = body
        else:
            s = f"{format_coefficient(a)}*{body}"
        if i == 0:
            parts.append(f"-{s}" if neg else s)
        else:
            parts.append(f" - {s}" if neg else f" + {s}")
    return "".join(parts)
