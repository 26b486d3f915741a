"""Problem-file DSL: lexer, recursive-descent parser and renderer.

A problem file declares a jet space and one polynomial per component::

    # the 1+1 wave equation
    system wave {
      independent: t, x;
      dependent: u;
      eq: u_tt - u_xx;
    }

Kinds are ``system`` (one ``eq`` per dependent variable), ``lagrangian``
(a single ``L``), ``mech-field`` (one component per phase-space
coordinate, labelled by the coordinate name) and ``mech-form`` (two-form
coefficients labelled ``a_b`` for the pair of coordinates ``a < b``).
Mechanics files leave the independent list empty.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .jetcore import Expr, JetSpace, JetVar, format_expr, independent, jet

__all__ = [
    "KINDS",
    "ParseError",
    "ProblemFile",
    "parse_problem",
    "render",
]

KINDS = ("system", "lagrangian", "mech-field", "mech-form")


class ParseError(ValueError):
    """Rejected input, with a 1-based ``line`` and ``column``."""

    def __init__(self, message: str, line: int, column: int, code: str = "syntax"):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.code = code

    def __str__(self):
        return f"{self.line}:{self.column}: {self.message}"


class Token(NamedTuple):
    kind: str  # KEYWORD, WORD, INT, RATIONAL, PUNCT, EOF
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<kind>mech-field|mech-form)\b
  | (?P<number>\d+(?:\s*/\s*\d+)?)
  | (?P<word>[A-Za-z][A-Za-z0-9]*(?:_[A-Za-z0-9]+)?)
  | (?P<punct>[{}:;,+\-*^()])
  | (?P<slash>/)
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col, "lexical")
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "kind":
            tokens.append(Token("KEYWORD", s, line, col))
        elif kind == "number":
            if "/" in s:
                num, den = (int(x) for x in s.split("/"))
                if den == 0:
                    raise ParseError("zero denominator in rational literal", line, col, "lexical")
                tokens.append(Token("RATIONAL", s, line, col))
            else:
                tokens.append(Token("INT", s, line, col))
        elif kind == "word":
            tokens.append(Token("WORD", s, line, col))
        elif kind == "punct":
            tokens.append(Token("PUNCT", s, line, col))
        elif kind == "slash":
            raise ParseError(
                "non-polynomial construct: division is only allowed between integer literals",
                line, col, "nonpolynomial",
            )
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


@dataclass(frozen=True, eq=False)
class ProblemFile:
    """A resolved problem file.

    ``entries`` holds ``(label, Expr)`` pairs in file order.  The jet order
    of ``space`` is the highest derivative order occurring in the body.
    """

    kind: str
    name: str
    space: JetSpace
    entries: tuple[tuple[str, Expr], ...]

    def __eq__(self, other):
        if not isinstance(other, ProblemFile):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.name == other.name
            and self.space == other.space
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.kind, self.name, self.space))

    @classmethod
    def build(cls, kind: str, name: str, independent_names, dependent_names, entries) -> "ProblemFile":
        """Assemble a problem file, normalizing the space order to the body."""
        entries = tuple(entries)
        order = max((e.jet_order() for _, e in entries), default=0)
        space = JetSpace(tuple(independent_names), tuple(dependent_names), order)
        return cls(kind, name, space, tuple((lab, e.with_space(space)) for lab, e in entries))

    def expression(self, label: str) -> Expr:
        for lab, e in self.entries:
            if lab == label:
                return e
        raise KeyError(label)

    # conversions into the symbolic objects
    def source_form(self):
        from .varcalc import SourceForm

        self._expect("system")
        return SourceForm(self.space, tuple(e for _, e in self.entries))

    def lagrangian(self):
        from .varcalc import Lagrangian

        self._expect("lagrangian")
        return Lagrangian(self.space, self.entries[0][1])

    def vector_field(self):
        from .mech import PhaseChart, SymVectorField

        self._expect("mech-field")
        chart = PhaseChart(self.space.dependent)
        comps = dict(self.entries)
        return SymVectorField(
            chart, tuple(comps.get(n, Expr.zero(self.space)).with_space(chart.space) for n in chart.names)
        )

    def two_form(self):
        from .mech import PhaseChart, SymTwoForm

        self._expect("mech-form")
        chart = PhaseChart(self.space.dependent)
        idx = {n: i for i, n in enumerate(chart.names)}
        coeffs = {}
        for lab, e in self.entries:
            a, b = lab.split("_")
            coeffs[(idx[a], idx[b])] = e.with_space(chart.space)
        return SymTwoForm(chart, coeffs)

    def _expect(self, kind):
        if self.kind != kind:
            raise ValueError(f"expected a {kind!r} problem, got {self.kind!r}")


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Token | None = None, code: str = "syntax"):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.column, code)

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind not in ("PUNCT", "WORD", "KEYWORD"):
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def ident(self, what: str, allow_suffix: bool = False) -> Token:
        if self.tok.kind != "WORD" or ("_" in self.tok.text and not allow_suffix):
            found = self.tok.text or "end of input"
            self.error(f"expected {what}, found {found!r}")
        return self.advance()

    # grammar
    def parse_file(self) -> ProblemFile:
        head = self.tok
        if head.text not in KINDS:
            self.error(f"expected one of {', '.join(KINDS)}, found {head.text or 'end of input'!r}")
        kind = self.advance().text
        name = self.ident("problem name", allow_suffix=True).text
        self.expect("{")
        indep = self.decl("independent")
        dep = self.decl("dependent")
        self.check_names(indep, dep, kind)
        self.indep_names = [t.text for t in indep]
        self.dep_names = [t.text for t in dep]
        self.space = JetSpace(tuple(self.indep_names), tuple(self.dep_names), 0)
        # body parsed over a generous order bound; trimmed afterwards
        entries = []
        seen: dict[str, Token] = {}
        while not (self.tok.kind == "PUNCT" and self.tok.text == "}"):
            if self.tok.kind == "EOF":
                self.error("expected '}' before end of input")
            label_tok = self.tok
            if label_tok.kind != "WORD":
                self.error(f"expected an entry label, found {label_tok.text!r}")
            self.advance()
            label = self.check_label(kind, label_tok)
            if label in seen and label != "eq":
                self.error(f"duplicate declaration of {label!r}", label_tok, "duplicate")
            seen[label] = label_tok
            self.expect(":")
            expr = self.expr()
            self.expect(";")
            entries.append((label, expr))
        close = self.advance()
        if self.tok.kind != "EOF":
            self.error(f"unexpected {self.tok.text!r} after closing brace")
        self.check_body(kind, entries, close)
        return ProblemFile.build(kind, name, self.indep_names, self.dep_names, entries)

    def decl(self, keyword: str) -> list[Token]:
        kw = self.tok
        if kw.text != keyword:
            self.error(f"expected {keyword!r} declaration, found {kw.text or 'end of input'!r}")
        self.advance()
        self.expect(":")
        names = []
        if not (self.tok.kind == "PUNCT" and self.tok.text == ";"):
            names.append(self.ident(f"{keyword} variable name"))
            while self.tok.kind == "PUNCT" and self.tok.text == ",":
                self.advance()
                names.append(self.ident(f"{keyword} variable name"))
        self.expect(";")
        return names

    def check_names(self, indep: list[Token], dep: list[Token], kind: str):
        seen = set()
        for t in indep + dep:
            if t.text in seen:
                self.error(f"duplicate declaration of {t.text!r}", t, "duplicate")
            if t.text in ("eq", "L", "independent", "dependent"):
                self.error(f"reserved word {t.text!r} cannot name a variable", t)
            seen.add(t.text)
        if kind in ("mech-field", "mech-form"):
            if indep:
                self.error("mechanics problems take an empty independent list", indep[0])
        else:
            if not indep:
                self.error("at least one independent variable is required", self.tok)
            for t in indep:
                if len(t.text) != 1:
                    self.error(
                        f"independent variable {t.text!r} must be a single letter "
                        "so it can appear in derivative suffixes", t,
                    )
        if not dep:
            self.error("at least one dependent variable is required", self.tok)

    def check_label(self, kind: str, tok: Token) -> str:
        lab = tok.text
        if kind == "system":
            if lab != "eq":
                self.error(f"system entries are labelled 'eq', found {lab!r}", tok)
        elif kind == "lagrangian":
            if lab != "L":
                self.error(f"lagrangian entries are labelled 'L', found {lab!r}", tok)
        elif kind == "mech-field":
            if lab not in self.dep_names:
                self.error(f"unknown coordinate {lab!r}", tok, "unknown")
        else:
            parts = lab.split("_")
            if len(parts) != 2 or any(p not in self.dep_names for p in parts):
                self.error(f"two-form entries are labelled 'a_b' with declared coordinates, found {lab!r}", tok, "unknown")
            a, b = (self.dep_names.index(p) for p in parts)
            if a >= b:
                self.error(f"two-form label {lab!r} must list coordinates in declaration order", tok)
        return lab

    def check_body(self, kind: str, entries, close: Token):
        if kind == "system" and len(entries) != len(self.dep_names):
            self.error(
                f"system declares {len(self.dep_names)} dependent variable(s) "
                f"but has {len(entries)} equation(s)", close,
            )
        if kind == "lagrangian" and len(entries) != 1:
            self.error("a lagrangian has exactly one 'L' entry", close)
        if not entries:
            self.error("empty body", close)

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.kind == "PUNCT" and self.tok.text in "+-":
            op = self.advance().text
            t = self.term()
            e = e + t if op == "+" else e - t
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.tok.kind == "PUNCT" and self.tok.text == "*":
            self.advance()
            e = e * self.factor()
        return e

    def factor(self) -> Expr:
        base = self.atom()
        if self.tok.kind == "PUNCT" and self.tok.text == "^":
            self.advance()
            if self.tok.kind != "INT":
                self.error("exponent must be a nonnegative integer literal", code="nonpolynomial")
            base = base ** int(self.advance().text)
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return Expr.const(self.space, int(t.text))
        if t.kind == "RATIONAL":
            self.advance()
            num, den = (int(x) for x in t.text.split("/"))
            return Expr.const(self.space, Fraction(num, den))
        if t.kind == "WORD":
            self.advance()
            v = self.resolve(t)
            if v.order > self.space.order:
                self.space = self.space.with_order(v.order)
            return Expr.var(self.space, v)
        if t.kind == "PUNCT" and t.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "PUNCT" and t.text == "-":
            self.advance()
            return -self.factor()
        self.error(f"unexpected {t.text or 'end of input'!r} in expression")

    def resolve(self, t: Token) -> JetVar:
        base, _, suffix = t.text.partition("_")
        if base in self.indep_names:
            if suffix:
                self.error(f"independent variable {base!r} cannot carry a derivative suffix", t, "unknown")
            return independent(self.indep_names.index(base))
        if base not in self.dep_names:
            self.error(f"unknown identifier {base!r}", t, "unknown")
        multi = []
        for offset, ch in enumerate(suffix, start=len(base) + 1):
            if ch not in self.indep_names:
                raise ParseError(
                    f"unknown independent variable {ch!r} in derivative suffix",
                    t.line, t.column + offset, "unknown",
                )
            multi.append(self.indep_names.index(ch))
        return jet(self.dep_names.index(base), multi)


def parse_problem(text: str) -> ProblemFile:
    """Parse a problem file, raising :class:`ParseError` on rejection."""
    return _Parser(text).parse_file()


def render(p: ProblemFile) -> str:
    """Canonical text of a problem file; ``parse_problem`` inverts it."""
    lines = [
        f"{p.kind} {p.name} {{",
        f"  independent: {', '.join(p.space.independent)};",
        f"  dependent: {', '.join(p.space.dependent)};",
    ]
    for label, e in p.entries:
        lines.append(f"  {label}: {format_expr(e)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
