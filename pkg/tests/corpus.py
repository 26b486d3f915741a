"""Seeded random polynomials, Lagrangians and problem files for the tests."""

from __future__ import annotations

import random
from fractions import Fraction

from varinverse.jetcore import Expr, JetSpace
from varinverse.varcalc import Lagrangian, SourceForm

INDEPENDENT = "txyz"
DEPENDENT = ("u", "v", "w")


def random_space(rng: random.Random, max_n=2, max_l=2, max_k=2) -> JetSpace:
    n = rng.randint(1, max_n)
    l = rng.randint(1, max_l)
    k = rng.randint(0, max_k)
    return JetSpace(tuple(INDEPENDENT[:n]), DEPENDENT[:l], k)


def random_coefficient(rng: random.Random) -> Fraction:
    num = rng.choice([i for i in range(-6, 7) if i])
    return Fraction(num, rng.randint(1, 4))


def random_expr(rng: random.Random, space: JetSpace, max_degree=3, max_terms=6, jets_only=False) -> Expr:
    pool = [v for v in space.variables() if not (jets_only and v.kind == 0)]
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0 if not jets_only else 1, max_degree)
        powers = {}
        for v in rng.choices(pool, k=d):
            powers[v] = powers.get(v, 0) + 1
        terms.append((powers, random_coefficient(rng)))
    return Expr.from_terms(space, terms)


def random_lagrangian(rng: random.Random) -> Lagrangian:
    space = random_space(rng)
    return Lagrangian(space, random_expr(rng, space))


def lagrangian_corpus(count: int, seed: int = 2024) -> list[Lagrangian]:
    rng = random.Random(seed)
    return [random_lagrangian(rng) for _ in range(count)]


def random_source_form(rng: random.Random) -> SourceForm:
    space = random_space(rng)
    return SourceForm(space, tuple(random_expr(rng, space) for _ in space.dependent))


DEPENDENT_NAMES = ("u", "v", "w", "phi", "A1", "rho")
COORDINATE_NAMES = ("q", "p", "r", "s", "q1", "p1")


def random_problem(rng: random.Random):
    """A random ProblemFile of any kind, built programmatically."""
    from varinverse.parser import ProblemFile

    kind = rng.choice(["system", "lagrangian", "mech-field", "mech-form"])
    name = rng.choice(["wave", "heat", "p", "Problem7", "x"])
    if kind in ("system", "lagrangian"):
        n = rng.randint(1, 3)
        l = rng.randint(1, 3)
        indep = tuple(rng.sample("txyzT", n))
        dep = tuple(rng.sample(DEPENDENT_NAMES, l))
        space = JetSpace(indep, dep, rng.randint(0, 3))
        if kind == "system":
            entries = [("eq", random_expr(rng, space, max_degree=4)) for _ in dep]
        else:
            entries = [("L", random_expr(rng, space, max_degree=4))]
    else:
        d = rng.randint(2, 4)
        indep = ()
        dep = tuple(rng.sample(COORDINATE_NAMES, d))
        space = JetSpace((), dep, 0)
        if kind == "mech-field":
            labels = rng.sample(dep, rng.randint(1, d))
            labels.sort(key=dep.index)
        else:
            pairs = [(a, b) for i, a in enumerate(dep) for b in dep[i + 1 :]]
            labels = [f"{a}_{b}" for a, b in rng.sample(pairs, rng.randint(1, len(pairs)))]
        entries = [(lab, random_expr(rng, space)) for lab in labels]
    if rng.random() < 0.1:
        entries[0] = (entries[0][0], Expr.zero(space))
    return ProblemFile.build(kind, name, indep, dep, entries)
