"""Seeded random elements, cuts and series for checks and experiments."""

from __future__ import annotations

import random
from fractions import Fraction

from .cuts import Cut, PLUS, MINUS
from .groups import CYCLIC, HULL, INTEGERS


def rng_for(seed):
    return random.Random(seed)


def random_elem(g, rng, size=5):
    if g.is_lex:
        return g.elem(tuple(rng.randint(-size, size) for _ in range(g.rank)))
    if g.kind == INTEGERS:
        return Fraction(rng.randint(-size, size))
    if g.kind == CYCLIC:
        return rng.randint(-size, size) * g.step
    d = g.p ** rng.randint(0, min(3, g.max_depth))
    return Fraction(rng.randint(-size * d, size * d), d)


def random_positive(g, rng, size=3):
    while True:
        x = random_elem(g, rng, size)
        if x > g.zero:
            return x


def random_cut(g, rng, size=5, infinite=0.1):
    u = rng.random()
    if u < infinite / 2:
        return Cut.neg_inf(g)
    if u < infinite:
        return Cut.pos_inf(g)
    x = random_elem(g, rng, size)
    if g.is_lex and rng.random() < 0.3:
        return Cut.subgroup(g, x, rng.randint(1, g.rank - 1) if g.rank > 1 else 1, rng.choice([PLUS, MINUS]))
    if g.dense and rng.random() < 0.2:
        den = rng.choice([3, 5, 7]) * g.p ** rng.randint(0, 2)
        q = Fraction(rng.randint(-size * den, size * den), den)
        if not g.in_hull(q):
            return Cut.gap(g, q)
    return Cut.principal(g, x, rng.choice([PLUS, MINUS]))


def random_series(ring, rng, terms=4, size=4, low=None):
    """Finite series with up to `terms` terms; exponents >= low when given."""
    g = ring.group
    exps = set()
    for _ in range(rng.randint(0, terms)):
        e = random_elem(g, rng, size)
        if low is not None and e < low:
            e = low + (low - e)
        exps.add(e)
    pairs = []
    for e in sorted(exps):
        c = ring.field.random(rng)
        if c:
            pairs.append((e, c))
    return ring.from_terms(pairs)


def random_unit(ring, rng, terms=3, size=3):
    """1 - eps with v(eps) > 0 times a random constant and monomial."""
    g = ring.group
    eps = random_series(ring, rng, terms, size, low=None)
    eps = ring.from_terms([(e, c) for e, c in eps.terms() if e > g.zero])
    c = ring.field.random(rng)
    while not c:
        c = ring.field.random(rng)
    return (ring.one() - eps).scale(c) * ring.monomial(random_elem(g, rng, 2))


def tower_samples(ring, rng, n):
    """n series pairs, n cut pairs and n small elements for the tower checks."""
    g = ring.group
    pairs = [(random_series(ring, rng), random_series(ring, rng)) for _ in range(n)]
    cuts = [(random_cut(g, rng), random_cut(g, rng)) for _ in range(n)]
    elems = [random_elem(g, rng, 3) for _ in range(n)]
    return pairs, cuts, elems
