"""Computable ordered abelian groups inside Q^n.

Rank-one groups use `Fraction` elements; lexicographic powers use `Vec`,
a tuple whose + and - act componentwise while comparison stays the tuple's
own lexicographic order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import gcd, lcm

from .errors import BoundExceeded, NotInGroup


class Vec(tuple):
    __slots__ = ()

    def __add__(self, other):
        return Vec(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return Vec(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Vec(-a for a in self)

    def __mul__(self, n):
        return Vec(n * a for a in self)

    __rmul__ = __mul__

    def __repr__(self):
        return "(" + ",".join(str(a) for a in self) + ")"


INTEGERS, LEX, HULL, CYCLIC = "Integers", "LexPower", "PDivisibleHullOfZ", "RationalSubgroup"


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class Group:
    """Group descriptor.  Build instances with the constructors below."""

    kind: str
    rank: int = 1
    p: int = 0
    max_depth: int = 0
    generators: tuple = ()

    def __post_init__(self):
        if self.kind == LEX and self.rank < 1:
            raise ValueError("LexPower needs n >= 1")
        if self.kind == HULL and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.kind == CYCLIC:
            gens = self.generators
            if not gens or any(g <= 0 for g in gens) or len(set(gens)) != len(gens):
                raise ValueError("RationalSubgroup needs distinct positive generators")

    # -- structure ---------------------------------------------------------
    @property
    def is_lex(self):
        return self.kind == LEX

    @property
    def dense(self):
        return self.kind == HULL

    @property
    def archimedean(self):
        return self.kind != LEX or self.rank == 1

    @cached_property
    def step(self):
        """Least positive element of a rank-one discrete group."""
        if self.kind == INTEGERS:
            return Fraction(1)
        if self.kind == CYCLIC:
            den = lcm(*(g.denominator for g in self.generators))
            return Fraction(gcd(*(int(g * den) for g in self.generators)), den)
        raise TypeError(f"{self.kind} has no single step")

    @property
    def zero(self):
        return Vec((0,) * self.rank) if self.is_lex else Fraction(0)

    def unit(self, k=None):
        """e_k for lex groups (1-based k, default the last coordinate); the step otherwise."""
        if not self.is_lex:
            return self.step
        k = self.rank if k is None else k
        return Vec(1 if i == k - 1 else 0 for i in range(self.rank))

    # -- elements ----------------------------------------------------------
    def contains(self, x):
        if self.is_lex:
            return isinstance(x, tuple) and len(x) == self.rank and all(
                Fraction(a).denominator == 1 for a in x
            )
        if isinstance(x, tuple):
            return False
        x = Fraction(x)
        if self.kind == INTEGERS:
            return x.denominator == 1
        if self.kind == HULL:
            return (self.p**self.max_depth) % x.denominator == 0
        return (x / self.step).denominator == 1

    def elem(self, x):
        """Coerce and validate an element."""
        if self.is_lex:
            if not isinstance(x, (tuple, list)) or len(x) != self.rank:
                raise NotInGroup(f"{x!r} is not an element of {self.literal()}")
            if any(Fraction(a).denominator != 1 for a in x):
                raise NotInGroup(f"{x!r} has non-integer coordinates")
            return Vec(int(a) for a in x)
        if isinstance(x, (tuple, list)):
            raise NotInGroup(f"{x!r} is not an element of {self.literal()}")
        x = Fraction(x)
        if self.kind == HULL and (self.p**self.max_depth) % x.denominator:
            raise BoundExceeded(
                f"{x} needs a denominator beyond {self.p}^{self.max_depth}"
            )
        if not self.contains(x):
            raise NotInGroup(f"{x} is not an element of {self.literal()}")
        return x

    def in_hull(self, r):
        """Membership in the full group Z[1/p] that a bounded hull stands for."""
        d = Fraction(r).denominator
        if self.p == 2:
            return d & (d - 1) == 0
        while d % self.p == 0:
            d //= self.p
        return d == 1

    def add(self, a, b):
        s = a + b
        if self.kind == HULL and not self.contains(s):
            raise BoundExceeded(f"{s} leaves {self.literal()}")
        return s

    def cmp(self, a, b):
        return (a > b) - (a < b)

    # integer coordinates of discrete groups (used by the cut encoding)
    def coords(self, x):
        if self.is_lex:
            return tuple(x)
        if self.kind == INTEGERS:
            return (x.numerator,)
        return (int(x / self.step),)

    def from_coords(self, c):
        if self.is_lex:
            return Vec(c)
        return c[0] * self.step

    def literal(self):
        if self.kind == INTEGERS:
            return "Z"
        if self.kind == LEX:
            return f"Z^{self.rank}lex"
        if self.kind == HULL:
            return f"Z[1/{self.p}]^{self.max_depth}"
        return "Q<" + ",".join(str(g) for g in self.generators) + ">"

    def format_elem(self, x):
        if self.is_lex:
            return "(" + ",".join(str(int(a)) for a in x) + ")"
        return str(Fraction(x))

    def __repr__(self):
        return self.literal()


def integers():
    return Group(INTEGERS)


def lex_power(n):
    return Group(LEX, rank=n)


def p_hull(p, max_depth):
    return Group(HULL, p=p, max_depth=max_depth)


def rational_subgroup(gens):
    return Group(CYCLIC, generators=tuple(Fraction(g) for g in gens))


def add_elem(g, a, b):
    return g.add(a, b)


def cmp_elem(g, a, b):
    return g.cmp(a, b)


# -- positive monoids --------------------------------------------------------


def _check_positive(g, gens):
    for x in gens:
        if not x > g.zero:
            raise ValueError(f"generator {g.format_elem(x)} is not positive")


def iter_monoid(g, gens, offset):
    """Yield offset + <gens> in strictly increasing order.

    A heap pop always precedes every element reachable from it, so the
    output is the order-type-omega prefix of the monoid (all of it for
    archimedean groups).
    """
    _check_positive(g, gens)
    gens = sorted(set(gens))
    if not g.is_lex:
        yield from _iter_monoid_scaled(gens, Fraction(offset))
        return
    heap = [offset]
    seen = {offset}
    while heap:
        x = heapq.heappop(heap)
        yield x
        for b in gens:
            y = x + b
            if y not in seen:
                seen.add(y)
                heapq.heappush(heap, y)


def _iter_monoid_scaled(gens, offset):
    # rank one: run the heap on integers offset*den + <gens*den>
    den = lcm(offset.denominator, *(x.denominator for x in gens))
    igens = [int(x * den) for x in gens]
    start = int(offset * den)
    heap, seen = [start], {start}
    while heap:
        x = heapq.heappop(heap)
        yield Fraction(x, den)
        for b in igens:
            y = x + b
            if y not in seen:
                seen.add(y)
                heapq.heappush(heap, y)


def monoid_enumerate(g, gens, offset, count, max_count=10_000):
    if count > max_count:
        raise BoundExceeded(f"count {count} exceeds {max_count}")
    out = []
    for x in iter_monoid(g, gens, offset):
        out.append(x)
        if len(out) == count:
            break
    return out


def _int_vectors(g, gens, target):
    """Scale rank-one data to integers so every group looks like a lex power."""
    if g.is_lex:
        return [tuple(x) for x in gens], tuple(target)
    target = Fraction(target)
    den = lcm(target.denominator, *(Fraction(x).denominator for x in gens))
    return [(int(x * den),) for x in gens], (int(target * den),)


def _knapsack(coeffs, r, cap):
    # all n >= 0 with sum n_i c_i = r, c_i > 0
    if not coeffs:
        if r == 0:
            yield ()
        return
    c = coeffs[0]
    top = r // c
    if cap is not None and top > cap:
        raise BoundExceeded(f"exponent bound {top} exceeds cap {cap}")
    if len(coeffs) == 1:
        if r % c == 0:
            yield (top,)
        return
    for k in range(top + 1):
        for rest in _knapsack(coeffs[1:], r - k * c, cap):
            yield (k,) + rest


def _solve(gens, target, cap):
    """Yield every exponent vector, level by level.

    A positive lex vector has a first nonzero coordinate; only generators of
    that level can touch it, and they must match the residual there exactly.
    """
    n = len(target)
    levels = [[] for _ in range(n)]
    for i, v in enumerate(gens):
        lvl = next(j for j, a in enumerate(v) if a)
        levels[lvl].append(i)

    def rec(level, residual, counts):
        if level == n:
            yield tuple(counts)
            return
        idxs = levels[level]
        r = residual[level]
        if r < 0 or (r and not idxs):
            return
        if not idxs:
            yield from rec(level + 1, residual, counts)
            return
        for combo in _knapsack([gens[i][level] for i in idxs], r, cap):
            res = list(residual)
            for i, k in zip(idxs, combo):
                if k:
                    counts[i] = k
                    for j in range(level, n):
                        res[j] -= k * gens[i][j]
            yield from rec(level + 1, res, counts)
            for i in idxs:
                counts[i] = 0

    yield from rec(0, list(target), [0] * len(gens))


def monoid_decompose(g, gens, target, cap=64):
    """Every n >= 0 with sum n_i gens_i = target (gens taken in the given order)."""
    _check_positive(g, gens)
    if not gens:
        return [()] if target == g.zero else []
    ivecs, itarget = _int_vectors(g, gens, target)
    return sorted(set(_solve(ivecs, itarget, cap)))


def monoid_contains(g, gens, target):
    """target in <gens>; exact, with no exponent cap."""
    if target == g.zero:
        return True
    if not gens or not target > g.zero:
        return False
    ivecs, itarget = _int_vectors(g, gens, target)
    return next(_solve(ivecs, itarget, None), None) is not None
