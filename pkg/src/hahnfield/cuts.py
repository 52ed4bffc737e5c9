"""Dedekind cuts of the supported groups and their arithmetic.

Discrete groups (Z, Z^n-lex, cyclic subgroups of Q) have exactly these
finite cuts: C(v, k) = {x : x[:k] <= v} for 1 <= k <= n and v in Z^k, in
integer coordinates.  k = n gives the principal cut v+ = (v+e_n)-, and
k < n gives (gamma + H_k)+ where H_k is the convex subgroup killing the
first k coordinates.  Ordering C(v, k) is ordering v padded with +inf.

Z[1/p] is dense and archimedean, so a finite cut is a rational r with a
side: r- and r+ when r lies in the group, a gap otherwise.

Every operation below is a closed formula obtained from the defining set
expression; `tests/oracles.py` re-derives them by brute force.
"""

from __future__ import annotations

import math
from enum import IntEnum
from fractions import Fraction

from .errors import BoundExceeded, NonPositiveCut, UnrepresentableCut

NEG, FIN, POS = -1, 0, 1
PLUS, MINUS = "plus", "minus"


class Order(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _bump(v, d=1):
    # v + d * e_k where k = len(v)
    return v[:-1] + (v[-1] + d,)


class Cut:
    """A cut of `group`.

    For discrete groups `pos` is the prefix v and `level` is k; `hint`
    only records which of the two equal spellings (v+ or (v+e)-) to print.
    For dense groups `pos` is the rational r and `hint` is the side
    (-1 minus, +1 plus, 0 gap).
    """

    __slots__ = ("group", "kind", "level", "pos", "hint", "_key")

    def __init__(self, group, kind, level=0, pos=None, hint=1):
        self.group = group
        self.kind = kind
        self.level = level
        self.pos = pos
        self.hint = hint
        if kind != FIN:
            self._key = (kind,)
        elif group.dense:
            self._key = (FIN, pos, hint)
        else:
            self._key = (FIN, pos + (math.inf,) * (group.rank - level))

    # -- constructors ------------------------------------------------------
    @classmethod
    def neg_inf(cls, g):
        return cls(g, NEG)

    @classmethod
    def pos_inf(cls, g):
        return cls(g, POS)

    @classmethod
    def plus(cls, g, x):
        x = g.elem(x)
        if g.dense:
            return cls(g, FIN, pos=x, hint=1)
        return cls(g, FIN, g.rank, g.coords(x), 1)

    @classmethod
    def minus(cls, g, x):
        x = g.elem(x)
        if g.dense:
            return cls(g, FIN, pos=x, hint=-1)
        return cls(g, FIN, g.rank, _bump(g.coords(x), -1), -1)

    @classmethod
    def principal(cls, g, x, side):
        return cls.plus(g, x) if side == PLUS else cls.minus(g, x)

    @classmethod
    def subgroup(cls, g, x, k, side=PLUS):
        """(x + H_k)^side over a lex power; k = n is the principal cut."""
        if not g.is_lex:
            raise UnrepresentableCut("subgroup cuts need a lexicographic power")
        if not 0 <= k <= g.rank:
            raise ValueError(f"level {k} outside 0..{g.rank}")
        if k == 0:
            return cls(g, POS if side == PLUS else NEG)
        v = g.coords(g.elem(x))[:k]
        if side == PLUS:
            return cls(g, FIN, k, v, 1)
        return cls(g, FIN, k, _bump(v, -1), -1)

    @classmethod
    def gap(cls, g, q):
        """The cut {x in G : x < q} for a rational q outside the group."""
        q = Fraction(q)
        if g.is_lex:
            raise UnrepresentableCut("gap cuts need a rank-one group")
        if g.dense:
            if g.in_hull(q):
                raise UnrepresentableCut(f"{q} lies in the group; use {q}- or {q}+")
            return cls(g, FIN, pos=q, hint=0)
        if g.contains(q):
            raise UnrepresentableCut(f"{q} lies in the group; use {q}- or {q}+")
        # a discrete group has no gaps: the cut is principal at floor(q)
        return cls(g, FIN, 1, (math.floor(q / g.step),), 1)

    # -- inspection ----------------------------------------------------------
    @property
    def is_neg_inf(self):
        return self.kind == NEG

    @property
    def is_pos_inf(self):
        return self.kind == POS

    @property
    def is_finite(self):
        return self.kind == FIN

    def has_left(self, x):
        """x in the left set (x < self)."""
        if self.kind != FIN:
            return self.kind == POS
        g = self.group
        if g.dense:
            return x < self.pos or (x == self.pos and self.hint == 1)
        return g.coords(x)[: self.level] <= self.pos

    @property
    def form(self):
        """Canonical form as a tuple: ('NegInf',), ('Principal', x, side), ..."""
        if self.kind == NEG:
            return ("NegInf",)
        if self.kind == POS:
            return ("PosInf",)
        g = self.group
        if g.dense:
            if self.hint == 0:
                return ("Gap", self.pos)
            return ("Principal", self.pos, PLUS if self.hint == 1 else MINUS)
        if self.level == g.rank:
            return ("Principal", g.from_coords(self.pos), PLUS)
        pad = self.pos + (0,) * (g.rank - self.level)
        return ("SubgroupCut", g.from_coords(pad), self.level, PLUS)

    def literal(self):
        if self.kind == NEG:
            return "-inf"
        if self.kind == POS:
            return "+inf"
        g = self.group
        if g.dense:
            if self.hint == 0:
                return f"gap({self.pos})"
            return f"{self.pos}{'+' if self.hint == 1 else '-'}"
        v, sign = self.pos, "+"
        if self.hint == -1:
            v, sign = _bump(v), "-"
        if self.level == g.rank:
            return g.format_elem(g.from_coords(v)) + sign
        pad = v + (0,) * (g.rank - self.level)
        return f"sub({g.format_elem(g.from_coords(pad))},{self.level}){sign}"

    __str__ = literal

    def __repr__(self):
        return f"Cut({self.literal()})"

    # -- order ---------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Cut) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return self._key < other._key

    def __le__(self, other):
        return self._key <= other._key

    def __gt__(self, other):
        return self._key > other._key

    def __ge__(self, other):
        return self._key >= other._key

    # -- arithmetic sugar ------------------------------------------------------
    def __add__(self, other):
        return left_sum(self, other)

    def __sub__(self, other):
        return diff(self, other)

    def __neg__(self):
        return neg_cut(self)

    def rsum(self, other):
        return right_sum(self, other)


def cmp_cut(a, b):
    return Order((a._key > b._key) - (a._key < b._key))


def cmp_cut_elem(cut, x):
    """GT when x lies in the left set (cut above x), LT otherwise; never EQ."""
    return Order.GT if cut.has_left(x) else Order.LT


def _dense(g, r, side):
    return Cut(g, FIN, pos=r, hint=side)


def _gap_side(g, r, side_if_member):
    return side_if_member if g.in_hull(r) else 0


def left_sum(a, b):
    """{x+y : x < a, y < b}+"""
    if a.kind == NEG or b.kind == NEG:
        return Cut(a.group, NEG)
    if a.kind == POS or b.kind == POS:
        return Cut(a.group, POS)
    g = a.group
    if g.dense:
        r = a.pos + b.pos
        if a.hint == 1 and b.hint == 1:
            return _dense(g, r, 1)
        return _dense(g, r, _gap_side(g, r, -1))
    k = min(a.level, b.level)
    return Cut(g, FIN, k, _add(a.pos[:k], b.pos[:k]), 1)


def right_sum(a, b):
    """{x+y : x > a, y > b}-"""
    if a.kind == POS or b.kind == POS:
        return Cut(a.group, POS)
    if a.kind == NEG or b.kind == NEG:
        return Cut(a.group, NEG)
    g = a.group
    if g.dense:
        r = a.pos + b.pos
        if a.hint == -1 and b.hint == -1:
            return _dense(g, r, -1)
        return _dense(g, r, _gap_side(g, r, 1))
    k, j = a.level, b.level
    if k < j:
        return Cut(g, FIN, k, _add(a.pos, b.pos[:k]), -1)
    if j < k:
        return Cut(g, FIN, j, _add(a.pos[:j], b.pos), -1)
    return Cut(g, FIN, k, _bump(_add(a.pos, b.pos)), -1)


def diff(a, b):
    """{x-y : x > a, y < b}-"""
    g = a.group
    if a.kind == POS or b.kind == NEG:
        return Cut(g, POS)
    if a.kind == NEG or b.kind == POS:
        return Cut(g, NEG)
    if g.dense:
        r = a.pos - b.pos
        if a.hint == -1 and b.hint == 1:
            return _dense(g, r, -1)
        return _dense(g, r, _gap_side(g, r, 1))
    k, j = a.level, b.level
    if k < j:
        return Cut(g, FIN, k, _sub(a.pos, b.pos[:k]), -1)
    if j < k:
        return Cut(g, FIN, j, _bump(_sub(a.pos[:j], b.pos), -1), -1)
    return Cut(g, FIN, k, _sub(a.pos, b.pos), -1)


def neg_cut(a):
    """(-a^R | -a^L)"""
    g = a.group
    if a.kind != FIN:
        return Cut(g, -a.kind)
    if g.dense:
        return _dense(g, -a.pos, -a.hint)
    return Cut(g, FIN, a.level, _bump(tuple(-x for x in a.pos), -1), -a.hint)


def shift(x, a):
    g = a.group
    if a.kind != FIN:
        return a
    if g.dense:
        return _dense(g, a.pos + x, a.hint)
    return Cut(g, FIN, a.level, _add(a.pos, g.coords(x)[: a.level]), a.hint)


def n_fold(a, b, n, sign):
    """a + b + ... + b or a - b - ... - b with n copies of b."""
    if n < 0:
        raise ValueError("n must be non-negative")
    op = left_sum if sign == PLUS else diff
    for _ in range(n):
        a = op(a, b)
    return a


def multiple(a, n):
    """n a = a + ... + a (n >= 1 copies)."""
    return n_fold(a, a, n - 1, PLUS)


def z_mul(a):
    """sup of n a over n >= 1, for a > 0-."""
    g = a.group
    if not a > Cut.minus(g, g.zero):
        raise NonPositiveCut(f"z_mul needs a cut above 0-, got {a.literal()}")
    if a.kind == POS:
        return a
    if g.dense:
        return Cut(g, POS) if a.pos > 0 else a
    i = next((i for i, x in enumerate(a.pos) if x), None)
    if i is None:
        return a
    if i == 0:
        return Cut(g, POS)
    return Cut(g, FIN, i, (0,) * i, 1)


def hat(a):
    return diff(a, a)


def set_cut(g, S, side=PLUS, enumerated=False, cap=128):
    """S+ (smallest cut with S in its left set) or S- (largest with S in its right set).

    A finite S gives its max+ / min-.  An enumerated S is the materialized
    prefix of an infinite strictly monotone sequence, and the supremum of
    the whole sequence is returned only with a certificate:
      * rank-one discrete groups: strictly increasing integers are unbounded;
      * lex powers: the tail keeps a fixed prefix of length i while
        coordinate i strictly increases, giving C(prefix, i);
      * Z[1/p]: the tail gaps are geometric with a constant ratio rho,
        giving the limit (rho < 1) or +inf (rho >= 1).
    """
    S = list(S)
    if side == MINUS:
        return neg_cut(set_cut(g, [-x for x in reversed(S)], PLUS, enumerated, cap))
    if not enumerated:
        return Cut.plus(g, max(S)) if S else Cut(g, NEG)
    if len(S) < 3:
        raise BoundExceeded("an enumerated set needs at least 3 terms for a certificate")
    if any(x >= y for x, y in zip(S, S[1:])):
        raise ValueError("enumerated set must be strictly increasing")
    S = S[-cap:]
    if g.dense:
        d = [y - x for x, y in zip(S, S[1:])]
        ratios = {b / a for a, b in zip(d, d[1:])}
        if len(ratios) > 1:
            raise BoundExceeded("no geometric tail; supremum not certified")
        rho = ratios.pop() if ratios else None
        if rho is None:
            raise BoundExceeded("need at least two gaps to certify a supremum")
        if rho >= 1:
            return Cut(g, POS)
        lim = S[-1] + d[-1] * rho / (1 - rho)
        return _dense(g, lim, _gap_side(g, lim, -1))
    if not g.is_lex:
        return Cut(g, POS)
    tail = [g.coords(x) for x in S[-max(3, len(S) // 2):]]
    i = 0
    while i < g.rank and len({t[i] for t in tail}) == 1:
        i += 1
    if any(x[i] >= y[i] for x, y in zip(tail, tail[1:])):
        raise BoundExceeded("lex tail does not stabilize; supremum not certified")
    if i == 0:
        return Cut(g, POS)
    return Cut(g, FIN, i, tail[0][:i], 1)


def witness_between(a, b):
    """Some group element x with a < x < b, or None when a >= b."""
    if not a < b:
        return None
    g = a.group
    for x in _witness_candidates(a, b):
        if g.contains(x) and b.has_left(x) and not a.has_left(x):
            return x
    raise BoundExceeded(f"no element of bounded depth between {a} and {b}")


def _witness_candidates(a, b):
    g = a.group
    if g.dense:
        lo = a.pos if a.kind == FIN else None
        hi = b.pos if b.kind == FIN else None
        if lo is None and hi is None:
            yield g.zero
            return
        if lo is None:
            yield Fraction(math.floor(hi) - 1)
            return
        if hi is None:
            yield Fraction(math.floor(lo) + 1)
            return
        yield lo
        yield hi
        for d in range(g.max_depth + 1):
            q = g.p**d
            yield Fraction(math.floor(lo * q) + 1, q)
        return
    n = g.rank
    if a.kind == NEG:
        yield g.from_coords(b.pos + (0,) * (n - b.level)) if b.kind == FIN else g.zero
        return
    if b.kind == POS:
        yield g.from_coords(_bump(a.pos) + (0,) * (n - a.level))
        return
    P = a.pos + (math.inf,) * (n - a.level)
    Q = b.pos + (math.inf,) * (n - b.level)
    i = next(i for i in range(n) if P[i] != Q[i])
    x = list(P[:i]) + [P[i] + 1]
    if Q[i] != math.inf and x[i] == Q[i]:
        x += [0 if c == math.inf else c for c in Q[i + 1:]]
    x += [0] * (n - len(x))
    yield g.from_coords(tuple(x))
