"""Generalized power series k((G, f)) with grid supports.

A series is one of
  * finite: an explicit exponent -> coefficient dict;
  * grid:   support inside offset + <gens>, coefficients from a memoized rule;
  * stream: the materialized prefix of an infinite series whose exponents are
    given explicitly (used for supports that are not grids, such as
    sum t^(-1/2^i)); only order-level operations are available on it.
"""

from __future__ import annotations

import itertools
import threading
from fractions import Fraction
from functools import lru_cache

from .config import DEFAULT
from .cuts import Cut
from .errors import BoundExceeded, HorizonExceeded, ZeroDivisor
from .groups import iter_monoid, monoid_contains, monoid_decompose

FINITE, GRID, STREAM = "finite", "grid", "stream"


# -- factor sets -------------------------------------------------------------


class FactorSet:
    trivial = False

    def __call__(self, a, b):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.literal() == other.literal()

    def __hash__(self):
        return hash(self.literal())


class TrivialFactorSet(FactorSet):
    trivial = True

    def __init__(self, field):
        self.field = field
        self._one = field.one()

    def __call__(self, a, b):
        return self._one

    def literal(self):
        return "trivial"


class TableFactorSet(FactorSet):
    """Explicit values on finitely many pairs, 1 elsewhere.  Looked up literally."""

    def __init__(self, field, entries, name="table"):
        self.field = field
        self.entries = dict(entries)
        self.name = name
        self._one = field.one()

    def __call__(self, a, b):
        return self.entries.get((a, b), self._one)

    def literal(self):
        return f"table:{self.name}"


class IdentitySection:
    """gamma -> t^gamma as a group homomorphism."""

    is_homomorphism = True


class RootSection:
    """Section on G = (1/n)Z with t^(1/n) = sigma, sigma^n = c * tau, tau = t^1.

    Non-negative exponents k/n = q + r/n map to sigma^r tau^q; negative ones
    are defined as inverses, so t^(-g) = 1/t^g holds by construction.
    Monomials are kept as (coefficient, r, q) with 0 <= r < n.
    """

    def __init__(self, field, n=2, c=2):
        self.field = field
        self.n = n
        self.c = field.from_int(c) if isinstance(c, int) else c
        if not self.c:
            raise ValueError("c must be nonzero")
        self.is_homomorphism = self.c == field.one()

    def _mul(self, m1, m2):
        a, r, q = m1[0] * m2[0], m1[1] + m2[1], m1[2] + m2[2]
        if r >= self.n:
            a, r, q = a * self.c, r - self.n, q + 1
        return a, r, q

    def value(self, g):
        k = Fraction(g) * self.n
        if k.denominator != 1:
            raise ValueError(f"{g} is not in (1/{self.n})Z")
        k = int(k)
        one = self.field.one()
        q, r = divmod(abs(k), self.n)
        if k >= 0:
            return one, r, q
        if r == 0:
            return one, 0, -q
        # sigma^-r = sigma^(n-r) / (c tau)
        return one / self.c, self.n - r, -q - 1

    def literal(self):
        return f"n={self.n},c={self.field.format(self.c)}"


class DerivedFactorSet(FactorSet):
    """f[a, b] = t^a t^b / t^(a+b) for a section t."""

    def __init__(self, section):
        self.section = section
        self.field = section.field
        self._cached = lru_cache(maxsize=1 << 16)(self._compute)

    def _compute(self, a, b):
        s = self.section
        prod = s._mul(s.value(a), s.value(b))
        whole = s.value(a + b)
        assert prod[1:] == whole[1:]
        return prod[0] / whole[0]

    def __call__(self, a, b):
        return self._cached(a, b)

    def literal(self):
        return f"derived:{self.section.literal()}"


def derive_factor_set(section, field=None):
    if section.is_homomorphism:
        return TrivialFactorSet(field or section.field)
    return DerivedFactorSet(section)


def cocycle_verify(f, samples, group):
    """Check the four factor-set axioms on (a, b, c) triples.

    Returns {"pass", "checked", "axioms": {n: {"status", "witness"}}}
    where each witness is the first violating sample for that axiom.
    """
    one = f.field.one()
    zero = group.zero
    fmt = group.format_elem
    axioms = {str(i): {"status": "pass", "witness": None} for i in (1, 2, 3, 4)}

    def fail(i, witness):
        if axioms[i]["status"] == "pass":
            axioms[i] = {"status": "fail", "witness": [fmt(w) for w in witness]}

    for a, b, c in samples:
        if f(a, b) != f(b, a):
            fail("1", (a, b))
        if f(zero, a) != one:
            fail("2", (zero, a))
        if f(a, b + c) * f(b, c) != f(a + b, c) * f(a, b):
            fail("3", (a, b, c))
        if f(-a, a) != one:
            fail("4", (-a, a))
    ok = all(v["status"] == "pass" for v in axioms.values())
    return {"pass": ok, "checked": len(samples), "axioms": axioms}


# -- the field ---------------------------------------------------------------


class HahnField:
    """k((G, f)): the ambient data every series carries."""

    def __init__(self, group, field, factor_set=None, config=DEFAULT):
        self.group = group
        self.field = field
        self.factor_set = factor_set or TrivialFactorSet(field)
        self.config = config

    def __eq__(self, other):
        return (
            isinstance(other, HahnField)
            and self.group == other.group
            and self.field == other.field
            and self.factor_set == other.factor_set
        )

    def __hash__(self):
        return hash((self.group, self.field, self.factor_set))

    def literal(self):
        return f"{self.field.literal()}(({self.group.literal()}),{self.factor_set.literal()})"

    def coerce_coeff(self, c):
        if isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1):
            return self.field.from_int(int(c))
        if isinstance(c, Fraction):
            return self.field.from_int(c.numerator) / self.field.from_int(c.denominator)
        return c

    def zero(self):
        return Series._finite(self, {})

    def one(self):
        return self.const(self.field.one())

    def const(self, c):
        return self.monomial(self.group.zero, c)

    def monomial(self, exp, c=None):
        c = self.field.one() if c is None else self.coerce_coeff(c)
        exp = self.group.elem(exp)
        return Series._finite(self, {exp: c} if c else {})

    def t(self, exp):
        return self.monomial(exp)

    def from_terms(self, terms):
        terms = list(terms)
        exps = [self.group.elem(e) for e, _ in terms]
        if len(set(exps)) != len(exps):
            raise ValueError("exponents must be distinct")
        d = {}
        for e, (_, c) in zip(exps, terms):
            c = self.coerce_coeff(c)
            if c:
                d[e] = c
        return Series._finite(self, d)

    def geom(self, g):
        """sum over n >= 0 of t^(n g)."""
        g = self.group.elem(g)
        one = self.field.one()
        return Series._grid(self, self.group.zero, (g,), lambda e: one)

    def grid_series(self, offset, gens, rule):
        return Series._grid(self, self.group.elem(offset), tuple(gens), rule)

    def stream(self, terms):
        """Materialized prefix of an infinite series with explicit exponents."""
        terms = [(self.group.elem(e), self.coerce_coeff(c)) for e, c in terms]
        if any(a >= b for (a, _), (b, _) in zip(terms, terms[1:])):
            raise ValueError("stream exponents must be strictly increasing")
        return Series._stream(self, [(e, c) for e, c in terms if c])

    def __repr__(self):
        return f"HahnField({self.literal()})"


def _gens_from(offset, exps):
    return tuple(sorted({e - offset for e in exps if e != offset}))


class Series:
    __slots__ = (
        "ring", "kind", "_terms", "_offset", "_gens", "_rule", "_memo",
        "_lock", "_order", "_grid_it", "_member", "_prefix", "_filled",
    )

    # -- construction --------------------------------------------------------
    @classmethod
    def _finite(cls, ring, terms):
        s = cls.__new__(cls)
        s.ring, s.kind, s._terms = ring, FINITE, terms
        s._offset = min(terms) if terms else None
        s._gens = _gens_from(s._offset, terms) if terms else ()
        s._lock = threading.RLock()
        s._order = s._grid_it = s._rule = s._memo = s._prefix = None
        s._member = {}
        s._filled = 0
        return s

    @classmethod
    def _grid(cls, ring, offset, gens, rule):
        s = cls.__new__(cls)
        zero = ring.group.zero
        gens = tuple(sorted(set(gens)))
        if any(not g > zero for g in gens):
            raise ValueError("grid generators must be positive")
        s.ring, s.kind, s._terms = ring, GRID, None
        s._offset, s._gens, s._rule = offset, gens, rule
        s._memo, s._member = {}, {}
        s._lock = threading.RLock()
        s._order, s._grid_it = [], None
        s._prefix = None
        s._filled = 0
        return s

    @classmethod
    def _stream(cls, ring, prefix):
        s = cls._finite(ring, dict(prefix))
        s.kind = STREAM
        s._prefix = prefix
        return s

    # -- basic access ----------------------------------------------------------
    @property
    def group(self):
        return self.ring.group

    @property
    def field(self):
        return self.ring.field

    @property
    def is_finite(self):
        return self.kind == FINITE

    @property
    def offset(self):
        return self._offset

    @property
    def gens(self):
        return self._gens

    def terms(self):
        """Sorted (exp, coeff) pairs of a finite series or a stream prefix."""
        if self.kind == GRID:
            raise TypeError("a lazy grid series has no finite term list; use grid_head")
        return sorted(self._terms.items())

    def on_grid(self, e):
        if self._offset is None:
            return False
        if e in self._member:
            return self._member[e]
        # grid points come out in increasing order, so anything below the
        # last one enumerated and not yet seen is off the grid
        if self.kind == GRID and self.group.archimedean and e > self._offset:
            # rank one: walking the grid up to e is cheaper than solving for e
            with self._lock:
                n = len(self._order)
                try:
                    while (not self._order or self._order[-1] < e) and n <= self.ring.config.horizon:
                        self._grid_point(n)
                        n += 1
                except StopIteration:
                    pass
        if e in self._member:
            return self._member[e]
        if self._order and e < self._order[-1]:
            self._member[e] = False
            return False
        d = e - self._offset
        r = monoid_contains(self.group, self._gens, d)
        self._member[e] = r
        return r

    def _grid_point(self, i):
        with self._lock:
            if self._order is None:
                self._order = []
            if self._grid_it is None:
                self._grid_it = iter_monoid(self.group, self._gens, self._offset)
            while len(self._order) <= i:
                pt = next(self._grid_it)
                self._order.append(pt)
                self._member[pt] = True
            return self._order[i]

    def coeff(self, e):
        zero = self.field.zero()
        if self.kind == FINITE:
            return self._terms.get(e, zero)
        if self.kind == STREAM:
            if e in self._terms:
                return self._terms[e]
            if self._prefix and e <= self._prefix[-1][0]:
                return zero
            raise HorizonExceeded("coefficient lies beyond the materialized stream")
        with self._lock:
            if e in self._memo:
                return self._memo[e]
            if not self.on_grid(e):
                return zero
            if self.group.archimedean:
                # fill in increasing order so recursive rules stay shallow
                # grid points before index _filled are already memoized
                horizon = self.ring.config.horizon
                for i in itertools.count(self._filled):
                    if i > horizon:
                        raise HorizonExceeded(f"{e} lies beyond {horizon} grid points")
                    pt = self._grid_point(i)
                    if pt >= e:
                        break
                    if pt not in self._memo:
                        self._memo[pt] = self._rule(pt)
                    self._filled = max(self._filled, i + 1)
            val = self._rule(e)
            self._memo[e] = val
            return val

    def grid_head(self, n):
        """(exp, coeff) at the first n grid points, zeros included."""
        if self.kind == STREAM:
            return list(self._prefix[:n])
        if self._offset is None:
            return []
        if self.kind == FINITE:
            gens_grid = self._gens
            if not gens_grid:
                return [(self._offset, self._terms[self._offset])][:n]
        out = []
        for i in range(n):
            e = self._grid_point(i)
            out.append((e, self.coeff(e)))
        return out

    def support_prefix(self, count, horizon=None):
        """Up to `count` nonzero terms in increasing order, scanning at most `horizon` grid points."""
        if self.kind != GRID:
            return self.terms()[:count]
        horizon = self.ring.config.horizon if horizon is None else horizon
        out = []
        for i in range(horizon):
            e = self._grid_point(i)
            c = self.coeff(e)
            if c:
                out.append((e, c))
                if len(out) == count:
                    break
        return out

    def head(self, n):
        """Finite series made of the first n grid terms."""
        if self.kind == FINITE:
            items = self.terms()[:n] if n < len(self._terms) else self.terms()
            return Series._finite(self.ring, dict(items))
        return Series._finite(self.ring, {e: c for e, c in self.grid_head(n) if c})

    def valuation(self):
        """Least support point, or None for the zero series."""
        lt = self.leading_term()
        return None if lt is None else lt[0]

    def leading_term(self):
        if self.kind == FINITE:
            if not self._terms:
                return None
            e = self._offset
            return e, self._terms[e]
        if self.kind == STREAM:
            if not self._prefix:
                raise HorizonExceeded("empty stream prefix")
            return self._prefix[0]
        horizon = self.ring.config.horizon
        for i in range(horizon):
            try:
                e = self._grid_point(i)
            except StopIteration:
                return None
            c = self.coeff(e)
            if c:
                return e, c
        raise HorizonExceeded(f"first {horizon} grid points are all zero")

    def is_zero(self):
        return self.kind == FINITE and not self._terms

    # -- arithmetic --------------------------------------------------------------
    def _other(self, o):
        if isinstance(o, Series):
            if o.ring != self.ring:
                raise ValueError("series over different fields")
            return o
        return self.ring.const(self.ring.coerce_coeff(o))

    def __add__(self, o):
        o = self._other(o)
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        ring = self.ring
        if self.kind == FINITE and o.kind == FINITE:
            d = dict(self._terms)
            for e, c in o._terms.items():
                s = d.get(e)
                s = c if s is None else s + c
                if s:
                    d[e] = s
                else:
                    d.pop(e, None)
            return Series._finite(ring, d)
        if STREAM in (self.kind, o.kind):
            return _stream_add(self, o)
        off = min(self._offset, o._offset)
        gens = set(self._gens) | set(o._gens) | {self._offset - off, o._offset - off}
        gens.discard(self.group.zero)
        x, y = self, o
        return Series._grid(ring, off, tuple(gens), lambda e: x.coeff(e) + y.coeff(e))

    __radd__ = __add__

    def scale(self, c):
        c = self.ring.coerce_coeff(c)
        if not c:
            return self.ring.zero()
        if self.kind == FINITE:
            return Series._finite(self.ring, {e: v * c for e, v in self._terms.items()})
        if self.kind == STREAM:
            return Series._stream(self.ring, [(e, v * c) for e, v in self._prefix])
        x = self
        return Series._grid(self.ring, self._offset, self._gens, lambda e: x.coeff(e) * c)

    def __neg__(self):
        return self.scale(-self.field.one())

    def __sub__(self, o):
        return self + (-self._other(o))

    def __rsub__(self, o):
        return self._other(o) + (-self)

    def __mul__(self, o):
        if not isinstance(o, Series):
            return self.scale(o)
        o = self._other(o)
        if self.is_zero() or o.is_zero():
            return self.ring.zero()
        if STREAM in (self.kind, o.kind):
            raise TypeError("streams support only order-level operations")
        ring = self.ring
        f = ring.factor_set
        if self.kind == FINITE and o.kind == FINITE:
            d = {}
            for a, x in self._terms.items():
                for b, y in o._terms.items():
                    v = x * y if f.trivial else f(a, b) * x * y
                    e = a + b
                    s = d.get(e)
                    d[e] = v if s is None else s + v
            return Series._finite(ring, {e: c for e, c in d.items() if c})
        if o.kind == FINITE:
            self, o = o, self
        off = self._offset + o._offset
        gens = set(self._gens) | set(o._gens)
        x, y = self, o
        zero = ring.field.zero()
        if x.kind == FINITE:
            xt = sorted(x._terms.items())

            def rule(e):
                acc = zero
                for a, c in xt:
                    b = e - a
                    v = y.coeff(b)
                    if v:
                        acc = acc + (c * v if f.trivial else f(a, b) * c * v)
                return acc
        else:
            glist = list(x._gens) + list(y._gens)
            nx = len(x._gens)
            cap = ring.config.monoid_cap

            def rule(e):
                alphas = set()
                for sol in monoid_decompose(ring.group, glist, e - off, cap):
                    a = x._offset
                    for k, g in zip(sol[:nx], x._gens):
                        if k:
                            a = a + k * g
                    alphas.add(a)
                acc = zero
                for a in sorted(alphas):
                    b = e - a
                    u, v = x.coeff(a), y.coeff(b)
                    if u and v:
                        acc = acc + (u * v if f.trivial else f(a, b) * u * v)
                return acc

        return Series._grid(ring, off, tuple(gens), rule)

    __rmul__ = __mul__

    def inverse(self, depth=None):
        """1/x by the recursion on the grid -v + <gens>.

        s_b = ([b = -v] - sum_{a in supp x, a > v} f[a, b'] x_a s_b') / (x_v f[v, b]),
        with b' = b + v - a, which is well founded because b' < b.
        """
        if self.is_zero():
            raise ZeroDivisor("inverse of the zero series")
        if self.kind == STREAM:
            raise TypeError("streams support only order-level operations")
        ring = self.ring
        f = ring.factor_set
        v, lc = self.leading_term()
        one = ring.field.one()
        if self.kind == FINITE and len(self._terms) == 1:
            # t^-v t^v = f[-v, v] t^0 = t^0
            return Series._finite(ring, {-v: one / lc})
        if self.kind == FINITE:
            D = _gens_from(v, self._terms)
            rest = [(a, c) for a, c in sorted(self._terms.items()) if a != v]

            def tail(b):
                for a, c in rest:
                    yield a, c, b + v - a
        elif self._offset == v:
            D = self._gens
            x = self
            cap = ring.config.monoid_cap
            nd = len(D)

            def tail(b):
                seen = set()
                for sol in monoid_decompose(ring.group, list(D) + list(D), b + v, cap):
                    da = ring.group.zero
                    for k, g in zip(sol[:nd], D):
                        if k:
                            da = da + k * g
                    if da == ring.group.zero or da in seen:
                        continue
                    seen.add(da)
                    a = v + da
                    c = x.coeff(a)
                    if c:
                        yield a, c, b + v - a
        else:
            raise BoundExceeded("lazy series whose grid is not anchored at its valuation; truncate first")

        s = None

        def rule(b):
            acc = one if b == -v else ring.field.zero()
            for a, c, bp in tail(b):
                sb = s.coeff(bp)
                if sb:
                    acc = acc - (c * sb if f.trivial else f(a, bp) * c * sb)
            if acc:
                acc = acc / (lc if f.trivial else lc * f(v, b))
            return acc

        s = Series._grid(ring, -v, D, rule)
        if depth:
            s.grid_head(depth)
        return s

    def __truediv__(self, o):
        if not isinstance(o, Series):
            c = self.ring.coerce_coeff(o)
            if not c:
                raise ZeroDivisor("division by zero")
            return self.scale(self.field.one() / c)
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self._other(o) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.ring.one(), self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # -- truncation --------------------------------------------------------------
    def truncate(self, at):
        """Restriction to the left set of a cut (or to G^{<g} for an element g)."""
        if not isinstance(at, Cut):
            at = Cut.minus(self.group, at)
        ring = self.ring
        if at.is_pos_inf:
            return self
        if at.is_neg_inf:
            return ring.zero()
        if self.kind == FINITE:
            return Series._finite(ring, {e: c for e, c in self._terms.items() if at.has_left(e)})
        if self.kind == STREAM:
            kept = [(e, c) for e, c in self._prefix if at.has_left(e)]
            if len(kept) < len(self._prefix):
                return Series._finite(ring, dict(kept))
            return self
        if self.group.archimedean:
            d = {}
            horizon = ring.config.horizon
            for i in range(horizon + 1):
                if i == horizon:
                    raise HorizonExceeded(f"truncation at {at} needs more than {horizon} grid points")
                e = self._grid_point(i)
                if not at.has_left(e):
                    break
                c = self.coeff(e)
                if c:
                    d[e] = c
            return Series._finite(ring, d)
        x = self
        zero = ring.field.zero()
        return Series._grid(ring, self._offset, self._gens, lambda e: x.coeff(e) if at.has_left(e) else zero)

    # -- comparison ----------------------------------------------------------------
    def agrees_to(self, other, n):
        """Equality on the first n grid points of the difference."""
        d = self - self._other(other)
        if d.kind == STREAM:
            return not d._prefix[:n]
        return all(not c for _, c in d.grid_head(n))

    def __eq__(self, other):
        if isinstance(other, Series) and self.kind == FINITE and other.kind == FINITE:
            return self.ring == other.ring and self._terms == other._terms
        if not isinstance(other, Series) and self.kind == FINITE:
            return self == self._other(other)
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        from .literals import format_series

        return f"Series({format_series(self, self.ring.config.depth)})"


def _stream_add(x, y):
    # both operands must be order-level; the sum is known up to the shorter prefix
    for s in (x, y):
        if s.kind == GRID:
            raise TypeError("cannot add a lazy grid series to a stream")
    limits = [s._prefix[-1][0] for s in (x, y) if s.kind == STREAM and s._prefix]
    bound = min(limits) if limits else None
    d = dict(x._terms)
    for e, c in y._terms.items():
        d[e] = d[e] + c if e in d else c
    items = sorted((e, c) for e, c in d.items() if c and (bound is None or e <= bound))
    return Series._stream(x.ring, items)
