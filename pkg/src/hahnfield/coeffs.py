"""Exact coefficient fields: Q, F_p, F_p(y) and the perfect hull of F_p(y).

Q uses `Fraction` directly.  The other fields have small element classes
with the usual operators so series code can treat every coefficient alike.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, RootDepthExceeded


# -- polynomials over F_p: tuples of residues, constant term first ----------


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(a, b, p):
    n = max(len(a), len(b))
    return _trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n))


def pneg(a, p):
    return tuple((-x) % p for x in a)


def pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def pscale(a, c, p):
    return _trim((x * c) % p for x in a)


def pdivmod(a, b, p):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = (a[-1] * inv) % p
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[i + d] = (a[i + d] - c * y) % p
        a = list(_trim(a))
    return _trim(q), tuple(a)


def pgcd(a, b, p):
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    return pscale(a, pow(a[-1], p - 2, p), p) if a else ()


def ppow(a, n, p):
    out, base = (1,), a
    while n:
        if n & 1:
            out = pmul(out, base, p)
        base = pmul(base, base, p)
        n >>= 1
    return out


def pformat(a, var):
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return "+".join(parts)


# -- prime field ---------------------------------------------------------


class ModP:
    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _lift(self, o):
        if isinstance(o, ModP):
            return o.v
        if isinstance(o, int):
            return o
        return NotImplemented

    def __add__(self, o):
        o = self._lift(o)
        return NotImplemented if o is NotImplemented else ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._lift(o)
        return NotImplemented if o is NotImplemented else ModP(self.v - o, self.p)

    def __rsub__(self, o):
        o = self._lift(o)
        return NotImplemented if o is NotImplemented else ModP(o - self.v, self.p)

    def __mul__(self, o):
        o = self._lift(o)
        return NotImplemented if o is NotImplemented else ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def inv(self):
        if not self.v:
            raise DivisionByZero("inverse of 0")
        return ModP(pow(self.v, self.p - 2, self.p), self.p)

    def __truediv__(self, o):
        if isinstance(o, int):
            o = ModP(o, self.p)
        return self * o.inv()

    def __rtruediv__(self, o):
        return ModP(o, self.p) * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        return ModP(pow(self.v, n, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return str(self.v)


# -- rational functions ----------------------------------------------------


class RatFunc:
    """num/den over F_p, reduced, den monic."""

    __slots__ = ("num", "den", "p")

    def __init__(self, num, den=(1,), p=2, _reduced=False):
        num, den = _trim(x % p for x in num), _trim(x % p for x in den)
        if not den:
            raise DivisionByZero("rational function with zero denominator")
        if not _reduced:
            if not num:
                den = (1,)
            else:
                g = pgcd(num, den, p)
                if g != (1,):
                    num, den = pdivmod(num, g, p)[0], pdivmod(den, g, p)[0]
                lc = pow(den[-1], p - 2, p)
                num, den = pscale(num, lc, p), pscale(den, lc, p)
        self.num, self.den, self.p = num, den, p

    def _coerce(self, o):
        if isinstance(o, RatFunc):
            return o
        if isinstance(o, ModP):
            o = o.v
        if isinstance(o, int):
            return RatFunc((o,), (1,), self.p)
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        p = self.p
        if self.den == o.den:
            return RatFunc(padd(self.num, o.num, p), self.den, p)
        return RatFunc(
            padd(pmul(self.num, o.den, p), pmul(o.num, self.den, p), p),
            pmul(self.den, o.den, p),
            p,
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pneg(self.num, self.p), self.den, self.p, _reduced=True)

    def __sub__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        p = self.p
        return RatFunc(pmul(self.num, o.num, p), pmul(self.den, o.den, p), p)

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise DivisionByZero("inverse of 0")
        return RatFunc(self.den, self.num, self.p)

    def __truediv__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else self * o.inv()

    def __rtruediv__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else o * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        p = self.p
        return RatFunc(ppow(self.num, n, p), ppow(self.den, n, p), p, _reduced=True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, o):
        o = self._coerce(o)
        return o is not None and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den, self.p))

    def is_pth_power(self):
        p = self.p
        return all(not c or i % p == 0 for part in (self.num, self.den) for i, c in enumerate(part))

    def pth_root(self):
        # coefficients are fixed by Frobenius on F_p
        p = self.p
        return RatFunc(self.num[::p], self.den[::p], p, _reduced=True)

    def format(self, var):
        n, d = pformat(self.num, var), pformat(self.den, var)
        if self.den == (1,):
            return n
        if sum(1 for c in self.num if c) > 1:
            n = f"({n})"
        if sum(1 for c in self.den if c) > 1 or (d != var and "*" in d):
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return self.format("y")


# -- perfect hull -----------------------------------------------------------


class PHElem:
    """f^(1/p^depth) with f in F_p(y); depth is minimal."""

    __slots__ = ("f", "depth", "max_depth")

    def __init__(self, f, depth=0, max_depth=0):
        while depth > 0 and f.is_pth_power():
            f, depth = f.pth_root(), depth - 1
        if depth > max_depth:
            raise RootDepthExceeded(f"root depth {depth} exceeds {max_depth}")
        self.f, self.depth, self.max_depth = f, depth, max_depth

    @property
    def p(self):
        return self.f.p

    def _coerce(self, o):
        if isinstance(o, PHElem):
            return o
        if isinstance(o, (int, ModP, RatFunc)):
            f = o if isinstance(o, RatFunc) else self.f._coerce(o)
            return PHElem(f, 0, self.max_depth)
        return None

    def _lift_to(self, m):
        # same element as (f^(p^(m-depth)), m)
        return self.f ** (self.p ** (m - self.depth))

    def _binop(self, o, op):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        m = max(self.depth, o.depth)
        return PHElem(op(self._lift_to(m), o._lift_to(m)), m, self.max_depth)

    def __add__(self, o):
        return self._binop(o, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, o):
        return self._binop(o, lambda a, b: a - b)

    def __rsub__(self, o):
        return self._binop(o, lambda a, b: b - a)

    def __mul__(self, o):
        return self._binop(o, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self._binop(o, lambda a, b: a / b)

    def __rtruediv__(self, o):
        return self._binop(o, lambda a, b: b / a)

    def __neg__(self):
        return PHElem(-self.f, self.depth, self.max_depth)

    def inv(self):
        return PHElem(self.f.inv(), self.depth, self.max_depth)

    def __pow__(self, n):
        return PHElem(self.f**n, self.depth, self.max_depth)

    def __bool__(self):
        return bool(self.f)

    def __eq__(self, o):
        o = self._coerce(o)
        return o is not None and self.depth == o.depth and self.f == o.f

    def __hash__(self):
        return hash((self.f, self.depth))

    def pth_root(self):
        return PHElem(self.f, self.depth + 1, self.max_depth)

    def format(self, var):
        inner = self.f.format(var)
        if not self.depth:
            return inner
        return f"root{self.p ** self.depth}({inner})"

    def __repr__(self):
        return self.format("y")


# -- descriptors -------------------------------------------------------------


@dataclass(frozen=True)
class Rationals:
    char = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def contains(self, c):
        return isinstance(c, (int, Fraction))

    def format(self, c):
        return str(Fraction(c))

    def literal(self):
        return "Q"

    def random(self, rng, size=3):
        return Fraction(rng.randint(-size, size), rng.randint(1, size))


@dataclass(frozen=True)
class PrimeField:
    p: int

    @property
    def char(self):
        return self.p

    def zero(self):
        return ModP(0, self.p)

    def one(self):
        return ModP(1, self.p)

    def from_int(self, n):
        return ModP(n, self.p)

    def contains(self, c):
        return isinstance(c, ModP) and c.p == self.p

    def format(self, c):
        return str(c.v)

    def literal(self):
        return f"F{self.p}"

    def random(self, rng, size=3):
        return ModP(rng.randrange(self.p), self.p)

    def p_th_root(self, c):
        # x -> x^p is the identity on F_p, so the root is c itself;
        # written as the Fermat inverse power for clarity
        e = pow(self.p, -1, self.p - 1) if self.p > 2 else 1
        return c**e


@dataclass(frozen=True)
class RationalFunctions:
    p: int
    var: str = "y"

    @property
    def char(self):
        return self.p

    def zero(self):
        return RatFunc((), (1,), self.p)

    def one(self):
        return RatFunc((1,), (1,), self.p)

    def from_int(self, n):
        return RatFunc((n,), (1,), self.p)

    def gen(self):
        return RatFunc((0, 1), (1,), self.p)

    def contains(self, c):
        return isinstance(c, RatFunc) and c.p == self.p

    def format(self, c):
        return c.format(self.var)

    def literal(self):
        return f"F{self.p}({self.var})"

    def random(self, rng, size=2):
        def poly():
            return tuple(rng.randrange(self.p) for _ in range(rng.randint(1, size + 1)))

        num = poly()
        den = poly()
        while not _trim(den):
            den = poly()
        return RatFunc(num, den, self.p)


@dataclass(frozen=True)
class PerfectHull:
    p: int
    var: str = "y"
    max_depth: int = 4

    @property
    def char(self):
        return self.p

    @property
    def base(self):
        return RationalFunctions(self.p, self.var)

    def wrap(self, f, depth=0):
        return PHElem(f, depth, self.max_depth)

    def zero(self):
        return self.wrap(self.base.zero())

    def one(self):
        return self.wrap(self.base.one())

    def from_int(self, n):
        return self.wrap(self.base.from_int(n))

    def gen(self):
        return self.wrap(self.base.gen())

    def contains(self, c):
        return isinstance(c, PHElem) and c.p == self.p

    def format(self, c):
        return c.format(self.var)

    def literal(self):
        return f"PH(F{self.p}({self.var}),{self.max_depth})"

    def random(self, rng, size=2):
        return self.wrap(self.base.random(rng, size), rng.randint(0, self.max_depth))

    def p_th_root(self, c):
        return c.pth_root()


def coeff_arith(op, a, b=None):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        if not a:
            raise DivisionByZero("inverse of 0")
        return 1 / a if isinstance(a, Fraction) else a.inv()
    raise ValueError(f"unknown op {op!r}")


def p_th_root(field, a):
    if not hasattr(field, "p_th_root"):
        raise TypeError(f"{field.literal()} is not perfect")
    return field.p_th_root(a)


def frobenius(field, a):
    return a**field.char


def random_coeff(field, rng=None, size=3):
    return field.random(rng or _random.Random(0), size)
