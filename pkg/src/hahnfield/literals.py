"""Text syntax for groups, fields, elements, cuts and series.

Series grammar (recursive descent, usual precedence):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ['^' exp]
    exp    := ['-'] INT | '(' elem ')'        # only 't' takes group exponents
    atom   := NUMBER | VAR | 't' | 'geom' '(' elem ')' | 'root' INT '(' expr ')' | '(' expr ')'
"""

from __future__ import annotations

import re
from fractions import Fraction

from .coeffs import PerfectHull, PrimeField, RationalFunctions, Rationals, p_th_root
from .cuts import Cut
from .errors import HahnError, NotInGroup, ParseError
from .groups import integers, lex_power, p_hull, rational_subgroup
from .series import FINITE, STREAM

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text):
    toks = []
    for m in _TOKEN.finditer(text):
        if m.group(0).strip() == "":
            continue
        if m.group(1):
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("id", m.group(2), m.start(2)))
        else:
            toks.append(("op", m.group(3), m.start(3)))
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, expected=()):
        raise ParseError(msg, self.text, self.tok[2], expected)

    def accept(self, value):
        if self.tok[1] == value and self.tok[0] != "end":
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            got = self.tok[1] or "end of input"
            self.error(f"unexpected {got!r}", [value])

    def at_end(self):
        if self.tok[0] != "end":
            self.error(f"unexpected {self.tok[1]!r}", ["end of input"])

    def integer(self):
        sign = -1 if self.accept("-") else 1
        if self.tok[0] != "num":
            self.error("expected an integer", ["integer"])
        v = int(self.tok[1])
        self.i += 1
        return sign * v

    def rational(self):
        n = self.integer()
        if self.accept("/"):
            d = self.integer()
            if d == 0:
                self.error("zero denominator")
            return Fraction(n, d)
        return Fraction(n)

    def elem_body(self, group):
        """Inside parentheses: a rational or a comma-separated vector."""
        start = self.tok[2]
        parts = [self.rational()]
        while self.accept(","):
            parts.append(self.rational())
        value = tuple(parts) if len(parts) > 1 or group.is_lex else parts[0]
        try:
            return group.elem(value)
        except HahnError as e:
            raise ParseError(str(e), self.text, start) from None

    def elem(self, group):
        if self.accept("("):
            x = self.elem_body(group)
            self.expect(")")
            return x
        start = self.tok[2]
        x = self.rational()
        try:
            return group.elem(x)
        except HahnError as e:
            raise ParseError(str(e), self.text, start) from None


# -- elements and cuts -------------------------------------------------------


def parse_elem(text, group):
    p = _Parser(text)
    x = p.elem(group)
    p.at_end()
    return x


def format_elem(group, x):
    return group.format_elem(x)


def parse_cut(text, group):
    p = _Parser(text)
    t = p.tok
    if t[1] in ("-", "+") and p.toks[p.i + 1][1] == "inf":
        p.i += 2
        p.at_end()
        return Cut.neg_inf(group) if t[1] == "-" else Cut.pos_inf(group)
    if p.accept("sub"):
        p.expect("(")
        x = p.elem(group)
        p.expect(",")
        k = p.integer()
        p.expect(")")
        side = _side(p)
        p.at_end()
        try:
            return Cut.subgroup(group, x, k, side)
        except (HahnError, ValueError) as e:
            raise ParseError(str(e), text, 0) from None
    if p.accept("gap"):
        p.expect("(")
        q = p.rational()
        p.expect(")")
        p.at_end()
        try:
            return Cut.gap(group, q)
        except HahnError as e:
            raise ParseError(str(e), text, 0) from None
    x = p.elem(group)
    side = _side(p)
    p.at_end()
    return Cut.principal(group, x, side)


def _side(p):
    if p.accept("+"):
        return "plus"
    if p.accept("-"):
        return "minus"
    p.error("a cut needs a side", ["+", "-"])


# -- groups and fields ---------------------------------------------------------


def parse_group(text):
    s = text.replace(" ", "")
    if s == "Z":
        return integers()
    m = re.fullmatch(r"Z\^(\d+)(?:lex)?", s)
    if m:
        return lex_power(int(m.group(1)))
    m = re.fullmatch(r"Z\[1/(\d+)\](?:\^(\d+))?", s)
    if m:
        return p_hull(int(m.group(1)), int(m.group(2) or 8))
    m = re.fullmatch(r"(?:Q<|\(1/)(.*?)(?:>|\)Z)", s)
    if m:
        if s.startswith("(1/"):
            return rational_subgroup([Fraction(1, int(m.group(1)))])
        return rational_subgroup([Fraction(g) for g in m.group(1).split(",")])
    raise ParseError(f"unknown group {text!r}", text, 0, ["Z", "Z^nlex", "Z[1/p]^d", "Q<g,...>", "(1/n)Z"])


def parse_field(text):
    s = text.replace(" ", "")
    if s == "Q":
        return Rationals()
    m = re.fullmatch(r"F(\d+)", s)
    if m:
        return PrimeField(int(m.group(1)))
    m = re.fullmatch(r"F(\d+)\(([a-z])\)", s)
    if m:
        return RationalFunctions(int(m.group(1)), m.group(2))
    m = re.fullmatch(r"PH\(F(\d+)\(([a-z])\)(?:,(\d+))?\)", s)
    if m:
        return PerfectHull(int(m.group(1)), m.group(2), int(m.group(3) or 4))
    raise ParseError(f"unknown field {text!r}", text, 0, ["Q", "Fp", "Fp(y)", "PH(Fp(y),d)"])


# -- series ----------------------------------------------------------------------


class _SeriesParser(_Parser):
    def __init__(self, text, ring):
        super().__init__(text)
        self.ring = ring

    def wrap(self, fn, pos):
        try:
            return fn()
        except ParseError:
            raise
        except (HahnError, ValueError, ZeroDivisionError, TypeError) as e:
            raise ParseError(str(e), self.text, pos) from None

    def expr(self):
        x = self.term()
        while True:
            pos = self.tok[2]
            if self.accept("+"):
                y = self.term()
                x = self.wrap(lambda: x + y, pos)
            elif self.accept("-"):
                y = self.term()
                x = self.wrap(lambda: x - y, pos)
            else:
                return x

    def term(self):
        x = self.unary()
        while True:
            pos = self.tok[2]
            if self.accept("*"):
                y = self.unary()
                x = self.wrap(lambda: x * y, pos)
            elif self.accept("/"):
                y = self.unary()
                x = self.wrap(lambda: _divide(x, y), pos)
            else:
                return x

    def unary(self):
        if self.accept("-"):
            x = self.unary()
            return -x
        return self.power()

    def power(self):
        ring = self.ring
        t = self.tok
        if t == ("id", "t", t[2]):
            self.i += 1
            if not self.accept("^"):
                g = ring.group
                return self.wrap(lambda: ring.monomial(g.unit() if g.is_lex else g.elem(1)), t[2])
            pos = self.tok[2]
            if self.accept("("):
                e = self.elem_body(ring.group)
                self.expect(")")
            else:
                n = self.integer()
                if ring.group.is_lex:
                    self.i -= 1
                    self.error("lexicographic exponents are written as vectors", ["("])
                e = self.wrap(lambda: ring.group.elem(n), pos)
            return ring.monomial(e)
        x = self.atom()
        if self.accept("^"):
            pos = self.tok[2]
            n = self.integer()
            return self.wrap(lambda: x**n, pos)
        return x

    def atom(self):
        ring = self.ring
        kind, val, pos = self.tok
        if kind == "num":
            self.i += 1
            return ring.const(ring.field.from_int(int(val)))
        if self.accept("("):
            x = self.expr()
            self.expect(")")
            return x
        if kind == "id":
            field = ring.field
            if val == getattr(field, "var", None):
                self.i += 1
                return ring.const(field.gen())
            if val == "geom":
                self.i += 1
                self.expect("(")
                g = self.elem(ring.group)
                self.expect(")")
                return self.wrap(lambda: ring.geom(g), pos)
            m = re.fullmatch(r"root(\d+)", val)
            if m:
                self.i += 1
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return self.wrap(lambda: _root(ring, inner, int(m.group(1))), pos)
        expected = ["number", "t", "geom", "(", "-"]
        if getattr(ring.field, "var", None):
            expected.append(ring.field.var)
        if hasattr(ring.field, "p_th_root"):
            expected.append("rootN")
        self.error(f"unexpected {val or 'end of input'!r}", expected)


def _divide(x, y):
    if y.is_finite and y.valuation() == y.group.zero and len(y.terms()) == 1:
        return x / y.coeff(y.group.zero)
    return x / y


def _root(ring, x, n):
    if not x.is_finite or any(e != ring.group.zero for e, _ in x.terms()):
        raise ValueError("rootN applies to constants")
    c = x.coeff(ring.group.zero)
    p = ring.field.char
    while n > 1:
        if n % p:
            raise ValueError(f"root index must be a power of {p}")
        c = p_th_root(ring.field, c)
        n //= p
    return ring.const(c)


def parse_series(text, ring):
    p = _SeriesParser(text, ring)
    if p.tok[0] == "end":
        p.error("empty expression", ["number", "t", "geom"])
    x = p.expr()
    p.at_end()
    return x


def parse_expression(text, ring, kind="series"):
    """Parse a series, cut or group element in the context of `ring`."""
    if kind == "series":
        return parse_series(text, ring)
    if kind == "cut":
        return parse_cut(text, ring.group)
    if kind == "elem":
        return parse_elem(text, ring.group)
    raise ValueError(f"unknown literal kind {kind!r}")


# -- printing ------------------------------------------------------------------


def format_exp(group, e):
    if group.is_lex or Fraction(e).denominator != 1:
        s = group.format_elem(e)
        return s if s.startswith("(") else f"({s})"
    return str(int(e))


def format_coeff(field, c):
    s = field.format(c)
    if isinstance(field, Rationals) or isinstance(field, PrimeField):
        return s
    if any(ch in s for ch in "+-/* "):
        return f"({s})"
    return s


def _monomial(ring, e, c):
    g, field = ring.group, ring.field
    neg = False
    if isinstance(field, Rationals) and c < 0:
        neg, c = True, -c
    cs = format_coeff(field, c)
    if e == g.zero:
        return neg, cs
    ts = "t" if (not g.is_lex and e == 1) else f"t^{format_exp(g, e)}"
    if c == field.one():
        return neg, ts
    return neg, f"{cs}*{ts}"


def format_terms(ring, terms):
    if not terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(terms):
        neg, body = _monomial(ring, e, c)
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def format_series(x, depth=None):
    """Exact literal for finite series; lazy ones show a head and '+ ...'."""
    if x.kind == FINITE:
        return format_terms(x.ring, x.terms())
    depth = depth or x.ring.config.depth
    head = [(e, c) for e, c in x.grid_head(depth) if c] if x.kind != STREAM else x.terms()[:depth]
    return format_terms(x.ring, head) + " + ..."
