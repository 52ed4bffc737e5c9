"""One-step extension algorithms over the truncation tower.

Quotients d/c^k are split into a part certified in B[G] (sums r/(1+a) with
mu(r) + Z mu(a) <= G) and a remainder of value above G; pseudo-Cauchy
sequences give balls; polynomial data is tested against the shifted
complements A[G - n ball].
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional

from .cuts import MINUS, PLUS, Cut, Order, cmp_cut, diff, left_sum, multiple, n_fold, set_cut, z_mul
from .errors import BoundExceeded, NotPseudoCauchy, NotSimpleRoot
from .groups import iter_monoid
from .series import Series
from .tower import above, in_complement, mu


def zmu(a: Series) -> Cut:
    """Z mu(a) for v(a) > 0, with Z mu(0) taken as 0+ so r/(1+0) needs mu(r) <= G."""
    g = a.group
    if a.is_zero():
        return Cut.plus(g, g.zero)
    return z_mul(mu(a))


def certificate(r: Series, a: Series) -> Cut:
    return left_sum(mu(r), zmu(a))


# -- quotient elements -------------------------------------------------------


@dataclass
class QuotientElem:
    """sum of r_i / (1 + a_i) with v(a_i) > 0."""

    ring: object
    summands: list
    normal: bool = False

    def value(self) -> Series:
        out = self.ring.zero()
        for r, a in self.summands:
            out = out + (r if a.is_zero() else r * (self.ring.one() + a).inverse())
        return out

    def certified(self, gamma: Cut) -> bool:
        return all(cmp_cut(certificate(r, a), gamma) != Order.GT for r, a in self.summands)


@dataclass
class Remainder:
    """sum of num_j / den_j with finite num, den and v(den_j) = 0."""

    ring: object
    pieces: list = field(default_factory=list)

    def value(self) -> Series:
        out = self.ring.zero()
        for num, den in self.pieces:
            out = out + (num if den == self.ring.one() else num * den.inverse())
        return out

    def above(self, gamma: Cut) -> bool:
        return all(above(num, gamma) for num, _ in self.pieces)

    def valuation_bound(self):
        vals = [num.valuation() for num, _ in self.pieces if not num.is_zero()]
        return min(vals) if vals else None


def _normalize_divisor(d: Series, c: Series, k: int):
    """d/c^k = d'/(1 - eps)^k with v(eps) > 0."""
    ring = d.ring
    if not ring.factor_set.trivial:
        raise NotImplementedError("quotient splitting assumes the trivial factor set")
    if not c.is_finite or not d.is_finite:
        raise ValueError("d and c must have finite support; truncate first")
    if c.is_zero():
        raise ZeroDivisionError("c = 0")
    vc, lc = c.leading_term()
    unit = ring.monomial(-vc, ring.field.one() / lc)
    eps = ring.one() - unit * c
    d2 = d * (unit**k)
    return d2, eps


def _split_top(eps: Series):
    terms = eps.terms()
    theta, coeff = terms[-1]
    rest = eps.ring.from_terms(terms[:-1])
    return rest, eps.ring.monomial(theta, coeff), theta


def split_quotient(d: Series, c: Series, k: int, gamma: Cut, depth: Optional[int] = None):
    """d/c^k = b1 + b2 with b1 certified in B[gamma] and v(b2) > gamma.

    Returns (QuotientElem, Remainder).  Works on d/(1 - eps)^k:
      * the whole quotient is one summand when mu(d) + Z mu(a) <= gamma;
      * otherwise the part of d below gamma - Z mu(eps) is emitted and the
        rest is expanded in the top monomial e of eps,
          1/(c1 - e)^k = sum_i binom(i+k-1, i) e^i / c1^(i+k),  c1 = 1 - eps + e,
        up to the first i with v(d) + i v(e) > gamma; the shorter c1 makes
        the recursion terminate and the tail is an exact fraction.
    """
    if k < 1:
        raise ValueError("k must be positive")
    ring = d.ring
    cap = ring.config.zmul_cap
    d, eps = _normalize_divisor(d, c, k)
    summands, pieces = [], []
    one = ring.one()

    def emit(r, a):
        cert = certificate(r, a)
        if cmp_cut(cert, gamma) == Order.GT:
            raise AssertionError(f"summand certificate {cert.literal()} exceeds {gamma.literal()}")
        summands.append((r, a))

    def solve(d, eps, k):
        if d.is_zero():
            return
        if eps.is_zero():
            d1 = d.truncate(gamma)
            if not d1.is_zero():
                emit(d1, ring.zero())
            if not (d - d1).is_zero():
                pieces.append((d - d1, one))
            return
        a = (one - eps) ** k - one
        if cmp_cut(certificate(d, a), gamma) != Order.GT:
            emit(d, a)
            return
        psi = diff(gamma, z_mul(mu(eps)))
        d1 = d.truncate(psi)
        if not d1.is_zero():
            emit(d1, a)
        e1 = d - d1
        c1eps, top, theta = _split_top(eps)
        c1 = one - c1eps
        v = e1.valuation()
        n0 = 0
        while gamma.has_left(v + n0 * theta):
            n0 += 1
            if n0 > cap:
                raise BoundExceeded(f"no n <= {cap} with v + n theta above {gamma.literal()}")
        for i in range(n0):
            solve(e1 * top**i * comb(i + k - 1, i), c1eps, i + k)
        # exact tail: e1/c^k - sum_{i<n0} binom e1 top^i / c1^(i+k)
        cpow = (one - eps) ** k
        head = ring.zero()
        for i in range(n0):
            head = head + top**i * c1 ** (n0 - 1 - i) * comb(i + k - 1, i)
        num = e1 * (c1 ** (n0 + k - 1) - cpow * head)
        den = cpow * c1 ** (n0 + k - 1)
        if not num.is_zero():
            pieces.append((num, den))

    solve(d, eps, k)
    b1 = QuotientElem(ring, summands)
    b2 = Remainder(ring, pieces)
    if not b2.above(gamma):
        raise AssertionError("remainder is not above the cut")
    if depth:
        b1.value().grid_head(depth)
    return b1, b2


def quotient_reassembles(d, c, k, b1, b2, depth):
    """b1 + b2 agrees with d/c^k on `depth` grid points of the difference."""
    target = d * c.inverse() ** k if k > 1 else d * c.inverse()
    return (b1.value() + b2.value()).agrees_to(target, depth)


# -- normal forms ------------------------------------------------------------


def _merge(ring, s, t):
    (r, a), (r2, a2) = s, t
    one = ring.one()
    return r * (one + a2) + r2 * (one + a), a + a2 + a * a2


def _mumu(s, t, gamma):
    (r, a), (r2, a2) = s, t
    top = max(mu(r), mu(r2))
    return cmp_cut(left_sum(left_sum(top, zmu(a)), zmu(a2)), gamma) != Order.GT


def normalize_sum(x: QuotientElem, gamma: Cut, max_rounds: int = 100) -> QuotientElem:
    """Rewrite x so that v(r_i) increases, Z mu(a_i) decreases strictly and
    v(r_{i+1}) > mu(r_i) + Z mu(a_i)."""
    ring = x.ring
    items = [(r, a) for r, a in x.summands if not r.is_zero()]
    if not x.certified(gamma):
        raise ValueError("every summand must be certified for the cut")
    for _ in range(max_rounds):
        changed = False
        # merge pairs that fit under gamma together
        i = 0
        while i < len(items):
            j = i + 1
            while j < len(items):
                if _mumu(items[i], items[j], gamma):
                    items[i] = _merge(ring, items[i], items[j])
                    del items[j]
                    changed = True
                else:
                    j += 1
            i += 1
        items = [s for s in items if not s[0].is_zero()]
        items.sort(key=lambda s: zmu(s[1]), reverse=True)
        # move the low part of later numerators into earlier summands
        for i in range(len(items)):
            theta = certificate(*items[i])
            for j in range(i + 1, len(items)):
                r, a = items[j]
                low = r.truncate(theta)
                if not low.is_zero():
                    items[i] = _merge(ring, items[i], (low, a))
                    items[j] = (r - low, a)
                    changed = True
        items = [s for s in items if not s[0].is_zero()]
        if not changed:
            out = QuotientElem(ring, items, normal=True)
            problems = normal_form_violations(out, gamma)
            if problems:
                raise AssertionError("; ".join(problems))
            return out
    raise BoundExceeded(f"normal form not reached in {max_rounds} rounds")


def normal_form_violations(x: QuotientElem, gamma: Cut):
    out = []
    items = x.summands
    for i, (r, a) in enumerate(items):
        if cmp_cut(certificate(r, a), gamma) == Order.GT:
            out.append(f"summand {i} not certified")
        if not a.is_zero() and not a.valuation() > a.group.zero:
            out.append(f"summand {i} has v(a) <= 0")
    for i in range(len(items) - 1):
        (r, a), (r2, a2) = items[i], items[i + 1]
        if not r.valuation() < r2.valuation():
            out.append(f"v(r) not increasing at {i}")
        if not zmu(a) > zmu(a2):
            out.append(f"Z mu(a) not decreasing at {i}")
        if certificate(r, a).has_left(r2.valuation()):
            out.append(f"v(r_{i + 1}) not above mu(r_{i}) + Z mu(a_{i})")
    return out


# -- pseudo-Cauchy sequences -------------------------------------------------


@dataclass
class PseudoCauchySeq:
    """Materialized sequence a_start, ..., a_N given by `term_at`."""

    ring: object
    term_at: Callable
    N: int = 12
    start: int = 0
    declared_limit: Optional[Series] = None
    _memo: dict = field(default_factory=dict, repr=False)
    _lock: object = field(default_factory=threading.RLock, repr=False)

    def term(self, nu):
        with self._lock:
            if nu not in self._memo:
                self._memo[nu] = self.term_at(nu)
            return self._memo[nu]

    @property
    def indices(self):
        return range(self.start, self.N + 1)

    def values(self):
        """v(a_{nu+1} - a_nu), or v(limit - a_nu) when a limit is declared."""
        if self.declared_limit is not None:
            return [(self.declared_limit - self.term(n)).valuation() for n in self.indices]
        return [(self.term(n + 1) - self.term(n)).valuation() for n in self.indices[:-1]]


def _strictly_increasing(vals):
    return all(a is not None and b is not None and a < b for a, b in zip(vals, vals[1:]))


def pc_verify(seq: PseudoCauchySeq) -> dict:
    g = seq.ring.group
    diffs = [(seq.term(n + 1) - seq.term(n)).valuation() for n in seq.indices[:-1]]
    fmt = [("inf" if v is None else g.format_elem(v)) for v in diffs]
    increasing = len(diffs) >= 2 and _strictly_increasing(diffs)
    limit_ok = None
    if seq.declared_limit is not None:
        limit_ok = _strictly_increasing(seq.values())
    return {
        "pass": increasing and limit_ok is not False,
        "increasing": increasing,
        "limit_consistent": limit_ok,
        "values": fmt,
    }


def ball_of(seq: PseudoCauchySeq) -> Cut:
    vals = seq.values()
    if len(vals) < 3 or not _strictly_increasing(vals):
        raise NotPseudoCauchy("valuations of the differences are not strictly increasing")
    return set_cut(seq.ring.group, vals, PLUS, enumerated=True, cap=seq.ring.config.zmul_cap)


def complement_sequence(seq: PseudoCauchySeq, cut: Cut) -> PseudoCauchySeq:
    """(a'_nu): the parts of a_nu above `cut`."""
    return PseudoCauchySeq(
        seq.ring, lambda n: seq.term(n) - seq.term(n).truncate(cut), seq.N, seq.start,
        None if seq.declared_limit is None else seq.declared_limit - seq.declared_limit.truncate(cut),
    )


# -- polynomial criteria -----------------------------------------------------


@dataclass
class MinimalPolyInfo:
    """Monic p(X) = b_0 + b_1 X + ... + X^m with a ball for its root."""

    coeffs: list
    ball: Cut

    def __post_init__(self):
        ring = self.coeffs[-1].ring
        if not self.coeffs[-1] == ring.one():
            raise ValueError("polynomial must be monic")

    @property
    def degree(self):
        return len(self.coeffs) - 1


def ext_membership(coeffs, ball: Cut, gamma: Cut) -> bool:
    """sum c_n a^n lies in A[gamma] iff c_n in A[gamma - n ball] for every n."""
    return all(in_complement(c, n_fold(gamma, ball, n, MINUS)) for n, c in enumerate(coeffs))


def mu_poly(coeffs, ball: Cut) -> Cut:
    g = ball.group
    out = Cut.neg_inf(g)
    for n, c in enumerate(coeffs):
        if not c.is_zero():
            out = max(out, n_fold(mu(c), ball, n, PLUS))
    return out


def alg_mult_criterion(p: MinimalPolyInfo):
    """b_k in A[m ball - k ball] for k < m; vacuous when ball = +inf."""
    ball = p.ball
    m = p.degree
    report = {"ball": ball.literal(), "pass": True, "coefficients": [], "witness": None}
    if ball.is_pos_inf:
        return True, report
    mball = multiple(ball, m)
    report["m_ball"] = mball.literal()
    for k_, b in enumerate(p.coeffs[:-1]):
        cut = n_fold(mball, ball, k_, MINUS)
        m_b = mu(b)
        ok = cmp_cut(m_b, cut) != Order.GT
        entry = {"k": k_, "cut": cut.literal(), "mu": m_b.literal(), "verdict": ok}
        report["coefficients"].append(entry)
        if not ok and report["witness"] is None:
            report["witness"] = {"k": k_, "coeff": b, "cut": cut.literal()}
            report["pass"] = False
    return report["pass"], report


# -- Hensel lifting ----------------------------------------------------------


def poly_eval(coeffs, x):
    ring = x.ring
    out = ring.zero()
    for c in reversed(coeffs):
        out = out * x + c
    return out


def poly_deriv(coeffs):
    return [c * n for n, c in enumerate(coeffs)][1:]


def _residue(s):
    return s.coeff(s.group.zero)


def hensel_trace(coeffs, residue_root, depth):
    """Newton iteration from a simple residue root.

    Returns (root, residual valuations).  Each correction is truncated below
    2 e where e = v(p(b)), which keeps the iterates finite while the
    residual valuation at least doubles.
    """
    ring = coeffs[-1].ring
    g = ring.group
    zero = g.zero
    if any(not c.is_zero() and c.valuation() < zero for c in coeffs):
        raise ValueError("coefficients must lie in the valuation ring")
    field_ = ring.field
    r = ring.coerce_coeff(residue_root)
    bar = [_residue(c) for c in coeffs]
    val = field_.zero()
    for c in reversed(bar):
        val = val * r + c
    if val:
        raise ValueError("residue_root is not a root of the reduced polynomial")
    dval = field_.zero()
    for n in range(len(bar) - 1, 0, -1):
        dval = dval * r + bar[n] * field_.from_int(n)
    if not dval:
        raise NotSimpleRoot("the reduced derivative vanishes at the residue root")

    gens = sorted({e for c in coeffs if c.is_finite for e, _ in c.terms() if e > zero})
    dcoeffs = poly_deriv(coeffs)
    b = ring.const(r)
    trace = []
    for _ in range(ring.config.horizon):
        res = poly_eval(coeffs, b)
        if res.is_zero():
            trace.append(None)
            return b, trace
        e = res.valuation()
        trace.append(e)
        if len(trace) > 1 and trace[-2] is not None and not e > trace[-2]:
            raise AssertionError("Newton residual did not improve")
        if _points_below(g, gens, e) >= depth:
            return b.truncate(Cut.minus(g, e)), trace
        step = (res * poly_eval(dcoeffs, b).inverse()).truncate(Cut.minus(g, e + e))
        b = b - step
    raise BoundExceeded("Newton iteration did not reach the requested depth")


def _points_below(g, gens, e):
    if not gens:
        return float("inf")
    n = 0
    for x in iter_monoid(g, gens, g.zero):
        if not x < e:
            return n
        n += 1
    return n


def hensel_lift(coeffs, residue_root, depth):
    return hensel_trace(coeffs, residue_root, depth)[0]


# -- Artin-Schreier type data ------------------------------------------------


def additive_eval(acoeffs, x, p):
    """sum_i c_i x^(p^i)."""
    out = x.ring.zero()
    xp = x
    for c in acoeffs:
        out = out + c * xp
        xp = xp**p
    return out


def additive_shape(coeffs, p):
    """Split monic coefficients into (constant, [c_0, c_1, ...]) at indices p^i."""
    powers = []
    q = 1
    while q < len(coeffs):
        powers.append(q)
        q *= p
    for n, c in enumerate(coeffs):
        if n and n not in powers and not c.is_zero():
            raise ValueError(f"X^{n} is not a p-power monomial")
    return coeffs[0], [coeffs[q] for q in powers]


def artin_schreier_q(poly: MinimalPolyInfo, seq: PseudoCauchySeq, nu0: int, count: int = 6):
    """q(X) = b + sum b_i X^(p^i) from the splits
         c_i = b_i + b'_i           at p^n ball - p^i ball,
         c + A(a_nu0) = b + b'      at p^n ball,
    with A(X) = sum c_i X^(p^i); checks v(q(a_nu - a_nu0)) = v(p(a_nu)) and
    their strict increase for nu0 < nu <= nu0 + count."""
    ring = seq.ring
    g = ring.group
    p = ring.field.char
    if not p:
        raise ValueError("needs positive characteristic")
    ball = poly.ball
    if not ball.is_finite:
        raise ValueError("ball must be finite")
    const, acoeffs = additive_shape(poly.coeffs, p)
    n = len(acoeffs) - 1
    top = multiple(ball, p**n)
    bs, primes = [], []
    for i, c in enumerate(acoeffs):
        cut = diff(top, multiple(ball, p**i))
        b = c.truncate(cut)
        bs.append(b)
        primes.append(c - b)
    a0 = seq.term(nu0)
    shifted = const + additive_eval(acoeffs, a0, p)
    b = shifted.truncate(top)
    qcoeffs = [ring.zero()] * len(poly.coeffs)
    qcoeffs[0] = b
    for i, bi in enumerate(bs):
        qcoeffs[p**i] = qcoeffs[p**i] + bi
    trace = []
    for nu in range(nu0 + 1, min(nu0 + count, seq.N) + 1):
        an = seq.term(nu)
        vq = poly_eval(qcoeffs, an - a0).valuation()
        vp = poly_eval(poly.coeffs, an).valuation()
        trace.append({"nu": nu, "v_q": vq, "v_p": vp})
    equal = all(t["v_q"] == t["v_p"] for t in trace)
    vals = [t["v_q"] for t in trace]
    increasing = _strictly_increasing(vals)
    fmt = lambda v: "inf" if v is None else g.format_elem(v)  # noqa: E731
    report = {
        "pass": equal and increasing and len(trace) == count,
        "equal": equal,
        "increasing": increasing,
        "split_cut": top.literal(),
        "trace": [{"nu": t["nu"], "v_q": fmt(t["v_q"]), "v_p": fmt(t["v_p"])} for t in trace],
        "coeff_remainders_zero": all(x.is_zero() for x in primes),
        "const_remainder": shifted - b,
    }
    return qcoeffs, report
