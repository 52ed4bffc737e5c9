"""The Artin-Schreier pair over PH(F_p(y))((Z[1/p])).

a = sum_{i>=1} t^(-1/p^i) is a root of X^p - X - 1/t and its partial sums
form a pseudo-Cauchy sequence with ball 0-.  The polynomial
X^p - X - (1/t + y) has the same ball but its constant term is not in A[0-].
"""

from __future__ import annotations

from fractions import Fraction

from .coeffs import PerfectHull
from .config import DEFAULT
from .cuts import Cut
from .extend import MinimalPolyInfo, PseudoCauchySeq, alg_mult_criterion, artin_schreier_q, ball_of, pc_verify
from .groups import p_hull
from .series import HahnField
from .tower import mu


def example_field(p=2, depth=8, config=DEFAULT):
    return HahnField(p_hull(p, depth), PerfectHull(p, "y", 4), config=config)


def partial_sums(ring, p, depth):
    def term(nu):
        return ring.from_terms([(-Fraction(1, p**i), 1) for i in range(1, nu + 1)])

    return PseudoCauchySeq(ring, term, N=depth, start=1)


def artin_schreier_polys(ring, p, ball):
    one = ring.one()
    inv_t = ring.monomial(-1)
    y = ring.const(ring.field.gen())

    def poly(const):
        coeffs = [ring.zero()] * (p + 1)
        coeffs[0] = -const
        coeffs[1] = -one
        coeffs[p] = one
        return MinimalPolyInfo(coeffs, ball)

    return poly(inv_t), poly(inv_t + y)


def run_example(p=2, depth=8, nu0=2, count=6, config=DEFAULT):
    ring = example_field(p, depth, config)
    g = ring.group
    seq = partial_sums(ring, p, depth)
    pc = pc_verify(seq)
    ball = ball_of(seq)
    stream = ring.stream([(-Fraction(1, p**i), 1) for i in range(1, depth + 1)])
    mu_stream = mu(stream)
    pa, pb = artin_schreier_polys(ring, p, ball)
    ok_a, rep_a = alg_mult_criterion(pa)
    ok_b, rep_b = alg_mult_criterion(pb)
    q, rep_q = artin_schreier_q(pb, seq, nu0, count)
    return {
        "ring": ring,
        "pc": pc,
        "ball": ball,
        "ball_expected": Cut.minus(g, g.zero),
        "mu_stream": mu_stream,
        "criterion_a": (ok_a, rep_a),
        "criterion_b": (ok_b, rep_b),
        "q": q,
        "q_report": rep_q,
        "poly_a": pa,
        "poly_b": pb,
    }
