"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import time
from fractions import Fraction as Q
from math import inf

import pytest

import oracles as O
from acceptance_log import record
from hahnfield.cli import run
from hahnfield.cut_laws import check_laws
from hahnfield.cuts import MINUS, PLUS, Cut, diff, hat, left_sum, n_fold, neg_cut, right_sum, set_cut, shift, z_mul
from hahnfield.errors import NonPositiveCut
from hahnfield.example import run_example
from hahnfield.extend import (
    hensel_trace, normal_form_violations, normalize_sum, quotient_reassembles, split_quotient,
)
from hahnfield.groups import Vec, integers, lex_power, p_hull
from hahnfield.sampling import random_cut, random_elem, random_series, random_unit, rng_for, tower_samples
from hahnfield.series import cocycle_verify
from hahnfield.tower import (
    above, check_tower_axioms, in_complement, mu, sigma_reconstruct, split_at, tower_passed, truncation_tower,
)
from test_literals import roundtrip_failures


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.s = time.perf_counter() - self.t0


def test_criterion_1_cut_laws():
    failures = {}
    with Timer() as tm:
        for g in (integers(), lex_power(2), p_hull(2, 8)):
            for law, (checked, bad) in check_laws(g, 10_000, seed=1).items():
                if bad is not None:
                    failures[f"{g.literal()}:{law}"] = bad
    ok = not failures and tm.s < 10
    record(1, ok, f"12 laws x 10^4 tuples x 3 groups, {len(failures)} failing, {tm.s:.1f}s (limit 10s)")
    assert not failures, failures


def test_criterion_2_oracle_equivalence():
    Z = integers()
    ths = list(range(-50, 51)) + [inf, -inf]
    cuts = {m: O.from_threshold(Z, m) for m in ths}
    T = O.threshold
    bad = []
    checked = 0
    with Timer() as tm:
        for a in ths:
            A = cuts[a]
            checked += 2
            if T(neg_cut(A)) != O.o_neg(a):
                bad.append(("neg", a))
            if T(hat(A)) != O.o_diff(a, a):
                bad.append(("hat", a))
            for x in (-7, 0, 3):
                checked += 1
                if T(shift(Q(x), A)) != O.o_shift(x, a):
                    bad.append(("shift", x, a))
            if a == inf or (a != -inf and a >= 0):
                checked += 1
                if T(z_mul(A)) != O.o_z_mul(a):
                    bad.append(("z_mul", a))
            for b in ths:
                B = cuts[b]
                checked += 3
                if T(left_sum(A, B)) != O.o_left_sum(a, b):
                    bad.append(("left_sum", a, b))
                if T(right_sum(A, B)) != O.o_right_sum(a, b):
                    bad.append(("right_sum", a, b))
                if T(diff(A, B)) != O.o_diff(a, b):
                    bad.append(("diff", a, b))
        for a in range(-10, 11, 5):
            for b in range(-6, 7, 3):
                for n in range(4):
                    for sign in (PLUS, MINUS):
                        checked += 1
                        if T(n_fold(cuts[a], cuts[b], n, sign)) != O.o_n_fold(a, b, n, sign):
                            bad.append(("n_fold", a, b, n, sign))
        rng = rng_for(2)
        for _ in range(500):
            S = [rng.randint(-50, 50) for _ in range(rng.randint(0, 5))]
            checked += 1
            if T(set_cut(Z, [Q(x) for x in S])) != O.o_set_cut(S):
                bad.append(("set_cut", S))
        with pytest.raises(NonPositiveCut):
            z_mul(cuts[-1])
    ok = not bad and tm.s < 10
    record(2, ok, f"{checked} comparisons on [-50,50] and +-inf, {len(bad)} mismatches, {tm.s:.1f}s (limit 10s)")
    assert not bad, bad[:5]


def _ring_triple_ok(ring, rng):
    a = random_series(ring, rng)
    b = random_series(ring, rng)
    c = random_unit(ring, rng).inverse()  # lazy
    n = 30
    checks = [
        (a + b) == (b + a),
        (a * b) == (b * a),
        (b * c).agrees_to(c * b, n),
        ((a * b) * c).agrees_to(a * (b * c), n),
        ((a + b) + c).agrees_to(a + (b + c), n),
        (a * (b + c)).agrees_to(a * b + a * c, n),
        (a * ring.one()) == a,
        (a - a).is_zero(),
    ]
    for x, y in ((a, b), (a, c), (b, c)):
        vx, vy = x.valuation(), y.valuation()
        if vx is not None and vy is not None:
            checks.append((x * y).valuation() == vx + vy)
            s = (x + y)
            vs = None if s.is_finite and s.is_zero() else s.valuation()
            checks.append(vs is None or vs >= min(vx, vy))
    return all(checks)


def test_criterion_3_series_ring(QZ, QHalf):
    bad = {}
    with Timer() as tm:
        for ring in (QZ, QHalf):
            rng = rng_for(3)
            bad[ring.factor_set.literal()] = sum(not _ring_triple_ok(ring, rng) for _ in range(1000))
        g = QHalf.group
        rng = rng_for(4)
        samples = [tuple(random_elem(g, rng, 6) for _ in range(3)) for _ in range(1000)]
        coc = cocycle_verify(QHalf.factor_set, samples, g)
    ok = not any(bad.values()) and coc["pass"] and tm.s < 30
    record(3, ok, f"10^3 triples per factor set, failures {bad}, cocycle {coc['checked']} ok={coc['pass']}, "
                  f"{tm.s:.1f}s (limit 30s)")
    assert ok


def test_criterion_4_geometric_inverse(QZ):
    one_minus_t = QZ.one() - QZ.t(1)
    inv = one_minus_t.inverse()
    coeffs_ok = O.dense(inv, 50) == [1] * 50
    prod_ok = [c for _, c in (one_minus_t * inv).grid_head(50)] == [1] + [0] * 49
    ok = coeffs_ok and prod_ok
    record(4, ok, f"1/(1-t) has 50 unit coefficients: {coeffs_ok}; (1-t)/(1-t) = 1 on 50 points: {prod_ok}")
    assert ok


def test_criterion_5_tower(QZ, QZ2, QH, QHalf):
    fails = []
    for ring in (QZ, QZ2, QH, QHalf):
        pairs, cuts, elems = tower_samples(ring, rng_for(5), 100)
        rep = check_tower_axioms(truncation_tower(ring), pairs, cuts, 30, elems)
        if not tower_passed(rep):
            fails.append(ring.group.literal())
    split_bad = 0
    rng = rng_for(6)
    rings = (QZ, QZ2, QH, QHalf)
    for i in range(1000):
        ring = rings[i % 4]
        x = random_series(ring, rng)
        L = random_cut(ring.group, rng)
        x1, x2 = split_at(x, L)
        if not (x1 + x2 == x and in_complement(x1, L) and above(x2, L)):
            split_bad += 1
    sigma_bad = 0
    for i in range(1000):
        ring = rings[i % 4]
        if i % 2:
            x = random_series(ring, rng, terms=6)
            good = sigma_reconstruct(x, 30) == x
        else:
            x = random_unit(ring, rng).inverse()
            good = sigma_reconstruct(x, 30).agrees_to(x.head(30), 30)
        sigma_bad += not good
    ok = not fails and not split_bad and not sigma_bad
    record(5, ok, f"axioms CA-CF on 100 samples x 4 groups (failing: {fails or 'none'}); "
                  f"split {1000 - split_bad}/1000; sigma {1000 - sigma_bad}/1000 at depth 30")
    assert ok


def test_criterion_6_mu_inverse(QZ2):
    g = QZ2.group
    target = Cut.subgroup(g, Vec((0, 0)), 1)
    rng = rng_for(7)
    results = []
    for _ in range(20):
        # u supported on (0, j), j >= 0, so mu(u) stays below the subgroup cut
        u = QZ2.from_terms([(Vec((0, j)), rng.randint(1, 5)) for j in sorted(rng.sample(range(0, 6), 3))])
        a = QZ2.one() + QZ2.t(Vec((0, 1))) * u
        results.append(mu(a.inverse()))
    zm = z_mul(Cut.plus(g, Vec((0, 1))))
    ok = zm == target and all(r == target for r in results)
    record(6, ok, f"mu(1/(1 + t^(0,1) u)) over 20 u: {sorted({r.literal() for r in results})}, "
                  f"z_mul((0,1)+) = {zm.literal()}")
    assert ok


def test_criterion_7_split_quotient(QZ, QZ2):
    bad = []
    n = 0
    with Timer() as tm:
        for ring in (QZ, QZ2):
            rng = rng_for(8)
            for _ in range(200):
                d = random_series(ring, rng)
                c = random_series(ring, rng, terms=3)
                while c.is_zero():
                    c = random_series(ring, rng, terms=3)
                k = rng.randint(1, 3)
                gamma = random_cut(ring.group, rng, infinite=0)
                b1, b2 = split_quotient(d, c, k, gamma, depth=20)
                nf = normalize_sum(b1, gamma)
                n += 1
                if not (b1.certified(gamma) and b2.above(gamma) and quotient_reassembles(d, c, k, b1, b2, 20)):
                    bad.append(("split", ring.group.literal(), n))
                if normal_form_violations(nf, gamma) or not nf.value().agrees_to(b1.value(), 20):
                    bad.append(("normal", ring.group.literal(), n))
    ok = not bad and tm.s < 60
    record(7, ok, f"{n} quotients over Z and Z^2lex, {len(bad)} violations, {tm.s:.1f}s (limit 60s)")
    assert not bad, bad[:5]


@pytest.fixture(scope="module")
def example():
    t0 = time.perf_counter()
    res = run_example(2, 8)
    return res, time.perf_counter() - t0


def test_criterion_8_artin_schreier_example(example):
    res, secs = example
    ring = res["ring"]
    ok_a, _ = res["criterion_a"]
    ok_b, rep_b = res["criterion_b"]
    w = rep_b["witness"] or {}
    witness_ok = w.get("k") == 0 and w.get("cut") == "0-" and w.get("coeff") == -(ring.monomial(-1) + ring.const(ring.field.gen()))
    ball_ok = res["ball"] == res["ball_expected"] == res["mu_stream"]
    ok = ball_ok and ok_a and not ok_b and witness_ok and secs < 5
    record(8, ok, f"ball {res['ball'].literal()}, criterion a={ok_a}, b={ok_b} "
                  f"(witness b_0 at {w.get('cut')}), {secs:.2f}s (limit 5s)")
    assert ok


def test_criterion_9_q_construction(example):
    res, _ = example
    rep = res["q_report"]
    trace = rep["trace"]
    ok = rep["equal"] and rep["increasing"] and len(trace) == 6
    record(9, ok, "v(q(a_nu - a_nu0)) = v(p(a_nu)) for nu0=2..8: " + ", ".join(t["v_q"] for t in trace))
    assert ok


def test_criterion_10_hensel(QZ):
    coeffs = [-(QZ.one() + QZ.t(1)), QZ.zero(), QZ.one()]
    b, trace = hensel_trace(coeffs, 1, 20)
    match = O.dense(b, 20) == O.binomial_prefix(Q(1, 2), 20)
    increasing = all(x < y for x, y in zip(trace, trace[1:]))
    ok = match and increasing
    record(10, ok, f"sqrt(1+t) matches the binomial series on 20 coefficients: {match}; "
                   f"residual valuations {[str(e) for e in trace]}")
    assert ok


def test_criterion_11_cli_determinism():
    cases = [
        ["example-wtoc", "--p", "2", "--depth", "8"],
        ["mu", "t^-1 + 1 + t^3"],
        ["quot-split", "--d", "1", "--c", "1 - t", "--k", "2", "--gamma", "3+"],
        ["tower-check", "--group", "Z^2lex", "--samples", "20", "--seed", "9"],
    ]
    same = [run(a)[1] == run(a)[1] for a in cases]
    codes = [run(a)[0] for a in cases]
    bad = roundtrip_failures(100)
    ok = all(same) and codes == [0] * 4 and not bad
    record(11, ok, f"{sum(same)}/4 commands byte-identical, exit codes {codes}; "
                   f"{len(bad)} of 200 literals fail to round-trip")
    assert ok
