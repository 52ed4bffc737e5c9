"""Reproduce the Artin-Schreier example over PH(F_p(y))((Z[1/p])).

Prints the ball of the partial sums, both criterion verdicts with the
failing coefficient, the q-polynomial and its valuation trace.
"""

import argparse

from hahnfield.example import run_example
from hahnfield.literals import format_series


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--depth", type=int, default=8, help="denominators up to p^depth")
    ap.add_argument("--nu0", type=int, default=2)
    ap.add_argument("--count", type=int, default=6)
    args = ap.parse_args()

    res = run_example(args.p, args.depth, args.nu0, args.count)
    print(f"field      {res['ring'].literal()}")
    print(f"pc values  {', '.join(res['pc']['values'])}")
    print(f"ball       {res['ball'].literal()} (expected {res['ball_expected'].literal()})")
    print(f"mu(stream) {res['mu_stream'].literal()}")
    for name, key in (("a", "criterion_a"), ("b", "criterion_b")):
        ok, rep = res[key]
        line = f"criterion {name}: {ok}"
        if rep["witness"]:
            w = rep["witness"]
            line += f"  (b_{w['k']} = {format_series(w['coeff'])} not below {w['cut']})"
        print(line)
    q = " + ".join(f"({format_series(c)})*X^{i}" for i, c in enumerate(res["q"]) if not c.is_zero())
    print(f"q(X)       {q}")
    for t in res["q_report"]["trace"]:
        print(f"  nu={t['nu']}  v(q)={t['v_q']}  v(p)={t['v_p']}")
    print(f"q check    {'pass' if res['q_report']['pass'] else 'fail'}")


if __name__ == "__main__":
    main()
