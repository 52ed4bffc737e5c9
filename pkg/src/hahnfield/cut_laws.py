"""Order and arithmetic laws of cuts as executable predicates.

Each law takes a tuple of cuts (plus small integers where needed) and
returns True when it holds.  `check_laws` runs all of them on random data.
"""

from __future__ import annotations

from .cuts import MINUS, PLUS, Cut, diff, hat, left_sum, multiple, n_fold, neg_cut, right_sum, shift
from .sampling import random_cut, rng_for


def _pos0(c):
    """0 < c, i.e. 0 in the left set."""
    return c.has_left(c.group.zero)


def sum_diff_1(L, T, _G=None):
    return (L < T) == (not _pos0(diff(L, T)))


def sum_diff_2(L, T, _G=None):
    return (L >= T) == _pos0(diff(L, T))


def sum_diff_3(L, T, _G=None):
    return (L > neg_cut(T)) == _pos0(left_sum(L, T))


def sum_diff_4(L, G, T):
    return (L < left_sum(G, T)) == (diff(L, G) < T)


def sum_diff_5(L, G, T):
    return (L >= left_sum(G, T)) == (diff(L, G) >= T)


def sum_diff_6(L, G, T):
    return (L >= left_sum(neg_cut(G), T)) == (right_sum(L, G) >= T)


def n_gamma(L, G, n):
    down = left_sum(n_fold(L, G, n, MINUS), _times(G, n))
    up = n_fold(n_fold(L, G, n, PLUS), G, n, MINUS)
    return down <= L <= up


def _times(G, n):
    """n G for n >= 1; 0 G is taken as the neutral element 0+."""
    if n == 0:
        return Cut.plus(G.group, G.group.zero)
    return multiple(G, n)


def n_gamma_sum(L, L2, G, n, n2):
    lhs = left_sum(n_fold(L, G, n, MINUS), n_fold(L2, G, n2, MINUS))
    return lhs <= n_fold(left_sum(L, L2), G, n + n2, MINUS)


def d_k_m(L, G, d, k, m):
    if not k < m:
        return True
    lhs = left_sum(n_fold(L, G, m + d, MINUS), n_fold(multiple(G, m), G, k, MINUS))
    return lhs <= n_fold(L, G, d + k, MINUS)


def d_k_m_i_j(L, L2, G, i, j, k, m):
    if not (i < m and j < m and k < m and i + j > m):
        return True
    d = i + j - m
    lhs = left_sum(
        left_sum(n_fold(L, G, i, MINUS), n_fold(L2, G, j, MINUS)),
        n_fold(multiple(G, m), G, k, MINUS),
    )
    return lhs <= n_fold(left_sum(L, L2), G, d + k, MINUS)


def hat_idempotent(G):
    h = hat(G)
    return diff(h, h) == h == left_sum(h, h)


def sum_iterate(G, gamma, k, m):
    """If G = gamma + hat(G) then m G - k G = (m - k) G."""
    if not k < m or shift(gamma, hat(G)) != G:
        return True
    return n_fold(multiple(G, m), G, k, MINUS) == multiple(G, m - k)


def _coset_point(G):
    """An element gamma with G = gamma + hat(G), when one is easy to name."""
    if not G.is_finite:
        return G.group.zero
    form = G.form
    if form[0] in ("Principal", "SubgroupCut"):
        return form[1]
    return None


LAWS = (
    "sum_diff_1", "sum_diff_2", "sum_diff_3", "sum_diff_4", "sum_diff_5", "sum_diff_6",
    "n_gamma", "n_gamma_sum", "d_k_m", "d_k_m_i_j", "hat_idempotent", "sum_iterate",
)


def check_laws(g, count, seed=0, size=5):
    """Run every law on `count` random tuples; returns {law: (checked, first_failure)}."""
    rng = rng_for(seed)
    out = {name: [0, None] for name in LAWS}

    def run(name, ok, data):
        out[name][0] += 1
        if not ok and out[name][1] is None:
            out[name][1] = [c.literal() if isinstance(c, Cut) else c for c in data]

    for _ in range(count):
        L, L2, G, T = (random_cut(g, rng, size) for _ in range(4))
        run("sum_diff_1", sum_diff_1(L, T), (L, T))
        run("sum_diff_2", sum_diff_2(L, T), (L, T))
        run("sum_diff_3", sum_diff_3(L, T), (L, T))
        run("sum_diff_4", sum_diff_4(L, G, T), (L, G, T))
        run("sum_diff_5", sum_diff_5(L, G, T), (L, G, T))
        run("sum_diff_6", sum_diff_6(L, G, T), (L, G, T))
        n, n2 = rng.randint(0, 3), rng.randint(0, 3)
        run("n_gamma", n_gamma(L, G, n), (L, G, n))
        run("n_gamma_sum", n_gamma_sum(L, L2, G, n, n2), (L, L2, G, n, n2))
        d, m = rng.randint(0, 3), rng.randint(1, 4)
        k = rng.randint(0, m - 1)
        run("d_k_m", d_k_m(L, G, d, k, m), (L, G, d, k, m))
        m = rng.randint(2, 4)
        i, j, k = rng.randint(1, m - 1), rng.randint(1, m - 1), rng.randint(1, m - 1)
        run("d_k_m_i_j", d_k_m_i_j(L, L2, G, i, j, k, m), (L, L2, G, i, j, k, m))
        run("hat_idempotent", hat_idempotent(G), (G,))
        gamma = _coset_point(G)
        if gamma is not None:
            m = rng.randint(1, 4)
            k = rng.randint(0, m - 1)
            run("sum_iterate", sum_iterate(G, gamma, k, m), (G, k, m))
    return {k: tuple(v) for k, v in out.items()}
