import random
from fractions import Fraction as Fr
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from futaki.core import ci_expansion, futaki_ci_general, lu_futaki, thm41_futaki
from futaki.koszul import (
    extract_expansion,
    h0_ci,
    oracle_expansion,
    oracle_futaki,
    quotient_count,
    w_ambient,
    w_ci,
)
from futaki.suites import random_monomial_ci


def test_h0_examples():
    assert h0_ci(3, [], 4) == comb(7, 3)
    assert h0_ci(3, [2], 2) == 9
    assert h0_ci(4, [3], 2) == comb(6, 4)
    assert h0_ci(3, [2, 2], 5) == 4 * 5  # degree-4 curve: 4m for m >= ...
    assert h0_ci(3, [2], 0) == 1


def test_w_examples():
    assert w_ci(3, (3, 1, -1, -3), [], [], 4) == 0
    assert w_ci(3, (3, 1, -1, -3), [-6], [2], 0) == 0
    lam0 = 2
    for m in range(6):
        assert w_ci(1, (lam0, -lam0), [lam0], [1], m) == -m * lam0
    with pytest.raises(ValueError):
        w_ci(2, (1, 1, 1), [], [], 2)


def test_w_ambient_counts():
    lam = (3, -1, -2)
    for d in range(5):
        brute = sum(-(a * lam[0] + b * lam[1] + (d - a - b) * lam[2]) for a in range(d + 1) for b in range(d + 1 - a))
        assert w_ambient(lam, d) == brute


def test_extract_expansion_examples():
    p2 = [(m, comb(m + 2, 2), Fr(0)) for m in range(1, 6)]
    e = extract_expansion(p2, 2)
    assert (e.d0, e.d1, e.a0, e.a1) == (Fr(1, 2), Fr(3, 2), 0, 0)
    quad = [(m, (m + 1) ** 2, Fr(0)) for m in range(3, 7)]
    e = extract_expansion(quad, 2)
    assert (e.d0, e.d1) == (1, 2)
    with pytest.raises(ValueError):
        extract_expansion([(1, 1, 0), (2, 5, 0), (3, 3, 0), (4, 1, 0)], 1)
    with pytest.raises(ValueError):
        extract_expansion([(1, 1, 0), (3, 5, 0), (4, 3, 0)], 1)


def test_oracle_futaki_examples():
    lam = (3, 1, -1, -3)
    assert oracle_futaki(3, lam, [2], [0]) == 0
    assert oracle_futaki(3, lam, [2], [-6]) == 2 == lu_futaki(3, [2], [-6])
    assert oracle_futaki(3, lam, [2, 1], [0, 0]) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_oracle_equals_formulas(seed):
    ci = random_monomial_ci(random.Random(seed))
    s = ci.scenario()
    assert oracle_expansion(ci.n, ci.lam, ci.rs, ci.alphas) == ci_expansion(s)
    F = oracle_futaki(ci.n, ci.lam, ci.rs, ci.alphas)
    assert F == lu_futaki(ci.n, ci.rs, ci.alphas) == thm41_futaki(s) == futaki_ci_general(s)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_tensor_power_invariance(seed):
    ci = random_monomial_ci(random.Random(seed), max_n=4)
    assert oracle_futaki(ci.n, ci.lam, ci.rs, ci.alphas, 1) == oracle_futaki(ci.n, ci.lam, ci.rs, ci.alphas, 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 6))
def test_quotient_count_matches_koszul(seed, m):
    ci = random_monomial_ci(random.Random(seed), max_n=3)
    assert quotient_count(ci.n, ci.gens, m, ci.lam) == (h0_ci(ci.n, ci.rs, m), w_ci(ci.n, ci.lam, ci.alphas, ci.rs, m))
