from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from futaki.grassmann import Ambient, OnePS, anticanonical, det_quotient, ext_quotient, line, pieri_degree
from futaki.koszul import w_ambient
from futaki.localization import (
    NonGenericWeights,
    equivariant_euler,
    integrate,
    integrate_limit,
    integrate_ordinary,
    monomial,
    sl_vanishing,
    vanishing_exponent,
)

P1 = Ambient.projective_space(1)


def distinct_weights(N):
    return st.lists(st.integers(-15, 15), min_size=N, max_size=N, unique=True).map(lambda w: OnePS(tuple(w), sl=False))


def distinct_sl(N):
    return st.lists(st.integers(-9, 9), min_size=N - 1, max_size=N - 1).map(lambda w: tuple(w) + (-sum(w),)).filter(
        lambda w: len(set(w)) == len(w)
    ).map(OnePS)


def test_examples():
    nu = OnePS((1, -1))
    assert integrate(P1, monomial(), nu) == 0
    assert integrate(P1, monomial((line(1), 1, 1)), nu) == 1
    for n in range(1, 5):
        lam = OnePS(tuple(range(n, -n - 1, -2)))
        assert integrate(Ambient.projective_space(n), monomial((line(1), 1, n + 1)), lam) == 0


def test_repeated_weights_rejected():
    with pytest.raises(NonGenericWeights):
        integrate(Ambient(2, 4), monomial((det_quotient(1), 1, 4)), OnePS((1, 1, -1, -1)))


def test_integrate_limit_handles_repeats():
    amb = Ambient(2, 4)
    m = monomial((det_quotient(1), 1, 5))
    # polynomial of degree one in the weights; compare with a nearby line through distinct points
    nu = OnePS((1, 1, -1, -1))
    val = integrate_limit(amb, m, nu)
    # det Q^5 integral is linear in nu: evaluate along nu + t*(0,1,2,3) exactly
    samples = [integrate(amb, m, OnePS((1, 1 + t, -1 + 2 * t, -1 + 3 * t), sl=False)) for t in (5, 7)]
    slope = (samples[1] - samples[0]) / 2
    assert val == samples[0] - 5 * slope


@pytest.mark.parametrize("k,N,expected", [(1, 4, 1), (2, 5, 5), (2, 6, 14)])
def test_ordinary_examples(k, N, expected):
    amb = Ambient(k, N) if k > 1 else Ambient.projective_space(N - 1)
    B = det_quotient(1) if k > 1 else line(1)
    assert integrate_ordinary(amb, monomial((B, 1, amb.dim))) == expected == pieri_degree(k, N)


def test_ordinary_rejects_wrong_degree():
    with pytest.raises(ValueError):
        integrate_ordinary(Ambient(2, 5), monomial((det_quotient(1), 1, 5)))


@settings(max_examples=25, deadline=None)
@given(distinct_weights(5), st.fractions(-3, 3, max_denominator=4))
def test_top_degree_independent_of_weights_and_shift(nu, c):
    amb = Ambient(2, 5)
    m = monomial((det_quotient(1).shifted(c), 1, 4), (ext_quotient(2), 2, 1))
    assert integrate(amb, m, nu) == integrate_ordinary(amb, monomial((det_quotient(1), 1, 4), (ext_quotient(2), 2, 1)))


@settings(max_examples=25, deadline=None)
@given(distinct_weights(5), st.integers(1, 3), st.integers(1, 3), st.integers(0, 3))
def test_linearity_in_c1(nu, a, b, j):
    amb = Ambient(2, 5)
    base = monomial((ext_quotient(1), j, 1), (det_quotient(1), 1, 6 - j))
    lhs = integrate(amb, base * monomial((det_quotient(a + b), 1, 1)), nu)
    rhs = integrate(amb, base * monomial((det_quotient(a), 1, 1)), nu) + integrate(amb, base * monomial((det_quotient(b), 1, 1)), nu)
    assert lhs == rhs


@settings(max_examples=25, deadline=None)
@given(distinct_weights(4))
def test_degree_deficient_is_zero(nu):
    assert integrate(Ambient(2, 4), monomial((det_quotient(1), 1, 3)), nu) == 0


@pytest.mark.parametrize("case", [(2, 5, 3, 3), (2, 4, 1, 1), (4, 6, 2, 3), (1, 4, 1, 1), (1, 5, 1, 1)])
@settings(max_examples=8, deadline=None)
@given(data=st.data())
def test_sl_vanishing(case, data):
    k, N, ell, d = case
    nu = data.draw(distinct_sl(N))
    assert sl_vanishing(k, N, ell, d, nu) == 0


def test_sl_vanishing_negative_exponent():
    assert vanishing_exponent(1, 4, 1, 2) == -2
    with pytest.raises(ValueError):
        sl_vanishing(1, 4, 1, 2, OnePS((-3, -1, 1, 3)))


def test_sl_vanishing_needs_traceless():
    with pytest.raises(ValueError):
        sl_vanishing(2, 5, 3, 3, OnePS((0, 1, 2, 3, 4), sl=False))


@pytest.mark.parametrize("lam", [(3, 1, 0), (2, -1, 5, 0)])
def test_equivariant_euler_matches_monomial_count(lam):
    n = len(lam) - 1
    amb = Ambient.projective_space(n)
    from math import comb

    for m in range(5):
        assert equivariant_euler(amb, line(1), m, OnePS(lam, sl=False)) == (comb(n + m, n), w_ambient(lam, m))


def test_equivariant_euler_grassmannian():
    # h^0(G(2,5), det Q) = dim Λ^3 C^5 = 10, total weight = sum over triples = 6 * sum(nu)
    nu = OnePS((0, 1, 3, 4, 9), sl=False)
    assert equivariant_euler(Ambient(2, 5), det_quotient(1), 1, nu) == (10, 6 * sum(nu.weights))
    assert equivariant_euler(Ambient(2, 5), anticanonical(), 0, nu) == (1, 0)
