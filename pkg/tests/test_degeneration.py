from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from futaki.core import Scenario, cor44_futaki
from futaki.degeneration import (
    LinearSystem,
    build_test_configuration,
    delpezzo_alphas,
    delpezzo_pipeline,
    delpezzo_search,
    delpezzo_weight_vectors,
    flat_limit,
    generic_system,
    monomial_weights,
    mumford_weight,
    prop63_exterior_data,
    prop63_pipeline,
    rep_basis_weights,
)
from futaki.grassmann import Ambient, OnePS, det_quotient

NU6 = OnePS((-5, -3, -1, 1, 3, 5))
NU5 = OnePS((-2, -1, 0, 1, 2))


def eta(eps=1):
    one = Fr(1)
    return [
        {(1, 6): one, (2, 5): one, (3, 4): one},
        {(1, 5): one, (2, 4): one, (4, 6): Fr(eps)},
        {(2, 6): one, (3, 5): one, (4, 5): Fr(eps)},
    ]


def sigma():
    return [{k: c for k, c in v.items() if k not in ((4, 6), (4, 5))} for v in eta()]


def test_rep_basis_weights():
    w = rep_basis_weights(6, 2, NU6)
    assert (w[(1, 6)], w[(1, 5)], w[(2, 6)]) == (0, -2, 2)
    assert set(rep_basis_weights(4, 2, OnePS((0, 0, 0, 0))).values()) == {0}
    nu = (-4, -1, 0, 2, 3)
    assert rep_basis_weights(5, 3, OnePS(nu))[(1, 2, 3)] == -5
    assert len(rep_basis_weights(6, 2, NU6)) == 15


def test_monomial_weights():
    w = monomial_weights(3, 2, OnePS((3, 1, -1, -3)))
    assert w[(0, 0)] == -6 and w[(0, 3)] == 0 and len(w) == 10


@pytest.mark.parametrize("eps", [1, 2, Fr(-1, 3)])
def test_g46_singular_limit(eps):
    P = LinearSystem.exterior(6, 2, NU6, eta(eps))
    P0 = flat_limit(P)
    assert P0.section_weights() == [0, -2, 2]
    assert P0.same_span(LinearSystem.exterior(6, 2, NU6, sigma()))
    assert mumford_weight(P0) == 0


def test_invariant_system_is_fixed():
    P = LinearSystem.exterior(6, 2, NU6, sigma())
    assert flat_limit(P).same_span(P)
    s = Scenario.line_family(Ambient(4, 6), det_quotient(1), NU6, [1, 1, 1], sections=P)
    central, is_product = build_test_configuration(s)
    assert is_product
    assert list(central.alphas) == [0, -2, 2]


def test_g46_test_configuration():
    P = LinearSystem.exterior(6, 2, NU6, eta())
    s = Scenario.line_family(Ambient(4, 6), det_quotient(1), NU6, [1, 1, 1], sections=P)
    central, is_product = build_test_configuration(s)
    assert not is_product
    assert list(central.alphas) == rep_basis_weights_of(central.sections)
    assert cor44_futaki(central).F == 0 and cor44_futaki(central).mu == 0


def rep_basis_weights_of(P0):
    return [P0.weights[min(v)] for v in P0.vectors]


def test_mumford_weight_needs_homogeneous():
    with pytest.raises(ValueError):
        mumford_weight(LinearSystem.exterior(6, 2, NU6, eta()))
    single = LinearSystem.exterior(6, 2, NU6, [{(1, 2): 1}])
    assert mumford_weight(single) == -8


def test_dependent_basis_rejected():
    with pytest.raises(ValueError):
        LinearSystem.exterior(5, 3, NU5, [{(1, 2, 3): 1}, {(1, 2, 3): 2}])
    with pytest.raises(ValueError):
        LinearSystem.exterior(5, 3, NU5, [{(1, 2, 9): 1}])


def test_delpezzo_echelon_limit():
    # echelon P in weight-sorted order: limit is span(e123, e124, min{e134, e125})
    for nu, third in [((-6, -2, 1, 3, 4), (1, 2, 5)), ((-3, -2, 0, 1, 4), (1, 3, 4))]:
        nu = OnePS(nu)
        P = generic_system(LinearSystem.exterior(5, 3, nu, ()).weights, 3, seed=11)
        P0 = flat_limit(P)
        target = LinearSystem.exterior(5, 3, nu, [{(1, 2, 3): 1}, {(1, 2, 4): 1}, {third: 1}])
        assert P0.same_span(target)
        assert sum(P0.section_weights()) == sum(delpezzo_alphas(nu.weights))


def test_delpezzo_examples():
    assert sum(delpezzo_alphas((-2, -1, 0, 1, 2))) == -6
    assert sum(delpezzo_alphas((-1, -1, -1, -1, 4))) == -9
    assert delpezzo_pipeline((-2, -1, 0, 1, 2)) == Fr(3, 2)
    assert delpezzo_pipeline((-1, -1, -1, -1, 4)) == Fr(9, 4)
    assert delpezzo_search(0) == []
    assert (0, 0, 0, 0, 0) not in set(delpezzo_weight_vectors(3))


def test_delpezzo_search_small():
    rows = delpezzo_search(3)
    assert rows and all(r.ok and r.F_pipeline == r.F_closed for r in rows)


def test_generic_resamples_degenerate_draws():
    # the seed that used to produce coinciding low coordinates on a weight tie
    nu = OnePS((-12, 1, 1, 3, 7))
    P = generic_system(LinearSystem.exterior(5, 3, nu, ()).weights, 3, 382, dense=True)
    assert sum(flat_limit(P).section_weights()) == -26


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=4, max_size=4), st.integers(0, 10**6), st.booleans())
def test_flat_limit_properties(w, seed, dense):
    nu = OnePS(tuple(w) + (-sum(w),))
    P = generic_system(LinearSystem.exterior(5, 2, nu, ()).weights, 3, seed, dense=dense)
    P0 = flat_limit(P)
    assert P0.dim == P.dim
    assert P0.is_homogeneous()
    assert flat_limit(P0).same_span(P0)
    lowest = sorted(P.weights.values())[:3]
    assert mumford_weight(P0) == sum(lowest)
    if not nu.trivial:
        assert mumford_weight(P0) < 0


def test_prop63_data():
    assert prop63_exterior_data(2, 5, 3) == (1, 5)
    assert prop63_exterior_data(4, 6, 2) == (1, 6)
    assert prop63_exterior_data(2, 5, 1) == (1, 5)
    assert prop63_exterior_data(2, 6, 2) == (1, 2)


@pytest.mark.parametrize("case,nu", [((2, 5, 3, 3), (-3, -1, 0, 1, 3)), ((4, 6, 2, 3), (-5, -3, -1, 1, 3, 5))])
def test_prop63_pipeline(case, nu):
    rep = prop63_pipeline(*case, OnePS(nu), seed=3)
    assert rep.F > 0 and rep.fano
    assert all(c.passed for c in rep.checks if c.name != "cor33.T_ge_bound"), rep.checks


def test_prop63_not_fano_boundary():
    rep = prop63_pipeline(2, 5, 3, 5, OnePS((-3, -1, 0, 1, 3)), seed=0)
    assert not rep.fano
    assert {c.name: c.passed for c in rep.checks}["prop63.fano_criterion"] is False
    assert "prop63.F_positive" not in {c.name for c in rep.checks}


def test_prop63_rejects_bad_input():
    from futaki.core import HypothesisError

    with pytest.raises(HypothesisError):
        prop63_pipeline(2, 5, 3, 3, OnePS((-1, -1, 0, 1, 1)), seed=0)
    with pytest.raises(HypothesisError):
        prop63_pipeline(2, 5, 3, 6, OnePS((-3, -1, 0, 1, 3)), seed=0)
