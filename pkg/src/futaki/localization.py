"""Atiyah-Bott fixed-point evaluation of (equivariant) Chern integrals.

An integrand is a product of Chern classes of bundles on the ambient.  At a
torus-fixed point the i-th equivariant Chern class restricts to the i-th
elementary symmetric polynomial of the bundle's weights, and the integral is
the sum over fixed points divided by the product of tangent weights.  The
equivariant parameter is set to 1, so an integrand of degree dim + j returns
the coefficient of u^j.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod

from .grassmann import (
    Ambient,
    BundleExpr,
    OnePS,
    bundle_weights,
    ext_quotient,
    fixed_points,
    tangent_weights,
)
from .series import Series, elem_sym, exp_series, td_from_weights


class NonGenericWeights(ValueError):
    """Raised when repeated weights make some fixed point non-isolated."""


class ConsistencyError(RuntimeError):
    """Raised when an ordinary Chern number depends on the sampled weights."""


@dataclass(frozen=True)
class Factor:
    bundle: BundleExpr
    chern_index: int
    exponent: int = 1


@dataclass(frozen=True)
class IntegrandMonomial:
    factors: tuple[Factor, ...]

    @property
    def degree(self) -> int:
        return sum(f.chern_index * f.exponent for f in self.factors)

    def __mul__(self, other: IntegrandMonomial) -> IntegrandMonomial:
        return IntegrandMonomial(self.factors + other.factors)


def monomial(*factors) -> IntegrandMonomial:
    """Build an integrand from ``(bundle, chern_index[, exponent])`` tuples; zero exponents drop out."""
    fs = []
    for f in factors:
        if not isinstance(f, Factor):
            f = Factor(*f)
        if f.exponent < 0 or f.chern_index < 0:
            raise ValueError(f"negative exponent or Chern index in {f}")
        if f.exponent and f.chern_index:
            fs.append(f)
    return IntegrandMonomial(tuple(fs))


def _check(amb: Ambient, m: IntegrandMonomial, nu: OnePS) -> None:
    if len(nu) != amb.N:
        raise ValueError(f"weight vector of length {len(nu)} on {amb}")
    for f in m.factors:
        f.bundle.check(amb)


def integrate(amb: Ambient, m: IntegrandMonomial, nu: OnePS) -> Fraction:
    """Fixed-point sum of ``m`` for the torus action ``nu`` (distinct weights required)."""
    _check(amb, m, nu)
    if not nu.distinct:
        raise NonGenericWeights(f"non-generic weights {nu.weights}: fixed points are not isolated")
    if m.degree < amb.dim:
        return Fraction(0)
    total = Fraction(0)
    for F in fixed_points(amb.k, amb.N):
        num = Fraction(1)
        for f in m.factors:
            num *= elem_sym(f.chern_index, bundle_weights(f.bundle, F, nu)) ** f.exponent
        if num:
            total += num / prod(tangent_weights(F, nu))
    return total


def _lagrange_at_zero(ts: list[int], vals: list[Fraction]) -> Fraction:
    out = Fraction(0)
    for i, ti in enumerate(ts):
        w = Fraction(1)
        for j, tj in enumerate(ts):
            if j != i:
                w *= Fraction(-tj, ti - tj)
        out += w * vals[i]
    return out


def integrate_limit(amb: Ambient, m: IntegrandMonomial, nu: OnePS) -> Fraction:
    """Like :func:`integrate`, but also valid for repeated weights.

    The equivariant integral is a polynomial of degree ``m.degree - dim`` in
    the weights, so along a line ``nu + t*delta`` it is recovered exactly from
    that many plus one generic samples.
    """
    if nu.distinct:
        return integrate(amb, m, nu)
    _check(amb, m, nu)
    excess = m.degree - amb.dim
    if excess < 0:
        return Fraction(0)
    N = amb.N
    # delta = (0, 1, ..., N-1) scaled past the spread of nu separates all weights for t >= 1
    spread = max(nu.weights) - min(nu.weights) + 1
    ts, vals = [], []
    t = 1
    while len(ts) < excess + 1:
        w = [nu.weights[i] + t * spread * i for i in range(N)]
        pert = OnePS(tuple(w), sl=False)
        if pert.distinct:
            ts.append(t)
            vals.append(integrate(amb, m, pert))
        t += 1
    return _lagrange_at_zero(ts, vals)


def _random_distinct(N: int, rng: random.Random) -> OnePS:
    return OnePS(tuple(rng.sample(range(-4 * N - 7, 4 * N + 8), N)), sl=False)


@lru_cache(maxsize=None)
def _ordinary(amb: Ambient, m: IntegrandMonomial, samples: int, seed: int) -> Fraction:
    rng = random.Random(seed)
    values = [integrate(amb, m, _random_distinct(amb.N, rng)) for _ in range(samples)]
    if any(v != values[0] for v in values):
        raise ConsistencyError(f"Chern number of {m} on {amb} varies with the torus weights: {values}")
    return values[0]


def integrate_ordinary(amb: Ambient, m: IntegrandMonomial, samples: int = 3, seed: int = 0) -> Fraction:
    """Non-equivariant Chern number of a top-degree integrand.

    Evaluated as equivariant integrals at ``samples`` random distinct weight
    vectors; these must all agree.
    """
    if m.degree != amb.dim:
        raise ValueError(f"integrand of degree {m.degree} on {amb} of dimension {amb.dim}")
    if samples < 1:
        raise ValueError("need at least one sample")
    for f in m.factors:
        f.bundle.check(amb)
    return _ordinary(amb, m, samples, seed)


def vanishing_exponent(k: int, N: int, ell: int, d: int) -> int:
    from math import comb

    return k * (N - k) - d * comb(N - k, ell) + 1


def sl_vanishing(k: int, N: int, ell: int, d: int, nu: OnePS) -> Fraction:
    """Equivariant integral of c_top(Λ^ℓ Q)^d c_1(Λ^ℓ Q)^e with e = dim - d*rank + 1.

    Uses the SL(N)-induced linearization; the value is expected to be 0.
    """
    if not nu.sl:
        raise ValueError("the SL-induced linearization needs a traceless weight vector")
    amb = Ambient(k, N)
    E = ext_quotient(ell)
    rank = E.rank(amb)
    e = vanishing_exponent(k, N, ell, d)
    if e < 0:
        raise ValueError(
            f"c_1 exponent {e} < 0 for (k,N,ell,d)=({k},{N},{ell},{d}): "
            "d sections of Λ^ℓ Q exceed the dimension of the ambient"
        )
    return integrate(amb, monomial((E, rank, d), (E, 1, e)), nu)


def equivariant_euler(amb: Ambient, L: BundleExpr, m: int, nu: OnePS) -> tuple[Fraction, Fraction]:
    """(h^0, total weight) of H^0(M, L^m) by holomorphic Lefschetz.

    Each fixed point contributes exp(m l u) prod td(w u) / (prod w * u^dim);
    the u^0 and u^1 coefficients of the sum are the Euler characteristic and
    the total weight (higher cohomology is assumed to vanish).
    """
    if not L.is_line:
        raise ValueError("expected a line bundle")
    if not nu.distinct:
        raise NonGenericWeights(f"non-generic weights {nu.weights}")
    n = amb.dim
    order = n + 1
    chi = Fraction(0)
    weight = Fraction(0)
    for F in fixed_points(amb.k, amb.N):
        tw = tangent_weights(F, nu)
        (l,) = bundle_weights(L, F, nu, amb)
        s: Series = exp_series(m * l, order) * td_from_weights(tw, order)
        denom = prod(tw)
        chi += s[n] / denom
        weight += s[n + 1] / denom
    return chi, weight
