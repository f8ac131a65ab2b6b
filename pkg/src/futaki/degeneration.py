"""Flat limits of linear systems under a one-parameter subgroup.

A linear system is a subspace of a weight-graded representation: either
Λ^ℓ C^N, whose basis e_T is labelled by 1-based sorted index tuples, or the
degree-r polynomials on P^n, labelled by sorted 0-based variable tuples
(z_0^2 z_3 is (0, 0, 3)).  With rho(t) v = sum t^w v_w and t -> 0, the limit
of a vector is its lowest-weight component.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Mapping, Sequence

from .core import (
    Check,
    FutakiReport,
    HypothesisError,
    Scenario,
    cor33_futaki,
    cor44_futaki,
    futaki_ci_general,
)
from .grassmann import Ambient, OnePS, anticanonical, c1_degree, det_quotient, ext_quotient
from .localization import sl_vanishing

log = logging.getLogger(__name__)

Label = tuple[int, ...]
Vector = Mapping[Label, Fraction]


def rep_basis_weights(N: int, ell: int, nu: OnePS) -> dict[Label, int]:
    """Weights of e_T in Λ^ℓ C^N: sum of nu_i over i in T (T 1-based)."""
    if not 1 <= ell <= N:
        raise ValueError(f"exterior power {ell} of C^{N}")
    w = nu.weights
    return {tuple(i + 1 for i in T): sum(w[i] for i in T) for T in combinations(range(N), ell)}


def monomial_weights(n: int, r: int, lam: OnePS) -> dict[Label, int]:
    """Weights of degree-r monomials on P^n; z^a has weight -sum a_i lam_i."""
    w = lam.weights
    if len(w) != n + 1:
        raise ValueError("need n + 1 weights")
    return {idx: -sum(w[i] for i in idx) for idx in combinations_with_replacement(range(n + 1), r)}


@dataclass(frozen=True)
class LinearSystem:
    """Span of ``vectors`` inside the graded space ``weights`` (label -> weight)."""

    weights: Mapping[Label, Fraction]
    vectors: tuple[Vector, ...]

    def __post_init__(self):
        vecs = []
        for v in self.vectors:
            clean = {tuple(k): Fraction(c) for k, c in v.items() if c}
            for k in clean:
                if k not in self.weights:
                    raise ValueError(f"basis label {k} is not in the representation")
            vecs.append(clean)
        object.__setattr__(self, "vectors", tuple(vecs))
        if _rank(self.vectors) != len(self.vectors):
            raise ValueError("linear system basis is linearly dependent")

    @classmethod
    def exterior(cls, N: int, ell: int, nu: OnePS, vectors, shift=0) -> LinearSystem:
        ws = {k: Fraction(v) + Fraction(shift) for k, v in rep_basis_weights(N, ell, nu).items()}
        return cls(ws, tuple(vectors))

    @classmethod
    def polynomials(cls, n: int, r: int, lam: OnePS, vectors, shift=0) -> LinearSystem:
        ws = {k: Fraction(v) + Fraction(shift) for k, v in monomial_weights(n, r, lam).items()}
        return cls(ws, tuple(vectors))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def vector_weight(self, v: Vector) -> Fraction:
        ws = {self.weights[k] for k in v}
        if len(ws) != 1:
            raise ValueError(f"vector is not weight-homogeneous: weights {sorted(ws)}")
        return ws.pop()

    def section_weights(self) -> list[Fraction]:
        return [self.vector_weight(v) for v in self.vectors]

    def is_homogeneous(self) -> bool:
        return all(len({self.weights[k] for k in v}) == 1 for v in self.vectors)

    def same_span(self, other: LinearSystem) -> bool:
        if self.dim != other.dim:
            return False
        return _rank(self.vectors + other.vectors) == self.dim


def _rank(vectors: Sequence[Vector]) -> int:
    return len(vectors) - len(_null_combinations(vectors))


def _null_combinations(vectors: Sequence[Vector]) -> list[dict[int, Fraction]]:
    """Basis of linear relations among ``vectors``, each as {index: coefficient}."""
    pivots: list[tuple[Label, dict[Label, Fraction], dict[int, Fraction]]] = []
    relations = []
    for idx, v in enumerate(vectors):
        row = dict(v)
        combo = {idx: Fraction(1)}
        for key, prow, pcombo in pivots:
            c = row.get(key)
            if c:
                for k, x in prow.items():
                    y = row.get(k, 0) - c * x
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
                for i, x in pcombo.items():
                    y = combo.get(i, 0) - c * x
                    if y:
                        combo[i] = y
                    else:
                        combo.pop(i, None)
        if row:
            key = min(row)
            c = row[key]
            pivots.append((key, {k: x / c for k, x in row.items()}, {i: x / c for i, x in combo.items()}))
        else:
            relations.append(combo)
    return relations


def _initial(v: Vector, weights) -> tuple[Fraction, dict[Label, Fraction]]:
    w = min(weights[k] for k in v)
    return w, {k: c for k, c in v.items() if weights[k] == w}


def flat_limit(P: LinearSystem) -> LinearSystem:
    """Limit of rho(t) P as t -> 0, with a weight-homogeneous basis.

    Initial forms of the current basis are made independent weight level by
    weight level; a relation among them is used to replace one basis vector
    by a combination whose initial part cancels, which strictly raises its
    lowest weight.
    """
    ws = P.weights
    vecs = [dict(v) for v in P.vectors]
    while True:
        inits = [_initial(v, ws) for v in vecs]
        by_weight: dict[Fraction, list[int]] = {}
        for i, (w, _) in enumerate(inits):
            by_weight.setdefault(w, []).append(i)
        replaced = False
        for w in sorted(by_weight):
            group = by_weight[w]
            if len(group) < 2:
                continue
            rel = _null_combinations([inits[i][1] for i in group])
            if not rel:
                continue
            combo = rel[0]
            target = group[max(combo)]
            new: dict[Label, Fraction] = {}
            for local, c in combo.items():
                for k, x in vecs[group[local]].items():
                    new[k] = new.get(k, 0) + c * x
            vecs[target] = {k: x for k, x in new.items() if x}
            replaced = True
            break
        if not replaced:
            break
    # slot j holds the limit of (the possibly modified) j-th input vector
    limit = [inits[i][1] for i in range(len(vecs))]
    return LinearSystem(ws, tuple(limit))


def mumford_weight(P0: LinearSystem) -> Fraction:
    if not P0.is_homogeneous():
        raise ValueError("basis is not weight-homogeneous; take the flat limit first")
    return sum(P0.section_weights(), Fraction(0))


def generic_system(weights: Mapping[Label, Fraction], d: int, seed: int, dense: bool = False) -> LinearSystem:
    """Seeded stand-in for a general d-dimensional linear system.

    Basis labels are sorted by weight; eta_i is supported on labels i, i+1, ...
    with a non-zero coefficient on label i.  ``dense`` fills every coordinate
    instead, leaving all elimination to :func:`flat_limit`.  Either way the
    minor on the d lowest labels is non-zero, which is the genericity the
    limit depends on; a draw violating it is discarded.
    """
    labels = sorted(weights, key=lambda k: (weights[k], k))
    if not 1 <= d <= len(labels):
        raise ValueError(f"cannot choose {d} vectors in a space of dimension {len(labels)}")
    rng = random.Random(seed)
    lowest = set(labels[:d])
    while True:
        vecs = []
        for i in range(d):
            v = {}
            for j, lab in enumerate(labels):
                if j < i and not dense:
                    continue
                c = rng.randint(-9, 9)
                while j == i and c == 0:
                    log.info("zero pivot drawn for eta_%d, resampling", i + 1)
                    c = rng.randint(-9, 9)
                if c:
                    v[lab] = Fraction(c)
            vecs.append(v)
        if _rank([{k: c for k, c in v.items() if k in lowest} for v in vecs]) == d:
            return LinearSystem(dict(weights), tuple(vecs))
        log.info("degenerate draw (singular leading minor), resampling")


def build_test_configuration(s: Scenario) -> tuple[Scenario, bool]:
    """Central fibre of the degeneration of X_P under the scenario's 1-PS."""
    P = s.sections
    if P is None:
        raise ValueError("scenario carries no explicit linear system")
    if P.dim != s.s:
        raise ValueError(f"linear system of dimension {P.dim} for {s.s} sections")
    P0 = flat_limit(P)
    central = s.with_alphas(P0.section_weights())
    central = Scenario(
        central.ambient, central.polarization, central.one_ps, central.bundles,
        central.alphas, central.p, central.q, central.powers, P0,
    )
    return central, P0.same_span(P)


# -- the two search campaigns -------------------------------------------------


def delpezzo_alphas(nu: Sequence[int]) -> tuple[int, int, int]:
    n1, n2, n3, n4, n5 = sorted(nu)
    return n1 + n2 + n3, n1 + n2 + n4, min(n1 + n3 + n4, n1 + n2 + n5)


def delpezzo_weight_vectors(bound: int):
    """Sorted nontrivial traceless integer 5-vectors with entries in [-bound, bound]."""
    for t in combinations_with_replacement(range(-bound, bound + 1), 5):
        if sum(t) == 0 and any(t):
            yield t


@dataclass(frozen=True)
class SearchRow:
    nu: tuple[int, ...]
    alpha_sum: Fraction
    F_closed: Fraction
    F_pipeline: Fraction | None

    @property
    def agree(self) -> bool:
        return self.F_pipeline is None or self.F_pipeline == self.F_closed

    @property
    def ok(self) -> bool:
        return self.agree and self.F_closed > 0


def delpezzo_pipeline(nu: Sequence[int], seed: int = 0) -> Fraction:
    """F of the central fibre of a generic linear section of G(2,5), computed end to end."""
    onep = OnePS(tuple(nu))
    amb = Ambient(2, 5)
    P = generic_system(LinearSystem.exterior(5, 3, onep, ()).weights, 3, seed, dense=True)
    s = Scenario.line_family(amb, det_quotient(1), onep, [1, 1, 1], alphas=[0, 0, 0], sections=P)
    central, _ = build_test_configuration(s)
    return cor44_futaki(central).F


def delpezzo_search(bound: int, pipeline_samples: int | None = None, seed: int = 0) -> list[SearchRow]:
    """Closed-form F for every weight vector, end-to-end F on all or a seeded sample."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    nus = list(delpezzo_weight_vectors(bound))
    if pipeline_samples is None or pipeline_samples >= len(nus):
        chosen = set(range(len(nus)))
    else:
        chosen = set(random.Random(seed).sample(range(len(nus)), pipeline_samples))
    rows = []
    for i, nu in enumerate(nus):
        sa = Fraction(sum(delpezzo_alphas(nu)))
        closed = -sa / 4
        pipe = delpezzo_pipeline(nu, seed + i) if i in chosen else None
        rows.append(SearchRow(nu, sa, closed, pipe))
    return rows


def prop63_exterior_data(k: int, N: int, ell: int) -> tuple[int, int]:
    """Coprime (p, q) with (det Λ^ℓ Q)^q = (K^-1)^p on G(k, N)."""
    from math import gcd

    e = int(c1_degree(ext_quotient(ell), Ambient(k, N)))
    g = gcd(e, N)
    return e // g, N // g


def prop63_pipeline(k: int, N: int, ell: int, d: int, nu: OnePS, seed: int) -> FutakiReport:
    """Degenerate a seeded general d-dimensional P in H^0(Λ^ℓ Q) and evaluate F of the limit."""
    amb = Ambient(k, N)
    E = ext_quotient(ell)
    rank = comb(N - k, ell)
    dim_x = k * (N - k) - d * rank
    if dim_x <= 0:
        raise HypothesisError(f"X_P would have dimension {dim_x}", value=dim_x)
    if not nu.sl or nu.trivial or not nu.distinct:
        raise HypothesisError("need a nontrivial traceless weight vector with distinct entries", value=nu.weights)
    p, q = prop63_exterior_data(k, N, ell)
    P = generic_system(LinearSystem.exterior(N, ell, nu, ()).weights, d, seed)
    s = Scenario.exterior_family(amb, anticanonical(), nu, E, d, p, q, sections=P)
    central, is_product = build_test_configuration(s)
    alpha = mumford_weight(central.sections)
    vanishing = sl_vanishing(k, N, ell, d, nu)
    report = cor33_futaki(central)
    general = futaki_ci_general(central)
    fano_stated = N - d * rank > 0
    report.checks.extend(
        [
            Check("prop63.fano_criterion", fano_stated, N - d * rank),
            Check("prop63.fano_adjunction", report.fano == fano_stated, q - p * d),
            Check("prop63.mumford_weight_negative", alpha < 0, alpha),
            Check("prop63.sl_vanishing", vanishing == 0, vanishing),
            Check("prop63.general_agrees", general == report.F, general),
            Check("prop63.not_product", not is_product, is_product),
        ]
    )
    if fano_stated:
        report.checks.append(Check("prop63.F_positive", report.F > 0, report.F))
    return report
