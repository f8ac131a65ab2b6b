"""Brute-force h^0 and total weight for complete intersections in P^n.

Independent of the localization machinery: ambient weights come from
enumerating monomials, the complete intersection from the alternating Koszul
sum, and the expansion coefficients from exact polynomial interpolation in m.
Sections are weighted in the same convention as monomials, z^a -> -sum a_i lam_i.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .core import ExpansionCoeffs, futaki_from_expansions


def _binom_top(top: int, n: int) -> int:
    return comb(top, n) if top >= 0 else 0


def _subsets(s: int):
    for size in range(s + 1):
        for J in combinations(range(s), size):
            yield J


def h0_ci(n: int, rs: Sequence[int], m: int) -> int:
    """h^0 of O(m) on a complete intersection of degrees ``rs`` in P^n."""
    total = 0
    for J in _subsets(len(rs)):
        total += (-1) ** len(J) * _binom_top(n + m - sum(rs[j] for j in J), n)
    return total


@lru_cache(maxsize=None)
def _monomial_weight_sum(lam: tuple[int, ...], d: int) -> int:
    # sum over |a| = d of sum_i a_i lam_i, enumerated variable by variable
    if d < 0:
        return 0
    if len(lam) == 1:
        return d * lam[0]
    head, rest = lam[0], lam[1:]
    n_rest = len(rest) - 1
    total = 0
    for a0 in range(d + 1):
        count = comb(d - a0 + n_rest, n_rest)
        total += a0 * head * count + _monomial_weight_sum(rest, d - a0)
    return total


def w_ambient(lam: Sequence[int], d: int) -> int:
    """Total weight of H^0(P^n, O(d)) with z^a of weight -sum a_i lam_i."""
    return -_monomial_weight_sum(tuple(lam), d)


def w_ci(n: int, lam: Sequence[int], alphas: Sequence, rs: Sequence[int], m: int) -> Fraction:
    """Total weight of H^0(X, O(m)) via the equivariant Koszul resolution."""
    if len(lam) != n + 1:
        raise ValueError("need n + 1 weights")
    if sum(lam) != 0:
        raise ValueError(f"weights must be traceless, got {list(lam)}")
    if len(alphas) != len(rs):
        raise ValueError("one section weight per degree")
    total = Fraction(0)
    for J in _subsets(len(rs)):
        d = m - sum(rs[j] for j in J)
        if d < 0:
            continue
        aJ = sum((Fraction(alphas[j]) for j in J), Fraction(0))
        total += (-1) ** len(J) * (w_ambient(lam, d) + aJ * comb(n + d, n))
    return total


def _interpolate(xs: Sequence[int], ys: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients (lowest first) of the polynomial through the points, by Newton's method."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        nxt = [Fraction(0)] * n
        for k in range(n - 1):
            nxt[k + 1] += poly[k]
        for k in range(n):
            nxt[k] -= xs[i] * poly[k]
        nxt[0] += coef[i]
        poly = nxt
    return poly


def _fit(ms: Sequence[int], ys: Sequence, degree: int) -> list[Fraction]:
    if len(ms) < degree + 1:
        raise ValueError("not enough samples")
    poly = _interpolate(ms[: degree + 1], ys[: degree + 1])
    for m, y in zip(ms[degree + 1 :], ys[degree + 1 :]):
        val = sum(c * m**i for i, c in enumerate(poly))
        if val != y:
            raise ValueError(f"samples are not polynomial of degree {degree} (residual at m={m})")
    return poly


def extract_expansion(samples: Iterable[tuple[int, int, Fraction]], dim_x: int) -> ExpansionCoeffs:
    """Top two coefficients of h^0 (degree dim_x) and w (degree dim_x + 1) in m."""
    samples = sorted(samples)
    if len(samples) < dim_x + 2:
        raise ValueError(f"need at least {dim_x + 2} samples, got {len(samples)}")
    ms = [m for m, _, _ in samples]
    if any(b - a != 1 for a, b in zip(ms, ms[1:])):
        raise ValueError("sample points must be consecutive")
    hp = _fit(ms, [h for _, h, _ in samples], dim_x)
    wp = _fit(ms, [w for _, _, w in samples], dim_x + 1)
    d0 = hp[dim_x]
    d1 = hp[dim_x - 1] if dim_x >= 1 else Fraction(0)
    return ExpansionCoeffs(wp[dim_x + 1], wp[dim_x], d0, d1)


def oracle_samples(n: int, lam: Sequence[int], rs: Sequence[int], alphas: Sequence, power: int = 1, extra: int = 2):
    """(m, h0, w) for L = O(power) at consecutive m in the polynomial regime."""
    dim_x = n - len(rs)
    m0 = sum(rs) + 1
    out = []
    for m in range(m0, m0 + dim_x + 1 + extra):
        out.append((m, h0_ci(n, rs, power * m), w_ci(n, lam, alphas, rs, power * m)))
    return out


def oracle_expansion(n: int, lam: Sequence[int], rs: Sequence[int], alphas: Sequence, power: int = 1) -> ExpansionCoeffs:
    return extract_expansion(oracle_samples(n, lam, rs, alphas, power), n - len(rs))


def oracle_futaki(n: int, lam: Sequence[int], rs: Sequence[int], alphas: Sequence, power: int = 1) -> Fraction:
    """Futaki invariant straight from the definition, using the Koszul counts."""
    return futaki_from_expansions(oracle_expansion(n, lam, rs, alphas, power))


def monomial_weight(a: Sequence[int], lam: Sequence[int]) -> int:
    return -sum(x * y for x, y in zip(a, lam))


def quotient_count(n: int, gens: Sequence[Sequence[int]], m: int, lam: Sequence[int]) -> tuple[int, int]:
    """(dimension, total weight) of degree m of C[z_0..z_n]/(monomials ``gens``), by enumeration."""
    count = 0
    weight = 0

    def rec(i: int, left: int, a: list[int]):
        nonlocal count, weight
        if i == n:
            a.append(left)
            if not any(all(x >= g for x, g in zip(a, gen)) for gen in gens):
                count += 1
                weight += monomial_weight(a, lam)
            a.pop()
            return
        for x in range(left + 1):
            a.append(x)
            rec(i + 1, left - x, a)
            a.pop()

    rec(0, m, [])
    return count, weight
