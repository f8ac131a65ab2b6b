"""Randomized exact property suites behind ``futaki verify``."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

from .core import (
    Check,
    Scenario,
    ambient_coeffs,
    ci_expansion,
    futaki_ci_general,
    lu_futaki,
    thm31_futaki,
    thm41_futaki,
)
from .degeneration import prop63_exterior_data
from .grassmann import Ambient, OnePS, anticanonical, det_quotient, ext_quotient, line, pieri_degree
from .koszul import h0_ci, monomial_weight, w_ambient, oracle_expansion, oracle_futaki, quotient_count, w_ci
from .localization import equivariant_euler, integrate, integrate_limit, monomial, sl_vanishing
from .series import lemma51_residual

# tuples (k, N, ell, d) whose c_1 exponent is non-negative
VANISHING_CASES = ((2, 5, 3, 3), (2, 4, 1, 1), (4, 6, 2, 3), (2, 5, 1, 1), (3, 6, 1, 1))


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


# -- random generators --------------------------------------------------------


def random_rational(rng: random.Random, nonzero: bool = True) -> Fraction:
    while True:
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        if x or not nonzero:
            return x


def random_sl(rng: random.Random, N: int, bound: int = 5, distinct: bool = False) -> OnePS:
    while True:
        w = [rng.randint(-bound, bound) for _ in range(N - 1)]
        last = -sum(w)
        w.append(last)
        if abs(last) > bound or not any(w):
            continue
        if distinct and len(set(w)) < N:
            continue
        return OnePS(tuple(w))


def _composition(rng: random.Random, total: int, parts: int) -> list[int]:
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


@dataclass(frozen=True)
class MonomialCI:
    """Complete intersection of monomials with disjoint supports in P^n."""

    n: int
    lam: tuple[int, ...]
    rs: tuple[int, ...]
    gens: tuple[tuple[int, ...], ...]

    @property
    def alphas(self) -> tuple[int, ...]:
        return tuple(monomial_weight(g, self.lam) for g in self.gens)

    def scenario(self) -> Scenario:
        return Scenario.line_family(Ambient.projective_space(self.n), line(1), OnePS(self.lam), self.rs, self.alphas)


def random_monomial_ci(rng: random.Random, max_n: int = 5, max_s: int = 2, max_r: int = 3) -> MonomialCI:
    n = rng.randint(1, max_n)
    s = rng.randint(0, min(max_s, n - 1))
    rs = tuple(rng.randint(1, max_r) for _ in range(s))
    lam = random_sl(rng, n + 1).weights
    free = list(range(n + 1))
    rng.shuffle(free)
    gens = []
    for j, r in enumerate(rs):
        room = len(free) - (s - j - 1)
        size = rng.randint(1, min(r, room))
        support, free = free[:size], free[size:]
        a = [0] * (n + 1)
        for i, e in zip(support, _composition(rng, r, size)):
            a[i] = e
        gens.append(tuple(a))
    return MonomialCI(n, lam, rs, tuple(gens))


def random_exterior_scenario(rng: random.Random, distinct: bool = False) -> Scenario:
    """E = Λ^ℓ Q with (det E)^q = (K^-1)^p on a small Grassmannian, random section weights."""
    while True:
        k, N = rng.choice([(1, 4), (2, 4), (2, 5), (3, 5), (2, 6)])
        ell = rng.randint(1, N - k)
        rank = comb(N - k, ell)
        dim = k * (N - k)
        copies = rng.randint(1, 3)
        if dim - copies * rank >= 1:
            break
    p, q = prop63_exterior_data(k, N, ell)
    nu = random_sl(rng, N, distinct=distinct)
    alphas = [rng.randint(-6, 6) for _ in range(copies)]
    return Scenario.exterior_family(Ambient(k, N), anticanonical(), nu, ext_quotient(ell), copies, p, q, alphas)


def random_line_scenario(rng: random.Random) -> Scenario:
    if rng.random() < 0.5:
        ci = random_monomial_ci(rng, max_n=4)
        return ci.scenario()
    N = rng.choice([4, 5])
    s = rng.randint(1, 3)
    nu = random_sl(rng, N)
    return Scenario.line_family(Ambient(2, N), det_quotient(1), nu, [1] * s, [rng.randint(-5, 5) for _ in range(s)])


# -- suites -------------------------------------------------------------------


def suite_lemma51(trials: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("lemma51")
    for _ in range(trials):
        ws = [random_rational(rng) for _ in range(rng.randint(1, 3))]
        r = lemma51_residual(ws, 8)
        res.checks.append(Check("lemma51.residual_zero", r.is_zero(), [str(w) for w in ws]))
    return res


def suite_koszul(trials: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("koszul")
    for _ in range(trials):
        ci = random_monomial_ci(rng)
        s = ci.scenario()
        tag = f"n={ci.n} lam={list(ci.lam)} gens={[list(g) for g in ci.gens]}"
        orc = oracle_expansion(ci.n, ci.lam, ci.rs, ci.alphas)
        res.checks.append(Check("koszul.expansion", orc == ci_expansion(s), tag))
        Fo = oracle_futaki(ci.n, ci.lam, ci.rs, ci.alphas)
        others = (lu_futaki(ci.n, ci.rs, ci.alphas), thm41_futaki(s), futaki_ci_general(s))
        res.checks.append(Check("koszul.futaki", all(F == Fo for F in others), tag))
        if ci.n <= 3:
            m = sum(ci.rs) + 1
            brute = quotient_count(ci.n, ci.gens, m, ci.lam)
            res.checks.append(
                Check("koszul.brute_count", brute == (h0_ci(ci.n, ci.rs, m), w_ci(ci.n, ci.lam, ci.alphas, ci.rs, m)), tag)
            )
    return res


LOCALIZATION_AMBIENTS = ((1, 2), (1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (2, 6), (3, 6))


def suite_localization(trials: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("localization")
    for _ in range(trials):
        k, N = rng.choice(LOCALIZATION_AMBIENTS)
        amb = Ambient(k, N)
        nu = OnePS(tuple(rng.sample(range(-3 * N, 3 * N + 1), N)), sl=False)
        tag = f"{amb} nu={list(nu.weights)}"
        top = integrate(amb, monomial((det_quotient(1), 1, amb.dim)), nu)
        res.checks.append(Check("localization.pieri", top == pieri_degree(k, N), tag))
        res.checks.append(Check("localization.low_degree", integrate(amb, monomial(), nu) == 0, tag))
        a, b = rng.randint(1, 3), rng.randint(1, 3)
        rest = monomial((ext_quotient(1), rng.randint(0, N - k), 1))
        rest_deg = rest.degree
        e = amb.dim + 1 - rest_deg
        if e >= 1:
            base = rest * monomial((det_quotient(1), 1, e - 1))
            lhs = integrate(amb, base * monomial((det_quotient(a + b), 1, 1)), nu)
            rhs = integrate(amb, base * monomial((det_quotient(a), 1, 1)), nu) + integrate(
                amb, base * monomial((det_quotient(b), 1, 1)), nu
            )
            res.checks.append(Check("localization.linearity", lhs == rhs, tag))
        # repeated weights: the limit evaluation agrees with a distinct-weight evaluation of a
        # degree-dim integrand, which does not depend on the weights at all
        rep = OnePS(tuple(sorted(rng.choices(range(-3, 4), k=N))), sl=False)
        res.checks.append(
            Check("localization.limit", integrate_limit(amb, monomial((det_quotient(1), 1, amb.dim)), rep) == top, tag)
        )
        if k == 1:
            m = rng.randint(0, 4)
            lam = nu.weights
            chi, w = equivariant_euler(Ambient.projective_space(N - 1), line(1), m, nu)
            res.checks.append(Check("localization.lefschetz", (chi, w) == (comb(m + N - 1, N - 1), w_ambient(lam, m)), tag))
    return res


def suite_invariance(trials: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("invariance")
    shifts = (Fraction(1), Fraction(-1), Fraction(1, 2))
    for _ in range(trials):
        s = random_exterior_scenario(rng)
        tag = f"{s.ambient} E={s.bundles[0]} nu={list(s.one_ps.weights)} alphas={[str(a) for a in s.alphas]}"
        F31 = thm31_futaki(s).F
        Fg = futaki_ci_general(s)
        res.checks.append(Check("invariance.exterior_general", F31 == Fg, tag))
        for c in shifts:
            t = s.with_shift(c)
            res.checks.append(Check("invariance.exterior_shift", thm31_futaki(t).F == F31 and futaki_ci_general(t) == Fg, f"{tag} c={c}"))

        s = random_line_scenario(rng)
        tag = f"{s.ambient} L={s.polarization} nu={list(s.one_ps.weights)} alphas={[str(a) for a in s.alphas]}"
        F41 = thm41_futaki(s)
        res.checks.append(Check("invariance.line_general", F41 == futaki_ci_general(s), tag))
        for c in shifts:
            t = s.with_shift(c)
            res.checks.append(Check("invariance.line_shift", thm41_futaki(t) == F41 and futaki_ci_general(t) == F41, f"{tag} c={c}"))

        ci = random_monomial_ci(rng, max_n=4)
        tag = f"n={ci.n} lam={list(ci.lam)} gens={[list(g) for g in ci.gens]}"
        same = oracle_futaki(ci.n, ci.lam, ci.rs, ci.alphas, 1) == oracle_futaki(ci.n, ci.lam, ci.rs, ci.alphas, 2)
        res.checks.append(Check("invariance.oracle_power", same, tag))

        for k, N in ((2, 5), (4, 6)):
            nu = random_sl(rng, N)
            for L in (anticanonical(), det_quotient(1)):
                M = Scenario(Ambient(k, N), L, nu)
                a0 = ambient_coeffs(M)[0]
                res.checks.append(
                    Check("invariance.homogeneous", a0 == 0 and futaki_ci_general(M) == 0, f"{M.ambient} L={L} nu={list(nu.weights)}")
                )
    return res


def suite_vanishing(trials: int, seed: int, cases=VANISHING_CASES) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("vanishing")
    for k, N, ell, d in cases:
        for _ in range(trials):
            nu = random_sl(rng, N, bound=max(N, 5), distinct=True)
            tag = f"(k,N,ell,d)=({k},{N},{ell},{d}) nu={list(nu.weights)}"
            try:
                v = sl_vanishing(k, N, ell, d, nu)
                res.checks.append(Check("vanishing.zero", v == 0, f"{tag} value={v}"))
            except ValueError as exc:
                res.checks.append(Check("vanishing.zero", False, f"{tag} {exc}"))
    return res


SUITES: dict[str, Callable[[int, int], SuiteResult]] = {
    "lemma51": suite_lemma51,
    "koszul": suite_koszul,
    "localization": suite_localization,
    "invariance": suite_invariance,
    "vanishing": suite_vanishing,
}
