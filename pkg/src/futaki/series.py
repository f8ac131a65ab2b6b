"""Truncated power series in one variable over the rationals.

Used to expand Chern characters and Todd classes of bundles whose Chern roots
are given as explicit numbers, so that identities between characteristic
classes can be tested coefficientwise.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Iterable, Sequence


def elem_sym(k: int, ws: Sequence) -> Fraction:
    """k-th elementary symmetric polynomial of ``ws`` (1 for k = 0, 0 for k > len)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > len(ws):
        return Fraction(0)
    e = [Fraction(1)] + [Fraction(0)] * k
    for w in ws:
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * w
    return e[k]


class Series:
    """Power series ``c_0 + c_1 u + ... + c_order u^order`` with exact coefficients.

    Products and inverses are truncated at ``order``.  Instances are immutable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be non-negative")
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        if not cs:
            raise ValueError("a series needs at least one coefficient")
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls, order: int) -> Series:
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> Series:
        return cls([1], order)

    @classmethod
    def monomial(cls, c, degree: int, order: int) -> Series:
        cs = [0] * (order + 1)
        if degree <= order:
            cs[degree] = c
        return cls(cs)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self._coeffs[i]

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def _coerce(self, other) -> Series:
        if isinstance(other, Series):
            if other.order != self.order:
                raise ValueError(f"order mismatch: {self.order} vs {other.order}")
            return other
        return Series([other], self.order)

    def __add__(self, other) -> Series:
        o = self._coerce(other)
        return Series(a + b for a, b in zip(self._coeffs, o._coeffs))

    __radd__ = __add__

    def __neg__(self) -> Series:
        return Series(-a for a in self._coeffs)

    def __sub__(self, other) -> Series:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Series:
        return self._coerce(other) - self

    def __mul__(self, other) -> Series:
        if not isinstance(other, Series):
            c = Fraction(other)
            return Series(a * c for a in self._coeffs)
        o = self._coerce(other)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += a * o._coeffs[j]
        return Series(out)

    __rmul__ = __mul__

    def inverse(self) -> Series:
        c0 = self._coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        n = self.order
        inv = [Fraction(0)] * (n + 1)
        inv[0] = 1 / c0
        for k in range(1, n + 1):
            s = sum(self._coeffs[j] * inv[k - j] for j in range(1, k + 1))
            inv[k] = -s / c0
        return Series(inv)

    def __truediv__(self, other) -> Series:
        if isinstance(other, Series):
            return self * self._coerce(other).inverse()
        return self * (1 / Fraction(other))

    def __pow__(self, e: int) -> Series:
        if e < 0:
            return self.inverse() ** (-e)
        out = Series.one(self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Series):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self._coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*u^{i}")
        return f"Series({' + '.join(terms) or '0'}; order={self.order})"


def exp_series(w, order: int) -> Series:
    """exp(w u) truncated at ``order``."""
    w = Fraction(w)
    return Series(w**i / factorial(i) for i in range(order + 1))


def ch_from_weights(ws: Sequence, order: int) -> Series:
    """Chern character sum_i exp(w_i u) of a bundle with Chern roots ``ws``."""
    out = Series.zero(order)
    for w in ws:
        out = out + exp_series(w, order)
    return out


def _todd_generator(order: int) -> Series:
    # x / (1 - e^{-x}) is the inverse of (1 - e^{-x}) / x = sum (-1)^i x^i / (i+1)!
    g = Series(Fraction((-1) ** i, factorial(i + 1)) for i in range(order + 1))
    return g.inverse()


def td_from_weights(ws: Sequence, order: int) -> Series:
    """Todd class prod_i (w_i u) / (1 - exp(-w_i u)); zero roots contribute 1."""
    gen = _todd_generator(order)
    out = Series.one(order)
    for w in ws:
        w = Fraction(w)
        if w == 0:
            continue
        out = out * Series(c * w**i for i, c in enumerate(gen))
    return out


def lemma51_residual(ws: Sequence, order: int) -> Series:
    """Alternating sum of ch of exterior powers of the dual, minus c_top * td^{-1}.

    The roots of the p-th exterior power of the dual are the p-fold sums of
    negated roots.  The result vanishes identically; callers use it as a
    randomized check of that identity.
    """
    ws = [Fraction(w) for w in ws]
    if any(w == 0 for w in ws):
        raise ValueError("zero Chern root: the Todd class is not invertible on this path")
    b = len(ws)
    if order < b:
        raise ValueError("order must be at least the number of roots")
    lhs = Series.zero(order)
    for p in range(b + 1):
        roots = [-sum(c) for c in combinations(ws, p)]
        term = ch_from_weights(roots, order)
        lhs = lhs + (term if p % 2 == 0 else -term)
    top = Fraction(1)
    for w in ws:
        top *= w
    c_top = Series.monomial(top, b, order)
    return lhs - c_top * td_from_weights(ws, order).inverse()
