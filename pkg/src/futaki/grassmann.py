"""Torus-fixed-point model of G(k, N) and P^n under a diagonal 1-PS.

Fixed points are coordinate k-planes span{e_i : i in I}, recorded as sorted
0-based index tuples.  Every bundle is described by its restriction weights
at the fixed points (characters of the torus on the fibre), on top of which a
single global rational shift models a change of linearization.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

FixedPoint = tuple[int, ...]


@dataclass(frozen=True)
class OnePS:
    """Diagonal one-parameter subgroup t -> diag(t^w_1, ..., t^w_N)."""

    weights: tuple[int, ...]
    sl: bool = True

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if self.sl and sum(self.weights) != 0:
            raise ValueError(f"SL one-parameter subgroup must be traceless: {self.weights}")

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def trivial(self) -> bool:
        return len(set(self.weights)) <= 1

    @property
    def distinct(self) -> bool:
        return len(set(self.weights)) == len(self.weights)


@dataclass(frozen=True)
class Ambient:
    """The Grassmannian of k-planes in C^N; ``projective`` marks P^{N-1} = G(1, N)."""

    k: int
    N: int
    projective: bool = False

    def __post_init__(self):
        if not 1 <= self.k < self.N:
            raise ValueError(f"invalid Grassmannian G({self.k},{self.N})")
        if self.projective and self.k != 1:
            raise ValueError("projective ambient must have k = 1")

    @classmethod
    def grassmannian(cls, k: int, N: int) -> Ambient:
        return cls(k, N)

    @classmethod
    def projective_space(cls, n: int) -> Ambient:
        return cls(1, n + 1, True)

    @property
    def dim(self) -> int:
        return self.k * (self.N - self.k)

    def __str__(self) -> str:
        if self.projective:
            return f"P^{self.N - 1}"
        return f"G({self.k},{self.N})"


_KINDS = ("S", "Q", "ext_quotient", "det_quotient", "anticanonical", "line")
_LINE_KINDS = ("det_quotient", "anticanonical", "line")


@dataclass(frozen=True)
class BundleExpr:
    """A homogeneous bundle on the ambient together with a linearization shift.

    ``param`` is the exterior power for ``ext_quotient`` and the tensor power
    for the line bundles ``det_quotient``, ``anticanonical`` and ``line``
    (the last one is O(param) on projective space).
    """

    kind: str
    param: int = 1
    shift: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown bundle kind {self.kind!r}")
        object.__setattr__(self, "shift", Fraction(self.shift))

    @property
    def is_line(self) -> bool:
        return self.kind in _LINE_KINDS

    def shifted(self, c) -> BundleExpr:
        return BundleExpr(self.kind, self.param, self.shift + Fraction(c))

    def unshifted(self) -> BundleExpr:
        return BundleExpr(self.kind, self.param)

    def power(self, r: int) -> BundleExpr:
        """r-th tensor power of a line bundle, with the induced linearization."""
        if not self.is_line:
            raise ValueError(f"{self.kind} is not a line bundle")
        return BundleExpr(self.kind, self.param * r, self.shift * r)

    def rank(self, amb: Ambient) -> int:
        if self.kind == "S":
            return amb.k
        if self.kind == "Q":
            return amb.N - amb.k
        if self.kind == "ext_quotient":
            return comb(amb.N - amb.k, self.param)
        return 1

    def check(self, amb: Ambient) -> None:
        if self.kind == "ext_quotient" and not 1 <= self.param <= amb.N - amb.k:
            raise ValueError(f"exterior power {self.param} out of range on {amb}")
        if self.kind == "line" and not amb.projective:
            raise ValueError("line-power bundles O(r) only live on projective ambients")

    def __str__(self) -> str:
        names = {
            "S": "S",
            "Q": "Q",
            "ext_quotient": f"Λ^{self.param}Q",
            "det_quotient": f"(det Q)^{self.param}",
            "anticanonical": f"K^-{self.param}",
            "line": f"O({self.param})",
        }
        s = names[self.kind]
        if self.shift == 0:
            return s
        sign = "+" if self.shift > 0 else ""
        return f"{s}[{sign}{self.shift}]"


S = BundleExpr("S")
Q = BundleExpr("Q")


def ext_quotient(ell: int) -> BundleExpr:
    return BundleExpr("ext_quotient", ell)


def det_quotient(a: int = 1) -> BundleExpr:
    return BundleExpr("det_quotient", a)


def anticanonical(power: int = 1) -> BundleExpr:
    return BundleExpr("anticanonical", power)


def line(r: int) -> BundleExpr:
    return BundleExpr("line", r)


def fixed_points(k: int, N: int) -> list[FixedPoint]:
    """All coordinate k-planes of C^N in lexicographic order."""
    if not 1 <= k < N:
        raise ValueError(f"invalid Grassmannian G({k},{N})")
    return list(combinations(range(N), k))


def _complement(F: FixedPoint, N: int) -> list[int]:
    inside = set(F)
    return [j for j in range(N) if j not in inside]


def tangent_weights(F: FixedPoint, nu: OnePS) -> list[int]:
    """Weights of Hom(S, Q) at F: nu_j - nu_i for i in F, j not in F."""
    w = nu.weights
    return [w[j] - w[i] for i in F for j in _complement(F, len(w))]


def bundle_weights(B: BundleExpr, F: FixedPoint, nu: OnePS, amb: Ambient | None = None) -> list[Fraction]:
    w = nu.weights
    N = len(w)
    if amb is not None:
        if amb.N != N or len(F) != amb.k:
            raise ValueError("fixed point / weight vector do not match the ambient")
        B.check(amb)
    out_idx = _complement(F, N)
    kind = B.kind
    if kind == "S":
        base = [w[i] for i in F]
    elif kind == "Q":
        base = [w[j] for j in out_idx]
    elif kind == "ext_quotient":
        if not 1 <= B.param <= len(out_idx):
            raise ValueError(f"exterior power {B.param} out of range")
        base = [sum(w[j] for j in T) for T in combinations(out_idx, B.param)]
    elif kind == "det_quotient":
        base = [B.param * sum(w[j] for j in out_idx)]
    elif kind == "anticanonical":
        base = [B.param * sum(tangent_weights(F, nu))]
    else:  # line
        if len(F) != 1:
            raise ValueError("O(r) is only defined on projective space")
        base = [-B.param * w[F[0]]]
    return [Fraction(x) + B.shift for x in base]


def linearization_compat(E: BundleExpr, L: BundleExpr, p: int, q: int, nu: OnePS, amb: Ambient) -> bool:
    """True iff (det E)^q and L^p carry the same weight at every fixed point."""
    if q == 0:
        raise ValueError("q must be non-zero")
    for F in fixed_points(amb.k, amb.N):
        lhs = q * sum(bundle_weights(E, F, nu, amb))
        rhs = p * sum(bundle_weights(L, F, nu, amb))
        if lhs != rhs:
            return False
    return True


def pieri_degree(k: int, N: int) -> int:
    """Degree of G(k, N) in the Plücker embedding by iterated Pieri.

    Multiplying by sigma_1 adds one box to a partition inside the k x (N-k)
    box in every admissible way; the answer is the coefficient of the full box.
    """
    if not 1 <= k < N:
        raise ValueError(f"invalid Grassmannian G({k},{N})")
    rows, cols = k, N - k
    layer = {(0,) * rows: 1}
    for _ in range(rows * cols):
        nxt: dict[tuple[int, ...], int] = {}
        for lam, c in layer.items():
            for i in range(rows):
                if lam[i] < cols and (i == 0 or lam[i - 1] > lam[i]):
                    mu = lam[:i] + (lam[i] + 1,) + lam[i + 1 :]
                    nxt[mu] = nxt.get(mu, 0) + c
        layer = nxt
    return layer.get((cols,) * rows, 0)


def c1_degree(B: BundleExpr, amb: Ambient) -> Fraction:
    """c_1(B) as a multiple of sigma_1 (the Picard group is Z in every ambient here)."""
    w = tuple(range(amb.N))
    nu = OnePS(w, sl=False)
    # the equivariant c_1 restricted to fixed points is affine-linear in the
    # quotient-weight sum; differences between two fixed points isolate the slope
    F0 = tuple(range(amb.k))
    F1 = F0[:-1] + (amb.k,)
    c0 = sum(bundle_weights(B.unshifted(), F0, nu, amb))
    c1 = sum(bundle_weights(B.unshifted(), F1, nu, amb))
    s0 = sum(bundle_weights(det_quotient(1), F0, nu, amb))
    s1 = sum(bundle_weights(det_quotient(1), F1, nu, amb))
    return Fraction(c1 - c0, s1 - s0)
