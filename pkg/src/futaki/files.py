"""Scenario and report documents (JSON, rationals as exact "p/q" strings)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .core import Check, Scenario
from .degeneration import LinearSystem, generic_system
from .grassmann import Ambient, BundleExpr, OnePS, anticanonical, det_quotient, ext_quotient, line


class SchemaError(ValueError):
    """The scenario document is malformed or inconsistent."""


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise SchemaError(f"expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational {x!r}") from exc
    raise SchemaError(f"rationals must be integers or 'p/q' strings, got {x!r}")


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def _get(d: dict, key: str, where: str):
    if not isinstance(d, dict):
        raise SchemaError(f"{where} must be an object")
    if key not in d:
        raise SchemaError(f"missing field {where}.{key}")
    return d[key]


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{where} must be an integer, got {x!r}")
    return x


@dataclass
class ScenarioFile:
    scenario: Scenario
    # "explicit", "generic" or "weights"
    sections_kind: str
    raw: dict = field(default_factory=dict)


def _ambient(doc) -> Ambient:
    amb = _get(doc, "ambient", "scenario")
    kind = _get(amb, "type", "ambient")
    try:
        if kind == "grassmannian":
            return Ambient(_int(_get(amb, "k", "ambient"), "ambient.k"), _int(_get(amb, "N", "ambient"), "ambient.N"))
        if kind == "projective":
            n = _int(_get(amb, "n", "ambient"), "ambient.n")
            if n < 1:
                raise SchemaError("ambient.n must be positive")
            return Ambient.projective_space(n)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    raise SchemaError(f"unknown ambient type {kind!r}")


def _polarization(doc, amb: Ambient) -> BundleExpr:
    pol = _get(doc, "polarization", "scenario")
    kind = _get(pol, "type", "polarization")
    value = _int(pol.get("value", 1), "polarization.value")
    if value < 1:
        raise SchemaError("polarization.value must be positive")
    if kind == "anticanonical":
        L = anticanonical(value)
    elif kind == "det_quotient_power":
        if amb.projective:
            L = line(value)
        else:
            L = det_quotient(value)
    elif kind == "line_power":
        if not amb.projective:
            raise SchemaError("line_power polarization needs a projective ambient")
        L = line(value)
    else:
        raise SchemaError(f"unknown polarization type {kind!r}")
    return L.shifted(parse_rational(pol.get("shift", 0)))


def _one_ps(doc, amb: Ambient) -> OnePS:
    ops = _get(doc, "one_ps", "scenario")
    ws = _get(ops, "weights", "one_ps")
    if not isinstance(ws, list) or not all(isinstance(w, int) and not isinstance(w, bool) for w in ws):
        raise SchemaError("one_ps.weights must be a list of integers")
    if len(ws) != amb.N:
        raise SchemaError(f"one_ps.weights has length {len(ws)}, {amb} needs {amb.N}")
    sl = ops.get("sl", True)
    if not isinstance(sl, bool):
        raise SchemaError("one_ps.sl must be a boolean")
    try:
        return OnePS(tuple(ws), sl)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _section_space(s: Scenario, bundle_doc: dict) -> dict:
    """Graded space holding the sections, with weights in the bundle's linearization."""
    amb, nu = s.ambient, s.one_ps
    if s.family == "exterior":
        E = s.bundles[0]
        if E.kind != "ext_quotient":
            raise SchemaError("explicit sections need an exterior_quotient bundle")
        return LinearSystem.exterior(amb.N, E.param, nu, (), shift=E.shift).weights
    degrees = set(s.powers)
    if len(degrees) != 1:
        raise SchemaError("explicit sections need all sections in the same line power")
    E = s.bundles[0]
    if amb.projective:
        return LinearSystem.polynomials(amb.N - 1, E.param, nu, (), shift=E.shift).weights
    if E.kind == "det_quotient" and E.param == 1:
        return LinearSystem.exterior(amb.N, amb.N - amb.k, nu, (), shift=E.shift).weights
    raise SchemaError(f"no explicit section model for {E} on {amb}")


def _explicit_vectors(items, space: dict, projective: bool) -> list[dict]:
    vecs = []
    for j, item in enumerate(items):
        terms = _get(item, "terms", f"sections[{j}]")
        if not isinstance(terms, list) or not terms:
            raise SchemaError(f"sections[{j}].terms must be a non-empty list")
        v: dict = {}
        for t in terms:
            idx = _get(t, "indices", f"sections[{j}].terms")
            if not isinstance(idx, list) or not all(isinstance(i, int) for i in idx):
                raise SchemaError("indices must be a list of integers")
            label = tuple(sorted(idx))
            if not projective and len(set(label)) != len(label):
                raise SchemaError(f"repeated index in exterior basis label {idx}")
            if label not in space:
                raise SchemaError(f"basis label {idx} does not belong to the section space")
            v[label] = v.get(label, Fraction(0)) + parse_rational(t.get("coeff", "1"))
        vecs.append(v)
    return vecs


def load_scenario(doc: dict) -> ScenarioFile:
    """Build a :class:`Scenario` from a parsed scenario document."""
    if not isinstance(doc, dict):
        raise SchemaError("scenario must be a JSON object")
    amb = _ambient(doc)
    L = _polarization(doc, amb)
    nu = _one_ps(doc, amb)
    bdoc = _get(doc, "bundle", "scenario")
    kind = _get(bdoc, "type", "bundle")
    try:
        if kind == "exterior_quotient":
            ell = _int(_get(bdoc, "ell", "bundle"), "bundle.ell")
            copies = _int(_get(bdoc, "copies", "bundle"), "bundle.copies")
            p = _int(_get(bdoc, "p", "bundle"), "bundle.p")
            q = _int(_get(bdoc, "q", "bundle"), "bundle.q")
            if amb.projective:
                raise SchemaError("exterior_quotient bundles are only supported on Grassmannians")
            if copies < 1 or q == 0:
                raise SchemaError("bundle.copies must be positive and bundle.q non-zero")
            E = ext_quotient(ell).shifted(parse_rational(bdoc.get("shift", 0)))
            E.check(amb)
            base = Scenario.exterior_family(amb, L, nu, E, copies, p, q)
        elif kind == "line_powers":
            powers = _get(bdoc, "powers", "bundle")
            if not isinstance(powers, list) or not all(isinstance(r, int) and r >= 1 for r in powers):
                raise SchemaError("bundle.powers must be a list of positive integers")
            base = Scenario.line_family(amb, L, nu, powers)
        else:
            raise SchemaError(f"unknown bundle type {kind!r}")
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc

    sec = doc.get("sections")
    if sec is None:
        raise SchemaError("missing field scenario.sections")
    if isinstance(sec, list):
        if len(sec) != base.s:
            raise SchemaError(f"{len(sec)} explicit sections for {base.s} bundle copies")
        space = _section_space(base, bdoc)
        vecs = _explicit_vectors(sec, space, amb.projective)
        try:
            P = LinearSystem(space, tuple(vecs))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
        return ScenarioFile(_with_sections(base, P), "explicit", doc)
    if isinstance(sec, dict) and sec.get("type") == "generic":
        dim = _int(_get(sec, "dim", "sections"), "sections.dim")
        seed = _int(sec.get("seed", 0), "sections.seed")
        if dim != base.s:
            raise SchemaError(f"generic system of dimension {dim} for {base.s} bundle copies")
        space = _section_space(base, bdoc)
        P = generic_system(space, dim, seed, dense=bool(sec.get("dense", False)))
        return ScenarioFile(_with_sections(base, P), "generic", doc)
    if isinstance(sec, dict) and "weights" in sec:
        ws = sec["weights"]
        if not isinstance(ws, list) or len(ws) != base.s:
            raise SchemaError(f"sections.weights must list {base.s} weights")
        return ScenarioFile(base.with_alphas([parse_rational(w) for w in ws]), "weights", doc)
    raise SchemaError("sections must be a list of explicit sections, a generic spec, or {weights: [...]}")


def _with_sections(s: Scenario, P: LinearSystem) -> Scenario:
    alphas = P.section_weights() if P.is_homogeneous() else [Fraction(0)] * s.s
    return Scenario(s.ambient, s.polarization, s.one_ps, s.bundles, tuple(alphas), s.p, s.q, s.powers, P)


def read_scenario(path) -> ScenarioFile:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    return load_scenario(doc)


# -- reports ------------------------------------------------------------------

_RATIONAL_FIELDS = ("F", "a0", "a1", "d0", "d1", "C", "T", "mu", "alpha_sum")


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    return str(x)


@dataclass
class ReportFile:
    F: Fraction
    a0: Fraction | None = None
    a1: Fraction | None = None
    d0: Fraction | None = None
    d1: Fraction | None = None
    C: Fraction | None = None
    T: Fraction | None = None
    mu: Fraction | None = None
    alpha_sum: Fraction | None = None
    alphas: list[Fraction] = field(default_factory=list)
    fano: bool | None = None
    is_product: bool | None = None
    checks: list[Check] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for name in _RATIONAL_FIELDS:
            v = getattr(self, name)
            out[name] = None if v is None else format_rational(v)
        out["alphas"] = [format_rational(a) for a in self.alphas]
        out["fano"] = self.fano
        out["is_product"] = self.is_product
        out["checks"] = [{"name": c.name, "passed": bool(c.passed), "value": _jsonable(c.value)} for c in self.checks]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> ReportFile:
        kw: dict[str, Any] = {}
        for name in _RATIONAL_FIELDS:
            v = d.get(name)
            kw[name] = None if v is None else parse_rational(v)
        kw["alphas"] = [parse_rational(a) for a in d.get("alphas", [])]
        kw["fano"] = d.get("fano")
        kw["is_product"] = d.get("is_product")
        kw["checks"] = [Check(c["name"], c["passed"], c.get("value")) for c in d.get("checks", [])]
        return cls(**kw)

    @classmethod
    def from_json(cls, text: str) -> ReportFile:
        return cls.from_dict(json.loads(text))
