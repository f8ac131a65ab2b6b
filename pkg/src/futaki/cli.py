"""Command line interface: ``futaki compute | verify | search``.

Exit codes: 0 success, 1 computation refusal or failed check, 2 invalid input.
"""
from __future__ import annotations

import argparse
import logging
import random
import sys
from fractions import Fraction

from .core import (
    Check,
    HypothesisError,
    Scenario,
    ci_expansion,
    chow_weight,
    cor33_futaki,
    cor44_futaki,
    fano_margin,
    futaki_from_expansions,
    lu_futaki,
    thm31_futaki,
    thm41_futaki,
)
from .degeneration import build_test_configuration, delpezzo_search, mumford_weight, prop63_pipeline
from .files import ReportFile, ScenarioFile, SchemaError, read_scenario
from .localization import ConsistencyError, NonGenericWeights
from .suites import SUITES, random_sl

FORMULAS = ("thm31", "cor33", "thm41", "cor44", "general", "all")
# checks that report a value without being a hard requirement
INFORMATIONAL = {"cor33.T_ge_bound"}

# failures of these become exit code 1
COMPUTATION_ERRORS = (HypothesisError, ConsistencyError, NonGenericWeights, ZeroDivisionError, ArithmeticError)


class CheckFailed(Exception):
    pass


def _applicable(s: Scenario) -> list[str]:
    if s.family == "exterior":
        return ["thm31", "cor33"]
    if s.family == "line_powers":
        out = ["thm41"]
        if len(set(s.powers)) <= 1:
            out.append("cor44")
        return out
    return []


def _is_lu_case(s: Scenario) -> bool:
    L = s.polarization
    return s.ambient.projective and s.family == "line_powers" and L.kind == "line" and L.param == 1 and L.shift == 0 and s.one_ps.sl


def compute_report(sf: ScenarioFile, formula: str = "all", degenerate: bool = False) -> ReportFile:
    if formula not in FORMULAS:
        raise SchemaError(f"unknown formula {formula!r}")
    s = sf.scenario
    checks: list[Check] = []
    is_product = None
    if degenerate:
        if s.sections is None:
            raise SchemaError("--degenerate needs explicit or generic sections, not bare weights")
        s, is_product = build_test_configuration(s)
        checks.append(Check("degeneration.mumford_weight", True, mumford_weight(s.sections)))
    elif s.sections is not None and not s.sections.is_homogeneous():
        raise SchemaError("sections are not semi-invariant; pass --degenerate to take the flat limit")

    exp = ci_expansion(s)
    Fg = futaki_from_expansions(exp)
    rep = ReportFile(F=Fg, a0=exp.a0, a1=exp.a1, d0=exp.d0, d1=exp.d1)
    rep.alphas = list(s.alphas)
    rep.alpha_sum = sum(s.alphas, Fraction(0))
    rep.fano = fano_margin(s) > 0
    rep.is_product = is_product
    try:
        rep.mu = chow_weight(s)
    except ZeroDivisionError:
        rep.mu = None

    applicable = _applicable(s)
    if formula in ("thm31", "cor33", "thm41", "cor44") and formula not in applicable:
        raise HypothesisError(f"formula {formula} does not apply to a {s.family} scenario")
    wanted = applicable if formula == "all" else [f for f in applicable if f == formula]
    values: dict[str, Fraction] = {"general": Fg}
    for name in wanted:
        try:
            if name == "thm31":
                r = thm31_futaki(s)
                values[name] = r.F
            elif name == "cor33":
                r = cor33_futaki(s)
                values[name] = r.F
                rep.C, rep.T = r.C, r.T
                checks.extend(r.checks)
            elif name == "thm41":
                values[name] = thm41_futaki(s)
            else:
                r = cor44_futaki(s)
                values[name] = r.F
                rep.C = r.C
                checks.extend(r.checks)
        except HypothesisError as exc:
            if formula != "all":
                raise
            checks.append(Check(f"{name}.applicable", True, f"skipped: {exc}"))
    if formula == "all" and _is_lu_case(s):
        values["lu"] = lu_futaki(s.n, s.powers, s.alphas)
    for name, F in values.items():
        if name != "general":
            checks.append(Check(f"{name}.agrees_with_general", F == Fg, F))
    rep.F = values[formula] if formula not in ("all",) else Fg
    rep.checks = checks
    return rep


def _failed(checks) -> list[Check]:
    return [c for c in checks if not c.passed and c.name not in INFORMATIONAL]


def cmd_compute(args) -> int:
    sf = read_scenario(args.scenario)
    rep = compute_report(sf, args.formula, args.degenerate)
    text = rep.to_json()
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    bad = _failed(rep.checks)
    for c in bad:
        print(f"check failed: {c.name} (value {c.value})", file=sys.stderr)
    return 1 if bad else 0


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise SchemaError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    if args.trials < 1:
        raise SchemaError("--trials must be positive")
    res = SUITES[args.suite](args.trials, args.seed)
    bad = res.failures
    print(f"{res.suite}: {len(res.checks) - len(bad)}/{len(res.checks)} checks passed")
    if bad:
        c = bad[0]
        print(f"counterexample: {c.name}: {c.value}")
        return 1
    return 0


def _fmt_nu(nu) -> str:
    return "(" + ",".join(str(x) for x in nu) + ")"


def cmd_search(args) -> int:
    if args.campaign == "delpezzo":
        if args.bound < 0:
            raise SchemaError("--bound must be non-negative")
        rows = delpezzo_search(args.bound, args.samples, args.seed)
        print("nu\talpha_sum\tF_closed\tF_pipeline\tagree")
        bad = None
        for r in rows:
            pipe = "-" if r.F_pipeline is None else str(r.F_pipeline)
            print(f"{_fmt_nu(r.nu)}\t{r.alpha_sum}\t{r.F_closed}\t{pipe}\t{str(r.agree).lower()}")
            if not r.ok and bad is None:
                bad = r
        print(f"{len(rows)} rows")
        if bad is not None:
            print(f"violation: {_fmt_nu(bad.nu)} F_closed={bad.F_closed} F_pipeline={bad.F_pipeline}", file=sys.stderr)
            return 1
        return 0

    # prop63
    for name in ("k", "N", "ell", "d"):
        if getattr(args, name) is None:
            raise SchemaError(f"search prop63 needs --{name}")
    k, N, ell, d = args.k, args.N, args.ell, args.d
    if not (1 <= k < N and 1 <= ell <= N - k and d >= 1):
        raise SchemaError(f"invalid (k,N,ell,d)=({k},{N},{ell},{d})")
    samples = 5 if args.samples is None else args.samples
    rng = random.Random(args.seed)
    print("nu\talpha_sum\tF_closed\tF_pipeline\tfano\tagree")
    bad = None
    for i in range(samples):
        nu = random_sl(rng, N, bound=max(N, 5), distinct=True)
        rep = prop63_pipeline(k, N, ell, d, nu, args.seed + i)
        general = next(c.value for c in rep.checks if c.name == "prop63.general_agrees")
        failed = _failed(rep.checks)
        agree = general == rep.F
        print(f"{_fmt_nu(nu.weights)}\t{rep.alpha_sum}\t{rep.F}\t{general}\t{str(rep.fano).lower()}\t{str(agree).lower()}")
        if (failed or not rep.F > 0) and bad is None:
            bad = (nu, failed)
    if bad is not None:
        nu, failed = bad
        names = ", ".join(c.name for c in failed) or "F <= 0"
        print(f"violation: {_fmt_nu(nu.weights)}: {names}", file=sys.stderr)
        return 1
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="futaki", description="Exact Futaki invariants of complete intersections.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="evaluate a scenario file")
    c.add_argument("scenario")
    c.add_argument("--formula", default="all", choices=FORMULAS)
    c.add_argument("--degenerate", action="store_true", help="replace the linear system by its flat limit first")
    c.add_argument("--report", help="write the JSON report here instead of stdout")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="run a randomized exact property suite")
    v.add_argument("suite")
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="run a stability search campaign")
    s.add_argument("campaign", choices=("delpezzo", "prop63"))
    s.add_argument("--bound", type=int, default=4)
    s.add_argument("--k", type=int)
    s.add_argument("--N", type=int)
    s.add_argument("--ell", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--samples", type=int, help="pipeline samples (delpezzo: default all rows; prop63: default 5)")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (SchemaError, FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except COMPUTATION_ERRORS as exc:
        print(f"computation refused: {exc}", file=sys.stderr)
        value = getattr(exc, "value", None)
        if value is not None:
            print(f"diagnostic: {value}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
