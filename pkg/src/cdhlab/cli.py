"""Command-line driver: ``cdhlab analyze|purify|period|ddl|selftest``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import acceptance
from .caps import DEFAULT_CAPS, Caps
from .errors import CdhError, HypothesisError, InputError
from .expr import CircuitSpec, Expression, SymmetricExpression, decompose_symmetric, hamming_profile, is_symmetric_expression
from .hypergraph import automorphism_report, check_dichotomy, maximal_fully_symmetric
from .jsonio import (
    detect_kind,
    dumps,
    expression_from_json,
    expression_to_json,
    graph_from_json,
    load_path,
    summary_from_json,
)
from .period import and_lower_bound, check_period_theorem, expression_period_report
from .rewrite import ddl_coefficients, purify, sddl_coefficients


def parse_fraction(text: str) -> Fraction:
    try:
        num, den = text.split("/")
        value = Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"epsilon must be given as N/D, got {text!r}") from None
    return value


def _caps(args) -> Caps:
    caps = DEFAULT_CAPS.with_(orbit=args.cap_orbit, terms=args.cap_terms, truth_table_n=args.cap_truth_table)
    if min(caps.orbit, caps.terms, caps.truth_table_n) < 1:
        raise InputError("caps must be positive")
    return caps


def _emit(obj, args):
    text = dumps(obj)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _symmetric(e, caps: Caps) -> SymmetricExpression:
    if isinstance(e, CircuitSpec):
        e = e.inner
    if isinstance(e, Expression):
        if not is_symmetric_expression(e, caps):
            raise InputError("expression is not symmetric")
        e = decompose_symmetric(e, caps)
    return e


def cmd_analyze(args) -> int:
    caps = _caps(args)
    g = graph_from_json(load_path(args.input))
    eps = parse_fraction(args.epsilon)
    if not 0 < eps < Fraction(1, 8):
        raise InputError("epsilon must lie strictly between 0 and 1/8")
    report = automorphism_report(g, caps).to_json()
    dich = check_dichotomy(g, eps, caps)
    report["dichotomy"] = dich.to_json()
    report["branch"] = 1 if dich.branch1 else (2 if dich.branch2 else None)
    report["n"] = g.n
    _emit(report, args)
    return 0


def cmd_purify(args) -> int:
    caps = _caps(args)
    doc = load_path(args.input)
    e = expression_from_json(doc, caps)
    outer = e.accept if isinstance(e, CircuitSpec) else None
    sym = _symmetric(e, caps)
    for (g, _r) in sym.sterms:
        if maximal_fully_symmetric(g) is None:
            raise HypothesisError(
                f"term graph {g!r} has no fully symmetric set with more than n/2 vertices"
            )
    out = purify(sym, caps=caps, verify=args.verify)
    result = CircuitSpec(out, outer) if outer is not None else out
    _emit(expression_to_json(result), args)
    return 0


def cmd_period(args) -> int:
    caps = _caps(args)
    doc = load_path(args.input)
    kind = detect_kind(doc)
    if kind == "summary":
        summary, q = summary_from_json(doc)
        if args.r is None:
            raise InputError("--r is required with a summary input")
        report = check_period_theorem(summary, args.r, q, args.d, caps).to_json()
        report["source"] = "summary"
        _emit(report, args)
        return 0
    if kind != "expression":
        raise InputError("period expects an expression or a summary")
    e = expression_from_json(doc, caps)
    outer = e.accept if isinstance(e, CircuitSpec) else None
    sym = _symmetric(e, caps)
    try:
        purified = purify(sym, caps=caps, verify=args.verify)
        report = expression_period_report(purified, caps).to_json()
        report["source"] = "purified expression"
    except HypothesisError as exc:
        # no large fully symmetric set: profile only, no predicted period
        prof = hamming_profile(sym, caps)
        report = {"profile": list(prof.values), "minimal_period": prof.min_period,
                  "predicted_period": None, "checks": {}, "note": str(exc)}
    if outer is not None:
        circuit = CircuitSpec(sym, outer)
        prof = hamming_profile(circuit, caps)
        report["outer_profile"] = list(prof.values)
        report["outer_minimal_period"] = prof.min_period
        inner_period = report["minimal_period"]
        report["checks"]["inner_period_survives_outer_gate"] = all(
            prof.values[m] == prof.values[m + inner_period] for m in range(sym.n + 1 - inner_period)
        )
        if prof.min_period == sym.n + 1:
            p, q = int(sym.p), int(sym.q)
            note = f"no period below n+1 = {sym.n + 1}: the AND-type size lower bound applies"
            try:
                d = max(max((g.d for g, _ in sym.sterms), default=1), 1)
                note += f" (exponent {and_lower_bound(sym.n, d, p, q).to_json()['exponent']})"
            except HypothesisError:
                note += " once n >= max(13, 4p^2q^2)"
            report["note"] = note
    report["n"] = sym.n
    _emit(report, args)
    return 0


def cmd_ddl(args) -> int:
    p, q = args.p, args.q
    if p is None or q is None:
        raise InputError("ddl needs --p and --q")
    gammas = [args.gamma] if args.gamma is not None else list(range(p))
    ts = [args.t] if args.t is not None else list(range(p))
    tables = []
    for gamma in gammas:
        for t in ts:
            table = ddl_coefficients(p, q, gamma, t)
            tables.append({
                "gamma": table.gamma,
                "t": table.t,
                "beta": [{"j": list(k[:3]), "r": k[3], "coeff": v} for k, v in sorted(table.beta.items())],
                "verified": table.verify(),
            })
    out = {"p": p, "q": q, "ddl": tables}
    if args.d is not None:
        s = sddl_coefficients(p, q, args.d)
        out["sddl"] = {"d": args.d, "beta_gamma1": [list(row) for row in s.beta1], "verified": s.verify()}
    _emit(out, args)
    ok = all(t["verified"] for t in tables) and out.get("sddl", {"verified": True})["verified"]
    return 0 if ok else 1


def cmd_selftest(args) -> int:
    numbers = None
    if args.criteria:
        try:
            numbers = sorted({int(x) for x in args.criteria.split(",")})
        except ValueError:
            raise InputError(f"--criteria expects numbers like 1,6,7, got {args.criteria!r}") from None
        if any(not 1 <= k <= len(acceptance.CRITERIA) for k in numbers):
            raise InputError(f"criteria are numbered 1..{len(acceptance.CRITERIA)}")
    results = acceptance.run_all(args.seed, numbers)
    report = {
        "seed": args.seed,
        "criteria": [r.to_json() for r in results],
        "passed": all(r.passed for r in results),
    }
    _emit(report, args)
    for r in results:
        print(r.line(), file=sys.stderr)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdhlab", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
    common.add_argument("--cap-orbit", type=int, help=f"orbit size cap (default {DEFAULT_CAPS.orbit})")
    common.add_argument("--cap-terms", type=int, help=f"term count cap (default {DEFAULT_CAPS.terms})")
    common.add_argument("--cap-truth-table", type=int, help=f"largest n for truth tables (default {DEFAULT_CAPS.truth_table_n})")
    common.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="automorphisms, fully symmetric sets, dichotomy")
    a.add_argument("input")
    a.add_argument("--epsilon", default="1/10", help="rational N/D in (0, 1/8)")
    a.set_defaults(func=cmd_analyze)

    pu = sub.add_parser("purify", parents=[common], help="rewrite into symmetry-purified closures")
    pu.add_argument("input")
    pu.add_argument("--verify", action="store_true", help="truth-table check after every rewrite step")
    pu.set_defaults(func=cmd_purify)

    pe = sub.add_parser("period", parents=[common], help="Hamming profile and predicted period")
    pe.add_argument("input")
    pe.add_argument("--r", type=int, help="accepting value (summary input)")
    pe.add_argument("--d", type=int, help="degree bound (summary input; default len(t))")
    pe.add_argument("--verify", action="store_true")
    pe.set_defaults(func=cmd_period)

    dd = sub.add_parser("ddl", parents=[common], help="DDL / SDDL coefficient tables")
    dd.add_argument("--p", type=int)
    dd.add_argument("--q", type=int)
    dd.add_argument("--gamma", type=int)
    dd.add_argument("--t", type=int)
    dd.add_argument("--d", type=int, help="also print the SDDL table for this degree")
    dd.set_defaults(func=cmd_ddl)

    st = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    st.add_argument("--criteria", help="comma-separated subset of criterion numbers (default: all)")
    st.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CdhError as exc:
        print(f"cdhlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except RecursionError:
        print("cdhlab: CapExceeded: recursion limit", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
