"""Command-line front end: evaluate, expand, certify, audit.

Exit codes: 0 on success or a certified result, 2 when a certification
is not separated or inconclusive (or an audit/sweep reports findings),
1 on parse or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bisequence import lambda_at, limsup_lambda, sup_lambda
from .cfrac import EPCF, PeriodNotFoundError, expand
from .certify import (
    Constraints,
    NotSeparatedError,
    Pattern,
    audit_not_attained,
    certify_forbidden,
    gap_constraints,
    pattern_necessity,
)
from .constructions import alpha0_prefix, build_a0, gap_left_endpoint
from .parsing import (
    ExprSyntaxError,
    evaluate,
    parse_biseq,
    parse_expression,
    parse_word,
)
from .quadfield import MixedRadicandError, QuadSum


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _sum_terms(v: QuadSum) -> list[dict]:
    return [
        {"a": t.a, "b": t.b, "c": t.c, "d": t.d} for t in v.terms()
    ]


def _emit_value(v: QuadSum, digits: int, structured: bool, label: str = "value"):
    if structured:
        print(json.dumps({label: str(v), "terms": _sum_terms(v), "decimal": v.approx(digits)}))
    else:
        print(f"{v} ≈ {v.approx(digits)}")


def _parse_threshold(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError as e:
        raise CliError(f"threshold must be rational: {e}")


def _parse_forbidden(text: str | None) -> frozenset[tuple[int, ...]]:
    if not text:
        return frozenset()
    return frozenset(parse_word(part) for part in text.split(";") if part.strip())


def _cf_to_text(cf) -> str:
    return str(cf)


def _cmd_eval(args) -> int:
    v = evaluate(parse_expression(args.expr))
    _emit_value(v, args.digits, args.structured)
    return 0


def _cmd_expand(args) -> int:
    v = evaluate(parse_expression(args.value))
    try:
        q = v.to_quadext()
    except MixedRadicandError:
        raise CliError("value spans two radicands; expansion needs one field")
    cf = expand(q, max_terms=args.max_terms)
    if args.structured:
        rec = {"input": str(q), "expansion": str(cf)}
        if isinstance(cf, EPCF):
            rec["preperiod"] = list(cf.preperiod)
            rec["period"] = list(cf.period)
        print(json.dumps(rec))
    else:
        print(cf)
    return 0


def _cmd_lambda(args) -> int:
    seq = parse_biseq(args.biseq)
    lv = lambda_at(seq, args.index)
    if args.structured:
        print(
            json.dumps(
                {
                    "index": lv.index,
                    "value": str(lv.value),
                    "terms": _sum_terms(lv.value),
                    "decimal": lv.value.approx(args.digits),
                    "left_tail": str(lv.left_tail),
                    "right_tail": str(lv.right_tail),
                }
            )
        )
    else:
        print(f"{lv.value} ≈ {lv.value.approx(args.digits)}")
    return 0


def _cmd_sup(args) -> int:
    seq = parse_biseq(args.biseq)
    cert = sup_lambda(seq, max_window_periods=args.max_window)
    rec = {
        "sup": str(cert.sup),
        "decimal": cert.sup.approx(args.digits),
        "attained": cert.attained,
        "attaining_indices": list(cert.attaining_indices),
        "window": list(cert.window),
        "margin": str(cert.margin),
        "status": cert.status,
    }
    if args.structured:
        print(json.dumps(rec))
    else:
        print(f"sup = {cert.sup} ≈ {cert.sup.approx(args.digits)}")
        print(f"attained: {cert.attained} at {list(cert.attaining_indices)}")
        print(f"window: {list(cert.window)}  margin: {cert.margin}")
        print(f"status: {cert.status}")
    return 0 if cert.status == "certified" else 2


def _cmd_limsup(args) -> int:
    seq = parse_biseq(args.biseq)
    v = limsup_lambda(seq)
    _emit_value(v, args.digits, args.structured, label="limsup")
    return 0


def _bound_report(cert, digits: int) -> dict:
    return {
        "pattern": list(cert.pattern.word),
        "site": cert.pattern.site,
        "alphabet_max": cert.constraints.alphabet_max,
        "forbidden": [list(f) for f in cert.constraints.sorted_forbidden()],
        "depth": cert.depth,
        "lower": f"{cert.lower.numerator}/{cert.lower.denominator}",
        "upper": f"{cert.upper.numerator}/{cert.upper.denominator}",
        "lower_decimal": QuadSum(cert.lower).approx(digits),
        "upper_decimal": QuadSum(cert.upper).approx(digits),
        "kind": cert.kind,
    }


def _cmd_certify_pattern(args) -> int:
    word = parse_word(args.pattern)
    pattern = Pattern(word, args.site)
    threshold = evaluate(parse_expression(args.threshold))
    constraints = Constraints(args.alphabet_max, _parse_forbidden(args.forbid))
    try:
        cert = certify_forbidden(pattern, threshold, constraints, args.depth)
    except NotSeparatedError as e:
        rec = _bound_report(e.certificate, args.digits)
        rec["certified"] = False
        if args.structured:
            print(json.dumps(rec))
        else:
            print(f"not separated: bounds [{rec['lower_decimal']}, {rec['upper_decimal']}]"
                  f" straddle {threshold} ≈ {threshold.approx(args.digits)}")
        return 2
    rec = _bound_report(cert, args.digits)
    rec["certified"] = True
    if args.structured:
        print(json.dumps(rec))
    else:
        print(
            f"certified: lambda at site {pattern.site} of {list(word)} "
            f">= {rec['lower_decimal']} > threshold {threshold.approx(args.digits)}"
        )
    return 0


def _cmd_necessity(args) -> int:
    constraints = Constraints(
        args.alphabet_max,
        _parse_forbidden(args.forbid) if args.forbid is not None else gap_constraints().forbidden,
    )
    report = pattern_necessity(
        _parse_threshold(args.threshold),
        constraints,
        window_len=args.window,
        depth=args.depth,
    )
    rec = {
        "threshold": str(report.threshold),
        "window_len": report.window_len,
        "depth": report.depth,
        "windows_total": report.windows_total,
        "passed_by_bound": report.passed_by_bound,
        "passed_by_pattern": report.passed_by_pattern,
        "exceptions": [list(w) for w in report.exceptions],
        "holds": report.holds,
    }
    if args.structured:
        print(json.dumps(rec))
    else:
        print(
            f"windows: {report.windows_total}  below threshold: {report.passed_by_bound}"
            f"  center-pattern: {report.passed_by_pattern}  exceptions: {len(report.exceptions)}"
        )
        for w in report.exceptions:
            print("  exception:", ",".join(map(str, w)))
    return 0 if report.holds else 2


def _cmd_audit_alpha0(args) -> int:
    prefix = alpha0_prefix(args.blocks)
    guard = args.guard if args.guard is not None else 2 * args.blocks + 3
    report = audit_not_attained(prefix, gap_left_endpoint(), start=args.start, guard=guard)
    rec = {
        "blocks": args.blocks,
        "word_length": len(prefix.word) - 1,
        "start": report.start,
        "stop": report.stop,
        "guard": report.guard,
        "flagged": list(report.flagged),
        "clean": report.clean,
        "note": "truncated verification on a finite prefix",
    }
    if args.structured:
        print(json.dumps(rec))
    else:
        print(
            f"audited positions {report.start}..{report.stop} of the {args.blocks}-block word"
            f" (guard {report.guard}); flagged: {list(report.flagged)}"
        )
        print("clean" if report.clean else "NOT clean", "- truncated verification on a finite prefix")
    return 0 if report.clean else 2


def _cmd_surgery(args) -> int:
    from .constructions import surgery

    word = parse_word(args.word)
    result = surgery(word, args.n1, args.n2)
    rec = {
        "c1": list(result.c1),
        "c2": list(result.c2),
        "chosen": result.chosen,
        "witness_index": result.witness_index,
    }
    if args.structured:
        print(json.dumps(rec))
    else:
        print("c1:", ",".join(map(str, result.c1)))
        print("c2:", ",".join(map(str, result.c2)))
        print(f"chosen: {result.chosen}  witness_index: {result.witness_index}")
    return 0


def _cmd_construct(args) -> int:
    if args.object == "a0":
        print(build_a0())
        return 0
    prefix = alpha0_prefix(args.blocks)
    print(prefix)
    return 0


def _build_parser() -> _Parser:
    p = _Parser(prog="lagspec", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(fn=fn)
        sp.add_argument("--structured", action="store_true", help="machine-readable output")
        return sp

    sp = add("eval", _cmd_eval, help="evaluate an expression exactly")
    sp.add_argument("expr")
    sp.add_argument("--digits", type=int, default=7)

    sp = add("expand", _cmd_expand, help="continued fraction expansion with period detection")
    sp.add_argument("value")
    sp.add_argument("--max-terms", type=int, default=512)

    sp = add("lambda", _cmd_lambda, help="two-sided value of a sequence at an index")
    sp.add_argument("biseq")
    sp.add_argument("--index", type=int, required=True)
    sp.add_argument("--digits", type=int, default=7)

    sp = add("sup", _cmd_sup, help="certified sup of the two-sided values")
    sp.add_argument("biseq")
    sp.add_argument("--max-window", type=int, default=12)
    sp.add_argument("--digits", type=int, default=7)

    sp = add("limsup", _cmd_limsup, help="exact limsup of the two-sided values")
    sp.add_argument("biseq")
    sp.add_argument("--digits", type=int, default=7)

    sp = add("certify-pattern", _cmd_certify_pattern, help="forbidden-pattern certificate")
    sp.add_argument("pattern", help='comma list, e.g. "3,1"')
    sp.add_argument("--site", type=int, default=0)
    sp.add_argument("--threshold", required=True, help="expression, e.g. the gap endpoint")
    sp.add_argument("--alphabet-max", type=int, default=3)
    sp.add_argument("--forbid", help='semicolon-separated patterns, e.g. "1,3;3,1"')
    sp.add_argument("--depth", type=int, default=25)
    sp.add_argument("--digits", type=int, default=7)

    sp = add("necessity", _cmd_necessity, help="window sweep for the center-pattern claim")
    sp.add_argument("--threshold", required=True, help='rational, e.g. "3691/1000"')
    sp.add_argument("--window", type=int, default=15)
    sp.add_argument("--depth", type=int, default=25)
    sp.add_argument("--alphabet-max", type=int, default=3)
    sp.add_argument("--forbid", help="override the default forbidden list")

    sp = add("audit-alpha0", _cmd_audit_alpha0, help="non-attainability audit of the block word")
    sp.add_argument("--blocks", type=int, default=8)
    sp.add_argument("--start", type=int, default=12)
    sp.add_argument("--guard", type=int, default=None)

    sp = add("surgery", _cmd_surgery, help="delete/duplicate a repeated segment")
    sp.add_argument("word", help='comma list, e.g. "2,1,2,1,3"')
    sp.add_argument("--n1", type=int, required=True)
    sp.add_argument("--n2", type=int, required=True)

    sp = add("construct", _cmd_construct, help="print a reference object")
    sp.add_argument("object", choices=["a0", "alpha0"])
    sp.add_argument("--blocks", type=int, default=8)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ExprSyntaxError as e:
        print(f"syntax error: {e}", file=sys.stderr)
        return 1
    except (ValueError, MixedRadicandError, ZeroDivisionError, PeriodNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except NotSeparatedError as e:
        print(f"not separated: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
