"""Command-line front end.

Exit codes: 0 affirmative result, 1 negative mathematical result
(non-strict, mismatch, failed certificate or growth check), 2 usage or
regime error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import __version__
from .certify import (
    Certificate,
    Mode,
    certify,
    default_jobs,
    scan_exceptions,
    verify_certificate,
    verify_growth,
)
from .koh import koh_sum, koh_terms
from .qbinomial import qbinom
from .unimodality import difference_profile, is_strictly_unimodal_qbinom

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["plain", "json", "csv"], default=None,
                   help="output format (default: plain on a terminal, json otherwise)")
    p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    p.add_argument("--jobs", type=_positive, default=None, help="worker count (default: all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qunimodal",
        description="Gaussian binomial coefficients, KOH terms and strict-unimodality certificates.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="coefficients of qbinom(a, b)")
    p.add_argument("a", type=_nonneg)
    p.add_argument("b", type=_nonneg)
    _common(p)

    p = sub.add_parser("koh", help="KOH decomposition of qbinom(a, b)")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--verify", action="store_true", help="check the sum of terms against qbinom")
    p.add_argument("--list-terms", action="store_true", help="emit the term table")
    _common(p)

    p = sub.add_parser("strict", help="strict unimodality verdict")
    p.add_argument("a", type=_positive)
    p.add_argument("b", type=_positive)
    _common(p)

    p = sub.add_parser("scan", help="classify all pairs 2 <= b <= a in a range")
    p.add_argument("--max-a", type=int, required=True)
    p.add_argument("--max-b", type=int, required=True)
    _common(p)

    p = sub.add_parser("certify", help="generate and verify a certificate")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.BOTH.value)
    _common(p)

    p = sub.add_parser("growth", help="check the consecutive-coefficient gap bound")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", type=int, default=None, help="default: the threshold a0")
    _common(p)

    p = sub.add_parser("diff", help="consecutive differences up to the middle degree")
    p.add_argument("a", type=_nonneg)
    p.add_argument("b", type=_nonneg)
    _common(p)
    return parser


def _dump(obj, out) -> None:
    json.dump(obj, out, separators=(",", ":"))
    out.write("\n")


def cmd_compute(args, fmt, out) -> int:
    coeffs = qbinom(args.a, args.b).coeffs
    if fmt == "json":
        out.write(f'{{"a":{args.a},"b":{args.b},"coeffs":[')
        for i, c in enumerate(coeffs):
            out.write(f'{"," if i else ""}"{c}"')
        out.write("]}\n")
    elif fmt == "csv":
        out.write("degree,coeff\n")
        for i, c in enumerate(coeffs):
            out.write(f"{i},{c}\n")
    else:
        for i, c in enumerate(coeffs):
            out.write(f"{' ' if i else ''}{c}")
        out.write("\n")
    return EXIT_OK


def cmd_koh(args, fmt, out) -> int:
    a, b = args.a, args.b
    if not a >= b >= 2:
        raise UsageError(f"koh needs a >= b >= 2, got a={a}, b={b}")
    verify = args.verify or not args.list_terms
    status = EXIT_OK
    doc = {"a": a, "b": b}
    if args.list_terms:
        terms = koh_terms(a, b)
        if fmt == "json":
            doc["terms"] = [t.to_json() for t in terms]
        elif fmt == "csv":
            out.write("lambda,shift,factors\n")
            for t in terms:
                fs = " ".join(f"{top}:{bot}" for top, bot in t.factors)
                out.write(f"{' '.join(map(str, t.lam.parts))},{t.shift},{fs}\n")
        else:
            for t in terms:
                fs = " ".join(f"[{top} {bot}]" for top, bot in t.factors)
                out.write(f"{t.lam} q^{t.shift} {fs}\n")
    if verify:
        ok = koh_sum(a, b, jobs=args.jobs or 1) == qbinom(a, b)
        status = EXIT_OK if ok else EXIT_NEGATIVE
        if fmt == "json":
            doc["verified"] = ok
        elif fmt == "csv" and not args.list_terms:
            out.write(f"a,b,verified\n{a},{b},{str(ok).lower()}\n")
        else:
            out.write("OK\n" if ok else "MISMATCH\n")
    if fmt == "json":
        _dump(doc, out)
    return status


def cmd_strict(args, fmt, out) -> int:
    report = is_strictly_unimodal_qbinom(args.a, args.b)
    if fmt == "json":
        _dump(report.to_json(), out)
    elif fmt == "csv":
        out.write("a,b,verdict,witness\n")
        out.write(f"{report.a},{report.b},{report.verdict},{'' if report.witness is None else report.witness}\n")
    else:
        extra = "" if report.strict else f" (c_{report.witness - 1} >= c_{report.witness})"
        out.write(f"({report.a},{report.b}) {report.verdict}{extra}\n")
    return EXIT_OK if report.strict else EXIT_NEGATIVE


def cmd_scan(args, fmt, out) -> int:
    if not args.max_a >= args.max_b >= 2:
        raise UsageError("scan needs --max-a >= --max-b >= 2")
    jobs = args.jobs or default_jobs()
    reports = scan_exceptions(args.max_a, args.max_b, jobs=jobs)
    if fmt == "json":
        _dump([r.to_json() for r in reports], out)
    elif fmt == "csv":
        out.write("a,b,verdict,witness\n")
        for r in reports:
            out.write(f"{r.a},{r.b},{r.verdict},{'' if r.witness is None else r.witness}\n")
    else:
        for r in reports:
            tail = "" if r.strict else f" witness={r.witness}"
            out.write(f"({r.a},{r.b}) {r.verdict}{tail}\n")
    return EXIT_OK


def cmd_certify(args, fmt, out) -> int:
    a, b = args.a, args.b
    if not a >= b >= 2:
        raise UsageError(f"certify needs a >= b >= 2, got a={a}, b={b}")
    cert = certify(a, b)
    if not isinstance(cert, Certificate):
        if fmt == "json":
            _dump(cert.to_json(), out)
        elif fmt == "csv":
            out.write(f"a,b,status,witness\n{a},{b},failure,{cert.witness}\n")
        else:
            out.write(f"({a},{b}) not certified: {cert.reason}, witness degree {cert.witness}\n")
        return EXIT_NEGATIVE
    result = verify_certificate(cert, args.mode)
    if fmt == "json":
        _dump({"certificate": cert.to_json(), "verification": result.to_json()}, out)
    elif fmt == "csv":
        out.write("a,b,node,status\n")
        for ca, cb, kind in cert.chain():
            out.write(f"{ca},{cb},{kind},{'verified' if result.ok else 'failed'}\n")
    else:
        for ca, cb, kind in cert.chain():
            out.write(f"({ca},{cb}) {kind}\n")
        out.write(f"{args.mode}: {'verified' if result.ok else 'FAILED'}\n")
        for node, cond in result.failures:
            out.write(f"  {node}: {cond}\n")
    return EXIT_OK if result.ok else EXIT_NEGATIVE


def cmd_growth(args, fmt, out) -> int:
    report = verify_growth(args.d, args.a)
    if fmt == "json":
        _dump(report.to_json(), out)
    elif fmt == "csv":
        out.write("d,b,a0,L,a,verified,failures\n")
        fails = " ".join(map(str, report.failures))
        out.write(f"{report.d},{report.b},{report.a0},{report.L},{report.a},"
                  f"{str(report.verified).lower()},{fails}\n")
    else:
        out.write(f"d={report.d} b={report.b} a0={report.a0} L={report.L} a={report.a}: "
                  f"{'verified' if report.verified else 'FAILED'}\n")
        if report.failures:
            out.write("failing degrees: " + " ".join(map(str, report.failures)) + "\n")
    return EXIT_OK if report.verified else EXIT_NEGATIVE


def cmd_diff(args, fmt, out) -> int:
    prof = difference_profile(qbinom(args.a, args.b))
    if fmt == "json":
        _dump({"a": args.a, "b": args.b, **prof.to_json()}, out)
    elif fmt == "csv":
        out.write("degree,diff\n")
        for i, d in enumerate(prof.diffs, start=1):
            out.write(f"{i},{d}\n")
    else:
        out.write(" ".join(map(str, prof.diffs)) + "\n")
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "koh": cmd_koh,
    "strict": cmd_strict,
    "scan": cmd_scan,
    "certify": cmd_certify,
    "growth": cmd_growth,
    "diff": cmd_diff,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        tty = args.out is None and sys.stdout.isatty()
        args.format = "plain" if tty else "json"
    try:
        with contextlib.ExitStack() as stack:
            out = (stack.enter_context(open(args.out, "w", encoding="utf-8"))
                   if args.out else sys.stdout)
            return COMMANDS[args.command](args, args.format, out)
    except (UsageError, ValueError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
