"""Command-line front end: ``seq``, ``check`` and ``certify``.

Exit status: 0 pass, 1 fail, 2 indeterminate, 64 usage error, 74 when the
output file cannot be written.
"""

import argparse
import json
import sys

from . import __version__
from . import instances as I
from .claims import (
    MAX_BITS,
    MIN_BITS,
    REGISTRY,
    CertifyConfig,
    ConfigError,
    claim_key,
    exit_code,
    render_report,
    run_claims,
)
from .criteria import (
    LogEnclosures,
    Verdict,
    cgw_ratio_check,
    check_log_concave_range,
    check_log_convex_range,
    combine,
    interlacing_check,
    limit_diagnostics,
    nth_root_increasing_check,
    nth_root_logconcave_check,
    nth_root_logconcave_range,
    root_ratio_power_gap,
    three_term_criterion_check,
)
from .exact import PreconditionError
from .sequences import build_table, dump_table, quotients

EX_OK, EX_FAIL, EX_INDETERMINATE, EX_USAGE, EX_IOERR = 0, 1, 2, 64, 74

CHECKERS = ("logconvex", "logconcave", "nthroot-increasing", "nthroot-logconcave",
            "three-term", "interlacing", "cgw", "limits")

# which configuration field a claim's --to flag controls
CLAIM_TO_FIELD = {
    "C1": "ratio_to", "C2": "values_to", "C3": "ratio_to", "C4": "values_to",
    "C5": "ratio_to", "C6": "ratio_to", "C7": "ratio_to", "C8": "root_to",
    "C9": "root_to", "C10": "ratio_to", "C11": None, "C12": None,
}

# default (from, to) per checker
CHECK_DEFAULTS = {
    "logconvex": (1, 100),
    "logconcave": (1, 100),
    "nthroot-increasing": (1, 100),
    "nthroot-logconcave": (2, 100),
    "three-term": (1, 200),
    "interlacing": (2, 200),
    "cgw": (3, 200),
    "limits": (1, 100),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _nonneg_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text!r} is negative")
    return value


def _bits(text):
    value = _nonneg_int(text)
    if not MIN_BITS <= value <= MAX_BITS:
        raise argparse.ArgumentTypeError(f"precision must lie in [{MIN_BITS}, {MAX_BITS}]")
    return value


def build_parser():
    parser = _Parser(prog="logcert", description="Exact values and log-behavior certification for S_n.")
    parser.add_argument("--version", action="version", version=f"logcert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("seq", help="dump exact values of S, f or u")
    p.add_argument("name", choices=("S", "f", "u"))
    p.add_argument("n_lo", type=_nonneg_int)
    p.add_argument("n_hi", type=_nonneg_int)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", help="write to this file instead of stdout")

    p = sub.add_parser("check", help="run one claim or one checker")
    p.add_argument("target", help="claim id (C1..C12) or one of: " + ", ".join(CHECKERS))
    p.add_argument("--seq", choices=("S", "f", "u"), default="S")
    p.add_argument("--from", dest="n_from", type=_nonneg_int)
    p.add_argument("--to", dest="n_to", type=_nonneg_int)
    strict = p.add_mutually_exclusive_group()
    strict.add_argument("--strict", dest="strict", action="store_true", default=True)
    strict.add_argument("--weak", dest="strict", action="store_false")
    p.add_argument("--mode", choices=("exact", "interval"))
    p.add_argument("--n", type=_nonneg_int, help="single index (n-th-root log-concavity)")
    p.add_argument("--precision", type=_bits, default=4096, help="maximum interval precision in bits")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")

    p = sub.add_parser("certify", help="run the full claim registry")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "text", "csv"), default="json")
    p.add_argument("--claims", help="comma-separated claim ids, e.g. C1,C11")
    p.add_argument("--precision", type=_bits, default=4096)
    p.add_argument("--values-to", type=_nonneg_int, default=500)
    p.add_argument("--ratio-to", type=_nonneg_int, default=300)
    p.add_argument("--root-to", type=_nonneg_int, default=300)
    p.add_argument("--root-exact-to", type=_nonneg_int, default=60)
    p.add_argument("--timings", action="store_true", help="append wall-clock timings to the report")
    return parser


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verdict_code(verdict):
    return {Verdict.PASS: EX_OK, Verdict.FAIL: EX_FAIL, Verdict.INDETERMINATE: EX_INDETERMINATE}[verdict]


# --- seq ----------------------------------------------------------------------


def cmd_seq(args):
    if args.n_hi < args.n_lo:
        raise UsageError(f"empty range {args.n_lo}..{args.n_hi}")
    table = build_table(args.name, args.n_hi, args.n_lo)
    _emit(dump_table(table, args.format), args.out)
    return EX_OK


# --- check --------------------------------------------------------------------


def render_criterion_text(rep, indent=0):
    pad = "  " * indent
    line = f"{pad}{rep.criterion}: {rep.verdict.value.upper()} on [{rep.range[0]}, {rep.range[1]}]"
    if rep.witness is not None:
        line += f" witness n = {rep.witness}"
    lines = [line]
    body = rep.to_dict()
    for key in ("lhs", "rhs", "reason"):
        if key in body:
            lines.append(f"{pad}  {key}: {body[key] if isinstance(body[key], str) else json.dumps(body[key])}")
    for key, value in body.get("info", {}).items():
        if isinstance(value, (str, int)) or key.endswith("enclosure") or key == "power_gap":
            lines.append(f"{pad}  {key}: {value if isinstance(value, str) else json.dumps(value)}")
    for d in rep.details:
        lines.extend(render_criterion_text(d, indent + 1))
    return lines


def _range(args, name):
    lo, hi = CHECK_DEFAULTS[name]
    lo = lo if args.n_from is None else args.n_from
    hi = hi if args.n_to is None else args.n_to
    if hi < lo:
        raise UsageError(f"empty range {lo}..{hi}")
    return lo, hi


def _require_S(args, name):
    if args.seq != "S":
        raise UsageError(f"{name} uses the recurrence of S; --seq {args.seq} is not supported")


def run_checker(args):
    name = args.target
    if name == "nthroot-logconcave" and args.n is not None:
        return _single_root_check(args)
    lo, hi = _range(args, name)
    if name in ("logconvex", "logconcave"):
        table = build_table(args.seq, hi + 1)
        check = check_log_convex_range if name == "logconvex" else check_log_concave_range
        return check(table, args.strict, lo, hi)
    if name == "nthroot-increasing":
        return nth_root_increasing_check(build_table(args.seq, hi + 1), lo, hi, args.strict)
    if name == "nthroot-logconcave":
        if lo < 2:
            raise UsageError("n-th-root log-concavity starts at n = 2")
        table = build_table(args.seq, hi + 1)
        exact_to = {"exact": hi, "interval": lo - 1, None: 60}[args.mode]
        return nth_root_logconcave_range(table, lo, hi, exact_to, max_bits=args.precision)
    _require_S(args, name)
    S = build_table("S", hi + 1)
    q = quotients(S)
    if name == "three-term":
        return three_term_criterion_check(I.A, I.B_REC, I.C_REC, max(lo - 1, 0), q, hi, args.strict)
    if name == "interlacing":
        return interlacing_check(q, I.H_BOUND, max(lo - 1, 1), hi, "increasing", args.strict)
    if name == "cgw":
        return cgw_ratio_check(I.U_PRINTED, I.V_NORMALIZED, I.H_BOUND, max(lo - 2, 1), q, hi)
    if name == "limits":
        if hi < 2:
            raise UsageError("limit diagnostics need --to >= 2")
        return limit_diagnostics(q, S, hi, I.H_BOUND, max_bits=args.precision, logs=LogEnclosures(S))
    raise UsageError(f"unknown checker {name!r}")


def _single_root_check(args):
    n = args.n
    if n < 2:
        raise UsageError("n-th-root log-concavity needs --n >= 2")
    table = build_table(args.seq, n + 1)
    mode = args.mode or "exact"
    rep = nth_root_logconcave_check(table, n, mode, max_bits=args.precision)
    if mode == "exact":
        # same size as the exact comparison, which already passed the digit budget
        rep.info["power_gap"] = root_ratio_power_gap(table, n)
    return rep


def run_claim_check(args):
    cid = args.target
    if cid == "C9" and args.n is not None:
        rep = _single_root_check(args)
        info = {"power_gap": rep.info["power_gap"]} if "power_gap" in rep.info else None
        return combine("C9", rep.range, [rep], info=info)
    kwargs = {"claims": (cid,), "precision": args.precision}
    field = CLAIM_TO_FIELD[cid]
    if args.n_to is not None and field is not None:
        kwargs[field] = args.n_to
        if field == "root_to":
            kwargs["root_exact_to"] = min(60, args.n_to)
    report = run_claims(CertifyConfig(**kwargs))
    return report.results[0].report


def cmd_check(args):
    if args.target in REGISTRY:
        rep = run_claim_check(args)
    elif args.target in CHECKERS:
        rep = run_checker(args)
    else:
        known = ", ".join(sorted(REGISTRY, key=claim_key)) + ", " + ", ".join(CHECKERS)
        raise UsageError(f"unknown claim or checker {args.target!r} (known: {known})")
    if args.format == "json":
        text = json.dumps(rep.to_dict(), indent=2) + "\n"
    else:
        text = "\n".join(render_criterion_text(rep)) + "\n"
    _emit(text, args.out)
    return _verdict_code(rep.verdict)


# --- certify ------------------------------------------------------------------


def cmd_certify(args):
    claims = None
    if args.claims:
        claims = tuple(c.strip() for c in args.claims.split(",") if c.strip())
    config = CertifyConfig(values_to=args.values_to, ratio_to=args.ratio_to, root_to=args.root_to,
                           root_exact_to=args.root_exact_to, precision=args.precision,
                           start_bits=min(128, args.precision), claims=claims)
    report = run_claims(config)
    _emit(render_report(report, args.format, include_timings=args.timings), args.out)
    return exit_code(report)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {"seq": cmd_seq, "check": cmd_check, "certify": cmd_certify}[args.command]
        return handler(args)
    except (UsageError, ConfigError, PreconditionError, ValueError, IndexError) as exc:
        # bad input: empty or nonpositive ranges, missing indices, unknown names
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_IOERR


if __name__ == "__main__":
    sys.exit(main())
