"""Command-line front door.

Subcommands: generate, equiv, complexity, verify, witness.  Results go to
stdout, diagnostics to stderr.  Exit codes: 0 success or pass, 1 a
verification failed, 2 usage error, 3 inconclusive (unconverged within the
window cap).
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys

from . import analysis
from .complexity import (
    INFINITY,
    WindowPolicy,
    profile,
    profile_to_csv,
    profile_to_json,
)
from .equivalence import k_abelian_eq
from .errors import ConvergenceError, KabelianError
from .words import expand, parse_spec, parse_word, spec_text

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _parse_k(text: str):
    if text.lower() in ("inf", "infinity"):
        return INFINITY
    try:
        k = int(text)
    except ValueError:
        raise KabelianError(f"bad k: {text!r}")
    return k


def _policy(args) -> WindowPolicy:
    return WindowPolicy(start=args.window_start, cap=args.window_cap)


def _cmd_generate(args, out):
    word = expand(parse_spec(args.word), args.length)
    if args.format == "json":
        out.write(json.dumps({"spec": args.word, "length": args.length,
                              "word": word.to_text()}) + "\n")
    elif args.format == "csv":
        out.write("i,symbol\n")
        for i, c in enumerate(word):
            out.write(f"{i},{c}\n")
    else:
        out.write(word.to_text() + "\n")
    return EXIT_PASS


def _cmd_equiv(args, out):
    u = parse_word(args.u)
    v = parse_word(args.v)
    eq = k_abelian_eq(u, v, args.k)
    if args.format == "json":
        out.write(json.dumps({"k": args.k, "u": args.u, "v": args.v,
                              "equivalent": eq}) + "\n")
    else:
        out.write(("equivalent" if eq else "not equivalent") + "\n")
    return EXIT_PASS


def _cmd_complexity(args, out):
    spec = parse_spec(args.word)
    prof = profile(spec, _parse_k(args.k), args.n_max, _policy(args))
    if args.format == "json":
        out.write(profile_to_json(prof) + "\n")
    elif args.format == "text":
        for n in range(1, prof.n_max + 1):
            flag = "" if prof.is_converged(n) else "  (unconverged)"
            out.write(f"{n}\t{prof.value(n)}{flag}\n")
    else:
        out.write(profile_to_csv(prof))
    if not prof.all_converged:
        print("warning: some entries did not converge within the window cap",
              file=sys.stderr)
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def _check_kwargs(fn, args):
    accepted = inspect.signature(fn).parameters
    out = {}
    for name in ("n_max", "m_max", "pow_m_max", "k", "i", "j_max", "horizon",
                 "sample_length", "trials", "seed", "k_max"):
        value = getattr(args, name.replace("-", "_"), None)
        if value is not None and name in accepted:
            out[name] = value
    if "policy" in accepted:
        out["policy"] = _policy(args)
    return out


def _run_check(name, args):
    fn = analysis.ALL_CHECKS[name]
    result = fn(**_check_kwargs(fn, args))
    return result if isinstance(result, list) else [result]


def _cmd_verify(args, out):
    if args.check == "all":
        names = list(analysis.ALL_CHECKS)
    elif args.check in analysis.ALL_CHECKS:
        names = [args.check]
    else:
        known = ", ".join(sorted(analysis.ALL_CHECKS) + ["all"])
        print(f"unknown check {args.check!r}; known checks: {known}",
              file=sys.stderr)
        return EXIT_USAGE
    reports = []
    for name in names:
        reports.extend(_run_check(name, args))
    if args.format == "json":
        docs = [analysis.report_to_json_dict(r) for r in reports]
        out.write(json.dumps(docs if len(docs) > 1 else docs[0]) + "\n")
    else:
        for r in reports:
            line = f"{r.status.upper():12s} {r.check}"
            if r.fitted_constants:
                fits = " ".join(f"{k}={v}" for k, v in r.fitted_constants.items())
                line += f"  [{fits}]"
            out.write(line + "\n")
            for w in r.witnesses[:args.max_witnesses]:
                out.write(f"    witness: at {w[0]} expected {w[1]}, got {w[2]}\n")
            if len(r.witnesses) > args.max_witnesses:
                out.write(f"    ... {len(r.witnesses) - args.max_witnesses} more\n")
            if r.notes:
                out.write(f"    note: {r.notes}\n")
    if any(r.status == "fail" for r in reports):
        return EXIT_FAIL
    if any(r.status == "inconclusive" for r in reports):
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def _cmd_witness(args, out):
    spec = parse_spec(args.word)
    wit = analysis.find_periodicity_witness(spec, args.k_max, args.n_max,
                                            policy=_policy(args))
    if args.format == "json":
        doc = {"spec": spec_text(spec), "k_max": args.k_max, "n_max": args.n_max}
        if wit is None:
            doc["witness"] = None
        else:
            doc["witness"] = {"k": "inf" if wit.k == INFINITY else wit.k,
                              "n": wit.n, "observed": wit.observed,
                              "threshold": wit.threshold}
        out.write(json.dumps(doc) + "\n")
    elif wit is None:
        out.write("none\n")
    else:
        k_text = "inf" if wit.k == INFINITY else wit.k
        out.write(f"k={k_text} n={wit.n} observed={wit.observed} "
                  f"threshold={wit.threshold}\n")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kabelian",
        description="k-Abelian equivalence, complexity profiles and "
                    "verification checks for classic infinite words")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_window_flags(p):
        p.add_argument("--window-start", type=int, default=4096)
        p.add_argument("--window-cap", type=int, default=1 << 20)

    p = sub.add_parser("generate", help="print a prefix of a named word")
    p.add_argument("--word", required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser("equiv", help="decide k-Abelian equivalence of two words")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=_cmd_equiv)

    p = sub.add_parser("complexity", help="per-n complexity profile of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--k", required=True, help="positive integer or 'inf'")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    add_window_flags(p)
    p.set_defaults(fn=_cmd_complexity)

    p = sub.add_parser("verify", help="run verification checks")
    p.add_argument("check", help="check name or 'all'")
    p.add_argument("--n-max", type=int)
    p.add_argument("--m-max", dest="m_max", type=int)
    p.add_argument("--pow-m-max", dest="pow_m_max", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--j-max", dest="j_max", type=int)
    p.add_argument("--horizon", type=int)
    p.add_argument("--sample-length", dest="sample_length", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-witnesses", type=int, default=5)
    add_window_flags(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("witness", help="scan for a periodicity witness")
    p.add_argument("--word", required=True)
    p.add_argument("--k-max", dest="k_max", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    add_window_flags(p)
    p.set_defaults(fn=_cmd_witness)

    return parser


def run(argv=None, out=None) -> int:
    """Parse argv, dispatch, and return the exit code."""
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args, out)
    except ConvergenceError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except KabelianError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE


def main():
    raise SystemExit(run())
