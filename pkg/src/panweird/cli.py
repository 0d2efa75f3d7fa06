"""Command-line front end.

Records go out as JSON lines with a fixed key order, so identical runs
produce byte-identical files; delta is a decimal string because abundances
of search results can outgrow doubles.  Progress and diagnostics go to
stderr; stdout carries records only when --out is '-'.

Exit codes: 0 success, 1 usage or bad input, 2 verification failure,
3 resource ceiling hit.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import dataclass, field

from .arith import Factorization, abundance, digits10
from .classify import NumberClass, classify
from .enumerate import pndn, sfpan
from .errors import CeilingExceeded, PanweirdError, ParseError
from .primes import PrimalityPolicy, certifiable, certified_prime
from .weird import (
    IndexSequence,
    SearchConfig,
    decode_index_sequence,
    encode_index_sequence,
    is_weird,
    pwn_search_general,
    pwn_search_squarefree,
)

_ENV_DET_LIMIT = "PANWEIRD_DET_LIMIT"
_ENV_MR_ROUNDS = "PANWEIRD_MR_ROUNDS"
_ENV_CERTIFY = "PANWEIRD_CERTIFY"


@dataclass
class RunManifest:
    """One-per-run summary written next to (or instead of) the records."""

    command: str
    config: dict
    started: str
    finished: str = ""
    runtime_seconds: float = 0.0
    totals: dict = field(default_factory=dict)
    records: str = ""

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "config": self.config,
                "started": self.started,
                "finished": self.finished,
                "runtime_seconds": self.runtime_seconds,
                "totals": self.totals,
                "records": self.records,
            },
            indent=2,
        )


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        raise SystemExit(1)


def _policy_from(args) -> PrimalityPolicy:
    det = args.det_limit
    if det is None:
        det = int(os.environ.get(_ENV_DET_LIMIT, 1 << 64))
    rounds = args.mr_rounds
    if rounds is None:
        rounds = int(os.environ.get(_ENV_MR_ROUNDS, 24))
    certify = args.certify or os.environ.get(_ENV_CERTIFY, "").lower() in ("1", "true", "yes")
    return PrimalityPolicy(det, rounds, certify)


def _now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime())


def _enum_record_line(rec) -> str:
    f = rec.factorization
    return json.dumps(
        {
            "factorization": str(f),
            "class": rec.number_class.value,
            "delta": str(rec.abundance),
            "omega": f.omega,
            "big_omega": f.big_omega,
            "digits": digits10(f.value),
        },
        separators=(",", ":"),
    )


def _pwn_record_line(rec) -> str:
    f = rec.factorization
    return json.dumps(
        {
            "factorization": str(f),
            "index_sequence": str(rec.index_sequence),
            "class": "abundant",
            "delta": str(rec.abundance),
            "omega": f.omega,
            "big_omega": f.big_omega,
            "digits": rec.digits,
            "certified": rec.certified,
        },
        separators=(",", ":"),
    )


class _Output:
    """Record writer for a path or stdout, with the manifest routed around it."""

    def __init__(self, out: str | None):
        self.path = out
        self.stream = None
        self.count = 0

    def __enter__(self):
        if self.path == "-":
            self.stream = sys.stdout
        elif self.path:
            self.stream = open(self.path, "w")
        return self

    def __exit__(self, *exc):
        if self.stream not in (None, sys.stdout):
            self.stream.close()

    def write(self, line: str) -> None:
        self.count += 1
        if self.stream:
            self.stream.write(line + "\n")

    def finish(self, manifest: RunManifest) -> None:
        manifest.records = self.path or ""
        if self.path and self.path != "-":
            with open(self.path + ".manifest.json", "w") as fh:
                fh.write(manifest.to_json() + "\n")
        elif self.path == "-":
            sys.stderr.write(manifest.to_json() + "\n")
        else:
            print(manifest.to_json())


def cmd_enumerate(args) -> int:
    policy = _policy_from(args)
    try:
        seed = Factorization.parse(args.seed, policy)
    except ParseError as exc:
        sys.stderr.write("invalid seed: %s\n" % exc)
        return 1
    manifest = RunManifest(
        command="enumerate",
        config={
            "mode": args.mode,
            "k": args.k,
            "seed": str(seed),
            "odd": args.odd,
            "include_perfect": args.include_perfect,
            "count_only": args.count_only,
            "jobs": args.jobs,
            "ceiling": args.ceiling,
        },
        started=_now(),
    )
    t0 = time.monotonic()
    with _Output(None if args.count_only else (args.out or "-")) as out:
        sink = None if args.count_only else (lambda rec: out.write(_enum_record_line(rec)))
        run = sfpan if args.mode == "sfpan" else pndn
        kwargs = dict(odd_only=args.odd, jobs=args.jobs, ceiling=args.ceiling)
        if args.mode == "pndn":
            kwargs["include_perfect"] = args.include_perfect
        outcome = run(args.k, seed, sink, **kwargs)
        manifest.finished = _now()
        manifest.runtime_seconds = round(time.monotonic() - t0, 3)
        manifest.totals = {
            "count_abundant": outcome.count_abundant,
            "count_perfect": outcome.count_perfect,
            "found": outcome.found,
            "emitted": out.count,
        }
        out.finish(manifest)
    return 0


def cmd_weird_search(args) -> int:
    policy = _policy_from(args)
    try:
        seed = Factorization.parse(args.seed, policy)
    except ParseError as exc:
        sys.stderr.write("invalid seed: %s\n" % exc)
        return 1
    config = SearchConfig(
        seed=seed,
        k=args.k,
        amplitude=args.amplitude,
        allow_square_extensions=args.squares,
        strict_sigma_bound=args.strict_sigma_bound,
        policy=policy,
    )
    manifest = RunManifest(
        command="weird search",
        config={
            "seed": str(seed),
            "k": args.k,
            "amplitude": args.amplitude,
            "squares": args.squares,
            "strict_sigma_bound": args.strict_sigma_bound,
        },
        started=_now(),
    )
    t0 = time.monotonic()
    with _Output(args.out or "-") as out:
        search = pwn_search_general if args.squares else pwn_search_squarefree
        n = search(config, lambda rec: out.write(_pwn_record_line(rec)))
        manifest.finished = _now()
        manifest.runtime_seconds = round(time.monotonic() - t0, 3)
        manifest.totals = {"emitted": n}
        out.finish(manifest)
    return 0


def cmd_weird_check(args) -> int:
    policy = _policy_from(args)
    f = Factorization.parse(args.factorization, policy)
    cls = classify(f)
    delta = abundance(f)
    weird = cls is NumberClass.ABUNDANT and is_weird(f)
    print("%s, %s, Δ=%d" % (cls.value, "weird" if weird else "not weird", delta))
    return 0


def cmd_weird_encode(args) -> int:
    policy = _policy_from(args)
    f = Factorization.parse(args.factorization, policy)
    print(encode_index_sequence(f, policy))
    return 0


def cmd_weird_decode(args) -> int:
    policy = _policy_from(args)
    seq = IndexSequence.parse(args.sequence)
    print(decode_index_sequence(seq, policy))
    return 0


def cmd_weird_certify(args) -> int:
    policy = _policy_from(args)
    checked = skipped = bad = 0
    with open(args.infile) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            f = Factorization.parse(rec["factorization"])
            for p, _ in f.factors:
                if not certifiable(p):
                    skipped += 1
                    sys.stderr.write("cannot certify %d (too large)\n" % p)
                elif certified_prime(p, policy):
                    checked += 1
                else:
                    bad += 1
                    sys.stderr.write("pseudo-prime failure: %d in %s\n" % (p, rec["factorization"]))
    print("certified %d primes, %d skipped, %d failures" % (checked, skipped, bad))
    return 2 if bad else 0


def cmd_convert(args) -> int:
    columns = [
        "factorization", "index_sequence", "class", "delta",
        "omega", "big_omega", "digits", "certified",
    ]
    with open(args.infile) as fh, open(args.out, "w", newline="") as outfh:
        writer = csv.DictWriter(outfh, fieldnames=columns, extrasaction="ignore")
        writer.writeheader()
        for line in fh:
            line = line.strip()
            if line:
                rec = json.loads(line)
                for key, value in rec.items():
                    if isinstance(value, bool):
                        rec[key] = "true" if value else "false"
                writer.writerow(rec)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="panweird", description=__doc__.splitlines()[0])
    parser.add_argument("--det-limit", type=int, default=None,
                        help="deterministic primality below this bound (default 2^64)")
    parser.add_argument("--mr-rounds", type=int, default=None,
                        help="random-base rounds above the deterministic limit")
    parser.add_argument("--certify", action="store_true",
                        help="re-check output primes deterministically where possible")
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="walk primitive non-deficient numbers")
    p_enum.add_argument("--mode", choices=("sfpan", "pndn"), required=True,
                        help="square-free walk or the general one")
    p_enum.add_argument("--k", type=int, required=True,
                        help="total prime factors: distinct (sfpan) or with multiplicity (pndn)")
    p_enum.add_argument("--seed", default="1", help="deficient seed factorization")
    p_enum.add_argument("--odd", action="store_true", help="skip 2 at the first level")
    p_enum.add_argument("--include-perfect", action="store_true",
                        help="emit perfect completions too (pndn)")
    p_enum.add_argument("--count-only", action="store_true", help="totals, no records")
    p_enum.add_argument("--jobs", type=int, default=1, help="worker processes")
    p_enum.add_argument("--out", default=None, help="record file, '-' for stdout")
    p_enum.add_argument("--ceiling", type=int, default=10**10,
                        help="largest allowed leaf sieve bound")
    p_enum.set_defaults(func=cmd_enumerate)

    p_weird = sub.add_parser("weird", help="weird-number tools")
    wsub = p_weird.add_subparsers(dest="subcommand", required=True)

    p_search = wsub.add_parser("search", help="search for primitive weird numbers")
    p_search.add_argument("--seed", default="1")
    p_search.add_argument("--k", type=int, required=True,
                          help="total factor count of results, seed included")
    p_search.add_argument("--amplitude", type=int, required=True,
                          help="how many primes around each center to try")
    p_search.add_argument("--squares", action="store_true",
                          help="allow deepening prime exponents")
    p_search.add_argument("--strict-sigma-bound", action="store_true",
                          help="tighter leaf threshold in the square-free search")
    p_search.add_argument("--out", default=None)
    p_search.set_defaults(func=cmd_weird_search)

    p_check = wsub.add_parser("check", help="classify one number and test weirdness")
    p_check.add_argument("factorization")
    p_check.set_defaults(func=cmd_weird_check)

    p_encode = wsub.add_parser("encode", help="factorization to index sequence")
    p_encode.add_argument("factorization")
    p_encode.set_defaults(func=cmd_weird_encode)

    p_decode = wsub.add_parser("decode", help="index sequence to factorization")
    p_decode.add_argument("sequence")
    p_decode.set_defaults(func=cmd_weird_decode)

    p_cert = wsub.add_parser("certify", help="re-verify primes in a record file")
    p_cert.add_argument("--in", dest="infile", required=True)
    p_cert.set_defaults(func=cmd_weird_certify)

    p_conv = sub.add_parser("convert", help="JSON-lines records to CSV")
    p_conv.add_argument("--in", dest="infile", required=True)
    p_conv.add_argument("--out", required=True)
    p_conv.set_defaults(func=cmd_convert)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CeilingExceeded as exc:
        sys.stderr.write("resource ceiling: %s\n" % exc)
        return 3
    except ParseError as exc:
        sys.stderr.write("invalid input: %s\n" % exc)
        return 1
    except PanweirdError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
