"""``verify``: run claim sweeps and write one record per (claim, parameter).

Exit status is 0 when no report failed, 1 when any did, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import dataclass

from .exactnum import primes_between
from .verdict import (
    CLAIM_IDS,
    FAIL,
    IDENTITY_CLAIMS,
    LEMMA21_CLAIMS,
    NA,
    PASS,
    SELFTEST,
    AuxSampler,
    CheckReport,
    summarize,
    sweep,
)

FIELDS = ("claim", "parameter", "status", "lhs", "rhs", "elapsed_ms")
FORMATS = ("json-lines", "csv")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    claims: list[str]
    p_min: int = 5
    p_max: int = 1000
    n_max: int = 600
    seed: int = 0
    workers: int = 1
    output_format: str = "json-lines"
    output_path: str = "-"

    def validate(self) -> None:
        if not self.claims:
            raise UsageError("no claims selected")
        unknown = [c for c in self.claims if c not in CLAIM_IDS and c != SELFTEST]
        if unknown:
            raise UsageError(f"unknown claim(s): {', '.join(unknown)}")
        if self.p_min < 5:
            raise UsageError(f"--pmin must be at least 5, got {self.p_min}")
        if self.workers < 1:
            raise UsageError(f"--workers must be positive, got {self.workers}")
        if self.n_max < 0:
            raise UsageError(f"--nmax must be nonnegative, got {self.n_max}")
        if self.output_format not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")
        needs_primes = any(c not in IDENTITY_CLAIMS and c not in LEMMA21_CLAIMS for c in self.claims)
        if needs_primes and not primes_between(self.p_min, self.p_max):
            raise UsageError(f"no primes > 3 in [{self.p_min}, {self.p_max}]")


def _default_workers() -> int:
    env = os.environ.get("VERIFY_WORKERS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"VERIFY_WORKERS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="verify", description=__doc__.splitlines()[0])
    ap.add_argument("--claims", default="all",
                    help="comma-separated claim ids, or 'all' (default). Known: " + ",".join(CLAIM_IDS))
    ap.add_argument("--pmin", type=int, default=5)
    ap.add_argument("--pmax", type=int, default=1000)
    ap.add_argument("--nmax", type=int, default=600)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=None,
                    help="worker processes (default: $VERIFY_WORKERS, else CPU count)")
    ap.add_argument("--format", choices=FORMATS, default="json-lines")
    ap.add_argument("--out", default="-", help="output file, '-' for stdout")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def parse_config(argv: list[str]) -> RunConfig:
    args = build_parser().parse_args(argv)
    claims = list(CLAIM_IDS) if args.claims.strip() == "all" else [c.strip() for c in args.claims.split(",") if c.strip()]
    config = RunConfig(
        claims=claims,
        p_min=args.pmin,
        p_max=args.pmax,
        n_max=args.nmax,
        seed=args.seed,
        workers=args.workers if args.workers is not None else _default_workers(),
        output_format=args.format,
        output_path=args.out,
    )
    config.validate()
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(levelname)s %(name)s: %(message)s")
    return config


def write_reports(reports: list[CheckReport], fmt: str, stream) -> None:
    if fmt == "csv":
        writer = csv.DictWriter(stream, fieldnames=FIELDS, lineterminator="\n")
        writer.writeheader()
        for r in reports:
            writer.writerow(r.to_record())
    else:
        for r in reports:
            stream.write(json.dumps(r.to_record()) + "\n")


def summary_line(reports: list[CheckReport]) -> str:
    parts = [
        f"{claim}: {c[PASS]} pass, {c[FAIL]} fail, {c[NA]} n/a"
        for claim, c in summarize(reports).items()
    ]
    return "; ".join(parts) if parts else "no reports"


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_config(argv)
    except SystemExit as exc:  # argparse already printed usage
        return 0 if exc.code == 0 else 2
    except UsageError as exc:
        build_parser().print_usage(sys.stderr)
        print(f"verify: error: {exc}", file=sys.stderr)
        return 2

    reports = sweep(
        config.claims,
        (config.p_min, config.p_max),
        config.n_max,
        AuxSampler(config.seed),
        config.workers,
    )
    if config.output_path == "-":
        write_reports(reports, config.output_format, sys.stdout)
        sys.stdout.flush()
    else:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            write_reports(reports, config.output_format, fh)
    print(summary_line(reports), file=sys.stderr)
    return 1 if any(r.status == FAIL for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
