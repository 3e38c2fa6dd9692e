"""Command-line front door.

Subcommands wrap the library into reproducible reports: parity streams and
the even-proportion statistic, the prime sweep with bound verdicts, eta
quotient expansions, the cusp/threshold report, the decimation
nonvanishing check, the composite-modulus bound, and the legacy bound.

Exit codes: 0 success / everything verified, 2 usage errors, 3 resource
errors, 4 falsification of a checked claim.  Identical invocations print
identical bytes; sweep reports are ordered by modulus no matter how many
worker threads run.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .arith import primes_between
from .congruence import (
    legacy_bound,
    legacy_bound_exact,
    legacy_parameters,
    nonvanishing_check,
    remark_bound,
    required_stream_length,
    verify_remark2,
    verify_theorem_bound,
)
from .cusps import sturm_report
from .errors import (
    CacheFormatError,
    DomainError,
    NonUnitError,
    PParityError,
    PrecisionExhaustedError,
    ResourceLimitError,
    RingMismatchError,
    StreamTooShortError,
)
from .eta import EtaQuotient, eta_quotient_expand
from .partitions import load_cache, proportion_even, residue_stream, save_cache
from .series import GF2, INT, mod_ring

_SWEEP_COLUMNS = ["t", "delta", "m_min", "theorem_bound", "legacy_bound",
                  "verdict", "search_ceiling", "sturm_rhs", "ord2_observed", "sturm_ok"]


def _stream(n_needed: int, modulus: int, cache_path: str | None):
    """Build a residue stream, reusing or refreshing an on-disk cache."""
    if cache_path and os.path.exists(cache_path):
        cached = load_cache(cache_path)
        if cached.modulus == modulus and cached.length >= n_needed:
            return cached
    stream = residue_stream(n_needed, modulus)
    if cache_path:
        if modulus != 2 and modulus > 255:
            raise DomainError(f"cache files cannot hold residues mod {modulus} (> 255)")
        save_cache(stream, cache_path)
    return stream


def _parse_quotient(spec: str) -> dict[int, int]:
    factors: dict[int, int] = {}
    if not spec.strip():
        return factors
    for part in spec.split(","):
        piece = part.strip()
        if ":" not in piece:
            raise DomainError(f"quotient factor {piece!r} is not of the form delta:r")
        d_str, r_str = piece.split(":", 1)
        try:
            d, r = int(d_str), int(r_str)
        except ValueError:
            raise DomainError(f"quotient factor {piece!r} has non-integer parts") from None
        if d in factors:
            raise DomainError(f"duplicate eta argument {d} in quotient")
        factors[d] = r
    return factors


def _parse_prime_range(spec: str) -> tuple[int, int]:
    if ".." not in spec:
        raise DomainError(f"prime range {spec!r} is not of the form A..B")
    a_str, b_str = spec.split("..", 1)
    try:
        a, b = int(a_str), int(b_str)
    except ValueError:
        raise DomainError(f"prime range {spec!r} has non-integer endpoints") from None
    if not 5 <= a <= b:
        raise DomainError(f"prime range needs 5 <= A <= B, got {a}..{b}")
    return a, b


# -- subcommands ----------------------------------------------------------

def cmd_parity(args) -> int:
    if args.limit < 1:
        raise DomainError(f"--limit must be >= 1, got {args.limit}")
    if args.mod < 2:
        raise DomainError(f"--mod must be >= 2, got {args.mod}")
    if args.proportion and args.mod != 2:
        raise DomainError("--proportion applies to parity streams (--mod 2)")
    stream = _stream(args.limit, args.mod, args.cache)
    values = [stream[n] for n in range(args.limit)]
    if args.out == "json":
        print(json.dumps({"modulus": args.mod, "limit": args.limit, "values": values}))
    else:
        sys.stdout.write("n,residue\n")
        sys.stdout.write("\n".join(f"{n},{v}" for n, v in enumerate(values)))
        sys.stdout.write("\n")
    if args.proportion:
        print(f"proportion_even={proportion_even(args.limit, stream)}")
    return 0


def cmd_sweep(args) -> int:
    a, b = _parse_prime_range(args.primes)
    primes = primes_between(a, b)
    if not primes:
        print("[]")
        return 0
    n_needed = max(required_stream_length(ell) for ell in primes)
    stream = _stream(n_needed, 2, args.cache)

    def one(ell: int) -> dict:
        record = verify_theorem_bound(ell, stream).to_json_dict()
        record["sturm"] = sturm_report(ell, stream)
        return record

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            reports = list(pool.map(one, primes))
    else:
        reports = [one(ell) for ell in primes]
    reports.sort(key=lambda record: record["t"])
    print(json.dumps(reports, indent=2))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(_SWEEP_COLUMNS)
            for record in reports:
                flat = {**record, "sturm_rhs": record["sturm"]["sturm_rhs"],
                        "ord2_observed": record["sturm"]["ord2_observed"],
                        "sturm_ok": record["sturm"]["ok"]}
                writer.writerow([flat[col] for col in _SWEEP_COLUMNS])
    verified = all(r["verdict"] and r["sturm"]["ok"] for r in reports)
    return 0 if verified else 4


def cmd_eta(args) -> int:
    if args.prec < 1:
        raise DomainError(f"--prec must be >= 1, got {args.prec}")
    factors = _parse_quotient(args.quotient)
    if args.mod is None:
        ring = INT
    elif args.mod == 2:
        ring = GF2
    else:
        ring = mod_ring(args.mod)
    series = eta_quotient_expand(EtaQuotient(factors), ring, args.prec)
    if args.out == "json":
        print(json.dumps(series.to_json_dict()))
    else:
        print(series.to_text())
    return 0


def cmd_sturm(args) -> int:
    stream = _stream(required_stream_length(args.prime), 2, args.cache)
    report = sturm_report(args.prime, stream)
    print(json.dumps(report, indent=2))
    return 0 if report["ok"] else 4


def cmd_hecke(args) -> int:
    report = nonvanishing_check(args.prime, args.prec)
    print(json.dumps(report.to_json_dict(), indent=2))
    return 0 if report.ok else 4


def cmd_remark2(args) -> int:
    n_needed = required_stream_length(args.t, remark_bound(args.t))
    stream = _stream(n_needed, 2, args.cache)
    report = verify_remark2(args.t, stream)
    print(json.dumps(report.to_json_dict(), indent=2))
    return 0 if report.verdict else 4


def cmd_legacy(args) -> int:
    d, j = legacy_parameters(args.t, args.r)
    print(json.dumps({
        "t": args.t,
        "r": args.r,
        "d": d,
        "j": j,
        "value": str(legacy_bound(args.t, args.r)),
        "exact": str(legacy_bound_exact(args.t, args.r)),
    }, indent=2))
    return 0


# -- wiring -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pparity",
        description="Partition parity in arithmetic progressions: streams, sweeps, "
                    "eta expansions, and bound certificates.")
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker threads for the sweep (default: machine parallelism)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parity", help="emit p(n) mod m rows and the even proportion")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--mod", type=int, default=2)
    p.add_argument("--out", choices=["csv", "json"], default="csv")
    p.add_argument("--cache", default=None)
    p.add_argument("--proportion", action="store_true")
    p.set_defaults(func=cmd_parity)

    p = sub.add_parser("sweep", help="verify the odd-value bound for every prime in a range")
    p.add_argument("--primes", required=True, metavar="A..B")
    p.add_argument("--out", choices=["json"], default="json")
    p.add_argument("--csv", default=None, help="also write a CSV with the same columns")
    p.add_argument("--cache", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("eta", help="expand an eta quotient as a q-series")
    p.add_argument("--quotient", required=True, metavar="d:r,...")
    p.add_argument("--prec", type=int, default=8)
    p.add_argument("--mod", type=int, default=None)
    p.add_argument("--out", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("sturm", help="cusp table, threshold, and observed parity order")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--cache", default=None)
    p.set_defaults(func=cmd_sturm)

    p = sub.add_parser("hecke", help="nonvanishing of the decimated parity series")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--prec", type=int, default=None,
                   help="exponent window (default: derived from the bound)")
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("remark2", help="verify the composite-modulus bound")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--cache", default=None)
    p.set_defaults(func=cmd_remark2)

    p = sub.add_parser("legacy", help="evaluate the legacy bound exactly")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_legacy)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (DomainError, PrecisionExhaustedError, StreamTooShortError,
            NonUnitError, RingMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceLimitError, CacheFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PParityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())
