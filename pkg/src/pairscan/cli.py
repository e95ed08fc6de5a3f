"""Command-line front end.

Subcommands: primes, lambda, singular-series, psi, eh, geh2, scan, check.
Every command emits one OutputRecord as CSV (default) or JSON, to stdout
or --out PATH. A plain key=value file passed with --config supplies
defaults; explicit flags override it.

Exit codes: 0 success, 2 usage error, 3 resource guard, 4 check failure.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

import numpy as np

from . import correlations, distribution, multiplicative, sieve
from .errors import ResourceLimitError
from .records import OutputRecord

def _flag_bool(text: str) -> bool:
    return text.strip().lower() in ("1", "true", "yes")


CONVERTERS = {
    "output": str,
    "out": str,
    "threads": int,
    "segment_size": int,
    "truncation": int,
    "limit": int,
    "lo": int,
    "hi": int,
    "h": int,
    "x": int,
    "theta": float,
    "mode": str,
    "x_start": int,
    "x_ratio": float,
    "x_count": int,
    "A": str,
    "sup_variant": _flag_bool,
    "quick": _flag_bool,
}

HARD_DEFAULTS = {
    "output": "csv",
    "threads": None,  # filled with cpu count at dispatch
    "segment_size": sieve.DEFAULT_SEGMENT_SIZE,
    "truncation": multiplicative.DEFAULT_TRUNCATION_PRIME,
    "A": "1",
    "mode": "both",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--config", default=None, help="key=value defaults file")
    common.add_argument("--segment-size", dest="segment_size", type=int, default=None)
    common.add_argument("--truncation", type=int, default=None,
                        help="singular-series truncation prime")

    parser = argparse.ArgumentParser(
        prog="pairscan",
        description="Prime pair correlations and averaged progression error sums",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("primes", parents=[common], help="list primes up to a limit")
    p.add_argument("--limit", type=int, default=None)

    p = sub.add_parser("lambda", parents=[common], help="von Mangoldt table over a range")
    p.add_argument("--lo", type=int, default=None)
    p.add_argument("--hi", type=int, default=None)

    p = sub.add_parser("singular-series", parents=[common],
                       help="truncated pair singular series with tail bound")
    p.add_argument("--h", type=int, default=None)

    p = sub.add_parser("psi", parents=[common], help="shifted correlation sum")
    p.add_argument("--x", type=int, default=None)
    p.add_argument("--h", type=int, default=None)

    p = sub.add_parser("eh", parents=[common],
                       help="averaged sup error for primes in progressions")
    p.add_argument("--x", type=int, default=None)
    p.add_argument("--theta", type=float, default=None)

    p = sub.add_parser("geh2", parents=[common],
                       help="averaged max residue error for pair correlations")
    p.add_argument("--x", type=int, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--sup-variant", dest="sup_variant", action="store_true",
                   default=False, help="maximize |E2| over y <= x instead of y = x")

    p = sub.add_parser("scan", parents=[common], help="error-sum scan over an x grid")
    p.add_argument("--mode", choices=("eh", "geh2", "both"), default=None)
    p.add_argument("--x-start", dest="x_start", type=int, default=None)
    p.add_argument("--x-ratio", dest="x_ratio", type=float, default=None)
    p.add_argument("--x-count", dest="x_count", type=int, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--A", dest="A", default=None, help="comma list of exponents")

    p = sub.add_parser("check", parents=[common], help="run the identity suites")
    p.add_argument("--quick", action="store_true", default=False)

    return parser


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, val = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in CONVERTERS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = val.strip()
    return values


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset flags from the config file, then from hard defaults."""
    cfg = _load_config(args.config) if args.config else {}
    for key, raw in cfg.items():
        if not hasattr(args, key):
            continue
        cur = getattr(args, key)
        if cur is None or (isinstance(cur, bool) and cur is False):
            setattr(args, key, CONVERTERS[key](raw))
    for key, default in HARD_DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, default)
    if getattr(args, "threads", None) is None:
        args.threads = distribution.default_threads()
    return args


def _require(args: argparse.Namespace, *names: str):
    for name in names:
        if getattr(args, name) is None:
            raise ValueError(f"missing required flag --{name.replace('_', '-')}")


def _emit(record: OutputRecord, args: argparse.Namespace):
    text = record.render(args.output)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_primes(args) -> OutputRecord:
    _require(args, "limit")
    t0 = time.perf_counter()
    primes = sieve.enumerate_primes(args.limit)
    return OutputRecord(
        command="primes",
        columns=("p",),
        rows=[(int(p),) for p in primes],
        parameters={"limit": args.limit},
        provenance={
            "sieve_limit": args.limit,
            "threads": args.threads,
            "wall_time_s": time.perf_counter() - t0,
        },
    )


def cmd_lambda(args) -> OutputRecord:
    _require(args, "lo", "hi")
    t0 = time.perf_counter()
    table = sieve.lambda_range(args.lo, args.hi, segment_size=args.segment_size)
    rows = [
        (args.lo + i, float(table.values[i]), int(table.is_prime[i]))
        for i in range(len(table.values))
    ]
    return OutputRecord(
        command="lambda",
        columns=("n", "lambda", "is_prime"),
        rows=rows,
        parameters={"lo": args.lo, "hi": args.hi},
        provenance={
            "sieve_limit": args.hi,
            "segment_size": args.segment_size,
            "threads": args.threads,
            "wall_time_s": time.perf_counter() - t0,
        },
    )


def cmd_singular_series(args) -> OutputRecord:
    _require(args, "h")
    if args.h == 0:
        raise ValueError("--h must be nonzero")
    t0 = time.perf_counter()
    val = multiplicative.singular_series(args.h, args.truncation)
    return OutputRecord(
        command="singular-series",
        columns=("h", "truncation_prime", "value", "tail_bound"),
        rows=[(val.h, val.truncation_prime, val.value, val.tail_bound)],
        parameters={"h": args.h, "truncation": args.truncation},
        provenance={
            "threads": args.threads,
            "wall_time_s": time.perf_counter() - t0,
        },
    )


def cmd_psi(args) -> OutputRecord:
    _require(args, "x", "h")
    t0 = time.perf_counter()
    corr = correlations.psi(args.x, args.h, segment_size=args.segment_size)
    return OutputRecord(
        command="psi",
        columns=("x", "h", "value"),
        rows=[(corr.x, corr.h, corr.value)],
        parameters={"x": args.x, "h": args.h},
        provenance={
            "sieve_limit": args.x + max(args.h, 0),
            "segment_size": args.segment_size,
            "threads": args.threads,
            "wall_time_s": time.perf_counter() - t0,
        },
    )


def cmd_eh(args) -> OutputRecord:
    _require(args, "x", "theta")
    t0 = time.perf_counter()
    value = distribution.eh_sum(args.x, args.theta, threads=args.threads)
    q_bound = distribution.floor_power(args.x, args.theta)
    return OutputRecord(
        command="eh",
        columns=("x", "theta", "modulus_bound", "value"),
        rows=[(args.x, args.theta, q_bound, value)],
        parameters={"x": args.x, "theta": args.theta},
        provenance={
            "sieve_limit": args.x,
            "threads": args.threads,
            "wall_time_s": time.perf_counter() - t0,
        },
    )


def cmd_geh2(args) -> OutputRecord:
    _require(args, "x", "theta", "h")
    t0 = time.perf_counter()
    value = distribution.geh2_sum(
        args.x,
        args.theta,
        args.h,
        threads=args.threads,
        truncation_prime=args.truncation,
        sup_over_y=args.sup_variant,
    )
    q_bound = distribution.floor_power(args.x, args.theta)
    return OutputRecord(
        command="geh2",
        columns=("x", "theta", "h", "modulus_bound", "value"),
        rows=[(args.x, args.theta, args.h, q_bound, value)],
        parameters={
            "x": args.x,
            "theta": args.theta,
            "h": args.h,
            "sup_variant": args.sup_variant,
        },
        provenance={
            "sieve_limit": args.x + max(args.h, 0),
            "truncation_prime": args.truncation,
            "threads": args.threads,
            "wall_time_s": time.perf_counter() - t0,
        },
    )


def cmd_scan(args) -> OutputRecord:
    _require(args, "x_start", "x_ratio", "x_count", "theta")
    if args.mode != "eh":
        _require(args, "h")
    h = args.h if args.h is not None else 2
    a_list = tuple(float(s) for s in args.A.split(","))
    config = distribution.ScanConfig(
        x_start=args.x_start,
        x_ratio=args.x_ratio,
        x_count=args.x_count,
        theta=args.theta,
        h=h,
        a_list=a_list,
        mode=args.mode,
    )
    report = distribution.run_scan(
        config,
        threads=args.threads,
        truncation_prime=args.truncation,
        segment_size=args.segment_size,
    )

    columns = ["x"]
    for mode in config.modes:
        columns.append(f"{mode}_raw")
    for mode in config.modes:
        for a in config.a_list:
            columns.append(f"{mode}_norm_A{a:g}")
    rows = []
    for i, x in enumerate(report.xs):
        row = [x]
        for mode in config.modes:
            row.append(report.sums[mode][i])
        for mode in config.modes:
            for a in config.a_list:
                row.append(report.normalized[mode][a][i])
        rows.append(tuple(row))

    extras = {}
    for mode in config.modes:
        fit = report.fits[mode]
        if fit is not None:
            extras[f"fit_{mode}_c"] = fit.c
            extras[f"fit_{mode}_a"] = fit.a_fit
            extras[f"fit_{mode}_residual_norm"] = fit.residual_norm
    for key, note in report.metadata.items():
        extras[f"note_{key}"] = note

    return OutputRecord(
        command="scan",
        columns=tuple(columns),
        rows=rows,
        parameters={
            "mode": config.mode,
            "x_start": config.x_start,
            "x_ratio": config.x_ratio,
            "x_count": config.x_count,
            "theta": config.theta,
            "h": config.h,
            "A": ",".join(f"{a:g}" for a in config.a_list),
        },
        extras=extras,
        provenance={
            "sieve_limit": report.xs[-1] + max(config.h, 0),
            "truncation_prime": report.truncation_prime,
            "segment_size": args.segment_size,
            "threads": report.threads,
            "wall_time_s": report.wall_time_s,
        },
    )


# ---------------------------------------------------------------------------
# check suites
# ---------------------------------------------------------------------------

def _suite_divisor_identity(limit: int) -> tuple[bool, str]:
    table = sieve.lambda_range(1, limit)
    acc = np.zeros(limit + 1, dtype=np.float64)
    for d in range(2, limit + 1):
        acc[d::d] += table.values[d - 1]
    logs = np.log(np.arange(1, limit + 1, dtype=np.float64))
    worst = float(np.max(np.abs(acc[1:] - logs)))
    return worst <= 1e-9, f"max |sum_(d|n) Lambda(d) - log n| = {worst:.3e} for n <= {limit}"


def _suite_partition(x: int) -> tuple[bool, str]:
    worst = 0.0
    for q, h in ((3, 2), (7, 2), (12, 2), (5, -2)):
        total = correlations.psi(x, h).value
        parts = [correlations.psi_progression(x, h, q, a) for a in range(q)]
        dev = abs(math.fsum(parts) - total) / total
        worst = max(worst, dev)
    return worst <= 1e-9, f"max relative partition defect = {worst:.3e} at x = {x}"


def _suite_phi2_brute_force(q_max: int) -> tuple[bool, str]:
    mismatches = 0
    for q in range(1, q_max + 1):
        a = np.arange(1, q + 1, dtype=np.int64)
        cop_a = np.gcd(a, q) == 1
        for h in (2, 4, 6, -2):
            brute = int(np.sum(cop_a & (np.gcd(a + h, q) == 1)))
            if brute != multiplicative.phi2(q, h):
                mismatches += 1
    return mismatches == 0, f"{mismatches} mismatches over q <= {q_max}, h in (2,4,6,-2)"


def _suite_residue_decomposition(x: int) -> tuple[bool, str]:
    pairs = correlations.pair_list(x, 2)
    failures = []
    for q in (1, 3, 4, 5, 12, 30):
        res = correlations.residue_decomposition_check(x, q, 2, pairs=pairs)
        if not res.passed:
            failures.append(q)
    ok = not failures
    detail = f"x = {x}; all moduli pass" if ok else f"x = {x}; failing q: {failures}"
    return ok, detail


def cmd_check(args) -> OutputRecord:
    t0 = time.perf_counter()
    if args.quick:
        suites = [
            ("divisor_identity", lambda: _suite_divisor_identity(2000)),
            ("partition", lambda: _suite_partition(1000)),
            ("phi2_brute_force", lambda: _suite_phi2_brute_force(150)),
            ("residue_decomposition", lambda: _suite_residue_decomposition(10**4)),
        ]
    else:
        suites = [
            ("divisor_identity", lambda: _suite_divisor_identity(10**4)),
            ("partition", lambda: _suite_partition(10**4)),
            ("phi2_brute_force", lambda: _suite_phi2_brute_force(500)),
            ("residue_decomposition", lambda: _suite_residue_decomposition(10**5)),
        ]
    rows = []
    for name, run in suites:
        ok, detail = run()
        rows.append((name, int(ok), detail.replace(",", ";")))
    return OutputRecord(
        command="check",
        columns=("suite", "passed", "detail"),
        rows=rows,
        parameters={"quick": args.quick},
        provenance={
            "threads": args.threads,
            "wall_time_s": time.perf_counter() - t0,
        },
    )


DISPATCH = {
    "primes": cmd_primes,
    "lambda": cmd_lambda,
    "singular-series": cmd_singular_series,
    "psi": cmd_psi,
    "eh": cmd_eh,
    "geh2": cmd_geh2,
    "scan": cmd_scan,
    "check": cmd_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args = _resolve(args)
        record = DISPATCH[args.command](args)
        _emit(record, args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.command == "check" and any(not r[1] for r in record.rows):
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
