"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 census guard violation,
4 cross-check mismatch, 5 certification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from statistics import NormalDist

from . import bounds_cert, oracle, proportions, series
from .exact_core import CycleType, NotPrimeError, default_cache, format_exact, parse_exact, permutation_count, require_prime

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_GUARD = 3
EXIT_MISMATCH = 4
EXIT_CERTIFY = 5

FIELDS = ("p", "n", "quantity", "exact", "approx", "method", "verdict")
QUANTITIES = ("rho", "order_dividing", "regular", "singular", "p_cycle", "pre_p_cycle")
RHO_METHODS = ("recursion", "closed_form", "series", "census")
SAMPLE_EXACT_MAX = 5000

_DECIMAL = Context(prec=15, rounding=ROUND_HALF_EVEN)


class CrossCheckError(Exception):
    pass


class UsageError(ValueError):
    pass


def approx(q: Fraction) -> str:
    """Round-half-even decimal rendering at 15 significant digits."""
    if q == 0:
        return "0"
    return str(_DECIMAL.divide(Decimal(q.numerator), Decimal(q.denominator)))


@dataclass(frozen=True)
class OutputRecord:
    p: int
    n: int
    quantity: str
    exact: str
    approx: str
    method: str
    verdict: str | None = None

    @classmethod
    def of(cls, p, n, quantity, value: Fraction, method, verdict=None) -> OutputRecord:
        return cls(p, n, quantity, format_exact(value), approx(value), method, verdict)

    def value(self) -> Fraction:
        return parse_exact(self.exact)

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in FIELDS}


def render(rows: list[dict], fields, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if row.get(k) is None else row[k] for k in fields})
    return buf.getvalue()


def emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def parse_quantities(text: str) -> list[str]:
    names = [part.strip() for part in text.split(",") if part.strip()]
    unknown = [name for name in names if name not in QUANTITIES]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            f"unknown quantities {unknown}; choose from {', '.join(QUANTITIES)}"
        )
    return names


def _positive(n: int, name: str) -> None:
    if n < 1:
        raise UsageError(f"{name} must be >= 1, got {n}")


# --- rho ---------------------------------------------------------------------

def rho_by_method(p: int, n: int, method: str) -> Fraction:
    if method == "recursion":
        return proportions.rho_recursive(p, n)
    if method == "closed_form":
        return proportions.rho_closed_form(p, n)
    if method == "series":
        return series.jacobsthal_gf(p, n)[n]
    if method == "census":
        return Fraction(oracle.census_by_type(n).count(p), default_cache().get(n))
    raise UsageError(f"unknown method {method!r}")


def cmd_rho(args) -> int:
    p = require_prime(args.p)
    _positive(args.n, "n")
    value = rho_by_method(p, args.n, args.method)
    record = OutputRecord.of(p, args.n, "rho", value, args.method)
    emit(render([record.as_dict()], FIELDS, args.format), args.out)
    return EXIT_OK


# --- table -------------------------------------------------------------------

def _agree(p, n, quantity, first, second, methods) -> Fraction:
    if first != second:
        raise CrossCheckError(
            f"cross-check mismatch: p={p} n={n} quantity={quantity} "
            f"{methods[0]}={format_exact(first)} {methods[1]}={format_exact(second)}"
        )
    return first


def table_rows(p: int, quantity: str, n_max: int) -> list[dict]:
    """Rows for one ``(p, quantity)``; each value agrees across two routes."""
    fact = default_cache().get
    rows = []

    def add(n, value, methods):
        rows.append(OutputRecord.of(p, n, quantity, value, "+".join(methods)).as_dict())

    if quantity in ("rho", "order_dividing"):
        methods = ("recursion", "closed_form")
        recursive = proportions.rho_sequence(p, n_max)
        for n in range(1, n_max + 1):
            value = _agree(p, n, quantity, recursive[n], proportions.rho_closed_form(p, n), methods)
            if quantity == "order_dividing":
                value += Fraction(1, fact(n))
            add(n, value, methods)
    elif quantity in ("regular", "singular"):
        methods = ("closed_form", "series")
        coeffs = series.regular_gf(p, n_max).coeffs
        for n in range(1, n_max + 1):
            value = _agree(p, n, quantity, proportions.regular_proportion(p, n), coeffs[n], methods)
            add(n, 1 - value if quantity == "singular" else value, methods)
    elif quantity == "p_cycle":
        methods = ("closed_form", "census")
        for n in range(p, n_max + 1):
            by_class = Fraction(permutation_count(CycleType.from_multiplicities({p: 1, 1: n - p})), fact(n))
            add(n, _agree(p, n, quantity, proportions.p_cycle_proportion(p, n), by_class, methods), methods)
    elif quantity == "pre_p_cycle":
        methods = ("closed_form", "series")
        coeffs = series.regular_gf(p, max(n_max - p, 0)).coeffs
        for n in range(p, n_max + 1):
            via_series = coeffs[n - p] / p
            add(n, _agree(p, n, quantity, proportions.pre_p_cycle_proportion(p, n), via_series, methods), methods)
    else:
        raise UsageError(f"unknown quantity {quantity!r}")
    return rows


def _run_tasks(fn, tasks, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(*task) for task in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        futures = [pool.submit(fn, *task) for task in tasks]
        return [f.result() for f in futures]


def _row_key(row: dict):
    return (row["p"], row["n"], row["quantity"])


def cmd_table(args) -> int:
    primes = [require_prime(p) for p in args.p]
    _positive(args.n_max, "n-max")
    _positive(args.jobs, "jobs")
    if {"regular", "singular", "pre_p_cycle"} & set(args.quantities):
        try:
            proportions.regular_self_check()
        except AssertionError as exc:
            raise CrossCheckError(str(exc))
    tasks = [(p, q, args.n_max) for p in primes for q in args.quantities]
    rows = [row for chunk in _run_tasks(table_rows, tasks, args.jobs) for row in chunk]
    rows.sort(key=_row_key)
    emit(render(rows, FIELDS, args.format), args.out)
    return EXIT_OK


# --- certify -----------------------------------------------------------------

def certify_rows(p: int, n_max: int) -> tuple[list[dict], list[str]]:
    rows, mismatches = [], []
    for n in range(1, n_max + 1):
        try:
            cert = bounds_cert.certify_theorem1(p, n)
        except ArithmeticError as exc:
            mismatches.append(f"p={p} n={n}: {exc}")
            continue
        expected = bounds_cert.expected_verdict(p, n)
        if cert.verdict is not expected:
            mismatches.append(f"p={p} n={n}: verdict {cert.verdict.value}, expected {expected.value}")
        rows.append(OutputRecord.of(p, n, "rho", cert.rho, "recursion", cert.verdict.value).as_dict())
    return rows, mismatches


def cmd_certify(args) -> int:
    primes = [require_prime(p) for p in args.p]
    _positive(args.n_max, "n-max")
    _positive(args.jobs, "jobs")
    rows, mismatches = [], []
    for chunk, bad in _run_tasks(certify_rows, [(p, args.n_max) for p in primes], args.jobs):
        rows.extend(chunk)
        mismatches.extend(bad)
    rows.sort(key=_row_key)
    emit(render(rows, FIELDS, args.format), args.out)
    counts = {v.value: 0 for v in bounds_cert.Verdict}
    for row in rows:
        counts[row["verdict"]] += 1
    summary = " ".join(f"{k}={v}" for k, v in counts.items())
    print(f"certified {len(rows)} rows: {summary} mismatches={len(mismatches)}", file=sys.stderr)
    for line in mismatches:
        print(f"mismatch: {line}", file=sys.stderr)
    return EXIT_CERTIFY if mismatches else EXIT_OK


# --- sample ------------------------------------------------------------------

SAMPLE_FIELDS = ("p", "n", "samples", "seed", "hits", "estimate", "exact", "approx", "ci_low", "ci_high")


def wilson_interval(hits: int, samples: int, level: float = 0.99) -> tuple[float, float]:
    z = NormalDist().inv_cdf(0.5 + level / 2)
    phat = hits / samples
    denom = 1 + z * z / samples
    centre = (phat + z * z / (2 * samples)) / denom
    half = z * (phat * (1 - phat) / samples + z * z / (4 * samples * samples)) ** 0.5 / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def cmd_sample(args) -> int:
    p = require_prime(args.p)
    _positive(args.n, "n")
    _positive(args.samples, "samples")
    est = oracle.sample_proportion(p, args.n, args.samples, args.seed)
    low, high = wilson_interval(est.hits, est.samples)
    row = {
        "p": p, "n": args.n, "samples": est.samples, "seed": est.seed, "hits": est.hits,
        "estimate": repr(est.estimate), "exact": None, "approx": None,
        "ci_low": repr(low), "ci_high": repr(high),
    }
    if args.n <= SAMPLE_EXACT_MAX:
        exact = proportions.rho_recursive(p, args.n)
        row["exact"], row["approx"] = format_exact(exact), approx(exact)
    emit(render([row], SAMPLE_FIELDS, args.format), args.out)
    return EXIT_OK


# --- series / asymptotics ----------------------------------------------------

def cmd_series(args) -> int:
    p = require_prime(args.p)
    if args.n_max < 0:
        raise UsageError(f"n-max must be >= 0, got {args.n_max}")
    gf = series.jacobsthal_gf if args.kind == "jacobsthal" else series.regular_gf
    coeffs = gf(p, args.n_max).coeffs
    rows = [OutputRecord.of(p, n, args.kind, c, "series").as_dict() for n, c in enumerate(coeffs)]
    emit(render(rows, FIELDS, args.format), args.out)
    return EXIT_OK


ASYMPTOTIC_FIELDS = ("p", "n", "log_rho_exact", "log_estimate", "log_ratio")


def cmd_asymptotics(args) -> int:
    rows = []
    for p in args.p:
        require_prime(p)
        for n in args.n:
            rep = bounds_cert.moser_wyman_estimate(p, n)
            rows.append({
                "p": p, "n": n, "log_rho_exact": repr(rep.log_rho_exact),
                "log_estimate": repr(rep.log_estimate), "log_ratio": repr(rep.log_ratio),
            })
    emit(render(rows, ASYMPTOTIC_FIELDS, args.format), args.out)
    return EXIT_OK


# --- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symprop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", default="-", help="output path, '-' for stdout")

    sp = sub.add_parser("rho", help="one exact rho_p(n) value")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--method", choices=RHO_METHODS, default="recursion")
    common(sp)
    sp.set_defaults(func=cmd_rho)

    sp = sub.add_parser("table", help="cross-checked table of proportions")
    sp.add_argument("--p", type=parse_int_list, required=True, help="comma-separated primes")
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--quantities", type=parse_quantities, default=["rho"])
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("certify", help="certify the prime-order bound over a range")
    sp.add_argument("--p", type=parse_int_list, required=True, help="comma-separated primes")
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("sample", help="Monte Carlo estimate of rho_p(n)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("series", help="dump generating-function coefficients")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--kind", choices=("jacobsthal", "regular"), default="jacobsthal")
    common(sp)
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("asymptotics", help="log-space comparison with the asymptotic estimate")
    sp.add_argument("--p", type=parse_int_list, required=True)
    sp.add_argument("--n", type=parse_int_list, required=True)
    common(sp)
    sp.set_defaults(func=cmd_asymptotics)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except oracle.CensusGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except CrossCheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (NotPrimeError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
