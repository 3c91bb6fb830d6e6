"""Command-line front end: reproducible, scriptable access to every operation.

Output is deterministic for identical argv and configuration: data rows carry
no timestamps, metadata travels on '#'-prefixed lines (CSV) or under "meta"
(JSON).  Exit codes: 0 success, 1 usage error, 2 computation error (budget or
domain), 3 falsified-theorem assertion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction as Rat
from itertools import combinations
from math import gcd
from random import Random

from . import __version__
from .arith import Fraction, INFINITY, ONE, ZERO, gcd_triple
from .errors import FareyError, PreconditionError, TheoremViolation
from .farey import enumerate_window, rank_fast, rank_oracle
from .franel import (
    dress_scan,
    dress_scan_sweep,
    full_franel_sum,
    growth_scan,
    kanemitsu_sum,
    partial_franel_sum_range,
)
from .index import asymptotic_index_zero, exact_index_unit_fraction
from .mapping import MapParams, build_f_prime, cardinality_relation, forward_map, inverse_map, map_window
from .totient import build_totient_table, error_term_rows, farey_cardinality, lcm_range


@dataclass
class Config:
    """Runtime limits and output shape; env FAREY_* overrides defaults, flags win."""

    table_limit: int = 10_000_000
    term_budget: int = 100_000_000
    output_format: str = "csv"
    precision_digits: int = 12

    def __post_init__(self) -> None:
        if self.table_limit < 1 or self.term_budget < 1 or self.precision_digits < 1:
            raise PreconditionError("config values must be positive")
        if self.output_format not in ("csv", "json"):
            raise PreconditionError(f"unknown output format {self.output_format!r}")


def _config_from_env() -> Config:
    kwargs = {}
    env = os.environ
    if "FAREY_TABLE_LIMIT" in env:
        kwargs["table_limit"] = int(env["FAREY_TABLE_LIMIT"])
    if "FAREY_TERM_BUDGET" in env:
        kwargs["term_budget"] = int(env["FAREY_TERM_BUDGET"])
    if "FAREY_OUTPUT_FORMAT" in env:
        kwargs["output_format"] = env["FAREY_OUTPUT_FORMAT"]
    if "FAREY_PRECISION_DIGITS" in env:
        kwargs["precision_digits"] = int(env["FAREY_PRECISION_DIGITS"])
    return Config(**kwargs)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _fraction_arg(text: str) -> Fraction:
    return Fraction.parse(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


class _Output:
    """Emitter for one table: metadata plus rows, as CSV or a single JSON object."""

    def __init__(self, config: Config, command: str, argv: list[str], stream) -> None:
        self.config = config
        self.command = command
        self.argv = argv
        self.stream = stream

    def fmt(self, value) -> str:
        if value is None:
            return ""
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float):
            return f"{value:.{self.config.precision_digits}g}"
        if isinstance(value, Rat):
            return f"{value.numerator}/{value.denominator}"
        return str(value)

    def _meta(self) -> dict:
        return {
            "command": " ".join([self.command, *self.argv]),
            "config": (
                f"table_limit={self.config.table_limit} term_budget={self.config.term_budget} "
                f"format={self.config.output_format} precision={self.config.precision_digits}"
            ),
            "version": f"fareysums {__version__}",
        }

    def table(self, header: list[str], rows: list[list]) -> None:
        if self.config.output_format == "json":
            body = {
                "meta": self._meta(),
                "rows": [
                    {name: self.fmt(cell) for name, cell in zip(header, row)} for row in rows
                ],
            }
            self.stream.write(json.dumps(body, indent=2, sort_keys=True))
            self.stream.write("\n")
            return
        for key, value in self._meta().items():
            self.stream.write(f"# {key}: {value}\n")
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([self.fmt(cell) for cell in row])
        self.stream.write(buffer.getvalue())


def _build_parser() -> _Parser:
    parser = _Parser(prog="farey", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], help="output format")
    common.add_argument("--table-limit", type=int, help="totient table size cap")
    common.add_argument("--term-budget", type=int, help="streamed terms cap")
    common.add_argument("--precision", type=int, help="significant digits for reals")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list F_N fractions in a range")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--lo", type=_fraction_arg, default=ZERO)
    p.add_argument("--hi", type=_fraction_arg, default=ONE)

    p = sub.add_parser("rank", parents=[common], help="position of a fraction in F_N")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--fraction", type=_fraction_arg, required=True)
    p.add_argument("--method", choices=["oracle", "fast"], default="oracle")

    p = sub.add_parser("index", parents=[common], help="closed-form position of 1/q")
    p.add_argument("--imax", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--asymptotic", action="store_true", help="print the O(N) asymptotic instead")
    p.add_argument("--sweep", action="store_true", help="CSV over every admissible q")

    p = sub.add_parser("map", parents=[common], help="bijective subinterval map")
    p.add_argument("--vertex", type=_fraction_arg, required=True)
    p.add_argument("--covertex", type=_fraction_arg, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--inverse", action="store_true")

    p = sub.add_parser("gcd-check", parents=[common], help="triple-gcd determinant identity scan")
    p.add_argument("--exhaustive", type=int, help="check all ordered triples of F_N for this N")
    p.add_argument("--random", type=int, help="number of random reduced triples")
    p.add_argument("--max-value", type=int, default=10_000, help="numerator/denominator cap for random triples")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("franel", parents=[common], help="deviation sum over F_N or a range of it")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--lo", type=_fraction_arg, default=None)
    p.add_argument("--hi", type=_fraction_arg, default=None)
    p.add_argument("--kanemitsu", action="store_true", help="signed prefix sum up to 1/4")

    p = sub.add_parser("growth", parents=[common], help="vertex section sums against log N")
    p.add_argument("--vertex", type=_fraction_arg, required=True)
    p.add_argument("--covertex", type=_fraction_arg, default=None)
    p.add_argument("--i", type=_int_list, required=True, help="comma-separated section indices")

    p = sub.add_parser("dress", parents=[common], help="largest single deviation versus 1/N")
    p.add_argument("--order", type=int)
    p.add_argument("--sweep-to", type=int, help="check the bound for every order up to this")

    p = sub.add_parser("totient", parents=[common], help="dump n, phi, Phi, E, H columns")
    p.add_argument("--upto", type=int, required=True)

    sub.add_parser("selftest", parents=[common], help="small-order oracle cross-check suite")
    return parser


def _apply_flags(config: Config, args: argparse.Namespace) -> Config:
    return Config(
        table_limit=args.table_limit or config.table_limit,
        term_budget=args.term_budget or config.term_budget,
        output_format=args.format or config.output_format,
        precision_digits=args.precision or config.precision_digits,
    )


def _cmd_enumerate(args, config: Config, out: _Output) -> int:
    window = enumerate_window(args.order, args.lo, args.hi, budget=config.term_budget)
    start = rank_fast(args.order, window.fractions[0]).rank if window.fractions else 0
    rows = [
        [start + k, str(f), f.num, f.den] for k, f in enumerate(window.fractions)
    ]
    out.table(["index", "fraction", "num", "den"], rows)
    return 0


def _cmd_rank(args, config: Config, out: _Output) -> int:
    fn = rank_oracle if args.method == "oracle" else rank_fast
    report = fn(args.order, args.fraction)
    out.stream.write(f"{report.rank}\n")
    return 0


def _cmd_index(args, config: Config, out: _Output) -> int:
    n = lcm_range(args.imax)
    table = build_totient_table(args.imax, budget=config.table_limit)
    if args.sweep:
        rows = []
        for q in range(-(-n // args.imax), n + 1):
            exact = exact_index_unit_fraction(args.imax, q, table).value
            approx = asymptotic_index_zero(n, q)
            rows.append([q, exact, approx, exact - approx, (exact - approx) / n])
        out.table(["q", "exact", "asymptotic", "residual", "residual_over_N"], rows)
        return 0
    if args.q is None:
        raise _UsageError("index needs --q or --sweep")
    if args.asymptotic:
        out.stream.write(out.fmt(asymptotic_index_zero(n, args.q)) + "\n")
    else:
        out.stream.write(f"{exact_index_unit_fraction(args.imax, args.q, table).value}\n")
    return 0


def _cmd_map(args, config: Config, out: _Output) -> int:
    i = args.i if args.i is not None else args.order // (args.q * args.vertex.den)
    params = MapParams(args.vertex, args.covertex, args.q, i, args.order)
    if args.inverse:
        window = map_window(params)
        rows = [[str(u), str(inverse_map(params, u))] for u in window.fractions]
    else:
        rows = [[str(f), str(forward_map(params, f))] for f in build_f_prime(params).members]
    out.table(["source", "image"], rows)
    return 0


def _cmd_gcd_check(args, config: Config, out: _Output) -> int:
    if not args.exhaustive and not args.random:
        raise _UsageError("gcd-check needs --exhaustive and/or --random")
    checked = 0
    bad = 0
    if args.exhaustive:
        window = enumerate_window(args.exhaustive, ZERO, ONE, budget=config.term_budget)
        for lo, mid, hi in combinations(window.fractions, 3):
            g1, g2, g3 = gcd_triple(lo, mid, hi)
            checked += 1
            if not (g1 == g2 == g3):
                bad += 1
    if args.random:
        rng = Random(args.seed)
        cap = args.max_value
        produced = 0
        while produced < args.random:
            triple = []
            while len(triple) < 3:
                num, den = rng.randint(0, cap), rng.randint(1, cap)
                g = gcd(num, den)
                triple.append(Fraction(num // g, den // g))
            triple.sort()
            lo, mid, hi = triple
            if lo < mid < hi:
                g1, g2, g3 = gcd_triple(lo, mid, hi)
                checked += 1
                produced += 1
                if not (g1 == g2 == g3):
                    bad += 1
    out.stream.write(f"{bad} counterexamples among {checked} triples\n")
    if bad:
        raise TheoremViolation(f"{bad} triple-gcd counterexamples found")
    return 0


def _franel_row(result) -> list:
    return [
        result.order,
        str(result.lo),
        str(result.hi),
        result.rank_lo,
        result.rank_hi,
        result.term_count,
        result.sum_exact,
        result.sum_float,
        result.max_term,
        result.argmax_rank,
    ]


_FRANEL_HEADER = [
    "order", "lo", "hi", "rank_lo", "rank_hi", "terms",
    "sum_exact", "sum_float", "max_term", "argmax_rank",
]


def _cmd_franel(args, config: Config, out: _Output) -> int:
    table = build_totient_table(args.order, budget=config.table_limit)
    if args.kanemitsu:
        res = kanemitsu_sum(args.order, table, term_budget=config.term_budget)
        out.table(
            ["order", "prefix_rank", "cardinality", "sum_exact", "sum_float"],
            [[res.order, res.prefix_rank, res.cardinality, res.sum_exact, res.sum_float]],
        )
        return 0
    if args.lo is None and args.hi is None:
        result = full_franel_sum(args.order, table, term_budget=config.term_budget)
    else:
        lo = args.lo if args.lo is not None else ZERO
        hi = args.hi if args.hi is not None else ONE
        anchor = rank_fast(args.order, lo).rank
        result = partial_franel_sum_range(
            args.order, lo, hi, anchor, table, term_budget=config.term_budget
        )
    out.table(_FRANEL_HEADER, [_franel_row(result)])
    return 0


def _cmd_growth(args, config: Config, out: _Output) -> int:
    co_vertex = args.covertex
    if co_vertex is None:
        if args.vertex != ZERO:
            raise _UsageError("--covertex is required unless the vertex is 0/1")
        co_vertex = INFINITY
    scan = growth_scan(args.vertex, co_vertex, args.i, term_budget=config.term_budget)
    rows = [
        [
            row.i,
            row.order,
            row.result.term_count,
            row.result.sum_float,
            row.sum_over_log,
            row.predicted,
        ]
        for row in scan.rows
    ]
    out.table(["i", "N", "terms", "sum", "sum_over_logN", "predicted"], rows)
    return 0


def _cmd_dress(args, config: Config, out: _Output) -> int:
    if args.sweep_to:
        sweep = dress_scan_sweep(args.sweep_to)
        out.table(
            ["n_max", "all_ok", "violations", "worst_ratio", "worst_order"],
            [[sweep.n_max, sweep.all_ok, len(sweep.violations), sweep.worst_ratio, sweep.worst_order]],
        )
        if not sweep.all_ok:
            raise TheoremViolation(f"deviation bound violated at orders {sweep.violations[:10]}")
        return 0
    if args.order is None:
        raise _UsageError("dress needs --order or --sweep-to")
    report = dress_scan(args.order, term_budget=config.term_budget)
    out.table(
        ["order", "max_term", "argmax_rank", "rank2_term", "bound_ok"],
        [[report.order, report.max_term, report.argmax_rank, report.rank2_term, report.bound_ok]],
    )
    if not report.bound_ok:
        raise TheoremViolation(f"deviation bound violated at order {report.order}")
    return 0


def _cmd_totient(args, config: Config, out: _Output) -> int:
    table = build_totient_table(args.upto, budget=config.table_limit)
    rows = [list(row) for row in error_term_rows(args.upto, table)]
    out.table(["n", "phi", "Phi", "E", "H"], rows)
    return 0


def _cmd_selftest(args, config: Config, out: _Output) -> int:
    from .arith import det2, mediant, shear

    failures = []

    def check(label: str, ok: bool) -> None:
        out.stream.write(f"{'ok' if ok else 'FAIL'} - {label}\n")
        if not ok:
            failures.append(label)

    check("det2 spot values", det2(Fraction(4, 5), Fraction(1, 5)) == 15
          and det2(INFINITY, ZERO) == 1 and det2(Fraction(1, 2), Fraction(1, 3)) == 1)
    check("mediant spot values", mediant(ZERO, INFINITY) == ONE
          and mediant(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5))
    check("shear spot values", shear(Fraction(2, 3)) == Fraction(2, 5) and shear(ONE) == Fraction(1, 2))

    window = enumerate_window(8, ZERO, ONE)
    bad = sum(
        1
        for lo, mid, hi in combinations(window.fractions, 3)
        if len(set(gcd_triple(lo, mid, hi))) != 1
    )
    check("triple-gcd identity over F_8", bad == 0)

    table = build_totient_table(1000)
    check("cardinalities", farey_cardinality(5, table) == 11 and farey_cardinality(1, table) == 2)

    spots = {2: 7, 3: 5, 6: 2}
    ok = True
    for q, expected in spots.items():
        ok &= exact_index_unit_fraction(3, q).value == expected
        ok &= rank_oracle(6, Fraction(1, q)).rank == expected
        ok &= rank_fast(6, Fraction(1, q)).rank == expected
    check("closed-form positions in F_6", ok)

    ok = True
    for i_max in (2, 3, 4, 5):
        n = lcm_range(i_max)
        for q in range(-(-n // i_max), n + 1):
            ok &= exact_index_unit_fraction(i_max, q).value == rank_oracle(n, Fraction(1, q)).rank
    check("closed form vs oracle through i_max=5", ok)

    ok = True
    for vertex, co_vertex in [(ZERO, INFINITY), (Fraction(1, 2), ONE), (Fraction(1, 2), ZERO),
                              (Fraction(1, 3), Fraction(1, 2)), (ONE, ZERO)]:
        eta = vertex.den
        for i in (1, 2, 3):
            n = eta * i * (i + 1)
            for q in range(n // (eta * (i + 1)) + 1, n // (eta * i) + 1):
                params = MapParams(vertex, co_vertex, q, i, n)
                window = map_window(params)
                brute = enumerate_window(n, *params.interval())
                ok &= window.fractions == brute.fractions
                ok &= all(inverse_map(params, forward_map(params, f)) == f
                          for f in build_f_prime(params).members)
                # the strict size bound is arithmetically false for i=1 at the
                # top-of-window q with a finite co-vertex (0/1 is the excluded
                # element); cardinality_relation raises there by design
                i1_edge = i == 1 and q * eta == n and co_vertex.den > 0
                if not i1_edge:
                    cardinality_relation(params)
    check("bijection round trip / window match (eta <= 3)", ok)

    res3 = full_franel_sum(3)
    res5 = full_franel_sum(5)
    check("deviation sums", res3.sum_exact == Rat(1, 2) and res5.sum_exact == Rat(59, 110))
    check("prefix sums", kanemitsu_sum(5).sum_exact == Rat(9, 220)
          and kanemitsu_sum(4).sum_exact == Rat(-1, 28))
    check("deviation bound through order 60", dress_scan_sweep(60).all_ok)

    if failures:
        raise TheoremViolation(f"selftest failures: {failures}")
    out.stream.write("selftest passed\n")
    return 0


_HANDLERS = {
    "enumerate": _cmd_enumerate,
    "rank": _cmd_rank,
    "index": _cmd_index,
    "map": _cmd_map,
    "gcd-check": _cmd_gcd_check,
    "franel": _cmd_franel,
    "growth": _cmd_growth,
    "dress": _cmd_dress,
    "totient": _cmd_totient,
    "selftest": _cmd_selftest,
}


def run(argv: list[str], stream=None) -> int:
    """Parse argv, execute one subcommand, and return the process exit code."""
    stream = stream or sys.stdout
    try:
        args = _build_parser().parse_args(argv)
        config = _apply_flags(_config_from_env(), args)
    except (_UsageError, PreconditionError, ValueError) as exc:
        print(f"farey: usage error: {exc}", file=sys.stderr)
        return 1
    try:
        out = _Output(config, args.subcommand, argv[1:], stream)
        return _HANDLERS[args.subcommand](args, config, out)
    except _UsageError as exc:
        print(f"farey: usage error: {exc}", file=sys.stderr)
        return 1
    except TheoremViolation as exc:
        print(f"farey: FALSIFIED: {exc}", file=sys.stderr)
        return 3
    except FareyError as exc:
        print(f"farey: error: {exc}", file=sys.stderr)
        return 2


def main(argv: list[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
