"""Command-line driver.

Exit codes: 0 dynamically irreducible / success, 2 not dynamically
irreducible, 3 search budget exhausted (lower bound only), 1 error,
64 usage error.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import random
import sys
import time
from pathlib import Path

from .closure import (
    DISetInstance,
    bound_B,
    brute_force_check,
    closure_test,
    oracle_agrees,
    single_test,
)
from .constructions import (
    build_artin_schreier,
    charsum_find_alpha,
    pair_family,
    single_family,
    theorem1_family,
)
from .errors import DynIrrError
from .ff import FieldCtx
from .io import emit_poly_set, parse_poly_set
from .poly import MonicQuad
from .search import DEFAULT_MAX_NODES, DEFAULT_MAX_SECS, max_di_search

EXIT_DI, EXIT_ERROR, EXIT_NOT_DI, EXIT_INCOMPLETE, EXIT_USAGE = 0, 1, 2, 3, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _read_instance(path: str, diagnostics: list) -> DISetInstance:
    return parse_poly_set(Path(path).read_text(), diagnostics)


def cmd_test(args, out) -> int:
    diagnostics: list = []
    inst = _read_instance(args.file, diagnostics)
    for msg in diagnostics:
        print(msg, file=sys.stderr)
    t0 = time.perf_counter()
    report = closure_test(inst)
    result = report.to_dict()
    result["r"] = len(inst)
    result["diagnostics"] = diagnostics
    result["closure_secs"] = round(time.perf_counter() - t0, 6)
    if len(inst) >= 2 and report.is_di:
        result["bound_B"] = bound_B(inst.ctx)
    agrees = True
    if args.oracle_depth:
        oracle = brute_force_check(inst, args.oracle_depth)
        agrees = oracle_agrees(report, oracle)
        result["oracle"] = oracle.to_dict()
        result["oracle_agrees"] = agrees
    _emit(result, out)
    if not agrees:
        print("closure test and brute-force oracle disagree", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_DI if report.is_di else EXIT_NOT_DI


def cmd_single(args, out) -> int:
    inst = _read_instance(args.file, [])
    if len(inst) != 1:
        raise DynIrrError(f"expected exactly one polynomial, found {len(inst)}")
    report = single_test(inst.ctx, inst.polys[0])
    _emit(report.to_dict(), out)
    return EXIT_DI if report.is_di else EXIT_NOT_DI


def cmd_search(args, out) -> int:
    ctx = FieldCtx(args.p, args.d)
    report = max_di_search(ctx, args.budget_nodes, args.budget_secs, args.jobs)
    _emit(report.to_dict(), out)
    return EXIT_DI if report.complete else EXIT_INCOMPLETE


def cmd_construct(args, out) -> int:
    result: dict = {"construction": args.kind}
    if args.kind == "theorem1":
        asc = build_artin_schreier(args.p, args.h, allow_any_p=args.allow_any_p)
        inst = theorem1_family(asc)
        result["within_hypotheses"] = asc.within_hypotheses
        report = closure_test(inst)
        coset = {asc.xi + a for a in range(asc.p)}
        result["iterates_in_coset"] = all(x in coset for x in report.iterate_set)
    else:
        ctx = FieldCtx(args.p, args.d)
        if args.kind == "pair":
            inst = pair_family(ctx)
            report = closure_test(inst)
        else:
            f = single_family(ctx)
            inst = DISetInstance(ctx, (f,))
            report = single_test(ctx, f)
    text = emit_poly_set(inst)
    if args.out:
        Path(args.out).write_text(text)
    result.update(
        field=inst.ctx.header(),
        count=len(inst),
        verification=report.to_dict(),
        polyset=text,
    )
    _emit(result, out)
    return EXIT_DI if report.is_di else EXIT_NOT_DI


def cmd_charsum(args, out) -> int:
    _emit(charsum_find_alpha(args.p, args.e).to_dict(), out)
    return EXIT_DI


def _random_irreducible(ctx: FieldCtx, rng: random.Random) -> MonicQuad:
    while True:
        c = ctx.random_element(rng)
        if ctx.chi(-c) == -1:
            return MonicQuad(ctx.random_element(rng), c)


BENCH_FIELDS = [
    "q", "r", "trial", "verdict", "iterate_size", "sq_tests", "insertions", "rounds",
    "bound_B", "ops", "ops_ratio", "closure_secs", "oracle_depth", "oracle_secs", "oracle_agrees",
]


def bench_rows(ctx: FieldCtx, trials: int, seed: int = 0, oracle_depth: int = 0):
    """Closure statistics on random pairs and triples of irreducible quadratics.

    ``ops_ratio`` is (sq_tests + insertions) / (r * B * ln q).
    """
    rng = random.Random(seed)
    B = bound_B(ctx)
    for r in (2, 3):
        for trial in range(trials):
            polys = set()
            while len(polys) < r:
                polys.add(_random_irreducible(ctx, rng))
            inst = DISetInstance(ctx, tuple(sorted(polys, key=MonicQuad.key)))
            t0 = time.perf_counter()
            rep = closure_test(inst)
            secs = time.perf_counter() - t0
            ops = rep.stats["sq_tests"] + rep.stats["insertions"]
            row = {
                "q": ctx.q,
                "r": r,
                "trial": trial,
                "verdict": rep.verdict.value,
                "iterate_size": len(rep.iterate_set),
                **rep.stats,
                "bound_B": B,
                "ops": ops,
                "ops_ratio": ops / (r * B * math.log(ctx.q)),
                "closure_secs": secs,
                "oracle_depth": oracle_depth or "",
                "oracle_secs": "",
                "oracle_agrees": "",
            }
            if oracle_depth:
                t0 = time.perf_counter()
                oracle = brute_force_check(inst, oracle_depth)
                row["oracle_secs"] = time.perf_counter() - t0
                row["oracle_agrees"] = oracle_agrees(rep, oracle)
            yield row


def cmd_bench(args, out) -> int:
    ctx = FieldCtx(args.p, args.d)
    writer = csv.DictWriter(out, fieldnames=BENCH_FIELDS, extrasaction="ignore")
    writer.writeheader()
    for row in bench_rows(ctx, args.trials, args.seed, args.oracle_depth):
        writer.writerow(row)
    return EXIT_DI


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dynirr", description="Dynamically irreducible sets of quadratics over F_q.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", help="closure test on a polynomial-set file")
    p.add_argument("file")
    p.add_argument("--oracle-depth", type=int, default=0, help="cross-check with brute force up to this depth")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("single", help="orbit test for a one-polynomial file")
    p.add_argument("file")
    p.set_defaults(func=cmd_single)

    p = sub.add_parser("search-max", help="compute M(q) by exhaustive search")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--budget-nodes", type=int, default=DEFAULT_MAX_NODES)
    p.add_argument("--budget-secs", type=float, default=DEFAULT_MAX_SECS)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("construct", help="build an explicit family")
    kinds = p.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("theorem1", help="Artin-Schreier family over F_{p^p}")
    k.add_argument("--p", type=int, required=True)
    k.add_argument("--h", type=int, required=True)
    k.add_argument("--allow-any-p", action="store_true", help="permit p = 3 mod 4 (exploration only)")
    for name, text in (("pair", "two-polynomial family, q = 1 mod 4"), ("single", "single stable polynomial")):
        k = kinds.add_parser(name, help=text)
        k.add_argument("--p", type=int, required=True)
        k.add_argument("--d", type=int, default=1)
    for k in kinds.choices.values():
        k.add_argument("--out", help="also write the polynomial-set file here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("charsum", help="character sum S and a suitable alpha in F_{p^e}")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.set_defaults(func=cmd_charsum)

    p = sub.add_parser("bench", help="closure statistics on random pairs/triples (CSV)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle-depth", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (DynIrrError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
