"""Command-line frontend with machine-readable output.

Every successful invocation prints exactly one JSON envelope
{"command", "params", "result", "version"} on stdout (or the CSV / table
rendering when requested). Diagnostics go to stderr.

Exit codes: 0 success / property conforms, 1 a checked property does not
hold, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .budget import DEFAULT_ENUM_BUDGET, EnumerationBudgetError
from .markov import ChainSpec, chain_prob_table, check_lemmas, compare_chains
from .oracle import (
    DEFAULT_MC_SEED,
    McConfig,
    automaton_prob_table,
    counterexample_check,
    monte_carlo,
)
from .patterns import (
    BifixIndicator,
    Ordering,
    SWord,
    Word,
    bifix_indicator,
    census,
    compare_indicators,
    compare_swords,
    k0_of_pair,
    k0_sharp,
    s_from_h,
)
from .recursions import (
    ProbTable,
    P_table,
    expected_wait_closed,
    p_table_long,
    p_table_short,
)

EXIT_OK = 0
EXIT_PROPERTY_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Bad arguments or violated preconditions; maps to exit code 2."""


def _enum_budget() -> int:
    raw = os.environ.get("PATPROB_ENUM_BUDGET")
    if raw is None:
        return DEFAULT_ENUM_BUDGET
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"PATPROB_ENUM_BUDGET must be an integer, got {raw!r}") from exc


def _emit(command: str, params: dict, result: dict) -> None:
    envelope = {
        "command": command,
        "params": params,
        "result": result,
        "version": __version__,
    }
    print(json.dumps(envelope, indent=2))


def _parse_word(text: str, alphabet_size: int) -> Word:
    try:
        word = Word.parse(text, alphabet_size)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return word


def _parse_pattern(text: str, alphabet_size: int) -> Word:
    word = _parse_word(text, alphabet_size)
    if len(word) < 2:
        raise UsageError(f"patterns must have length >= 2, got {len(word)}")
    return word


def cmd_bifix(args) -> int:
    word = _parse_pattern(args.word, args.L)
    h = bifix_indicator(word)
    s = s_from_h(h)
    _emit(
        "bifix",
        {"word": word.text(), "L": args.L},
        {
            "h": h.text(),
            "s": list(s.targets),
            "expected_wait": str(expected_wait_closed(h, args.L)),
        },
    )
    return EXIT_OK


_TABLE_BUILDERS = {
    "long": p_table_long,
    "short": p_table_short,
    "P": P_table,
    "markov": chain_prob_table,
}


def _render_table(table: ProbTable, fmt: str, digits: int) -> str:
    if fmt == "csv":
        return table.to_csv(digits)
    lines = [f"h={table.h.text()}  L={table.L}  method={table.method}"]
    lines.append(f"{'k':>4} {'p_k':>14} {'P_k':>14}")
    for k in range(table.upto + 1):
        lines.append(
            f"{k:>4} {table.p[k].to_decimal(digits):>14} {table.P[k].to_decimal(digits):>14}"
        )
    return "\n".join(lines) + "\n"


def cmd_prob(args) -> int:
    if (args.h is None) == (args.word is None):
        raise UsageError("give exactly one of --h or --word")
    word = None
    if args.word is not None:
        word = _parse_pattern(args.word, args.L)
        h = bifix_indicator(word)
    else:
        try:
            h = BifixIndicator.parse(args.h)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    upto = args.K if args.K is not None else 3 * h.n

    if args.check_all:
        tables = {name: build(h, args.L, upto) for name, build in _TABLE_BUILDERS.items()}
        if word is not None:
            tables["automaton"] = automaton_prob_table(word, upto)
        names = sorted(tables)
        first = tables[names[0]]
        agree = all(tables[m].p == first.p and tables[m].P == first.P for m in names)
        _emit(
            "prob",
            {"h": h.text(), "L": args.L, "K": upto, "check_all": True, "methods": names},
            {"agreement": agree, "table": first.to_json_dict()},
        )
        if not agree:
            print("methods disagree", file=sys.stderr)
            return EXIT_PROPERTY_FAILED
        return EXIT_OK

    if args.method == "automaton":
        if word is None:
            raise UsageError("--method automaton needs --word, not --h")
        table = automaton_prob_table(word, upto)
    else:
        table = _TABLE_BUILDERS[args.method](h, args.L, upto)
    if args.format in ("csv", "table"):
        sys.stdout.write(_render_table(table, args.format, args.digits))
    else:
        _emit(
            "prob",
            {"h": h.text(), "L": args.L, "K": upto, "method": args.method},
            {"table": table.to_json_dict()},
        )
    return EXIT_OK


def _oriented_swords(args) -> tuple[SWord, SWord, dict]:
    """Resolve --h/--h2 or --s/--s2 into a strictly ordered pair s > s'."""
    by_h = args.h is not None or args.h2 is not None
    by_s = args.s is not None or args.s2 is not None
    if by_h == by_s:
        raise UsageError("give either --h and --h2, or --s and --s2")
    if by_h:
        if args.h is None or args.h2 is None:
            raise UsageError("need both --h and --h2")
        try:
            h_a = BifixIndicator.parse(args.h)
            h_b = BifixIndicator.parse(args.h2)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        order = compare_indicators(h_a, h_b)
        if order is Ordering.INCOMPARABLE:
            raise UsageError("indicators are incomparable: neither h <= h2 nor h2 <= h")
        if order is Ordering.EQUAL:
            raise UsageError("indicators are equal; nothing to compare")
        low, high = (h_a, h_b) if order is Ordering.LESS else (h_b, h_a)
        params = {"h": h_a.text(), "h2": h_b.text(), "oriented": [low.text(), high.text()]}
        params["k0_indicator_formula"] = k0_of_pair(low, high)
        params["k0_sharp"] = k0_sharp(low, high)
        return s_from_h(low), s_from_h(high), params
    if args.s is None or args.s2 is None:
        raise UsageError("need both --s and --s2")
    try:
        s_a = SWord.parse(args.s)
        s_b = SWord.parse(args.s2)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    order = compare_swords(s_a, s_b)
    if order is Ordering.INCOMPARABLE:
        raise UsageError("jump-target words are incomparable")
    if order is Ordering.EQUAL:
        raise UsageError("jump-target words are equal; nothing to compare")
    big, small = (s_a, s_b) if order is Ordering.GREATER else (s_b, s_a)
    return big, small, {"s": s_a.text(), "s2": s_b.text()}


def cmd_compare(args) -> int:
    s_big, s_small, params = _oriented_swords(args)
    upto = args.K if args.K is not None else 3 * s_big.n
    report = compare_chains(s_big, s_small, args.L, upto)
    params.update({"L": args.L, "K": upto})
    _emit("compare", params, report.to_json_dict())
    return EXIT_OK if report.conforms else EXIT_PROPERTY_FAILED


def cmd_census(args) -> int:
    try:
        classes = census(args.n, args.L, budget=_enum_budget(), max_representatives=args.max_reps)
    except EnumerationBudgetError as exc:
        raise UsageError(str(exc)) from exc
    _emit(
        "census",
        {"n": args.n, "L": args.L, "max_representatives": args.max_reps},
        {
            "classes": [
                {
                    "h": h.text(),
                    "count": cls.count,
                    "representatives": [w.text() for w in cls.representatives],
                }
                for h, cls in classes.items()
            ]
        },
    )
    return EXIT_OK


def cmd_counterexample(args) -> int:
    report = counterexample_check(args.L)
    _emit("counterexample", {"L": args.L}, report.to_json_dict())
    return EXIT_OK if report.ok else EXIT_PROPERTY_FAILED


def cmd_simulate(args) -> int:
    word = _parse_pattern(args.word, args.L)
    try:
        config = McConfig(trials=args.trials, k=args.k, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = monte_carlo(word, config)
    _emit(
        "simulate",
        {"word": word.text(), "L": args.L, "trials": args.trials, "k": args.k, "seed": args.seed},
        result.to_json_dict(),
    )
    return EXIT_OK


def cmd_lemmas(args) -> int:
    try:
        s = SWord.parse(args.s)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    upto = args.K if args.K is not None else 3 * s.n
    if upto < s.n:
        raise UsageError(f"K must be at least n = {s.n}, got {upto}")
    report = check_lemmas(ChainSpec(s, args.L), upto)
    _emit("lemmas", {"s": s.text(), "L": args.L, "K": upto}, report.to_json_dict())
    return EXIT_OK if report.passed else EXIT_PROPERTY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patprob",
        description="Exact pattern-occurrence probabilities in random words",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bifix", help="bifix indicator, jump targets and expected wait")
    p.add_argument("--word", required=True, help="the pattern")
    p.add_argument("--L", type=int, default=2, help="alphabet size (default 2)")
    p.set_defaults(func=cmd_bifix)

    p = sub.add_parser("prob", help="table of p_k and P_k by a chosen method")
    p.add_argument("--h", help="bifix indicator bits, e.g. 1000")
    p.add_argument("--word", help="pattern; implies its indicator")
    p.add_argument("--L", type=int, default=2)
    p.add_argument("--K", type=int, help="table horizon (default 3n)")
    p.add_argument("--method", choices=["long", "short", "P", "markov", "automaton"],
                   default="short")
    p.add_argument("--check-all", action="store_true",
                   help="run every applicable method and require exact agreement")
    p.add_argument("--format", choices=["json", "csv", "table"], default="json")
    p.add_argument("--digits", type=int, default=12, help="decimal digits for csv/table")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("compare", help="compare two classes or two jump-target words")
    p.add_argument("--h")
    p.add_argument("--h2")
    p.add_argument("--s")
    p.add_argument("--s2")
    p.add_argument("--L", type=int, default=2)
    p.add_argument("--K", type=int, help="comparison horizon (default 3n)")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("census", help="partition all length-n words by bifix class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--L", type=int, default=2)
    p.add_argument("--max-reps", type=int, default=4)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("counterexample",
                       help="verify that occurrence probability is not affine in the indicator")
    p.add_argument("--L", type=int, default=2)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("simulate", help="seeded Monte Carlo first-occurrence simulation")
    p.add_argument("--word", required=True)
    p.add_argument("--L", type=int, default=2)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--k", type=int, default=20)
    p.add_argument("--seed", type=int, default=DEFAULT_MC_SEED)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("lemmas", help="check the reach-probability laws of a chain")
    p.add_argument("--s", required=True, help="jump targets, e.g. 0,1,1")
    p.add_argument("--L", type=int, default=2)
    p.add_argument("--K", type=int, help="horizon (default 3n, must be >= n)")
    p.set_defaults(func=cmd_lemmas)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
