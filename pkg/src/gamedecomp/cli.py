"""Command line entry point.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 verification failure,
4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import bench
from .decompose import decompose_tree
from .formats import (
    ParseError,
    dumps,
    equilibrium_from_json,
    equilibrium_to_json,
    parse_game,
    tree_to_json,
    write_game,
)
from .game import ContractError, InvariantError, is_nash
from .gen import ConfigError, GenConfig, generate_tree, realize_tree
from .solver import solve, solve_direct

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VERIFY, EXIT_INTERNAL = range(5)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit value")
    return v


def _add_gen_flags(p):
    d = GenConfig()
    p.add_argument("--min-strategies", type=int, default=d.min_strategies)
    p.add_argument("--max-strategies", type=int, default=d.max_strategies)
    p.add_argument("--p-sum", type=float, default=d.p_sum)
    p.add_argument("--p-prod", type=float, default=d.p_prod)
    p.add_argument("--p-elim", type=float, default=d.p_elim)
    p.add_argument("--max-height", type=int, default=d.max_height)
    p.add_argument("--leaf-max-size", type=int, default=d.leaf_max_size)
    p.add_argument("--payoff-max", type=int, default=d.leaf_payoff_max)
    p.add_argument("--max-elim-insertions", type=int, default=d.max_elim_insertions)


def _gen_config(args) -> GenConfig:
    return GenConfig(
        p_sum=args.p_sum, p_prod=args.p_prod, p_elim=args.p_elim,
        max_height=args.max_height, leaf_max_size=args.leaf_max_size,
        min_strategies=args.min_strategies, max_strategies=args.max_strategies,
        leaf_payoff_max=args.payoff_max, max_elim_insertions=args.max_elim_insertions,
        seed=args.seed,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gamedecomp", description="Exact bimatrix game decomposition and solving.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="compute one exact Nash equilibrium")
    p.add_argument("game")
    p.add_argument("--no-decompose", action="store_true", help="run the base solver on the whole game")
    p.add_argument("--no-eliminate", action="store_true", help="skip dominated-strategy elimination")
    p.add_argument("--report", metavar="PATH", help="write the solve report as JSON")
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("decompose", help="print the decomposition tree as JSON")
    p.add_argument("game")
    p.add_argument("--no-eliminate", action="store_true")

    p = sub.add_parser("generate", help="write a random decomposable game")
    p.add_argument("--seed", type=_u64, required=True)
    _add_gen_flags(p)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--tree", metavar="PATH", help="also write the generated structure as tree JSON")

    p = sub.add_parser("verify", help="check an equilibrium exactly")
    p.add_argument("game")
    p.add_argument("equilibrium")

    p = sub.add_parser("bench", help="solve a generated corpus and write CSV timings")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=_u64, required=True)
    _add_gen_flags(p)
    p.add_argument("--baseline", action="store_true", help="also time the base solver alone")
    p.add_argument("--baseline-timeout", type=float, default=30.0, metavar="SECONDS")
    p.add_argument("--baseline-max-size", type=int, default=400, metavar="S")
    p.add_argument("-o", "--output", required=True)
    return parser


def _read_game(path: str):
    with open(path) as fh:
        return parse_game(fh.read())


def _cmd_solve(args) -> int:
    g = _read_game(args.game)
    if args.no_decompose:
        eq, report = solve_direct(g)
    else:
        eq, report = solve(g, eliminate=not args.no_eliminate, threads=args.threads)
    sys.stdout.write(dumps(equilibrium_to_json(eq)))
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(dumps(report.as_dict()))
    return EXIT_OK


def _cmd_decompose(args) -> int:
    g = _read_game(args.game)
    sys.stdout.write(dumps(tree_to_json(decompose_tree(g, not args.no_eliminate))))
    return EXIT_OK


def _cmd_generate(args) -> int:
    config = _gen_config(args)
    tree = realize_tree(generate_tree(config), config)
    with open(args.output, "w") as fh:
        fh.write(write_game(tree.game))
    if args.tree:
        with open(args.tree, "w") as fh:
            fh.write(dumps(tree_to_json(tree)))
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = _read_game(args.game)
    with open(args.equilibrium) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from None
    try:
        eq = equilibrium_from_json(data)
    except ContractError as exc:
        raise ParseError(str(exc)) from None
    if (len(eq.x), len(eq.y)) != g.shape:
        print(f"profile is {len(eq.x)}x{len(eq.y)}, game is {g.n}x{g.m}", file=sys.stderr)
        return EXIT_VERIFY
    if not is_nash(g, eq.x, eq.y):
        print("not a Nash equilibrium", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _cmd_bench(args) -> int:
    base = replace(_gen_config(args), seed=0)
    rows = bench.run_bench(base, args.count, args.seed, baseline=args.baseline,
                           baseline_timeout=args.baseline_timeout,
                           baseline_max_size=args.baseline_max_size)
    bench.write_csv(rows, args.output)
    summary = bench.summarize(rows)
    with open(args.output + ".summary.json", "w") as fh:
        fh.write(dumps(summary))
    print(json.dumps(summary), file=sys.stderr)
    return EXIT_OK if summary["verified"] == summary["games"] else EXIT_VERIFY


COMMANDS = {
    "solve": _cmd_solve,
    "decompose": _cmd_decompose,
    "generate": _cmd_generate,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
