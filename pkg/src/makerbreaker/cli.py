"""Command line entry point.

Subcommands: ``simulate`` (play a configured game over seeds and emit
rows plus traces), ``verify-round`` (re-check serialized certificates
against a trace), ``thresholds`` (tabulate the reporting formulas), and
``oracle`` (solve a tiny board exhaustively and print the fixture).
Exit code 0 means every row won and every requested check passed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .engine import BiasSpec, Player
from .errors import GameError
from .goals import GoalTournament
from .harness import ExperimentConfig, rows_to_csv, run_simulate, run_thresholds, run_verify_round
from .oracle import solve_clique_game, solve_tournament_game


def _add_simulate(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("simulate", help="play a strategy against an adversary")
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--game", choices=("biased", "fast", "fast_big", "tournament"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--goal", dest="goal_path")
    p.add_argument("--breaker", choices=("random", "greedy_spoiler", "clique_blocker"))
    p.add_argument("--seed", type=int, action="append", dest="seeds")
    p.add_argument("--seeds", type=str, dest="seed_range",
                   help="inclusive range lo:hi")
    p.add_argument("--trace", dest="trace_dir")
    p.add_argument("--out", dest="out_csv")
    p.add_argument("--check-invariants", action="store_true", default=None)
    p.add_argument("--no-check-invariants", dest="check_invariants",
                   action="store_false")
    p.add_argument("--first-player", choices=("M", "B"))


def _simulate(args: argparse.Namespace) -> int:
    config = (ExperimentConfig.from_json_file(args.config)
              if args.config else ExperimentConfig())
    overrides = {}
    for name in ("game", "n", "m", "b", "q", "r", "goal_path", "breaker",
                 "trace_dir", "out_csv", "check_invariants", "first_player"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    seeds = args.seeds or []
    if args.seed_range:
        lo, hi = args.seed_range.split(":")
        seeds.extend(range(int(lo), int(hi) + 1))
    if seeds:
        overrides["seeds"] = seeds
    for key, value in overrides.items():
        setattr(config, key, value)
    rows = run_simulate(config)
    sys.stdout.write(rows_to_csv(rows))
    return 0 if all(r.outcome == "win" for r in rows) else 1


def _verify_round(args: argparse.Namespace) -> int:
    results = run_verify_round(args.trace, args.certificate, args.n,
                               args.m, args.b, args.variant, args.first_player)
    for check in results:
        print(f"{'PASS' if check.ok else 'FAIL'} {check.name}: {check.detail}")
    return 0 if all(c.ok for c in results) else 1


def _thresholds(args: argparse.Namespace) -> int:
    if args.n:
        values = args.n
    else:
        values = []
        n = args.n_start
        while n <= args.n_end:
            values.append(n)
            n *= args.n_factor
    table = run_thresholds(values, args.m, args.b)
    if args.out:
        Path(args.out).write_text(table)
    sys.stdout.write(table)
    return 0


def _oracle(args: argparse.Namespace) -> int:
    first = Player.MAKER if args.first_player == "M" else Player.BREAKER
    if args.kind == "clique":
        solved = solve_clique_game(args.n, args.q, BiasSpec(args.m, args.b, first), first)
    else:
        goal = (GoalTournament.from_text(Path(args.goal).read_text())
                if args.goal else GoalTournament.transitive(args.q))
        solved = solve_tournament_game(args.n, goal, first)
    text = json.dumps(solved.to_json_dict(), indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    print(text)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="makerbreaker",
        description="Maker/Breaker clique and tournament games: simulate, verify, solve.")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_simulate(sub)

    p = sub.add_parser("verify-round", help="check certificates against a trace")
    p.add_argument("--trace", required=True)
    p.add_argument("--certificate", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--variant", choices=("plain", "oriented"), default="plain")
    p.add_argument("--first-player", choices=("M", "B"), default="M")

    p = sub.add_parser("thresholds", help="tabulate the reporting formulas")
    p.add_argument("--n", type=int, action="append")
    p.add_argument("--n-start", type=int, default=1 << 10)
    p.add_argument("--n-end", type=int, default=1 << 32)
    p.add_argument("--n-factor", type=int, default=4)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("oracle", help="solve a tiny board exhaustively")
    p.add_argument("--kind", choices=("clique", "tournament"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--goal")
    p.add_argument("--first-player", choices=("M", "B"), default="M")
    p.add_argument("--out")

    args = parser.parse_args(argv)
    try:
        if args.command == "simulate":
            return _simulate(args)
        if args.command == "verify-round":
            return _verify_round(args)
        if args.command == "thresholds":
            return _thresholds(args)
        return _oracle(args)
    except GameError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
