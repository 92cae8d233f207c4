"""Command-line front end.

Exit codes: 0 on success, 1 when an experiment or check fails, 2 on bad input.
All output is line-oriented; ``--json`` switches a subcommand to a single
JSON document instead.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import lab, ranktree
from .errors import OrdinalParseError, ScatterLabError
from .independence import is_independent
from .ordinals import parse
from .space import Space, cardinal_sequence, height

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(args, lines: list[str], doc: dict) -> None:
    if getattr(args, "json", False):
        print(json.dumps(doc, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _load(path: str) -> ranktree.FamilySequence:
    try:
        return ranktree.load_family(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def cmd_cb(args) -> int:
    top = parse(args.lam)
    if not top:
        raise InputError("lambda must be > 0")
    space = Space(top)
    seq = cardinal_sequence(space)
    lines = [f"lambda: {top}", f"height: {height(space)}"]
    lines += [f"{a} {c}" for a, c in enumerate(seq)]
    _emit(args, lines, {"lambda": str(top), "height": int(height(space)),
                        "levels": [str(c) for c in seq]})
    return EXIT_OK


def cmd_rank(args) -> int:
    fs = _load(args.input)
    if args.naive:
        if fs.universe_size > ranktree.NAIVE_MAX_UNIVERSE or fs.total_members() > ranktree.NAIVE_MAX_MEMBERS:
            raise InputError(
                f"--naive is limited to universe <= {ranktree.NAIVE_MAX_UNIVERSE} and "
                f"<= {ranktree.NAIVE_MAX_MEMBERS} members in total "
                f"(got universe {fs.universe_size}, {fs.total_members()} members)"
            )
        value = ranktree.rank_naive(fs)
    else:
        value = ranktree.rank(fs, workers=args.workers)
    if args.dot:
        Path(args.dot).write_text(ranktree.to_dot(fs))
    _emit(args, [f"rank: {value}"], {"rank": value})
    return EXIT_OK


def cmd_mrank(args) -> int:
    fs = _load(args.input)
    value = ranktree.mrank(fs, args.m, workers=args.workers)
    _emit(args, [f"mrank: {value}"], {"m": args.m, "mrank": value})
    return EXIT_OK


def cmd_indep(args) -> int:
    fs = _load(args.input)
    members = [h for fam in fs.families for h in fam]
    value = is_independent(members, fs.universe_size)
    _emit(args, [f"independent: {str(value).lower()}"], {"independent": value, "length": len(members)})
    return EXIT_OK


def cmd_lemma4(args) -> int:
    report = lab.run_bigrank_experiment(args.k, args.per_level)
    lines = [
        f"k: {report.k}",
        f"per_level: {report.per_level}",
        f"target: {report.target}",
        f"achieved: {report.achieved_rank}",
        f"witness_points: {report.witness_size}",
    ]
    for node, special in zip(report.witness_chain, report.special_checks):
        xi, h = node[-1]
        lines.append(f"chain level {xi} special={str(special).lower()} H={h}")
    lines.append("mrank: " + " ".join(map(str, report.mrank_profile)))
    lines += [f"diagnostic: {d}" for d in report.diagnostics]
    lines.append(f"status: {report.status}")
    _emit(args, lines, report.to_document())
    return EXIT_OK if report.status == "pass" and all(report.special_checks) else EXIT_FAIL


def cmd_sweep(args) -> int:
    found = lab.minimal_per_level(args.k, args.max_per_level)
    lines = [f"k: {args.k}", f"minimal_per_level: {found if found is not None else 'none'}"]
    _emit(args, lines, {"k": args.k, "minimal_per_level": found})
    return EXIT_OK if found is not None else EXIT_FAIL


def cmd_trace_check(args) -> int:
    report = lab.run_trace_experiment(args.k, args.per_level, args.trials, args.seed)
    lines = [
        f"k: {report.k}",
        f"trials: {report.trials}",
        f"seed: {report.seed}",
        f"hitting_passed: {report.hitting_passed}",
        f"hitting_failed: {report.hitting_failed}",
        f"agreements: {report.agreements}",
        f"violations: {len(report.violations)}",
        f"unchecked_disagreements: {report.unchecked_disagreements}",
        f"status: {report.status}",
    ]
    _emit(args, lines, report.to_document())
    return EXIT_OK if report.status == "pass" else EXIT_FAIL


def cmd_random_exp(args) -> int:
    stats = lab.run_random_families(args.universe, args.gamma, args.members, args.trials, args.seed)
    if args.dump:
        out = Path(args.dump)
        out.mkdir(parents=True, exist_ok=True)
        width = len(str(max(args.trials - 1, 0)))
        for i, fs in enumerate(stats.samples):
            (out / f"trial_{i:0{width}d}.json").write_text(ranktree.dumps_family(fs))
    summary = stats.summary()
    lines = ["heuristic: uniform random finite families (no forcing model)",
             f"universe: {args.universe}", f"gamma: {args.gamma}", f"members: {args.members}",
             f"trials: {args.trials}", f"seed: {args.seed}"]
    r = summary["rank"]
    lines.append(f"rank mean={r['mean']} min={r['min']} max={r['max']}")
    lines += [f"rank_hist {value} {count}" for value, count in stats.histogram().items()]
    for m, d in summary["mrank"].items():
        lines.append(f"mrank m={m} mean={d['mean']} min={d['min']} max={d['max']}")
    _emit(args, lines, summary)
    return EXIT_OK


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scatterlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="emit one JSON document")
        p.set_defaults(func=func)
        return p

    p = add("cb", cmd_cb, "height and cardinal sequence of [0, lambda]")
    p.add_argument("--lambda", dest="lam", required=True, help='ordinal literal, e.g. "w^2*3 + 1"')

    p = add("rank", cmd_rank, "rank of the tree of a family file")
    p.add_argument("--input", required=True)
    p.add_argument("--naive", action="store_true", help="use the unmemoized oracle")
    p.add_argument("--dot", help="write the explored tree as DOT")
    p.add_argument("--workers", type=_natural, default=1)

    p = add("mrank", cmd_mrank, "least rank over increasing subsequences of length m")
    p.add_argument("--input", required=True)
    p.add_argument("--m", type=_natural, required=True)
    p.add_argument("--workers", type=_natural, default=1)

    p = add("indep", cmd_indep, "is the concatenation of all families independent")
    p.add_argument("--input", required=True)

    p = add("lemma4", cmd_lemma4, "descending-chain rank experiment on [0, w^k]")
    p.add_argument("--k", type=_natural, required=True)
    p.add_argument("--per-level", type=_natural, default=None)

    p = add("sweep", cmd_sweep, "smallest per_level for which lemma4 passes")
    p.add_argument("--k", type=_natural, required=True)
    p.add_argument("--max-per-level", type=_natural, default=64)

    p = add("trace-check", cmd_trace_check, "rank preservation under tracing onto witnesses")
    p.add_argument("--k", type=_natural, required=True)
    p.add_argument("--per-level", type=_natural, default=2)
    p.add_argument("--trials", type=_natural, default=100)
    p.add_argument("--seed", type=_natural, default=0)

    p = add("random-exp", cmd_random_exp, "heuristic rank statistics of random families")
    p.add_argument("--universe", type=_natural, required=True)
    p.add_argument("--gamma", type=_natural, required=True)
    p.add_argument("--members", type=_natural, required=True)
    p.add_argument("--trials", type=_natural, default=100)
    p.add_argument("--seed", type=_natural, default=0)
    p.add_argument("--dump", help="directory to write each sampled family file into")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OrdinalParseError as exc:
        print(f"error: invalid ordinal literal: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, ScatterLabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
