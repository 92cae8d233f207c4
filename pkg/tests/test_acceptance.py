"""Acceptance suite: one test per criterion, each logging a pass/fail line
that is repeated in the terminal summary."""

import json
import os
import random
import subprocess
import sys
import time
from itertools import combinations
from math import floor, log2

from conftest import random_clopen
from scatterlab.clopen import ClopenSet, trace
from scatterlab.independence import atom_count, max_independent_length
from scatterlab.lab import run_bigrank_experiment, run_trace_experiment
from scatterlab.ordinals import Ordinal, omega_power
from scatterlab.ranktree import FamilySequence, mrank, rank, rank_naive
from scatterlab.space import ALEPH0, Fin, Space, cardinal_sequence, oracle_grid, oracle_level, point_level


def record(log, number, title, ok, detail):
    log.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")
    assert ok, detail


def random_family(rng):
    universe = rng.randint(0, 8)
    full = (1 << universe) - 1
    return FamilySequence(universe, tuple(
        tuple(rng.randint(0, full) for _ in range(rng.randint(0, 4)))
        for _ in range(rng.randint(0, 4))
    ))


def level_points(k, m, level, count):
    """``count`` distinct points of ``[0, w^k*m]`` whose trailing exponent is ``level``."""
    points = []
    for head in range(m):
        for j in range(1, count + 1):
            terms = [(k, head)] if head else []
            points.append(Ordinal(terms + [(level, j)]))
            if len(points) == count:
                return points
    return points


def test_cardinal_sequences(acceptance_log):
    start = time.perf_counter()
    mismatches = []
    for k in range(1, 6):
        for m in range(1, 10):
            space = Space(omega_power(k, m))
            if cardinal_sequence(space) != [ALEPH0] * k + [Fin(m)]:
                mismatches.append((k, m, "sequence"))
            for level in range(k):
                pts = level_points(k, m, level, 50)
                if len(set(pts)) != 50 or any(p not in space for p in pts):
                    mismatches.append((k, m, level, "sample"))
                if any(oracle_level(p) != level or point_level(space, p) != level for p in pts):
                    mismatches.append((k, m, level))
            top = [omega_power(k, j) for j in range(1, m + 2)]
            if [p in space and oracle_level(p) == k for p in top] != [True] * m + [False]:
                mismatches.append((k, m, "top"))
    elapsed = time.perf_counter() - start
    record(acceptance_log, 1, "cardinal sequences", not mismatches and elapsed < 5,
           f"45 spaces, {len(mismatches)} mismatches, {elapsed:.2f}s (limit 5s)")


def test_rank_oracle_equivalence(acceptance_log):
    rng = random.Random(20240101)
    start = time.perf_counter()
    bad = 0
    for _ in range(200):
        fs = random_family(rng)
        bad += rank(fs) != rank_naive(fs)
    elapsed = time.perf_counter() - start
    record(acceptance_log, 2, "rank equals naive rank", bad == 0 and elapsed < 30,
           f"200 instances, {bad} disagreements, {elapsed:.2f}s (limit 30s)")


def test_bigrank(acceptance_log):
    results = []
    slowest = 0.0
    for k in range(1, 6):
        start = time.perf_counter()
        report = run_bigrank_experiment(k, 2**k + 1)
        slowest = max(slowest, time.perf_counter() - start)
        results.append((k, report.achieved_rank, report.status == "pass" and all(report.special_checks)
                        and len(report.special_checks) == k))
    ok = all(r[2] for r in results) and slowest < 60
    detail = ", ".join(f"k={k} rank={r}" for k, r, _ in results)
    record(acceptance_log, 3, "descending chain rank", ok, f"{detail}; slowest {slowest:.2f}s (limit 60s)")


def test_trace_preserves_rank(acceptance_log):
    start = time.perf_counter()
    hits = violations = 0
    for k in range(1, 4):
        report = run_trace_experiment(k, per_level=2, trials=100, seed=k)
        hits += report.hitting_passed
        violations += len(report.violations)
    elapsed = time.perf_counter() - start
    record(acceptance_log, 4, "trace preserves rank", violations == 0 and hits > 0 and elapsed < 60,
           f"300 trials over k=1..3, {hits} hitting, {violations} violations, {elapsed:.2f}s (limit 60s)")


def test_atom_bound(acceptance_log):
    rng = random.Random(77)
    space = Space(omega_power(2))
    points = [p for p in oracle_grid(2, 5) if p <= space.top]
    start = time.perf_counter()
    violations = tight = 0
    for _ in range(200):
        family = [random_clopen(rng, space, points, max_pieces=4) for _ in range(rng.randint(1, 7))]
        length = max_independent_length(family, len(family), space, prune=False)
        bound = floor(log2(atom_count(family, space)))
        violations += length > bound
        tight += length == bound
    elapsed = time.perf_counter() - start
    record(acceptance_log, 5, "atom bound", violations == 0 and elapsed < 30,
           f"200 families, {violations} violations, {tight} tight, {elapsed:.2f}s (limit 30s)")


def test_boolean_laws_and_trace(acceptance_log):
    rng = random.Random(5)
    space = Space(omega_power(2))
    points = [p for p in oracle_grid(2, 4) if p <= space.top]
    bad_laws = 0
    for _ in range(500):
        a, b, c = (random_clopen(rng, space, points) for _ in range(3))
        bad_laws += not (
            ~(a | b) == ~a & ~b and ~(a & b) == ~a | ~b
            and a & (b | c) == (a & b) | (a & c) and a | (b & c) == (a | b) & (a | c)
            and ~~a == a
        )
    bad_trace = 0
    for _ in range(200):
        a, b = random_clopen(rng, space, points), random_clopen(rng, space, points)
        witness = rng.sample(points, rng.randint(1, 12))
        full = (1 << len(witness)) - 1
        ta, tb = trace(a, witness), trace(b, witness)
        bad_trace += not (trace(a | b, witness) == ta | tb and trace(a & b, witness) == ta & tb
                          and trace(~a, witness) == full & ~ta
                          and trace(ClopenSet.full(space), witness) == full)
    record(acceptance_log, 6, "Boolean laws and trace homomorphism", bad_laws == 0 and bad_trace == 0,
           f"500 law trials, {bad_laws} violations; 200 trace trials, {bad_trace} violations")


def test_subtree_monotonicity(acceptance_log):
    rng = random.Random(99)
    violations = 0
    for _ in range(100):
        fs = random_family(rng)
        r = rank(fs)
        for m in range(fs.gamma + 1):
            violations += any(rank(fs.subsequence(idx)) > r for idx in combinations(range(fs.gamma), m))
            violations += mrank(fs, m) > r
    record(acceptance_log, 7, "subtree monotonicity", violations == 0,
           f"100 instances, {violations} violations")


CLI_RUNS = [
    ["cb", "--lambda", "w^3*2 + w + 4"],
    ["rank", "--input", "{fam}"],
    ["rank", "--input", "{fam}", "--naive"],
    ["rank", "--input", "{fam}", "--workers", "4"],
    ["mrank", "--input", "{fam}", "--m", "2"],
    ["indep", "--input", "{fam}"],
    ["lemma4", "--k", "3"],
    ["sweep", "--k", "2"],
    ["trace-check", "--k", "2", "--trials", "30", "--seed", "7"],
    ["random-exp", "--universe", "8", "--gamma", "3", "--members", "3", "--trials", "30", "--seed", "1"],
    ["random-exp", "--universe", "8", "--gamma", "3", "--members", "3", "--trials", "30", "--seed", "1", "--json"],
]


def test_cli_determinism(acceptance_log, tmp_path):
    fam = tmp_path / "fam.json"
    fam.write_text(json.dumps({"universe": 4, "families": [[[0, 1]], [[1, 2]], [[0, 1, 2]]]}))
    differing = []
    for argv in CLI_RUNS:
        argv = [a.format(fam=fam) for a in argv]
        outputs = []
        for hashseed in ("1", "2"):
            env = dict(os.environ, PYTHONHASHSEED=hashseed)
            proc = subprocess.run([sys.executable, "-m", "scatterlab", *argv],
                                  capture_output=True, env=env, check=False)
            outputs.append((proc.returncode, proc.stdout))
        if outputs[0] != outputs[1] or outputs[0][0] != 0:
            differing.append(argv[0])
    record(acceptance_log, 8, "CLI determinism", not differing,
           f"{len(CLI_RUNS)} invocations run twice, differing or failing: {differing or 'none'}")
