"""Experiments on the finite shadows of the rank lemmas.

* :func:`run_bigrank_experiment` builds a descending chain of clopen sets in
  ``[0, w^k]``, one per derivative level, each splitting every cell of the
  chain so far inside sampled points of the next lower level. The traced
  family sequence must then have rank at least ``k``.
* :func:`run_trace_experiment` checks that intersecting with a witness set
  that meets every cell preserves the rank of the tree.
* :func:`run_random_families` collects rank statistics of uniformly random
  families. It is a heuristic curiosity only and models no forcing argument.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from statistics import mean
from typing import Optional, Sequence

from .clopen import ClopenSet, FiniteAlgebra, cell_hitting_check, format_clopen, separating_algebra, trace
from .errors import ExtensionFailure
from .independence import cells, is_independent, split_cell_extension
from .ordinals import Ordinal, omega_power
from .ranktree import FamilySequence, bits_to_list, mrank, rank, rank_of_families
from .space import LevelSample, Space, anchored_sample, default_per_level, level_sample, top_level_sample

ChainNode = tuple[tuple[int, ClopenSet], ...]

EXTRA_GENERATORS = 2


@dataclass
class ExperimentReport:
    k: int
    per_level: int
    seed: Optional[int]
    target: int
    achieved_rank: int
    witness_chain: list[ChainNode] = field(default_factory=list)
    special_checks: list[bool] = field(default_factory=list)
    mrank_profile: list[int] = field(default_factory=list)
    witness_size: int = 0
    diagnostics: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if self.achieved_rank >= self.target else "fail"

    def to_document(self) -> dict:
        return {
            "parameters": {"k": self.k, "per_level": self.per_level, "seed": self.seed},
            "target": self.target,
            "achieved_rank": self.achieved_rank,
            "status": self.status,
            "witness_chain": [
                [{"level": xi, "set": format_clopen(h)} for xi, h in node] for node in self.witness_chain
            ],
            "special_checks": self.special_checks,
            "mrank_profile": self.mrank_profile,
            "witness_size": self.witness_size,
            "diagnostics": self.diagnostics,
        }


def is_special(node: ChainNode, sample: LevelSample) -> bool:
    """Levels strictly decrease and every cell of the members meets ``sample``,
    the sample of the node's lowest level."""
    levels = [xi for xi, _ in node]
    if not node or any(b >= a for a, b in zip(levels, levels[1:])) or levels[-1] != sample.level:
        return False
    space = node[0][1].space
    return all(
        any(p in cell for p in sample.points)
        for cell in cells([h for _, h in node], space).values()
    )


def run_bigrank_experiment(k: int, per_level: Optional[int] = None) -> ExperimentReport:
    if not 1 <= k <= 6:
        raise ValueError("k must be between 1 and 6")
    if per_level is None:
        per_level = default_per_level(k)
    space = Space(omega_power(k))
    report = ExperimentReport(k=k, per_level=per_level, seed=None, target=k, achieved_rank=0)

    samples: dict[int, LevelSample] = {}
    algebras: dict[int, FiniteAlgebra] = {}
    chain: list[tuple[int, ClopenSet]] = []
    for level in range(k - 1, -1, -1):
        if not chain:
            sample = top_level_sample(level, per_level)
        else:
            # one anchor per cell: its approximants all fall inside that cell
            prev = samples[chain[-1][0]]
            anchors = []
            for cell in cells([h for _, h in chain], space).values():
                anchors.append(next(p for p in prev.points if p in cell))
            sample = anchored_sample(anchors, level, per_level)
        samples[level] = sample
        algebras[level] = separating_algebra(space, sample.points)
        try:
            h = split_cell_extension(algebras[level], sample, [h for _, h in chain])
        except ExtensionFailure as exc:
            report.diagnostics.append(f"level {level}: {exc}")
            break
        chain.append((level, h))
        node = tuple(chain)
        report.witness_chain.append(node)
        report.special_checks.append(is_special(node, sample))

    witness = sorted({p for s in samples.values() for p in s.points})
    report.witness_size = len(witness)
    members = dict(chain)
    families = []
    for level in range(k):
        fam = []
        if level in members:
            fam += [trace(members[level], witness), trace(~members[level], witness)]
        if level in algebras:
            fam += [trace(g, witness) for g in algebras[level].generators[:EXTRA_GENERATORS]]
        families.append(tuple(fam))
    fs = FamilySequence(len(witness), tuple(families))

    chain_sets = [h for _, h in chain]
    traced_chain = [trace(h, witness) for h in chain_sets]
    if not is_independent(chain_sets, space):
        report.diagnostics.append("interval chain is not independent")
    if not is_independent(traced_chain, len(witness)):
        report.diagnostics.append("traced chain is not independent")

    report.achieved_rank = rank(fs)
    report.mrank_profile = [mrank(fs, m) for m in range(k + 1)]
    if report.status == "fail" and not report.diagnostics:
        report.diagnostics.append("chain complete but traced rank below target")
    return report


def minimal_per_level(k: int, max_per_level: int = 64) -> Optional[int]:
    """Smallest ``per_level`` for which :func:`run_bigrank_experiment` passes."""
    for p in range(1, max_per_level + 1):
        report = run_bigrank_experiment(k, p)
        if report.status == "pass" and all(report.special_checks):
            return p
    return None


# -- trace preservation --------------------------------------------------------


@dataclass(frozen=True)
class TraceTrial:
    hit: bool
    missed: Optional[ClopenSet]
    interval_rank: int
    bitset_rank: int

    @property
    def agrees(self) -> bool:
        return self.interval_rank == self.bitset_rank


def trace_trial(algebras: Sequence[FiniteAlgebra], witness: Sequence[Ordinal], space: Space) -> TraceTrial:
    """Compare the tree over the full algebras with the tree over their traces."""
    witness = sorted(set(witness))
    hit = cell_hitting_check(algebras, witness, space)
    interval_families = [tuple(alg.elements()) for alg in algebras]
    interval_rank = rank_of_families(interval_families, ClopenSet.full(space))
    traced = FamilySequence(
        len(witness), tuple(tuple(trace(h, witness) for h in fam) for fam in interval_families)
    )
    return TraceTrial(hit.ok, hit.missed, interval_rank, rank(traced))


@dataclass
class TraceReport:
    k: int
    per_level: int
    trials: int
    seed: int
    hitting_passed: int = 0
    hitting_failed: int = 0
    agreements: int = 0
    violations: list[int] = field(default_factory=list)
    unchecked_disagreements: int = 0

    @property
    def status(self) -> str:
        return "fail" if self.violations else "pass"

    def to_document(self) -> dict:
        return {
            "parameters": {"k": self.k, "per_level": self.per_level, "trials": self.trials, "seed": self.seed},
            "hitting_passed": self.hitting_passed,
            "hitting_failed": self.hitting_failed,
            "agreements": self.agreements,
            "violations": self.violations,
            "unchecked_disagreements": self.unchecked_disagreements,
            "status": self.status,
        }


def run_trace_experiment(k: int, per_level: int = 2, trials: int = 100, seed: int = 0,
                         max_generators: int = 2) -> TraceReport:
    """Random small subalgebras of separating algebras, traced onto random witnesses.

    A trial whose witness meets every cell must give equal ranks; such a
    disagreement is a violation. Disagreements on trials that fail the
    hitting check are only counted.
    """
    if not 1 <= k <= 4:
        raise ValueError("k must be between 1 and 4")
    rng = random.Random(seed)
    space = Space(omega_power(k))
    samples = level_sample(space, k, per_level)
    pool = sorted({p for s in samples for p in s.points} | {space.top})
    report = TraceReport(k, per_level, trials, seed)
    for t in range(trials):
        algebras = []
        for s in samples:
            n = rng.randint(1, min(max_generators, len(s.points)))
            algebras.append(separating_algebra(space, rng.sample(s.points, n)))
        witness = rng.sample(pool, rng.randint(1, len(pool)))
        result = trace_trial(algebras, witness, space)
        if result.hit:
            report.hitting_passed += 1
            if result.agrees:
                report.agreements += 1
            else:
                report.violations.append(t)
        else:
            report.hitting_failed += 1
            report.unchecked_disagreements += not result.agrees
    return report


# -- random families (heuristic only) ------------------------------------------


@dataclass
class RandomFamilyStats:
    universe: int
    gamma: int
    members: int
    trials: int
    seed: int
    ranks: list[int] = field(default_factory=list)
    mranks: dict[int, list[int]] = field(default_factory=dict)
    samples: list[FamilySequence] = field(default_factory=list, repr=False)

    def histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.ranks).items()))

    def summary(self) -> dict:
        return {
            "parameters": {"universe": self.universe, "gamma": self.gamma, "members": self.members,
                           "trials": self.trials, "seed": self.seed},
            "rank": _describe(self.ranks),
            "histogram": {str(r): n for r, n in self.histogram().items()},
            "mrank": {str(m): _describe(v) for m, v in sorted(self.mranks.items())},
        }


def _describe(values: list[int]) -> dict:
    if not values:
        return {"mean": None, "min": None, "max": None}
    return {"mean": round(mean(values), 6), "min": min(values), "max": max(values)}


def random_family_sequence(rng: random.Random, universe: int, gamma: int, members: int) -> FamilySequence:
    fams = tuple(tuple(rng.getrandbits(universe) if universe else 0 for _ in range(members))
                 for _ in range(gamma))
    return FamilySequence(universe, fams)


def run_random_families(universe: int, gamma: int, members: int, trials: int, seed: int) -> RandomFamilyStats:
    """Rank and mrank statistics over uniformly random families.

    Heuristic only: this samples finite families and says nothing about
    generic extensions.
    """
    if not 0 <= universe <= 24:
        raise ValueError("universe must be between 0 and 24")
    if not 0 <= gamma <= 8:
        raise ValueError("gamma must be between 0 and 8")
    rng = random.Random(seed)
    stats = RandomFamilyStats(universe, gamma, members, trials, seed,
                              mranks={m: [] for m in range(gamma + 1)})
    for _ in range(trials):
        fs = random_family_sequence(rng, universe, gamma, members)
        stats.samples.append(fs)
        stats.ranks.append(rank(fs))
        for m in range(gamma + 1):
            stats.mranks[m].append(mrank(fs, m))
    return stats


def describe_family(fs: FamilySequence) -> str:
    return "; ".join(
        f"C{xi}=" + " ".join("{" + ",".join(map(str, bits_to_list(h))) + "}" for h in fam)
        for xi, fam in enumerate(fs.families)
    )
