"""The tree of independent index/member sequences and its rank.

Given families ``C_0, ..., C_{gamma-1}`` of subsets of a universe, the nodes
at depth ``n`` are ``n`` pairs ``(xi_i, H_i)`` with distinct indices,
``H_i`` in ``C_{xi_i}``, and ``H_0, ..., H_{n-1}`` independent. Leaves have
rank 0 and a node's rank is one more than the largest rank below it, so for
finite families the root rank is the length of the longest branch.

Independence ignores order, so nodes are memoized on their *set* of pairs;
:func:`rank_naive` walks ordered sequences without memoization and serves as
the oracle.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product
from pathlib import Path
from typing import Hashable, Iterable, Sequence, Union

from .errors import FamilyFormatError, SubsequenceTooLong

TreeNode = frozenset  # of (index, member) pairs

NAIVE_MAX_UNIVERSE = 8
NAIVE_MAX_MEMBERS = 16


def bits_to_list(bits: int) -> list[int]:
    return [i for i in range(bits.bit_length()) if bits >> i & 1]


def list_to_bits(elements: Iterable[int]) -> int:
    bits = 0
    for e in elements:
        bits |= 1 << e
    return bits


@dataclass(frozen=True)
class FamilySequence:
    """Families of bitmask subsets of ``{0, ..., universe_size-1}``."""

    universe_size: int
    families: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.universe_size < 0:
            raise FamilyFormatError("universe size must be >= 0")
        full = (1 << self.universe_size) - 1
        normalized = []
        for xi, fam in enumerate(self.families):
            for m in fam:
                if not isinstance(m, int) or m < 0 or m & ~full:
                    raise FamilyFormatError(f"member {m!r} of family {xi} is not a subset of the universe")
            normalized.append(tuple(sorted(set(fam))))
        object.__setattr__(self, "families", tuple(normalized))

    @classmethod
    def from_sets(cls, universe_size: int, families: Iterable[Iterable[Iterable[int]]]) -> FamilySequence:
        return cls(universe_size, tuple(tuple(list_to_bits(s) for s in fam) for fam in families))

    @property
    def gamma(self) -> int:
        return len(self.families)

    @property
    def full(self) -> int:
        return (1 << self.universe_size) - 1

    def total_members(self) -> int:
        return sum(len(f) for f in self.families)

    def subsequence(self, indices: Sequence[int]) -> FamilySequence:
        return FamilySequence(self.universe_size, tuple(self.families[i] for i in indices))


# -- the memoized engine -----------------------------------------------------


def _split(parts: list, member) -> Union[list, None]:
    refined = []
    for c in parts:
        inside = c & member
        outside = c ^ inside
        if not inside or not outside:
            return None
        refined.append(inside)
        refined.append(outside)
    return refined


class _Explorer:
    """Set-keyed exploration of the tree over any set type with ``&``/``^``."""

    def __init__(self, families: Sequence[Sequence[Hashable]], full, keep_children: bool = False):
        self.families = [tuple(f) for f in families]
        self.full = full
        self.keep_children = keep_children
        self.ranks: dict[frozenset, int] = {}
        self.children: dict[frozenset, tuple[frozenset, ...]] = {}

    def child_steps(self, node: frozenset, parts: list):
        used = {xi for xi, _ in node}
        for xi, fam in enumerate(self.families):
            if xi in used:
                continue
            for h in fam:
                refined = _split(parts, h)
                if refined is not None:
                    yield node | {(xi, h)}, refined

    def rank(self, node: frozenset, parts: list) -> int:
        cached = self.ranks.get(node)
        if cached is not None:
            return cached
        best = 0
        kids = []
        for child, refined in self.child_steps(node, parts):
            kids.append(child)
            best = max(best, self.rank(child, refined) + 1)
        if self.keep_children:
            self.children.setdefault(node, tuple(kids))
        # setdefault is atomic, so concurrent workers agree on one value
        return self.ranks.setdefault(node, best)

    def root_rank(self, workers: int = 1) -> int:
        root = frozenset()
        if not self.full:
            return self.ranks.setdefault(root, 0)
        if workers <= 1:
            return self.rank(root, [self.full])
        steps = list(self.child_steps(root, [self.full]))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            sub = list(pool.map(lambda step: self.rank(*step), steps))
        if self.keep_children:
            self.children.setdefault(root, tuple(child for child, _ in steps))
        return self.ranks.setdefault(root, max((r + 1 for r in sub), default=0))


def rank_of_families(families: Sequence[Sequence[Hashable]], full, workers: int = 1) -> int:
    """Root rank for families of any hashable set type (ClopenSet or int masks)."""
    return _Explorer(families, full).root_rank(workers)


def rank(fs: FamilySequence, workers: int = 1) -> int:
    return rank_of_families(fs.families, fs.full, workers)


def children(fs: FamilySequence, node: TreeNode) -> set[TreeNode]:
    """One-pair extensions of ``node`` that remain nodes of the tree."""
    node = frozenset(node)
    parts = [fs.full] if fs.full else []
    for _, h in sorted(node):
        parts = _split(parts, h)
        if parts is None:
            raise ValueError(f"{sorted(node)} is not a node: members are not independent")
    return {child for child, _ in _Explorer(fs.families, fs.full).child_steps(node, parts)}


def explore(fs: FamilySequence) -> tuple[dict[frozenset, int], dict[frozenset, tuple[frozenset, ...]]]:
    """Ranks and child lists of every node reachable from the root."""
    ex = _Explorer(fs.families, fs.full, keep_children=True)
    ex.root_rank()
    return ex.ranks, ex.children


# -- the oracle --------------------------------------------------------------


def _independent_by_patterns(members: Sequence[int], full: int) -> bool:
    for pattern in product((0, 1), repeat=len(members)):
        cell = full
        for m, s in zip(members, pattern):
            cell &= m if s == 0 else full & ~m
        if not cell:
            return False
    return True


def rank_naive(fs: FamilySequence) -> int:
    """Rank by unmemoized recursion over ordered sequences, checking every
    sign pattern from scratch at each node."""
    full = fs.full

    def rho(seq: list[tuple[int, int]]) -> int:
        used = {xi for xi, _ in seq}
        best = 0
        for xi in range(fs.gamma):
            if xi in used:
                continue
            for h in fs.families[xi]:
                ext = seq + [(xi, h)]
                if _independent_by_patterns([m for _, m in ext], full):
                    best = max(best, rho(ext) + 1)
        return best

    return rho([])


def mrank(fs: FamilySequence, m: int, workers: int = 1) -> int:
    """Least rank over the length-``m`` increasing index subsequences."""
    if m > fs.gamma:
        raise SubsequenceTooLong(f"m={m} exceeds gamma={fs.gamma}")
    if m < 0:
        raise ValueError("m must be >= 0")
    return min(rank(fs.subsequence(idx), workers) for idx in combinations(range(fs.gamma), m))


# -- file format and DOT -----------------------------------------------------


def family_to_document(fs: FamilySequence) -> dict:
    return {
        "universe": fs.universe_size,
        "families": [[bits_to_list(m) for m in fam] for fam in fs.families],
    }


def dumps_family(fs: FamilySequence) -> str:
    return json.dumps(family_to_document(fs), sort_keys=True) + "\n"


def family_from_document(doc) -> FamilySequence:
    if not isinstance(doc, dict) or set(doc) != {"universe", "families"}:
        raise FamilyFormatError("expected an object with exactly 'universe' and 'families'")
    universe = doc["universe"]
    if isinstance(universe, bool) or not isinstance(universe, int) or universe < 0:
        raise FamilyFormatError(f"'universe' must be a natural number, got {universe!r}")
    families = doc["families"]
    if not isinstance(families, list):
        raise FamilyFormatError("'families' must be a list")
    sets = []
    for xi, fam in enumerate(families):
        if not isinstance(fam, list):
            raise FamilyFormatError(f"family {xi} must be a list of sets")
        members = []
        for s in fam:
            if not isinstance(s, list) or any(isinstance(e, bool) or not isinstance(e, int) for e in s):
                raise FamilyFormatError(f"family {xi}: sets must be lists of naturals, got {s!r}")
            if any(b <= a for a, b in zip(s, s[1:])):
                raise FamilyFormatError(f"family {xi}: set {s} is not strictly increasing")
            if s and (s[0] < 0 or s[-1] >= universe):
                raise FamilyFormatError(f"family {xi}: set {s} leaves the universe 0..{universe - 1}")
            members.append(s)
        sets.append(members)
    return FamilySequence.from_sets(universe, sets)


def loads_family(text: str) -> FamilySequence:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyFormatError(f"invalid JSON: {exc}") from exc
    return family_from_document(doc)


def load_family(path: Union[str, Path]) -> FamilySequence:
    return loads_family(Path(path).read_text())


def node_label(node: TreeNode) -> str:
    pairs = ", ".join(f"({xi},{{{','.join(map(str, bits_to_list(h)))}}})" for xi, h in sorted(node))
    return f"[{pairs}]"


def _node_key(node: TreeNode) -> tuple:
    return (len(node), sorted(node))


def to_dot(fs: FamilySequence) -> str:
    """Deterministic DOT rendering of the explored tree (pair-set nodes)."""
    ranks, kids = explore(fs)
    nodes = sorted(ranks, key=_node_key)
    ids = {node: f"n{i}" for i, node in enumerate(nodes)}
    lines = ["digraph rank_tree {", "  node [shape=box];"]
    for node in nodes:
        lines.append(f'  {ids[node]} [label="{node_label(node)}", rank_value={ranks[node]}];')
    for node in nodes:
        for child in sorted(kids.get(node, ()), key=_node_key):
            lines.append(f"  {ids[node]} -> {ids[child]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
