"""Cantor-Bendixson structure of the ordinal interval spaces [0, top].

Every point of [0, top] sits on exactly one derivative level: 0 and the
successors are isolated, and a limit ``beta + w^e*c`` survives exactly ``e``
derivatives. Levels below the leading exponent of ``top`` are countably
infinite; the top level is finite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import LevelOutOfRange, PointOutsideSpace
from .ordinals import ZERO, Ordinal, OrdinalLike, omega_power


@dataclass(frozen=True)
class Space:
    """The compact scattered space [0, top]."""

    top: Ordinal

    def __post_init__(self) -> None:
        object.__setattr__(self, "top", Ordinal.of(self.top))
        if not self.top:
            raise ValueError("space top must be > 0")

    def __contains__(self, p: OrdinalLike) -> bool:
        return Ordinal.of(p) <= self.top

    def __str__(self) -> str:
        return f"[0, {self.top}]"


@dataclass(frozen=True)
class Cardinality:
    """Exact size of a derivative level: a natural ``count`` or aleph_0 (``count is None``)."""

    count: Union[int, None]

    @property
    def is_infinite(self) -> bool:
        return self.count is None

    def __str__(self) -> str:
        return "aleph0" if self.count is None else str(self.count)


ALEPH0 = Cardinality(None)


def Fin(n: int) -> Cardinality:
    if n < 0:
        raise ValueError("cardinality must be nonnegative")
    return Cardinality(n)


@dataclass(frozen=True)
class LevelSample:
    """A finite sample of one derivative level.

    ``parent_anchors`` maps each point to the nearest higher-level sampled
    point it approximates, or ``None`` for points of the top sampled level.
    """

    level: int
    points: tuple[Ordinal, ...]
    parent_anchors: dict = field(default_factory=dict, compare=False)


def point_level(space: Space, p: OrdinalLike) -> int:
    p = Ordinal.of(p)
    if p > space.top:
        raise PointOutsideSpace(f"{p} is outside {space}")
    if not p or p.is_successor():
        return 0
    return p.trailing_exponent()


def max_level(space: Space) -> int:
    return space.top.leading_exponent()


def height(space: Space) -> Ordinal:
    return Ordinal.of(max_level(space) + 1)


def level_cardinality(space: Space, level: int) -> Cardinality:
    top_level = max_level(space)
    if level < 0 or level > top_level:
        return Fin(0)
    if level < top_level:
        return ALEPH0
    lead_coefficient = space.top.terms[0][1]
    # top level is w^e*j for 1 <= j <= c; for finite spaces the points 0..c
    return Fin(lead_coefficient + 1 if top_level == 0 else lead_coefficient)


def cardinal_sequence(space: Space) -> list[Cardinality]:
    return [level_cardinality(space, a) for a in range(max_level(space) + 1)]


def approximants(p: Ordinal, level: int, count: int) -> list[Ordinal]:
    """Points of ``level`` converging to ``p`` from just below.

    For ``p = beta + w^mu*i`` with ``mu > level`` these are
    ``beta + w^mu*(i-1) + w^level*j`` for ``1 <= j <= count``, all of which lie
    strictly between the predecessor block ``beta + w^mu*(i-1)`` and ``p``.
    """
    if not p or p.trailing_exponent() <= level:
        raise ValueError(f"{p} has no level-{level} approximants")
    e, c = p.terms[-1]
    base = Ordinal(p.terms[:-1] + (((e, c - 1),) if c > 1 else ()))
    return [base + omega_power(level, j) for j in range(1, count + 1)]


def default_per_level(gamma: int) -> int:
    return 2**gamma + 1


def top_level_sample(level: int, per_level: int) -> LevelSample:
    """``w^level * i`` for ``1 <= i <= per_level``; these carry no anchor."""
    points = tuple(omega_power(level, i) for i in range(1, per_level + 1))
    return LevelSample(level, points, dict.fromkeys(points))


def anchored_sample(anchors: Iterable[Ordinal], level: int, per_level: int) -> LevelSample:
    """``per_level`` approximants at ``level`` of every anchor.

    A point produced by several anchors keeps the least (nearest) one.
    """
    parent: dict[Ordinal, Ordinal] = {}
    for p in sorted(set(anchors), reverse=True):
        for q in approximants(p, level, per_level):
            parent[q] = p
    return LevelSample(level, tuple(sorted(parent)), parent)


def level_sample(space: Space, gamma: int, per_level: Union[int, None] = None) -> list[LevelSample]:
    """Hierarchical samples of levels ``0 .. gamma-1`` (returned in that order).

    The top requested level gets ``w^(gamma-1)*i`` for ``i <= per_level``;
    each lower level gets ``per_level`` approximants of every point already
    sampled at a higher level, so every sampled point is a limit of sampled
    points of each lower level. Sizes grow like ``per_level**gamma``.
    """
    if per_level is None:
        per_level = default_per_level(gamma)
    if per_level < 1:
        raise ValueError("per_level must be >= 1")
    if gamma < 0 or gamma > max_level(space):
        raise LevelOutOfRange(f"gamma={gamma} exceeds max level {max_level(space)} of {space}")
    if gamma == 0:
        return []
    top = gamma - 1
    samples = {top: top_level_sample(top, per_level)}
    for eta in range(top - 1, -1, -1):
        higher = [p for mu in range(eta + 1, top + 1) for p in samples[mu].points]
        samples[eta] = anchored_sample(higher, eta, per_level)
    return [samples[xi] for xi in range(gamma)]


# -- independent derivative oracle ---------------------------------------------
#
# The oracle decides membership in X^(a) from the neighborhood definition:
# p survives to X^(a+1) iff every interval (b, p) with b < p meets X^(a).
# X^(a) is represented by its closed form "nonzero ordinals all of whose CNF
# exponents are >= a", and "(b, p) meets X^(a)" is decided by computing the
# least member of X^(a) above b. If some b works then every larger b < p
# works too, so a finite family of lower bounds reaching close enough to p
# under every term is enough.


def _in_closed_form(a: int, q: Ordinal) -> bool:
    return a == 0 or (bool(q) and all(e >= a for e, _ in q.terms))


def _least_member_above(a: int, b: Ordinal) -> Ordinal:
    if a == 0:
        return b + 1
    return b.truncate(a) + omega_power(a)


def oracle_lower_bounds(p: Ordinal, spread: Sequence[int] = (1, 7, 1000)) -> list[Ordinal]:
    """Generic lower bounds for ``p``: under every term, the block just below it
    followed by tails ``w^j*n`` for each smaller exponent ``j``."""
    bounds = []
    for t, (e, c) in enumerate(p.terms):
        base = Ordinal(p.terms[:t]) + omega_power(e, c - 1)
        bounds.append(base)
        bounds.extend(base + omega_power(j, n) for j in range(e) for n in spread)
    return sorted(b for b in set(bounds) if b < p)


def oracle_grid(max_exponent: int, max_coefficient: int) -> list[Ordinal]:
    """All ordinals below w^(max_exponent+1) with coefficients <= max_coefficient."""
    grid = [ZERO]
    for e in range(max_exponent, -1, -1):
        grid = [g + omega_power(e, c) for g in grid for c in range(max_coefficient + 1)]
    return sorted(set(grid))


def oracle_is_isolated(a: int, p: Ordinal, lower_bounds: Iterable[Ordinal]) -> bool:
    """True iff some ``(b, p]`` meets X^(a) only in ``p``, searching ``b`` over ``lower_bounds``."""
    if not p:
        return True
    return any(b < p and _least_member_above(a, b) >= p for b in lower_bounds)


def oracle_level(p: OrdinalLike, lower_bounds: Union[Sequence[Ordinal], None] = None) -> int:
    """Derivative level of ``p`` found by iterating the isolation test.

    Raises AssertionError if the iterated derivative ever leaves the closed
    form of the level sets, which would mean the lower bounds are too coarse.
    """
    p = Ordinal.of(p)
    if lower_bounds is None:
        lower_bounds = oracle_lower_bounds(p)
    a = 0
    while True:
        assert _in_closed_form(a, p), f"{p} left X^({a}) without being isolated"
        if oracle_is_isolated(a, p, lower_bounds):
            return a
        a += 1
