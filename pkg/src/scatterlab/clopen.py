"""Clopen subsets of [0, top] as normalized unions of half-open intervals.

A clopen set is a finite disjoint union of intervals ``(a, b]``; the lower
end ``BOTTOM`` stands for "including 0", so ``(BOTTOM, b]`` is ``[0, b]``.
Boolean operations cut both operands at the union of their endpoints and
re-merge, which keeps everything exact.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import chain
from typing import Iterable, Optional, Sequence, Union

from .errors import EmptyPointSet, PointOutsideSpace, SpaceMismatch
from .ordinals import Ordinal, OrdinalLike, parse
from .space import Space

BOTTOM = None
Interval = tuple[Optional[Ordinal], Ordinal]


def _lower_key(lower: Optional[Ordinal]) -> tuple:
    return (0,) if lower is None else (1, lower.terms)


@dataclass(frozen=True)
class ClopenSet:
    space: Space
    intervals: tuple[Interval, ...] = ()

    def __post_init__(self) -> None:
        prev_upper = None
        for lower, upper in self.intervals:
            if lower is not None and not lower < upper:
                raise ValueError(f"empty or reversed interval ({lower}, {upper}]")
            if upper > self.space.top:
                raise PointOutsideSpace(f"{upper} is outside {self.space}")
            if prev_upper is not None and (lower is None or not prev_upper < lower):
                raise ValueError(f"intervals not sorted, disjoint and non-adjacent: {self.intervals}")
            prev_upper = upper

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_intervals(cls, space: Space, intervals: Iterable[tuple]) -> ClopenSet:
        """Normalize an arbitrary collection of ``(lower, upper)`` pairs into their union."""
        pieces = []
        for lower, upper in intervals:
            lower = None if lower is None else Ordinal.of(lower)
            upper = Ordinal.of(upper)
            if lower is None or lower < upper:
                pieces.append((lower, upper))
        pieces.sort(key=lambda iv: (_lower_key(iv[0]), iv[1].terms))
        merged: list[list] = []
        for lower, upper in pieces:
            if merged and (lower is None or lower <= merged[-1][1]):
                if merged[-1][1] < upper:
                    merged[-1][1] = upper
            else:
                merged.append([lower, upper])
        return cls(space, tuple((lo, up) for lo, up in merged))

    @classmethod
    def empty(cls, space: Space) -> ClopenSet:
        return cls(space)

    @classmethod
    def full(cls, space: Space) -> ClopenSet:
        return cls(space, ((BOTTOM, space.top),))

    @classmethod
    def initial_segment(cls, space: Space, x: OrdinalLike) -> ClopenSet:
        """``[0, x]``."""
        return cls(space, ((BOTTOM, Ordinal.of(x)),))

    @classmethod
    def interval(cls, space: Space, lower: Optional[OrdinalLike], upper: OrdinalLike) -> ClopenSet:
        return cls.from_intervals(space, [(lower, upper)])

    # -- queries -----------------------------------------------------------

    @cached_property
    def _upper_keys(self) -> list:
        return [up.terms for _, up in self.intervals]

    def __contains__(self, p: OrdinalLike) -> bool:
        p = Ordinal.of(p)
        if p > self.space.top:
            raise PointOutsideSpace(f"{p} is outside {self.space}")
        i = bisect.bisect_left(self._upper_keys, p.terms)
        if i == len(self.intervals):
            return False
        lower = self.intervals[i][0]
        return lower is None or lower < p

    def contains(self, p: OrdinalLike) -> bool:
        return p in self

    def is_empty(self) -> bool:
        return not self.intervals

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def min_point(self) -> Ordinal:
        lower = self.intervals[0][0]
        return Ordinal.of(0) if lower is None else lower + 1

    # -- Boolean operations --------------------------------------------------

    def _check(self, other: ClopenSet) -> None:
        if not isinstance(other, ClopenSet):
            raise TypeError(f"expected ClopenSet, got {type(other).__name__}")
        if other.space != self.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")

    def _combine(self, other: ClopenSet, op) -> ClopenSet:
        self._check(other)
        cuts = sorted(
            {up for _, up in chain(self.intervals, other.intervals)}
            | {lo for lo, _ in chain(self.intervals, other.intervals) if lo is not None}
            | {self.space.top}
        )
        result: list[list] = []
        lower = BOTTOM
        for cut in cuts:
            # every piece (lower, cut] lies inside a single region of each operand
            if op(cut in self, cut in other):
                if result and result[-1][1] == lower:
                    result[-1][1] = cut
                else:
                    result.append([lower, cut])
            lower = cut
        return ClopenSet(self.space, tuple((lo, up) for lo, up in result))

    def _covered_by_interval(self, other: ClopenSet) -> bool:
        if len(other.intervals) != 1:
            return False
        lo, hi = other.intervals[0]
        first_lo = self.intervals[0][0]
        return (lo is None or (first_lo is not None and lo <= first_lo)) and self.intervals[-1][1] <= hi

    def __and__(self, other: ClopenSet) -> ClopenSet:
        self._check(other)
        if not self.intervals or not other.intervals:
            return ClopenSet.empty(self.space)
        for a, b in ((self, other), (other, self)):
            b_lo = b.intervals[0][0]
            if b_lo is not None and a.intervals[-1][1] <= b_lo:
                return ClopenSet.empty(self.space)
            if a._covered_by_interval(b):
                return a
        return self._combine(other, lambda a, b: a and b)

    def __or__(self, other: ClopenSet) -> ClopenSet:
        return self._combine(other, lambda a, b: a or b)

    def __xor__(self, other: ClopenSet) -> ClopenSet:
        return self._combine(other, lambda a, b: a != b)

    def __sub__(self, other: ClopenSet) -> ClopenSet:
        return self._combine(other, lambda a, b: a and not b)

    def __invert__(self) -> ClopenSet:
        return ClopenSet.full(self.space) - self

    def __le__(self, other: ClopenSet) -> bool:
        return not (self - other)

    def __str__(self) -> str:
        return format_clopen(self)


def union(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    return a | b


def intersect(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    return a & b


def complement(a: ClopenSet) -> ClopenSet:
    return ~a


def contains(s: ClopenSet, p: OrdinalLike) -> bool:
    return p in s


def is_empty(s: ClopenSet) -> bool:
    return s.is_empty()


# -- text form ---------------------------------------------------------------


def format_clopen(s: ClopenSet) -> str:
    if not s.intervals:
        return "{}"
    parts = [f"[0,{up}]" if lo is None else f"({lo},{up}]" for lo, up in s.intervals]
    return ", ".join(parts)


_INTERVAL = re.compile(r"\s*([\[(])([^,\]]*),([^\]]*)\]\s*(?:,|$)")


def parse_clopen(space: Space, text: str) -> ClopenSet:
    """Parse the form written by :func:`format_clopen`, e.g. ``"[0,w], (w*2, w^2]"``."""
    if text.strip() in ("{}", ""):
        return ClopenSet.empty(space)
    pieces = []
    pos = 0
    while pos < len(text):
        m = _INTERVAL.match(text, pos)
        if not m:
            raise ValueError(f"malformed interval at position {pos} in {text!r}")
        bracket, lo, up = m.groups()
        lower = parse(lo)
        if bracket == "[":
            if lower:
                raise ValueError(f"closed lower end must be 0, got {lo.strip()!r}")
            lower = BOTTOM
        pieces.append((lower, parse(up)))
        pos = m.end()
    return ClopenSet.from_intervals(space, pieces)


# -- finite subalgebras ------------------------------------------------------


def split_atoms(generators: Iterable, full):
    """Atoms of the Boolean algebra generated by ``generators`` inside ``full``.

    Works for any set type with ``&``, ``^`` and truthiness (ClopenSet, int bitmasks).
    """
    parts = [full] if full else []
    for g in generators:
        refined = []
        for part in parts:
            inside = part & g
            if not inside or inside == part:
                refined.append(part)
            else:
                refined.append(inside)
                refined.append(part ^ inside)
        parts = refined
    return parts


@dataclass(frozen=True)
class FiniteAlgebra:
    space: Space
    generators: tuple[ClopenSet, ...]
    atoms: tuple[ClopenSet, ...] = field(init=False, compare=False)

    def __post_init__(self) -> None:
        for g in self.generators:
            if g.space != self.space:
                raise SpaceMismatch(f"generator over {g.space}, algebra over {self.space}")
        atoms = split_atoms(self.generators, ClopenSet.full(self.space))
        atoms.sort(key=lambda a: a.min_point().terms)
        object.__setattr__(self, "atoms", tuple(atoms))

    def atom_index(self, p: OrdinalLike) -> int:
        for i, atom in enumerate(self.atoms):
            if p in atom:
                return i
        raise PointOutsideSpace(f"{p} is outside {self.space}")

    def element(self, mask: int) -> ClopenSet:
        """Union of the atoms selected by the bits of ``mask``."""
        result = ClopenSet.empty(self.space)
        for i, atom in enumerate(self.atoms):
            if mask >> i & 1:
                result = result | atom
        return result

    def elements(self):
        for mask in range(1 << len(self.atoms)):
            yield self.element(mask)

    def __contains__(self, s: ClopenSet) -> bool:
        return all(not (a & s) or a <= s for a in self.atoms)

    def __len__(self) -> int:
        return 1 << len(self.atoms)


def separating_algebra(space: Space, points: Iterable[OrdinalLike]) -> FiniteAlgebra:
    """The algebra generated by the initial segments ``[0, x]``, ``x`` in ``points``."""
    pts = sorted({Ordinal.of(p) for p in points})
    if not pts:
        raise EmptyPointSet("separating_algebra needs at least one point")
    for p in pts:
        if p > space.top:
            raise PointOutsideSpace(f"{p} is outside {space}")
    return FiniteAlgebra(space, tuple(ClopenSet.initial_segment(space, p) for p in pts))


def trace(s: ClopenSet, witness: Sequence[OrdinalLike]) -> int:
    """Bitmask with bit ``i`` set iff ``witness[i]`` lies in ``s``."""
    bits = 0
    for i, p in enumerate(witness):
        if p in s:
            bits |= 1 << i
    return bits


@dataclass(frozen=True)
class HittingResult:
    ok: bool
    missed: Optional[ClopenSet] = None

    def __bool__(self) -> bool:
        return self.ok


def cell_hitting_check(
    algebras: Sequence[FiniteAlgebra],
    witness: Iterable[OrdinalLike],
    space: Union[Space, None] = None,
) -> HittingResult:
    """Does every nonempty cell of the combined generators contain a witness point?"""
    if space is None:
        if not algebras:
            raise ValueError("space required when no algebras are given")
        space = algebras[0].space
    generators = [g for alg in algebras for g in alg.generators]
    for alg in algebras:
        if alg.space != space:
            raise SpaceMismatch(f"{alg.space} vs {space}")
    witness = [Ordinal.of(p) for p in witness]
    atoms = split_atoms(generators, ClopenSet.full(space))
    atoms.sort(key=lambda a: a.min_point().terms)
    for atom in atoms:
        if not any(p in atom for p in witness):
            return HittingResult(False, atom)
    return HittingResult(True)
