"""Independent sequences of sets, their cells, and the cell-splitting extension.

Two set backends share the code here: :class:`~scatterlab.clopen.ClopenSet`
members over a :class:`~scatterlab.space.Space`, and ``int`` bitmasks over a
finite universe ``{0, ..., size-1}``. Everything is written against ``&``,
``^`` and truthiness plus the universe's full element, which both provide.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence, Union

from .clopen import ClopenSet, FiniteAlgebra, split_atoms
from .errors import ExtensionFailure, SpaceMismatch, UniverseMismatch
from .ordinals import Ordinal
from .space import LevelSample, Space

Universe = Union[Space, int]


def full_set(universe: Universe):
    if isinstance(universe, Space):
        return ClopenSet.full(universe)
    if universe < 0:
        raise ValueError("universe size must be >= 0")
    return (1 << universe) - 1


def infer_universe(members: Sequence, universe: Union[Universe, None] = None) -> Universe:
    if universe is not None:
        return universe
    for m in members:
        if isinstance(m, ClopenSet):
            return m.space
        raise UniverseMismatch("bitset members need an explicit universe size")
    return 0


def _checked(members: Sequence, universe: Universe) -> list:
    members = list(members)
    if isinstance(universe, Space):
        for m in members:
            if not isinstance(m, ClopenSet):
                raise UniverseMismatch(f"{m!r} is not a clopen set over {universe}")
            if m.space != universe:
                raise SpaceMismatch(f"{m.space} vs {universe}")
    else:
        full = full_set(universe)
        for m in members:
            if isinstance(m, ClopenSet) or not isinstance(m, int) or m < 0 or m & ~full:
                raise UniverseMismatch(f"{m!r} is not a subset of a {universe}-element universe")
    return members


@dataclass(frozen=True)
class IndepSequence:
    members: tuple
    universe: Universe

    @property
    def backend(self) -> str:
        return "interval" if isinstance(self.universe, Space) else "bitset"

    def is_independent(self) -> bool:
        return is_independent(self.members, self.universe)


def is_independent(members: Sequence, universe: Union[Universe, None] = None) -> bool:
    """True iff every one of the 2^n Boolean cells of ``members`` is nonempty."""
    universe = infer_universe(members, universe)
    members = _checked(members, universe)
    cells_ = [full_set(universe)]
    for k in members:
        refined = []
        for c in cells_:
            inside = c & k
            outside = c ^ inside
            if not inside or not outside:
                return False
            refined.append(inside)
            refined.append(outside)
        cells_ = refined
    return True


def cells(members: Sequence, universe: Union[Universe, None] = None) -> dict:
    """Map each sign pattern ``s`` (0 = member, 1 = complement) to its cell."""
    universe = infer_universe(members, universe)
    members = _checked(members, universe)
    full = full_set(universe)
    result = {}
    for pattern in product((0, 1), repeat=len(members)):
        cell = full
        for k, s in zip(members, pattern):
            cell = cell & (k if s == 0 else full ^ k)
        result[pattern] = cell
    return result


def atom_count(family: Iterable, universe: Union[Universe, None] = None) -> int:
    """Number of atoms of the Boolean algebra generated by ``family``."""
    family = list(family)
    universe = infer_universe(family, universe)
    family = _checked(family, universe)
    return len(split_atoms(family, full_set(universe)))


def _witness_points(witness) -> list[Ordinal]:
    if isinstance(witness, LevelSample):
        return list(witness.points)
    return sorted({Ordinal.of(p) for p in witness})


def split_cell_extension(
    algebra: FiniteAlgebra,
    witness: Union[LevelSample, Iterable],
    current: Sequence[ClopenSet],
) -> ClopenSet:
    """Find ``H`` in ``algebra`` such that ``H`` and its complement both meet
    every cell of ``current`` inside the witness points.

    ``H`` is assembled as a union of atoms of ``algebra``: in each cell two
    witness points lying in different atoms are chosen, the first atom is put
    in ``H`` and the second kept out, skipping choices that contradict an
    earlier cell. Raises :class:`ExtensionFailure` when a cell has fewer
    than two witness points or no compatible separated pair.
    """
    points = _witness_points(witness)
    space = algebra.space
    current = _checked(current, space)
    decided: dict[int, bool] = {}
    where = {p: algebra.atom_index(p) for p in points}
    for pattern, cell in cells(current, space).items():
        inside = [p for p in points if p in cell]
        if len(inside) < 2:
            raise ExtensionFailure("insufficient_witnesses", pattern, cell,
                                   f"{len(inside)} witness point(s)")
        atoms_here = [where[p] for p in inside]
        if any(decided.get(a) is True for a in atoms_here) and any(
            decided.get(a) is False for a in atoms_here
        ):
            continue
        choice = None
        for i, a in enumerate(atoms_here):
            if decided.get(a, True) is not True:
                continue
            for b in atoms_here[i + 1:] + atoms_here[:i]:
                if b != a and decided.get(b, False) is False:
                    choice = (a, b)
                    break
            if choice:
                break
        if choice is None:
            raise ExtensionFailure("cannot_separate", pattern, cell,
                                   "witness points of the cell are not split by the algebra")
        decided[choice[0]] = True
        decided[choice[1]] = False
    mask = sum(1 << a for a, v in decided.items() if v)
    return algebra.element(mask)


def max_independent_length(
    family: Iterable,
    budget: int,
    universe: Union[Universe, None] = None,
    prune: bool = True,
) -> int:
    """Length of the longest independent sequence drawn without reuse from
    ``family``, capped at ``budget``.

    Depth-first over increasing index sets (independence does not depend on
    order). With ``prune``, a node at depth ``n`` is abandoned when the algebra
    generated by its members and the remaining candidates has fewer than
    ``2^(n+1)`` atoms, since no extension could then have all cells nonempty.
    """
    family = list(dict.fromkeys(family))
    universe = infer_universe(family, universe)
    family = _checked(family, universe)
    full = full_set(universe)
    ceiling = min(budget, len(family))
    best = 0

    def search(start: int, parts: list, depth: int) -> None:
        nonlocal best
        best = max(best, depth)
        if best >= ceiling or depth + (len(family) - start) <= best:
            return
        if prune:
            rest = family[start:]
            n_atoms = sum(len(split_atoms(rest, c)) for c in parts)
            if n_atoms < 2 ** (depth + 1):
                return
        for i in range(start, len(family)):
            k = family[i]
            refined = []
            for c in parts:
                inside = c & k
                outside = c ^ inside
                if not inside or not outside:
                    break
                refined.append(inside)
                refined.append(outside)
            else:
                search(i + 1, refined, depth + 1)
                if best >= ceiling:
                    return

    if full and ceiling > 0:
        search(0, [full], 0)
    return best
