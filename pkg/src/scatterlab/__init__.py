"""Cantor-Bendixson analysis of ordinal interval spaces, independent families
of clopen sets, and the rank of the tree of independent sequences."""

from .clopen import BOTTOM, ClopenSet, FiniteAlgebra, cell_hitting_check, separating_algebra, trace
from .independence import cells, is_independent, max_independent_length, split_cell_extension
from .ordinals import OMEGA, ZERO, Ordinal, omega_power, parse
from .ranktree import FamilySequence, mrank, rank, rank_naive
from .space import ALEPH0, Cardinality, Fin, Space, cardinal_sequence, height, level_sample, point_level

__version__ = "0.1.0"
