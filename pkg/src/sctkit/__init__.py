"""Supercharacter theories of small finite groups, with exact arithmetic."""

from .characters import CharacterTable, ClassFunction, character_table
from .cyclotomic import Cyclotomic
from .groups import FiniteGroup, Partition, Subgroup, build_group_from_cayley, build_group_from_permutations
from .library import builtin_group, load_group
from .report import Report, emit_report
from .structure import (
    deflate_theory,
    divisibility_report,
    is_s_nilpotent,
    is_s_normal,
    lower_central_series,
    restrict_theory,
    s_chief_series,
    s_normal_subgroups,
    sct_center,
    sct_commutator,
    upper_central_series,
)
from .theory import (
    SupercharacterTheory,
    enumerate_scts,
    join,
    maximal_sct,
    meet,
    minimal_sct,
    refines,
    validate_sct,
)

__version__ = "0.1.0"
