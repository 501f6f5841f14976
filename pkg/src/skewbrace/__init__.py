"""Finite skew braces, bi-skew braces, brace blocks and Yang-Baxter solutions."""

from .braces import (
    SkewBrace,
    brace_from_tables,
    find_brace_isomorphism,
    gamma,
    gamma_op,
    is_bi_skew,
    is_gamma_homomorphic,
    opposite,
    series,
    swapped,
)
from .groups import FiniteGroup, GroupMap, Subgroup, group_from_table

__all__ = [
    "FiniteGroup",
    "GroupMap",
    "SkewBrace",
    "Subgroup",
    "brace_from_tables",
    "find_brace_isomorphism",
    "gamma",
    "gamma_op",
    "group_from_table",
    "is_bi_skew",
    "is_gamma_homomorphic",
    "opposite",
    "series",
    "swapped",
]
