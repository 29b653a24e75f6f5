"""Workbench for finite weak BCK-algebras."""

from .classify import CLASSES, ClassReport, classify, cross_validate
from .corpus import corpus_entries, corpus_entry, self_test
from .enumeration import EnumSpec, enumerate_wbck, search_counterexample
from .errors import WbckError
from .harness import registry, verify_all
from .laws import BASES, check_basis, eval_law, law_named, parse_law
from .order import meet_table, join_table, profile
from .sections import parse_sections, reconstruct_subtraction, section_profiles
from .table import (OpTable, canonical_form, derive_order, format_table,
                    is_isomorphic, parse_table, validate_wbck)

__all__ = [
    "BASES", "CLASSES", "ClassReport", "EnumSpec", "OpTable", "WbckError",
    "canonical_form", "check_basis", "classify", "corpus_entries",
    "corpus_entry", "cross_validate", "derive_order", "enumerate_wbck",
    "eval_law", "format_table", "is_isomorphic", "join_table", "law_named",
    "meet_table", "parse_law", "parse_sections", "parse_table", "profile",
    "reconstruct_subtraction", "registry", "search_counterexample",
    "section_profiles", "self_test", "validate_wbck", "verify_all",
]
