"""Constacyclic codes over small finite fields.

Fields and polynomials (:mod:`.field`, :mod:`.poly`, :mod:`.linalg`), code
families and defining sets (:mod:`.code`), family equivalence with explicit
isometries (:mod:`.equivalence`), minimum distance (:mod:`.distance`),
secondary constructions (:mod:`.constructions`) and record searches
(:mod:`.search`).
"""

from .code import (CodeSpec, ConstaFamily, LinearCode, build_code, count_codes, euclidean_dual,
                   family, field_for_q, hermitian_dual, is_constacyclic)
from .constructions import (QuantumParams, construction_x, construction_xx, hermitian_dual_containing,
                            puncture, quantum_params, rebuild, shorten)
from .distance import DistanceResult, brute_distance, bz_distance, minimum_distance, weight_enumerator
from .equivalence import (Criterion, EquivWitness, apply_isometry, build_witness, check_main_theorem,
                          classify, criteria, emit_dot)
from .field import GF, fix_root, make_field
from .search import BKLCTable, SearchJob, load_bklc, run_search

__version__ = "0.1.0"

__all__ = [
    "BKLCTable", "CodeSpec", "ConstaFamily", "Criterion", "DistanceResult", "EquivWitness", "GF",
    "LinearCode", "QuantumParams", "SearchJob", "apply_isometry", "brute_distance", "build_code",
    "build_witness", "bz_distance", "check_main_theorem", "classify", "construction_x",
    "construction_xx", "count_codes", "criteria", "emit_dot", "euclidean_dual", "family",
    "field_for_q", "fix_root", "hermitian_dual", "hermitian_dual_containing", "is_constacyclic",
    "load_bklc", "make_field", "minimum_distance", "puncture", "quantum_params", "rebuild",
    "run_search", "shorten", "weight_enumerator",
]
