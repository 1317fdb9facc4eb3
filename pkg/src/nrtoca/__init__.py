"""Ordered covering arrays and covering codes in NRT spaces.

Constructions, exhaustive verification, a provenance-tracking bound engine
and brute-force oracles for tiny instances.  Hot loops live in a compiled
extension when available (``nrtoca.kernels.BACKEND``).
"""

from .arrays import OrderedArray, VerificationReport, instantiate_wildcards, read_array, verify_ca, verify_oca, write_array
from .bounds import BoundRecord, best_k_upper, best_ocan_upper, emit_table, materialize
from .codes import CoveringCode, read_code, verify_covering, write_code
from .gf import FieldSpec, gf
from .kernels import BACKEND
from .poset import AntiIdeal, NrtPoset, enumerate_anti_ideals, nrt_distance, sphere_profile

__version__ = "0.1.0"

__all__ = [
    "AntiIdeal", "BACKEND", "BoundRecord", "CoveringCode", "FieldSpec", "NrtPoset", "OrderedArray",
    "VerificationReport", "best_k_upper", "best_ocan_upper", "emit_table", "enumerate_anti_ideals", "gf",
    "instantiate_wildcards", "materialize", "nrt_distance", "read_array", "read_code", "sphere_profile",
    "verify_ca", "verify_covering", "verify_oca", "write_array", "write_code",
]
