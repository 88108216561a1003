"""Hamiltonian cycles in hypercubes with faulty edges.

Vertices of Q_n are ints 0 .. 2**n - 1 and fault sets are ``FaultSet``
objects (sorted edge tuples with an int bitmask view).
"""

from .core import (Cube, Edge, FaultFileError, FaultSet, HypercubeError, PartitionView, cube,
                   faults, format_faults, parse_faults, read_faults)
from .cycles import Kind, classify_cycle, enumerate_cycles
from .enumeration import ClassifyOptions, classify_all, enumerate_classes, iter_classes
from .heuristic import NO_HC, UNKNOWN, run_heuristic
from .solver import HamCycle, Pruning, count_hamiltonian, find_hamiltonian, is_hamiltonian
from .symmetry import Automorphism, are_isomorphic, canonical_form, canonical_key, is_orderly_canonical
from .traps import TrapReport, detect_generic_dhw, detect_traps, dhw_boundary, generate_trap, verify_dhw

__version__ = "0.1.0"

__all__ = [
    "Automorphism", "ClassifyOptions", "Cube", "Edge", "FaultFileError", "FaultSet", "HamCycle",
    "HypercubeError", "Kind", "NO_HC", "PartitionView", "Pruning", "TrapReport", "UNKNOWN",
    "are_isomorphic", "canonical_form", "canonical_key", "classify_all", "classify_cycle",
    "count_hamiltonian", "cube", "detect_generic_dhw", "detect_traps", "dhw_boundary",
    "enumerate_classes", "enumerate_cycles", "faults", "find_hamiltonian", "format_faults",
    "generate_trap", "is_hamiltonian", "is_orderly_canonical", "iter_classes", "parse_faults",
    "read_faults", "run_heuristic", "verify_dhw",
]
