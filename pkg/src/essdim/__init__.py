"""Exact verification of generically free torus-normalizer representations
and the essential-dimension bound tables they feed."""

__version__ = "0.1.0"

from .linalg import IntMatrix, hnf, snf, kernel_basis, lattice_index, solve_in_lattice
from .perm import Permutation, PermGroup, sym, sylow2_sym, h_group, g_group, cosets
from .equivariant import (
    PermModule,
    GLattice,
    EquivariantMap,
    Verdict,
    WellDefinednessError,
    StrategyError,
    build_equivariant_map,
    verify_generically_free,
)
from .constructions import (
    Construction,
    ParameterError,
    build,
    lemma32i,
    lemma32ii,
    lemma33,
    section5,
    example_r3,
    verify_usss,
)
from .bounds import BoundRecord, BoundTable, BoundConflictError, best_bounds, sandwich

__all__ = [
    "__version__",
    "IntMatrix", "hnf", "snf", "kernel_basis", "lattice_index", "solve_in_lattice",
    "Permutation", "PermGroup", "sym", "sylow2_sym", "h_group", "g_group", "cosets",
    "PermModule", "GLattice", "EquivariantMap", "Verdict", "WellDefinednessError", "StrategyError",
    "build_equivariant_map", "verify_generically_free",
    "Construction", "ParameterError", "build", "lemma32i", "lemma32ii", "lemma33", "section5",
    "example_r3", "verify_usss",
    "BoundRecord", "BoundTable", "BoundConflictError", "best_bounds", "sandwich",
]
