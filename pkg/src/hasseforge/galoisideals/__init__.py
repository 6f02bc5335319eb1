"""Galois actions on constants and the classification of delta-stable right ideals."""

from .group import AutomorphismRep, GaloisAutomorphism, action_on_constants, is_algebra_map, kummer_galois_group
from .ideals import (IRREDUCIBLE_CERTIFICATE, IdealClassification, RightIdeal, classify_delta_structure,
                     column_ideal_basis, invariants_algebra, reductivity_note, stable_right_ideals)
from .lattice import SubmoduleLattice, all_subspaces, submodule_lattice
from .skolem import conjugation_matrix, matrix_units_iso, skolem_noether_lift

__all__ = [
    "IRREDUCIBLE_CERTIFICATE",
    "AutomorphismRep",
    "GaloisAutomorphism",
    "IdealClassification",
    "RightIdeal",
    "SubmoduleLattice",
    "action_on_constants",
    "all_subspaces",
    "classify_delta_structure",
    "column_ideal_basis",
    "conjugation_matrix",
    "invariants_algebra",
    "is_algebra_map",
    "kummer_galois_group",
    "matrix_units_iso",
    "reductivity_note",
    "skolem_noether_lift",
    "stable_right_ideals",
    "submodule_lattice",
]
