"""Iterative derivations on finite-dimensional algebras."""

from .core import (DeltaAlgebra, delta_from_basis_table, matrix_entrywise_derivation, tensor_delta, transport,
                   trivial_extension)
from .crossed import IdentityReport, check_product_identities, crossed_product_derivation
from .filtration import FiltrationSpec, crossed_product_levels, filtration_extension, standard_levels
from .constants import (Ansatz, ConstantsBasis, NilpotentWitness, SplitReport, check_split, constants_subalgebra,
                        nilpotent_witness, solve_constants)

__all__ = [
    "Ansatz",
    "ConstantsBasis",
    "DeltaAlgebra",
    "FiltrationSpec",
    "IdentityReport",
    "NilpotentWitness",
    "SplitReport",
    "check_product_identities",
    "check_split",
    "constants_subalgebra",
    "crossed_product_derivation",
    "crossed_product_levels",
    "delta_from_basis_table",
    "filtration_extension",
    "matrix_entrywise_derivation",
    "nilpotent_witness",
    "solve_constants",
    "standard_levels",
    "tensor_delta",
    "transport",
    "trivial_extension",
]
