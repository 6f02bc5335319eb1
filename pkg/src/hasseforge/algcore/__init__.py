"""Finite-dimensional algebras by structure constants, and their cyclic constructions."""

from .algebra import StructureAlgebra, alg_from_structure_constants, base_change, matrix_algebra, tensor_algebras
from .cyclic import CrossedProduct, make_crossed_product, make_symbol_algebra
from .kummer import Cocycle, KummerExtension
from .probes import CSAReport, ElementProbe, center_basis, csa_check, element_probe, ideal_closure, sandwich_rank

__all__ = [
    "CSAReport",
    "Cocycle",
    "CrossedProduct",
    "ElementProbe",
    "KummerExtension",
    "StructureAlgebra",
    "alg_from_structure_constants",
    "base_change",
    "center_basis",
    "csa_check",
    "element_probe",
    "ideal_closure",
    "make_crossed_product",
    "make_symbol_algebra",
    "matrix_algebra",
    "sandwich_rank",
    "tensor_algebras",
]
