"""Iterative (Hasse-Schmidt) derivations on rational function fields."""

from .axioms import AxiomReport, check_iterative_axioms, random_rational
from .construct import char0_divided_powers, extend_to_kummer, filtration_membership, hasse_table
from .table import DerivationTable, derive, hasse_all

__all__ = [
    "AxiomReport",
    "DerivationTable",
    "char0_divided_powers",
    "check_iterative_axioms",
    "derive",
    "extend_to_kummer",
    "filtration_membership",
    "hasse_all",
    "hasse_table",
    "random_rational",
]
