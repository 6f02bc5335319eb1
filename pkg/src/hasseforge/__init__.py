"""Exact computation with iterative (Hasse-Schmidt) derivations on fields and
central simple algebras."""

__version__ = "0.1.0"
