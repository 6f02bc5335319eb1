"""Element classification and central-simple certification."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..exactfield import Matrix, SparseEchelon, exact_rank, kernel_basis
from .algebra import StructureAlgebra


@dataclass(frozen=True)
class ElementProbe:
    classification: str  # invertible | zero_divisor | nilpotent
    witness: tuple | None = None
    nilpotency_index: int | None = None

    def to_json(self) -> dict:
        return {
            "classification": self.classification,
            "witness": None if self.witness is None else [c.to_json() for c in self.witness],
            "nilpotency_index": self.nilpotency_index,
        }


def element_probe(A: StructureAlgebra, z, max_power: int | None = None) -> ElementProbe:
    """Classify z as invertible, a zero divisor, or nilpotent.

    A nilpotent z of index k gets z^(k-1) as its annihilating witness;
    otherwise the witness is a kernel vector of left multiplication by z.
    """
    z = A.element(z)
    if max_power is None:
        max_power = A.dim
    L = A.left_matrix(z)
    if exact_rank(L) == A.dim:
        return ElementProbe("invertible")
    prev, cur = A.unit, z
    for k in range(1, max_power + 1):
        if A.is_zero(cur):
            return ElementProbe("nilpotent", prev, k)
        prev, cur = cur, A.mul(cur, z)
    w = kernel_basis(L)[0]
    return ElementProbe("zero_divisor", w)


@dataclass(frozen=True)
class CSAReport:
    central: bool
    simple: bool
    center_dim: int
    certificate_rank: int
    dim: int

    def to_json(self) -> dict:
        return {
            "central": self.central,
            "simple": self.simple,
            "center_dim": self.center_dim,
            "certificate_rank": self.certificate_rank,
            "dim": self.dim,
        }


def center_basis(A: StructureAlgebra) -> list[tuple]:
    """Kernel of z -> (z e_i - e_i z)_i."""
    d = A.dim
    rows = []
    for i in range(d):
        # column j holds e_j e_i - e_i e_j
        cols = [A.sub(A.mul_basis(j, i), A.mul_basis(i, j)) for j in range(d)]
        for k in range(d):
            rows.append([cols[j][k] for j in range(d)])
    return kernel_basis(Matrix(A.field, rows))


def ideal_closure(A: StructureAlgebra, seed) -> SparseEchelon:
    """Two-sided ideal generated by ``seed``, as an echelon basis."""
    ech = SparseEchelon(A.field, A.dim)
    todo = [tuple(seed)]
    basis = [A.basis(i) for i in range(A.dim)]
    while todo and len(ech) < A.dim:
        v = todo.pop()
        if not ech.add(v):
            continue
        for b in basis:
            todo.append(A.mul(b, v))
            todo.append(A.mul(v, b))
    return ech


def _random_element(A: StructureAlgebra, rng: random.Random) -> tuple:
    F = A.field
    base = getattr(F, "base", F)
    return tuple(F(base(base.random_raw(rng))) for _ in range(A.dim))


def sandwich_rank(A: StructureAlgebra) -> int:
    """Rank of span{x -> e_i x e_j}; equals dim**2 exactly for central simple A."""
    d = A.dim
    ech = SparseEchelon(A.field, d * d)
    for i in range(d):
        for j in range(d):
            vec = {}
            for l in range(d):
                img = A.mul(A.mul_basis(i, l), A.basis(j))
                for k, c in enumerate(img):
                    if c:
                        vec[k * d + l] = c
            ech.add(vec)
            if len(ech) == d * d:
                return d * d
    return len(ech)


def csa_check(A: StructureAlgebra, random_seeds: int = 8, seed: int = 0) -> CSAReport:
    """Center dimension, simplicity and the sandwich-map certificate.

    When the map A (x) A^op -> End(A) is onto, A is central simple and both
    verdicts follow.  Otherwise simplicity is tested by ideal closure from
    every basis vector and a few random elements; a proper closure is a
    definite witness of non-simplicity.
    """
    d = A.dim
    center = center_basis(A)
    cert = sandwich_rank(A)
    if cert == d * d:
        return CSAReport(True, True, len(center), cert, d)
    rng = random.Random(seed)
    seeds = [A.basis(i) for i in range(d)] + [_random_element(A, rng) for _ in range(random_seeds)]
    simple = all(len(ideal_closure(A, s)) == d for s in seeds if any(s))
    return CSAReport(len(center) == 1, simple, len(center), cert, d)
