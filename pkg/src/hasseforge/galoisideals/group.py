"""Galois groups of Kummer extensions acting on constants."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..algcore import KummerExtension
from ..errors import CommutationFailure, NotStable
from ..exactfield import Matrix
from ..itderiv import DerivationTable, random_rational


@dataclass(frozen=True)
class GaloisAutomorphism:
    """sigma^j: s -> zeta^j s."""

    kummer: KummerExtension
    j: int

    def __call__(self, h):
        return self.kummer.sigma(self.j, h)

    @property
    def multiplier(self):
        return self.kummer.zeta**self.j

    def __repr__(self):
        return f"sigma^{self.j}: {self.kummer.K.var} -> {self.multiplier}*{self.kummer.K.var}"


def kummer_galois_group(kummer: KummerExtension, D_K: DerivationTable, N: int | None = None,
                        samples: int = 20, seed: int = 0) -> list[GaloisAutomorphism]:
    """All sigma^j, each checked to commute with delta^(n) for n <= N on the
    generator and on seeded random elements."""
    N = D_K.trunc if N is None else N
    rng = random.Random(seed)
    elems = [kummer.gen] + [random_rational(kummer.K, rng, 4) for _ in range(samples)]
    series = [D_K.derive_series(h, N) for h in elems]
    group = []
    for j in range(kummer.e):
        g = GaloisAutomorphism(kummer, j)
        if j:
            for h, sh in zip(elems, series):
                moved = D_K.derive_series(g(h), N)
                for n in range(N + 1):
                    if moved[n] != g(sh[n]):
                        raise CommutationFailure(f"{g} fails to commute with delta^({n}) at {h}")
        group.append(g)
    return group


@dataclass
class AutomorphismRep:
    group: list
    action_matrices: list
    projective_lifts: list = field(default_factory=list)
    iso: list | None = None

    def to_json(self) -> dict:
        return {
            "order": len(self.group),
            "multipliers": [g.multiplier.to_json() for g in self.group],
            "action_matrices": [m.to_json() for m in self.action_matrices],
            "projective_lifts": [m.to_json() for m in self.projective_lifts],
        }


def action_on_constants(DA, C, G: list[GaloisAutomorphism]) -> AutomorphismRep:
    """Matrices of v (x) x -> v (x) sigma(x) in the coordinates of the constants basis."""
    from ..deltaalg.constants import _span_coords

    base = DA.field.base
    c = C.dim
    mats = []
    for g in G:
        cols = []
        for v in C.vectors:
            moved = tuple(g(x) for x in v)
            coords = _span_coords(DA, C.vectors, moved)
            if coords is None:
                raise NotStable(f"{g} moves a constant outside the constants span")
            cols.append(coords)
        mats.append(Matrix(base, [[cols[j][i] for j in range(c)] for i in range(c)]))
    if C.algebra is not None:
        for g, M in zip(G, mats):
            if not is_algebra_map(C.algebra, M):
                raise NotStable(f"{g} does not act multiplicatively on the constants")
    return AutomorphismRep(list(G), mats)


def apply_matrix(M: Matrix, v) -> tuple:
    return M @ tuple(v)


def is_algebra_map(A, M: Matrix) -> bool:
    """Does the coordinate map M preserve products of basis elements and the unit?"""
    d = A.dim
    imgs = [apply_matrix(M, A.basis(i)) for i in range(d)]
    if apply_matrix(M, A.unit) != A.unit:
        return False
    for a in range(d):
        for b in range(d):
            if apply_matrix(M, A.mul_basis(a, b)) != A.mul(imgs[a], imgs[b]):
                return False
    return True
