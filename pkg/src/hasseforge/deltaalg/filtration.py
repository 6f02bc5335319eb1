"""Derivations assembled band by band from a descending chain of forms.

Level i is a basis x_1..x_d of B whose structure constants lie in the i-th
constant field F_i.  For orders j with p^(i-1) <= j < p^i an element is
written as sum x_k alpha_k with alpha_k in F, and delta^(j) acts on the
alpha_k alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algcore import StructureAlgebra
from ..errors import SpanFailure, WellDefinednessFailure
from ..exactfield import Matrix, SparseEchelon, solve
from ..itderiv import DerivationTable, filtration_membership
from .core import DeltaAlgebra


@dataclass
class FiltrationSpec:
    """``levels[i - 1]`` holds the basis vectors (coordinates in B) of level i."""

    levels: list

    @property
    def depth(self) -> int:
        return len(self.levels)

    def to_json(self) -> dict:
        return {"depth": self.depth,
                "levels": [[[c.to_json() for c in v] for v in lvl] for lvl in self.levels]}


def _pick_basis(B: StructureAlgebra, vecs, level: int):
    ech = SparseEchelon(B.field, B.dim)
    chosen, extra = [], []
    for v in vecs:
        (chosen if ech.add(v) else extra).append(tuple(v))
    if len(chosen) != B.dim:
        raise SpanFailure(f"level {level} spans only {len(chosen)} of {B.dim} dimensions")
    return chosen, extra


def _coords(M: Matrix, v) -> tuple:
    x = solve(M, v)
    if x is None:
        raise SpanFailure("vector outside the span of the level basis")
    return x


def check_level(B: StructureAlgebra, D_F: DerivationTable, vecs, level: int):
    """Validate one level; returns the basis matrix (columns are basis vectors)."""
    chosen, extra = _pick_basis(B, vecs, level)
    d = B.dim
    M = Matrix(B.field, [[chosen[k][r] for k in range(d)] for r in range(d)])
    in_level = lambda c: filtration_membership(D_F, c, level)  # noqa: E731
    for idx, v in enumerate(extra):
        for k, c in enumerate(_coords(M, v)):
            if c and not in_level(c):
                raise WellDefinednessFailure(("spanning-vector", level, idx, k))
    for a in range(d):
        for b in range(d):
            prod = B.mul(chosen[a], chosen[b])
            for k, c in enumerate(_coords(M, prod)):
                if c and not in_level(c):
                    raise WellDefinednessFailure(("product", level, a, b, k))
    unit = _coords(M, B.unit)
    if any(c and not in_level(c) for c in unit):
        raise WellDefinednessFailure(("unit", level))
    return M


def filtration_extension(B: StructureAlgebra, spec: FiltrationSpec, D_F: DerivationTable,
                         N: int | None = None, validate: bool = True) -> DeltaAlgebra:
    p = D_F.char
    N = D_F.trunc if N is None else N
    if p**spec.depth - 1 < N:
        raise ValueError(f"{spec.depth} levels cover orders below {p**spec.depth}, need {N}")
    d = B.dim
    images = [[B.basis(m)] for m in range(d)]
    for i, vecs in enumerate(spec.levels, start=1):
        lo, hi = p ** (i - 1), min(p**i - 1, N)
        if lo > N:
            break
        M = check_level(B, D_F, vecs, i)
        inv = M.inverse()
        for m in range(d):
            alpha = [inv[k, m] for k in range(d)]
            series = [D_F.derive_series(a, hi) if a else None for a in alpha]
            for n in range(lo, hi + 1):
                v = [B.field.zero] * d
                for k in range(d):
                    if series[k] is None or not series[k][n]:
                        continue
                    c = series[k][n]
                    for r in range(d):
                        if M[r, k]:
                            v[r] = v[r] + M[r, k] * c
                images[m].append(tuple(v))
    return DeltaAlgebra(B, images, D_F, N, validate=validate, label="filtration")


def standard_levels(B: StructureAlgebra, depth: int) -> FiltrationSpec:
    """The same basis at every level; right for algebras defined over the constants."""
    basis = [B.basis(i) for i in range(B.dim)]
    return FiltrationSpec([list(basis) for _ in range(depth)])


def crossed_product_levels(B, depth: int) -> FiltrationSpec:
    """Level i spanned by s^(a p^i) u^b, the form over the p^i-th power field."""
    e = B.kummer.e
    p = B.field.char
    s = B.basis(e)  # s^1 u^0
    u = B.basis(1) if e > 1 else B.unit
    levels = []
    for i in range(1, depth + 1):
        x = B.power(s, p**i)
        vecs = []
        for a in range(e):
            xa = B.power(x, a)
            for b in range(e):
                vecs.append(B.mul(xa, B.power(u, b)))
        levels.append(vecs)
    return FiltrationSpec(levels)
