"""Explicit isomorphisms with matrix algebras and inner-automorphism lifts."""

from __future__ import annotations

import itertools
import math
import random

from ..algcore import StructureAlgebra, matrix_algebra
from ..errors import NotInner, NotMatrixAlgebra
from ..exactfield import Matrix, SparseEchelon, exact_rank, kernel_basis, solve
from .group import apply_matrix, is_algebra_map

EXHAUSTIVE_LIMIT = 100_000


def _mat_from_vec(field, v, n: int) -> Matrix:
    return Matrix(field, [[v[i * n + j] for j in range(n)] for i in range(n)])


def _candidates(A: StructureAlgebra, seed: int):
    base = A.field
    d = A.dim
    if base.order is not None and base.order**d <= EXHAUSTIVE_LIMIT:
        elems = [base.raw_from_index(i) for i in range(base.order)]
        for combo in itertools.product(range(base.order), repeat=d):
            yield tuple(base(elems[c]) for c in combo)
        return
    rng = random.Random(seed)
    for _ in range(5000):
        yield tuple(base(base.random_raw(rng)) for _ in range(d))


def matrix_units_iso(A: StructureAlgebra, seed: int = 0) -> list[Matrix]:
    """rho(e_i) for an algebra isomorphism rho: A -> M_n(k).

    A primitive idempotent e gives the n-dimensional left ideal V = A e, and
    left multiplication on V is the isomorphism.  The standard matrix-unit
    table is recognized directly so that its own coordinates are kept.
    """
    d = A.dim
    n = math.isqrt(d)
    if n * n != d:
        raise NotMatrixAlgebra(f"dimension {d} is not a square")
    field = A.field
    std = matrix_algebra(field, n)
    if A.mult == std.mult and A.unit == std.unit:
        return [_mat_from_vec(field, A.basis(i), n) for i in range(d)]
    for e in _candidates(A, seed):
        if not any(e) or A.mul(e, e) != e:
            continue
        ech = SparseEchelon(field, d)
        V = []
        for i in range(d):
            w = A.mul(A.basis(i), e)
            if ech.add(w):
                V.append(w)
        if len(V) != n:
            continue
        Vm = Matrix(field, [[V[k][r] for k in range(n)] for r in range(d)])
        rho = []
        for i in range(d):
            cols = [solve(Vm, A.mul(A.basis(i), v)) for v in V]
            rho.append(Matrix(field, [[cols[k][r] for k in range(n)] for r in range(n)]))
        flat = Matrix(field, [[x for row in R.rows for x in row] for R in rho])
        if exact_rank(flat) == d:
            return rho
    raise NotMatrixAlgebra("no primitive idempotent found")


def _normalize(P: Matrix) -> Matrix:
    first = next(x for row in P.rows for x in row if x)
    return P * first.inverse()


def conjugation_matrix(A: StructureAlgebra, P: Matrix, rho: list[Matrix] | None = None) -> Matrix:
    """Coordinate matrix of X -> P X P^-1 on A = M_n(k)."""
    rho = rho or matrix_units_iso(A)
    d = A.dim
    Pinv = P.inverse()
    flat = Matrix(A.field, [[R[r // len(R.rows), r % len(R.rows)] for R in rho] for r in range(d)])
    cols = []
    for R in rho:
        img = P @ R @ Pinv
        cols.append(solve(flat, [x for row in img.rows for x in row]))
    return Matrix(A.field, [[cols[j][i] for j in range(d)] for i in range(d)])


def skolem_noether_lift(A: StructureAlgebra, alpha: Matrix, rho: list[Matrix] | None = None) -> Matrix:
    """P with P rho(x) P^-1 = rho(alpha(x)), normalized so its first nonzero entry is 1."""
    if not is_algebra_map(A, alpha):
        raise NotInner("the map is not multiplicative, so it is not an automorphism")
    rho = rho or matrix_units_iso(A)
    field = A.field
    n = len(rho[0].rows)
    d = A.dim
    zero = field.zero
    rows = []
    for i in range(d):
        R = rho[i]
        img = apply_matrix(alpha, A.basis(i))
        S = Matrix.zeros(field, n, n)
        for k, c in enumerate(img):
            if c:
                S = S + rho[k] * c
        # (P R - S P)[a][b] as a linear form in the entries P[x][y] (index x*n + y)
        for a in range(n):
            for b in range(n):
                row = [zero] * (n * n)
                for c in range(n):
                    if R[c, b]:
                        row[a * n + c] = row[a * n + c] + R[c, b]
                    if S[a, c]:
                        row[c * n + b] = row[c * n + b] - S[a, c]
                rows.append(row)
    for v in kernel_basis(Matrix(field, rows)):
        P = _mat_from_vec(field, v, n)
        if exact_rank(P) == n:
            return _normalize(P)
    raise NotInner("no invertible solution of P x = alpha(x) P")
