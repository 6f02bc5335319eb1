"""Algebras with an iterative derivation compatible with one on the scalars."""

from __future__ import annotations

from ..algcore import StructureAlgebra, base_change, matrix_algebra, tensor_algebras
from ..algcore.kummer import KummerExtension
from ..errors import LeibnizInconsistent, NotIterative, ScalarMismatch
from ..exactfield import lucas_binomial
from ..itderiv import DerivationTable


def _binom(p: int, m: int, n: int) -> int:
    import math

    return lucas_binomial(m, n, p) if p else math.comb(m, n)


class DeltaAlgebra:
    """``alg`` together with delta^(n)(e_i) for n <= trunc.

    On a general element sum c_i e_i the derivation acts by the mixed
    Leibniz rule: delta^(n)(c e_i) = sum_{a+b=n} delta^(a)(c) delta^(b)(e_i).
    """

    def __init__(self, alg: StructureAlgebra, basis_images, scalar: DerivationTable, N: int | None = None,
                 validate: bool = True, label: str = ""):
        if alg.field != scalar.field:
            raise ScalarMismatch(f"algebra over {alg.field}, derivation on {scalar.field}")
        d = alg.dim
        images = [tuple(alg.element(v) for v in row) for row in basis_images]
        if len(images) != d:
            raise ValueError(f"need images for {d} basis elements, got {len(images)}")
        if N is None:
            N = min(len(r) for r in images) - 1
        if any(len(r) < N + 1 for r in images):
            raise ValueError("every basis element needs images up to the truncation order")
        if N > scalar.trunc:
            raise ValueError(f"truncation {N} exceeds the scalar table's {scalar.trunc}")
        self.alg = alg
        self.scalar = scalar
        self.trunc = N
        self.images = tuple(tuple(r[: N + 1]) for r in images)
        self.label = label
        self._series: dict = {}
        if validate:
            self.validate()

    @property
    def field(self):
        return self.alg.field

    @property
    def dim(self) -> int:
        return self.alg.dim

    # -- evaluation -----------------------------------------------------------

    def scalar_series(self, c, L: int) -> list:
        hit = self._series.get(c)
        if hit is None or len(hit) <= L:
            hit = self.scalar.derive_series(c, max(L, self.trunc // 2))
            self._series[c] = hit
        return hit

    def derive_series(self, v, L: int | None = None) -> list[tuple]:
        """[delta^(n)(v) for n = 0..L] for an element given by coordinates."""
        L = self.trunc if L is None else L
        if L > self.trunc:
            raise ValueError(f"order {L} exceeds truncation {self.trunc}")
        A = self.alg
        v = A.element(v)
        acc = [list(A.zero()) for _ in range(L + 1)]
        for i, c in enumerate(v):
            if not c:
                continue
            cs = self.scalar_series(c, L)
            img = self.images[i]
            for a in range(L + 1):
                ca = cs[a]
                if not ca:
                    continue
                for b in range(L + 1 - a):
                    for k, x in enumerate(img[b]):
                        if x:
                            acc[a + b][k] = acc[a + b][k] + ca * x
        return [tuple(r) for r in acc]

    def derive(self, v, n: int) -> tuple:
        return self.derive_series(v, n)[n]

    # -- validation -----------------------------------------------------------

    def validate(self) -> None:
        """delta^(0) = id, Leibniz on basis pairs, and the composition rule on basis images."""
        A, N, d = self.alg, self.trunc, self.dim
        for i in range(d):
            if self.images[i][0] != A.basis(i):
                raise LeibnizInconsistent((i, i, 0), "delta^(0) is not the identity on the basis")
        for i in range(d):
            for j in range(d):
                lhs = self.derive_series(A.mul_basis(i, j), N)
                for n in range(N + 1):
                    rhs = A.zero()
                    for a in range(n + 1):
                        x, y = self.images[i][a], self.images[j][n - a]
                        if any(x) and any(y):
                            rhs = A.add(rhs, A.mul(x, y))
                    if lhs[n] != rhs:
                        raise LeibnizInconsistent((i, j, n),
                                                  f"delta^({n})({A.labels[i]}*{A.labels[j]}) disagrees with the "
                                                  f"Leibniz sum at (i, j, n) = {(i, j, n)}")
        p = self.scalar.char
        for i in range(d):
            for m in range(1, N + 1):
                inner = self.derive_series(self.images[i][m], N - m)
                for n in range(1, N - m + 1):
                    rhs = A.scale(_binom(p, m + n, n), self.images[i][m + n])
                    if inner[n] != rhs:
                        raise NotIterative((i, m, n),
                                           f"composition rule fails on {A.labels[i]} at (i, m, n) = {(i, m, n)}")

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        out = self.alg.to_json()
        out["scalar_derivation"] = self.scalar.to_json()
        out["trunc"] = self.trunc
        out["basis_images"] = [[[c.to_json() for c in v] for v in row] for row in self.images]
        return out

    def __repr__(self):
        return f"DeltaAlgebra(dim={self.dim}, trunc={self.trunc}{', ' + self.label if self.label else ''})"


def delta_from_basis_table(A: StructureAlgebra, basis_images, scalar: DerivationTable, N: int) -> DeltaAlgebra:
    return DeltaAlgebra(A, basis_images, scalar, N)


def _zero_images(A: StructureAlgebra, N: int) -> list:
    return [[A.basis(i)] + [A.zero()] * N for i in range(A.dim)]


def trivial_extension(A: StructureAlgebra, scalar: DerivationTable, N: int | None = None) -> DeltaAlgebra:
    """Basis elements are constants; only the scalars move."""
    N = scalar.trunc if N is None else N
    return DeltaAlgebra(A, _zero_images(A, N), scalar, N, label="basis-constant")


def matrix_entrywise_derivation(n: int, scalar: DerivationTable, N: int | None = None) -> DeltaAlgebra:
    """M_n(K) with the derivation applied entry by entry."""
    return trivial_extension(matrix_algebra(scalar.field, n), scalar, N)


def tensor_delta(A: DeltaAlgebra, B: DeltaAlgebra) -> DeltaAlgebra:
    """delta^(n)(a (x) b) = sum_{i+j=n} delta^(i)(a) (x) delta^(j)(b)."""
    if A.scalar != B.scalar:
        raise ScalarMismatch("tensor factors carry different scalar derivations")
    T = tensor_algebras(A.alg, B.alg)
    N = min(A.trunc, B.trunc)
    zero = T.field.zero
    images = []
    for i in range(A.dim):
        for j in range(B.dim):
            row = []
            for n in range(N + 1):
                acc = [zero] * T.dim
                for a in range(n + 1):
                    x, y = A.images[i][a], B.images[j][n - a]
                    for k, xk in enumerate(x):
                        if not xk:
                            continue
                        for l, yl in enumerate(y):
                            if yl:
                                acc[k * B.dim + l] = acc[k * B.dim + l] + xk * yl
                row.append(tuple(acc))
            images.append(row)
    return DeltaAlgebra(T, images, A.scalar, N, label="tensor")


def transport(DA: DeltaAlgebra, kummer: KummerExtension, scalar_K: DerivationTable,
              validate: bool = False) -> DeltaAlgebra:
    """A (x)_F K with delta_A (x) delta_K; basis images pass through the embedding."""
    if scalar_K.field != kummer.K:
        raise ScalarMismatch("the lifted derivation lives on a different field")
    t_img = [kummer.embed(x) for x in DA.scalar.images[: scalar_K.trunc + 1]]
    s_e = kummer.gen ** kummer.e
    got = scalar_K.derive_series(s_e, min(len(t_img) - 1, scalar_K.trunc))
    if got != t_img[: len(got)]:
        raise ScalarMismatch("the derivation on K does not extend the one on F")
    AK = base_change(DA.alg, kummer)
    N = min(DA.trunc, scalar_K.trunc)
    images = [[tuple(kummer.embed(c) for c in v) for v in row[: N + 1]] for row in DA.images]
    return DeltaAlgebra(AK, images, scalar_K, N, validate=validate, label="base-changed")
