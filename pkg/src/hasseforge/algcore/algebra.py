"""Associative unital algebras given by structure constants."""

from __future__ import annotations

from ..errors import BadUnit, FieldMismatch, NotAssociative


def field_descriptor(field) -> dict:
    return field.descriptor()


class StructureAlgebra:
    """Algebra over ``field`` with e_i e_j = sum_k c[i][j][k] e_k.

    The table is stored sparsely: ``mult[i][j]`` is a tuple of (k, c) pairs
    with c nonzero.  Elements are plain tuples of coordinates.
    """

    def __init__(self, field, constants, unit, labels=None, check: bool = True):
        d = len(constants)
        if any(len(row) != d for row in constants):
            raise ValueError("structure constants must form a d x d x d table")
        self.field = field
        self.dim = d
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(d))
        if len(self.labels) != d:
            raise ValueError("one label per basis element")
        mult = []
        for i, row in enumerate(constants):
            out_row = []
            for j, entry in enumerate(row):
                if isinstance(entry, dict):
                    items = entry.items()
                else:
                    if len(entry) != d:
                        raise ValueError(f"constants[{i}][{j}] has length {len(entry)}, expected {d}")
                    items = enumerate(entry)
                pairs = []
                for k, c in sorted(items):
                    c = field(c)
                    if c:
                        pairs.append((k, c))
                out_row.append(tuple(pairs))
            mult.append(tuple(out_row))
        self.mult = tuple(mult)
        self.unit = tuple(field(x) for x in unit)
        if len(self.unit) != d:
            raise BadUnit("unit has the wrong length")
        if check:
            self.validate()

    # -- validation -----------------------------------------------------------

    def validate(self) -> None:
        d = self.dim
        basis = [self.basis(i) for i in range(d)]
        for i in range(d):
            if self.mul(self.unit, basis[i]) != basis[i] or self.mul(basis[i], self.unit) != basis[i]:
                raise BadUnit(f"unit law fails on {self.labels[i]}")
        prods = [[self.mul_basis(i, j) for j in range(d)] for i in range(d)]
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    left = self.mul(prods[i][j], basis[k])
                    right = self.mul(basis[i], prods[j][k])
                    if left != right:
                        raise NotAssociative((i, j, k))

    # -- elements -------------------------------------------------------------

    def zero(self) -> tuple:
        z = self.field.zero
        return (z,) * self.dim

    def one(self) -> tuple:
        return self.unit

    def basis(self, i: int) -> tuple:
        z, o = self.field.zero, self.field.one
        return tuple(o if k == i else z for k in range(self.dim))

    def element(self, coords) -> tuple:
        if isinstance(coords, dict):
            v = list(self.zero())
            for k, c in coords.items():
                v[self.labels.index(k) if isinstance(k, str) else k] = self.field(c)
            return tuple(v)
        v = tuple(self.field(c) for c in coords)
        if len(v) != self.dim:
            raise ValueError("wrong number of coordinates")
        return v

    def mul_basis(self, i: int, j: int) -> tuple:
        v = list(self.zero())
        for k, c in self.mult[i][j]:
            v[k] = c
        return tuple(v)

    def mul(self, u, v) -> tuple:
        acc = list(self.zero())
        nzv = [(j, b) for j, b in enumerate(v) if b]
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.mult[i]
            for j, b in nzv:
                pairs = row[j]
                if not pairs:
                    continue
                ab = a * b
                for k, c in pairs:
                    acc[k] = acc[k] + ab * c
        return tuple(acc)

    def add(self, u, v) -> tuple:
        return tuple(a + b for a, b in zip(u, v))

    def sub(self, u, v) -> tuple:
        return tuple(a - b for a, b in zip(u, v))

    def scale(self, c, u) -> tuple:
        c = self.field(c)
        return tuple(c * a for a in u)

    def power(self, u, k: int) -> tuple:
        out = self.unit
        for _ in range(k):
            out = self.mul(out, u)
        return out

    def is_zero(self, u) -> bool:
        return not any(u)

    def left_matrix(self, z):
        """Rows indexed by output coordinate, columns by basis j: L_z e_j = z e_j."""
        from ..exactfield import Matrix

        cols = [self.mul(z, self.basis(j)) for j in range(self.dim)]
        return Matrix(self.field, [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def format(self, u) -> str:
        terms = []
        for c, lab in zip(u, self.labels):
            if c:
                terms.append(lab if c == 1 else f"({c})*{lab}")
        return " + ".join(terms) if terms else "0"

    # -- serialization --------------------------------------------------------

    def dense_constants(self) -> list:
        d = self.dim
        out = []
        for i in range(d):
            out.append([list(self.mul_basis(i, j)) for j in range(d)])
        return out

    def to_json(self) -> dict:
        return {
            "field": field_descriptor(self.field),
            "dim": self.dim,
            "labels": list(self.labels),
            "constants": [[[c.to_json() for c in v] for v in row] for row in self.dense_constants()],
            "unit": [c.to_json() for c in self.unit],
        }

    def __eq__(self, other):
        return (isinstance(other, StructureAlgebra) and self.field == other.field
                and self.mult == other.mult and self.unit == other.unit)

    def __hash__(self):
        return hash((self.field, self.mult, self.unit))

    def __repr__(self):
        return f"StructureAlgebra(dim={self.dim} over {self.field})"


def alg_from_structure_constants(field, constants, unit, labels=None) -> StructureAlgebra:
    """Validated algebra from a dense or sparse cubic table."""
    return StructureAlgebra(field, constants, unit, labels)


def matrix_algebra(field, n: int) -> StructureAlgebra:
    """M_n(field) on the matrix units E_ij, index i*n + j."""
    d = n * n
    consts = [[{} for _ in range(d)] for _ in range(d)]
    for i in range(n):
        for j in range(n):
            for l in range(n):
                consts[i * n + j][j * n + l] = {i * n + l: 1}
    unit = [1 if (k // n) == (k % n) else 0 for k in range(d)]
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return StructureAlgebra(field, consts, unit, labels)


def tensor_algebras(A: StructureAlgebra, B: StructureAlgebra) -> StructureAlgebra:
    """A (x) B with basis e_i (x) f_j at index i*dim(B) + j."""
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    dA, dB = A.dim, B.dim
    consts = [[{} for _ in range(dA * dB)] for _ in range(dA * dB)]
    for i in range(dA):
        for j in range(dA):
            for i2 in range(dB):
                for j2 in range(dB):
                    entry = consts[i * dB + i2][j * dB + j2]
                    for k, c in A.mult[i][j]:
                        for k2, c2 in B.mult[i2][j2]:
                            entry[k * dB + k2] = c * c2
    unit = [a * b for a in A.unit for b in B.unit]
    labels = [_tensor_label(a, b) for a in A.labels for b in B.labels]
    return StructureAlgebra(A.field, consts, unit, labels)


def _tensor_label(a: str, b: str) -> str:
    return f"{a}*{b}"


def base_change(A: StructureAlgebra, target) -> StructureAlgebra:
    """A (x) K: the same constants read in a larger field.

    ``target`` is a KummerExtension over A's field (constants pass through
    t -> s**e) or a rational function field over A's scalar field.
    """
    from .kummer import KummerExtension

    if isinstance(target, KummerExtension):
        if target.F != A.field:
            raise FieldMismatch(f"{A.field} is not the base of {target}")
        conv, field = target.embed, target.K
    else:
        base = getattr(target, "base", None)
        if base != A.field:
            raise FieldMismatch(f"cannot read {A.field} constants in {target}")
        conv, field = target, target
    d = A.dim
    consts = [[{k: conv(c) for k, c in A.mult[i][j]} for j in range(d)] for i in range(d)]
    unit = [conv(c) for c in A.unit]
    return StructureAlgebra(field, consts, unit, A.labels)
