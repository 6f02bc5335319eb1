"""Exact linear algebra over scalar fields and rational function fields.

Rank over a function field uses fraction-free (Bareiss) elimination on the
polynomial rows obtained by clearing denominators.  Kernels and solves use
Gauss-Jordan on field elements.  Pivots are always the first nonzero entry in
scan order so results are reproducible.
"""

from __future__ import annotations

from ..errors import DivisionByZero, FieldMismatch
from .poly import FunctionField


class Matrix:
    """Immutable dense matrix with entries in ``field``."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows):
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError("matrix rows have different lengths")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = widths.pop() if widths else 0

    @classmethod
    def identity(cls, field, n: int) -> Matrix:
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, m: int, n: int) -> Matrix:
        return cls(field, [[0] * n for _ in range(m)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def _check(self, other: Matrix):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
            return Matrix(
                self.field,
                [[_dot(r, c, self.field.zero) for c in cols] for r in self.rows],
            )
        return tuple(_dot(r, other, self.field.zero) for r in self.rows)

    def __mul__(self, scalar):
        return Matrix(self.field, [[x * scalar for x in r] for r in self.rows])

    __rmul__ = __mul__

    def __add__(self, other: Matrix):
        self._check(other)
        return Matrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: Matrix):
        self._check(other)
        return Matrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix(self.field, [[-a for a in r] for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return "Matrix(" + repr([list(r) for r in self.rows]) + ")"

    def transpose(self) -> Matrix:
        return Matrix(self.field, list(zip(*self.rows)) if self.rows else [])

    def rank(self) -> int:
        return exact_rank(self)

    def kernel(self) -> list[tuple]:
        return kernel_basis(self)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def inverse(self) -> Matrix:
        n = self.nrows
        if n != self.ncols:
            raise ValueError("only square matrices are invertible")
        aug = [list(r) + [self.field.one if i == j else self.field.zero for j in range(n)]
               for i, r in enumerate(self.rows)]
        red, piv = row_reduce(aug)
        if piv[:n] != list(range(n)):
            raise DivisionByZero("matrix is singular")
        return Matrix(self.field, [r[n:] for r in red[:n]])

    def to_json(self) -> list:
        return [[x.to_json() for x in r] for r in self.rows]


def _dot(u, v, zero):
    acc = zero
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


# -- elimination -------------------------------------------------------------


def row_reduce(rows) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of element rows; returns (rows, pivot columns)."""
    A = [list(r) for r in rows]
    if not A:
        return A, []
    m, n = len(A), len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv if x else x for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b if b else a for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def _bareiss_rank(prows, is_zero) -> int:
    A = [list(r) for r in prows]
    m = len(A)
    n = len(A[0]) if A else 0
    prev = None
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if not is_zero(A[i][c])), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, m):
            a_ic = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c + 1, n):
                v = p * row_i[j] - a_ic * row_r[j]
                row_i[j] = v if prev is None else v // prev
            row_i[c] = a_ic * 0
        prev = p
        r += 1
        if r == m:
            break
    return r


def _clear_denominators(M: Matrix) -> list[list]:
    out = []
    for row in M.rows:
        lcm = None
        for x in row:
            if x:
                lcm = x.den if lcm is None else lcm * (x.den // lcm.gcd(x.den))
        if lcm is None:
            out.append([x.num for x in row])
        else:
            out.append([x.num * (lcm // x.den) for x in row])
    return out


def exact_rank(M: Matrix, kernel: bool = False):
    """Rank over the entry field; with ``kernel=True`` also a kernel basis."""
    if M.nrows == 0 or M.ncols == 0:
        rank = 0
    elif isinstance(M.field, FunctionField):
        rank = _bareiss_rank(_clear_denominators(M), lambda p: p.degree() < 0)
    else:
        rank = len(SparseEchelon(M.field, M.ncols).extend(M.rows))
    if kernel:
        return rank, kernel_basis(M)
    return rank


def kernel_basis(M: Matrix) -> list[tuple]:
    """Basis of {x : M x = 0}, one vector per free column, free entry 1."""
    n = M.ncols
    red, piv = row_reduce(M.rows)
    free = [c for c in range(n) if c not in piv]
    zero, one = M.field.zero, M.field.one
    basis = []
    for fcol in free:
        v = [zero] * n
        v[fcol] = one
        for r, pc in enumerate(piv):
            v[pc] = -red[r][fcol]
        basis.append(tuple(v))
    return basis


def solve(M: Matrix, b) -> tuple | None:
    """One solution of M x = b, or None when inconsistent."""
    aug = [list(r) + [bi] for r, bi in zip(M.rows, b)]
    red, piv = row_reduce(aug)
    n = M.ncols
    if n in piv:
        return None
    x = [M.field.zero] * n
    for r, pc in enumerate(piv):
        x[pc] = red[r][n]
    return tuple(x)


class SparseEchelon:
    """Incrementally maintained echelon basis of a subspace of field^n.

    Rows are stored sparsely (dict column -> value) with a unit pivot, so
    membership tests and rank updates cost proportional to the fill.
    """

    def __init__(self, field, n: int):
        self.field = field
        self.n = n
        self.rows: dict[int, dict[int, object]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec) -> dict:
        v = {i: x for i, x in (vec.items() if isinstance(vec, dict) else enumerate(vec)) if x}
        for c in sorted(self.rows):
            f = v.get(c)
            if f:
                for j, x in self.rows[c].items():
                    y = v.get(j)
                    y = -f * x if y is None else y - f * x
                    if y:
                        v[j] = y
                    else:
                        v.pop(j, None)
        return v

    def add(self, vec) -> bool:
        """Insert ``vec``; True when it was independent of the current span."""
        v = self.reduce(vec)
        if not v:
            return False
        c = min(v)
        inv = v[c].inverse()
        v = {j: x * inv for j, x in v.items()}
        for row in self.rows.values():
            f = row.get(c)
            if f:
                for j, x in v.items():
                    y = row.get(j)
                    y = -f * x if y is None else y - f * x
                    if y:
                        row[j] = y
                    else:
                        row.pop(j, None)
        self.rows[c] = v
        return True

    def extend(self, vecs) -> SparseEchelon:
        for v in vecs:
            self.add(v)
        return self

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list[tuple]:
        zero = self.field.zero
        out = []
        for c in sorted(self.rows):
            row = self.rows[c]
            out.append(tuple(row.get(j, zero) for j in range(self.n)))
        return out
