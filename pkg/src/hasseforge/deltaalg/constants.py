"""Constants of a delta-algebra over K = F_q(s), and the splitting check.

Constants are searched in the finite-dimensional space of elements
sum e_i (x) P_i(s) / g(s)^k with deg P_i <= D.  Every condition
delta^(n)(x) = 0 is F_q-linear in the coefficients of the P_i; clearing
denominators coordinate by coordinate turns it into polynomial identities,
whose coefficients are the linear equations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algcore import KummerExtension, StructureAlgebra
from ..errors import NotStabilized, RelationFails
from ..exactfield import FieldElement, Matrix, SparseEchelon, exact_rank, kernel_basis, solve
from ..itderiv import DerivationTable, extend_to_kummer
from .core import DeltaAlgebra, transport

BANNER = "constant field F_q is not algebraically closed; results are verified up to the truncation order"


@dataclass(frozen=True)
class Ansatz:
    num_degree: int
    denominator: tuple  # coefficients of g, lowest degree first
    power: int

    @classmethod
    def default(cls, e: int) -> Ansatz:
        return cls(2 * e, (0, 1), e)

    def to_json(self) -> dict:
        return {"num_degree": self.num_degree, "denominator": list(self.denominator), "power": self.power}


def _poly_rows(base, fracs: dict, width: int):
    """Coefficient equations of sum_u lambda_u fracs[u] = 0 after clearing denominators."""
    lcm = None
    for f in fracs.values():
        lcm = f.den if lcm is None else lcm * (f.den // lcm.gcd(f.den))
    polys = {u: f.num * (lcm // f.den) for u, f in fracs.items()}
    deg = max(p.degree() for p in polys.values())
    rows = [dict() for _ in range(deg + 1)]
    for u, p in polys.items():
        for r, c in enumerate(base.poly_coeffs(p)):
            if not base.is_zero_raw(c):
                rows[r][u] = FieldElement(base, c)
    return [r for r in rows if r]


def _linear_relations(base, columns, width: int):
    """Rows of the F_q-linear conditions sum_u lambda_u columns[u] = 0 (columns are K-vectors)."""
    d = len(columns[0]) if columns else 0
    for k in range(d):
        fracs = {u: col[k] for u, col in enumerate(columns) if col[k]}
        if fracs:
            yield from _poly_rows(base, fracs, width)


@dataclass
class ConstantsBasis:
    ambient: DeltaAlgebra
    vectors: list
    constant_field: dict
    algebra: StructureAlgebra | None
    closed: bool
    ansatz: Ansatz
    trunc: int
    stabilized: bool = True
    checks: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "constant_field": self.constant_field,
            "closed": self.closed,
            "stabilized": self.stabilized,
            "ansatz": self.ansatz.to_json(),
            "trunc": self.trunc,
            "vectors": [[c.to_json() for c in v] for v in self.vectors],
            "note": BANNER,
        }


def _ansatz_monomials(DA: DeltaAlgebra, ans: Ansatz) -> list:
    K = DA.field
    g = K.frac(ans.denominator)
    den = g**ans.power
    out = []
    for i in range(DA.dim):
        for r in range(ans.num_degree + 1):
            v = list(DA.alg.zero())
            v[i] = K.monomial(r) / den
            out.append(tuple(v))
    return out


def solve_constants(DA: DeltaAlgebra, ans: Ansatz, N: int) -> list:
    """F_q-basis of the constants inside the ansatz space, as elements of DA."""
    base = DA.field.base
    monos = _ansatz_monomials(DA, ans)
    U = len(monos)
    series = [DA.derive_series(m, N) for m in monos]
    ech = SparseEchelon(base, U)
    for n in range(1, N + 1):
        cols = [s[n] for s in series]
        for row in _linear_relations(base, cols, U):
            ech.add(row)
        if len(ech) == U:
            break
    rows = ech.basis()
    if rows:
        kern = kernel_basis(Matrix(base, rows))
    else:
        one, zero = base.one, base.zero
        kern = [tuple(one if j == i else zero for j in range(U)) for i in range(U)]
    vectors = []
    for lam in kern:
        v = DA.alg.zero()
        for c, m in zip(lam, monos):
            if c:
                v = DA.alg.add(v, DA.alg.scale(DA.field(c), m))
        vectors.append(v)
    return vectors


def _span_coords(DA: DeltaAlgebra, vectors: list, target) -> tuple | None:
    """F_q-coordinates of ``target`` in the span of ``vectors``, or None."""
    base = DA.field.base
    cols = list(vectors) + [DA.alg.scale(-1, target)]
    rows = list(_linear_relations(base, cols, len(cols)))
    if not rows:
        return tuple(base.zero for _ in vectors)
    c = len(vectors)
    M = Matrix(base, [[r.get(u, base.zero) for u in range(c)] for r in rows])
    rhs = [-r.get(c, base.zero) for r in rows]
    return solve(M, rhs)


def constants_subalgebra(DA: DeltaAlgebra, ansatz: Ansatz | None = None, N: int | None = None,
                         stabilize: bool = True) -> ConstantsBasis:
    """Constants of ``DA`` (over K = F_q(s)) inside a degree-bounded ansatz.

    The dimension is recomputed with the numerator bound raised by the
    degree of g**k and the order raised by p; growth raises NotStabilized.
    """
    p = DA.scalar.char
    ans = ansatz or Ansatz.default(1)
    N = 2 * p if N is None else N
    if N > DA.trunc:
        raise ValueError(f"order {N} exceeds truncation {DA.trunc}")
    vectors = solve_constants(DA, ans, N)
    stabilized = True
    if stabilize:
        step = max(1, (len(ans.denominator) - 1) * ans.power)
        bigger = Ansatz(ans.num_degree + step, ans.denominator, ans.power)
        N2 = min(N + p, DA.trunc)
        if len(solve_constants(DA, bigger, N2)) != len(vectors):
            raise NotStabilized(f"constants dimension grows beyond degree {ans.num_degree}, order {N}")
    checks = {"annihilated": all(not any(any(x) for x in DA.derive_series(v, N)[1:]) for v in vectors)}
    base = DA.field.base
    c = len(vectors)
    closed = True
    consts = [[{} for _ in range(c)] for _ in range(c)]
    for a in range(c):
        for b in range(c):
            coords = _span_coords(DA, vectors, DA.alg.mul(vectors[a], vectors[b]))
            if coords is None:
                closed = False
                break
            consts[a][b] = {k: x for k, x in enumerate(coords) if x}
        if not closed:
            break
    algebra = None
    if closed and c:
        unit = _span_coords(DA, vectors, DA.alg.unit)
        if unit is None:
            closed = False
        else:
            algebra = StructureAlgebra(base, consts, unit, [f"c{i}" for i in range(c)])
    checks["closed"] = closed
    return ConstantsBasis(DA, vectors, base.descriptor(), algebra, closed, ans, N, stabilized, checks)


@dataclass
class SplitReport:
    constants_dim: int
    ambient_dim: int
    mu_rank: int
    split: bool
    truncation: dict
    ansatz: dict
    constants: ConstantsBasis | None = None

    def to_json(self) -> dict:
        return {
            "constants_dim": self.constants_dim,
            "ambient_dim": self.ambient_dim,
            "mu_rank": self.mu_rank,
            "split": self.split,
            "truncation": self.truncation,
            "ansatz": self.ansatz,
        }


def check_split(A: DeltaAlgebra, kummer: KummerExtension | int, D_K: DerivationTable | None = None,
                ansatz: Ansatz | None = None, N: int | None = None) -> SplitReport:
    """Is K a splitting field: does (A (x) K)^delta (x) K -> A (x) K have full rank?"""
    if not isinstance(kummer, KummerExtension):
        kummer = KummerExtension(A.field, kummer)
    if D_K is None:
        D_K = extend_to_kummer(A.scalar, kummer)
    AK = transport(A, kummer, D_K)
    ans = ansatz or Ansatz.default(kummer.e)
    cb = constants_subalgebra(AK, ans, N)
    rank = exact_rank(Matrix(AK.field, cb.vectors)) if cb.vectors else 0
    d = A.dim
    split = cb.dim == d and rank == d and cb.closed
    trunc = {"order": cb.trunc, "verdict": "verified" if split else "bounded search", "caveat": BANNER}
    return SplitReport(cb.dim, d, rank, split, trunc, ans.to_json(), cb)


@dataclass
class NilpotentWitness:
    algebra: StructureAlgebra
    z: tuple
    index: int
    zero_divisor: tuple
    probe: object

    def to_json(self) -> dict:
        return {
            "dim": self.algebra.dim,
            "z": [c.to_json() for c in self.z],
            "index": self.index,
            "zero_divisor": [c.to_json() for c in self.zero_divisor],
            "classification": self.probe.classification,
        }


def nilpotent_witness(p: int, i: int, f, x) -> NilpotentWitness:
    """In F[y]/(y^P - f) with P = p^i and f = x^P, the element y - x is nilpotent."""
    from ..algcore import element_probe

    F = x.field
    if F.char != p:
        raise RelationFails(f"field has characteristic {F.char}, not {p}")
    P = p**i
    f = F(f)
    if not f:
        raise RelationFails("the relation y^P = 0 is degenerate")
    if x**P != f:
        raise RelationFails(f"x^{P} != f")
    consts = [[{(a + b) % P: (f if a + b >= P else 1)} for b in range(P)] for a in range(P)]
    labels = ["1"] + [f"y^{a}" if a > 1 else "y" for a in range(1, P)]
    R = StructureAlgebra(F, consts, [1] + [0] * (P - 1), labels)
    z = R.sub(R.basis(1) if P > 1 else R.unit, R.scale(x, R.unit))
    probe = element_probe(R, z, P)
    if probe.classification != "nilpotent" or R.is_zero(z):
        raise RelationFails("y - x did not come out nilpotent")
    if not R.is_zero(R.power(z, P)):
        raise RelationFails("z^P is not zero")
    return NilpotentWitness(R, z, probe.nilpotency_index, probe.witness, probe)
