"""Right ideals stable under a group, and their pullback to a split delta-algebra.

For A split by K with constants C = M_n(k), a subspace U of k^n stable under
the projective lifts of the Galois group gives the right ideal
I_U = {X : columns of X lie in U} of C.  Averaging I_U (x) K over the group
and reading the result in A yields a delta-stable right ideal of A of the
same dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algcore import KummerExtension, StructureAlgebra, matrix_algebra
from ..deltaalg import DeltaAlgebra, check_split
from ..errors import PullbackRankMismatch, ReynoldsDenominator
from ..exactfield import Matrix, SparseEchelon, solve
from ..itderiv import DerivationTable, extend_to_kummer
from .group import AutomorphismRep, action_on_constants, apply_matrix, kummer_galois_group
from .lattice import SubmoduleLattice, submodule_lattice
from .skolem import matrix_units_iso, skolem_noether_lift

IRREDUCIBLE_CERTIFICATE = (
    "the group image is irreducible in PGL_n over the constants, so it lies in no proper "
    "parabolic subgroup; for this finite group that is the statement that the invariant-subspace "
    "lattice is trivial"
)


def column_ideal_basis(U, n: int) -> list[tuple]:
    """Basis of {X in M_n : col(X) within U}, in matrix-unit coordinates."""
    field = U[0][0].field if U else None
    out = []
    for u in U:
        for col in range(n):
            v = [field.zero] * (n * n)
            for i in range(n):
                v[i * n + col] = u[i]
            out.append(tuple(v))
    return out


def _stable(A: StructureAlgebra, basis, maps) -> bool:
    ech = SparseEchelon(A.field, A.dim).extend(basis)
    for b in basis:
        for k in range(A.dim):
            if not ech.contains(A.mul(b, A.basis(k))):
                return False
        for M in maps:
            if not ech.contains(apply_matrix(M, b)):
                return False
    return True


@dataclass
class RightIdeal:
    subspace: tuple
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {"dim": self.dim, "subspace": [[c.to_json() for c in v] for v in self.subspace],
                "basis": [[c.to_json() for c in v] for v in self.basis]}


def stable_right_ideals(n: int, field, actions=()) -> tuple[list[RightIdeal], SubmoduleLattice]:
    """Right ideals of M_n(field) stable under the given automorphisms (coordinate matrices)."""
    M = matrix_algebra(field, n)
    actions = list(actions)
    lifts = [skolem_noether_lift(M, a) for a in actions] or [Matrix.identity(field, n)]
    lat = submodule_lattice(lifts, field)
    ideals = []
    for U in lat.submodules:
        basis = column_ideal_basis(U, n)
        if not _stable(M, basis, actions):
            raise PullbackRankMismatch(f"ideal from {U} is not stable")
        ideals.append(RightIdeal(U, basis))
    return ideals, lat


@dataclass
class IdealClassification:
    flags: dict
    ideals: list
    lattice: SubmoduleLattice
    certificates: list = field(default_factory=list)
    verified: bool = True
    decomposition: list = field(default_factory=list)

    @property
    def delta_irreducible(self) -> bool:
        return self.flags["delta_irreducible"]

    def to_json(self) -> dict:
        return {
            "flags": self.flags,
            "ideals": [{"dim": len(b), "basis": [[c.to_json() for c in v] for v in b]} for b in self.ideals],
            "lattice": self.lattice.to_json()["submodules"],
            "certificates": self.certificates,
            "verified": self.verified,
            "decomposition": self.decomposition,
        }


def _reynolds_pullback(kummer: KummerExtension, G, elems) -> list[tuple]:
    """F-coordinates of the averages (1/|G|) sum_g g(s^r w) over the ideal elements w."""
    e = len(G)
    p = kummer.p
    if p and e % p == 0:
        raise ReynoldsDenominator(f"group order {e} is divisible by the characteristic {p}")
    s = kummer.gen
    inv = kummer.K.base(e).inverse()
    out = []
    for w in elems:
        for r in range(kummer.e):
            x = tuple(c * s**r for c in w)
            avg = [kummer.K.zero] * len(x)
            for g in G:
                avg = [a + g(c) for a, c in zip(avg, x)]
            out.append(tuple(kummer.descend(a * inv) for a in avg))
    return out


def classify_delta_structure(A: DeltaAlgebra, kummer: KummerExtension | int, D_K: DerivationTable | None = None,
                             N: int | None = None, split=None, G=None, rep: AutomorphismRep | None = None,
                             ) -> IdealClassification:
    """Delta-right-ideal structure of A through the invariant subspaces of the Galois image."""
    if not isinstance(kummer, KummerExtension):
        kummer = KummerExtension(A.field, kummer)
    if D_K is None:
        D_K = extend_to_kummer(A.scalar, kummer)
    N = A.trunc if N is None else N
    if split is None:
        split = check_split(A, kummer, D_K)
    if not split.split:
        raise PullbackRankMismatch("the algebra is not split by this extension")
    C = split.constants
    AK = C.ambient
    if G is None:
        G = kummer_galois_group(kummer, D_K, min(N, D_K.trunc))
    if rep is None:
        rep = action_on_constants(AK, C, G)
    Calg = C.algebra
    rho = matrix_units_iso(Calg)
    n = len(rho[0].rows)
    lifts = [skolem_noether_lift(Calg, M, rho) for M in rep.action_matrices]
    rep.projective_lifts = lifts
    rep.iso = rho
    lat = submodule_lattice(lifts, Calg.field)

    d = Calg.dim
    flat = Matrix(Calg.field, [[R[r // n, r % n] for R in rho] for r in range(d)])
    ideals, verified = [], True
    for U in lat.submodules:
        elems = []
        for X in column_ideal_basis(U, n):
            coords = solve(flat, X)
            w = AK.alg.zero()
            for c, v in zip(coords, C.vectors):
                if c:
                    w = AK.alg.add(w, AK.alg.scale(AK.field(c), v))
            elems.append(w)
        ech = SparseEchelon(A.field, A.dim).extend(_reynolds_pullback(kummer, G, elems))
        J = ech.basis()
        if len(J) != n * len(U):
            raise PullbackRankMismatch(f"pullback of a {n * len(U)}-dimensional ideal has dimension {len(J)}")
        verified &= _delta_right_stable(A, J, ech, N)
        ideals.append(J)

    flags = {
        "delta_completely_reducible": lat.completely_reducible,
        "delta_irreducible": lat.irreducible,
        "delta_indecomposable": lat.indecomposable,
    }
    cl = IdealClassification(flags, ideals, lat, verified=verified)
    if lat.completely_reducible:
        cl.decomposition = _decomposition(A, lat, ideals)
        verified &= bool(cl.decomposition) or lat.irreducible
        cl.verified = verified
    note = reductivity_note(cl)
    if note:
        cl.certificates.append(note)
    return cl


def _delta_right_stable(A: DeltaAlgebra, J, ech: SparseEchelon, N: int) -> bool:
    for b in J:
        for k in range(A.dim):
            if not ech.contains(A.alg.mul(b, A.alg.basis(k))):
                return False
        for img in A.derive_series(b, N)[1:]:
            if not ech.contains(img):
                return False
    return True


def _decomposition(A: DeltaAlgebra, lat: SubmoduleLattice, ideals) -> list[int]:
    """Indices of minimal pulled-back ideals whose direct sum is A, if found greedily."""
    minimal = [i for i, U in enumerate(lat.submodules)
               if U and not any(W and len(W) < len(U) and set(W) <= set(U) for W in lat.submodules)]
    chosen, ech = [], SparseEchelon(A.field, A.dim)
    for i in minimal:
        before = len(ech)
        trial = SparseEchelon(A.field, A.dim)
        trial.rows = {c: dict(r) for c, r in ech.rows.items()}
        trial.extend(ideals[i])
        if len(trial) == before + len(ideals[i]):
            ech = trial
            chosen.append(i)
        if len(ech) == A.dim:
            return chosen
    return []


def reductivity_note(cl: IdealClassification) -> str | None:
    """A certificate string when the structure is delta-irreducible."""
    if cl.flags.get("delta_irreducible"):
        return IRREDUCIBLE_CERTIFICATE
    return None


def invariants_algebra(kummer: KummerExtension, P: Matrix) -> StructureAlgebra:
    """F-algebra of X in M_n(K) with P sigma(X) P^-1 = X, sigma the generator.

    This is the algebra attached to the projective representation
    sigma -> [P]; it requires P^e to be a scalar.
    """
    n = P.nrows
    K, F, e = kummer.K, kummer.F, kummer.e
    Pk = Matrix(K, [[K(x) for x in row] for row in P.rows])
    Pe = Pk
    for _ in range(e - 1):
        Pe = Pe @ Pk
    if any(Pe[i, j] for i in range(n) for j in range(n) if i != j) or len({Pe[i, i] for i in range(n)}) != 1:
        raise ValueError("P^e is not a scalar, so sigma -> P is not a projective representation")
    powers = [Matrix.identity(K, n)]
    for _ in range(e - 1):
        powers.append(powers[-1] @ Pk)
    inv = [M.inverse() for M in powers]
    s = kummer.gen
    einv = K.base(e).inverse()

    def average(X: Matrix) -> Matrix:
        acc = Matrix.zeros(K, n, n)
        for j in range(e):
            moved = Matrix(K, [[kummer.sigma(j, x) for x in row] for row in X.rows])
            acc = acc + powers[j] @ moved @ inv[j]
        return acc * einv

    def flat_f(X: Matrix) -> tuple:
        return tuple(c for row in X.rows for x in row for c in kummer.to_coords(x))

    ech = SparseEchelon(F, n * n * e)
    basis = []
    for i in range(n * n):
        for r in range(e):
            X = Matrix.zeros(K, n, n)
            rows = [list(row) for row in X.rows]
            rows[i // n][i % n] = s**r
            Y = average(Matrix(K, rows))
            if ech.add(flat_f(Y)):
                basis.append(Y)
    d = len(basis)
    B = Matrix(F, [[flat_f(Y)[r] for Y in basis] for r in range(n * n * e)])
    consts = []
    for X in basis:
        row = []
        for Y in basis:
            coords = solve(B, flat_f(X @ Y))
            row.append({k: c for k, c in enumerate(coords) if c})
        consts.append(row)
    unit = solve(B, flat_f(Matrix.identity(K, n)))
    return StructureAlgebra(F, consts, unit, [f"b{i}" for i in range(d)])
