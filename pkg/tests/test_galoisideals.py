import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hasseforge.algcore import alg_from_structure_constants, csa_check, make_symbol_algebra, matrix_algebra
from hasseforge.deltaalg import check_split, matrix_entrywise_derivation
from hasseforge.errors import NotInner, NotMatrixAlgebra, PullbackRankMismatch
from hasseforge.exactfield import GF, Matrix, SparseEchelon
from hasseforge.galoisideals import (IRREDUCIBLE_CERTIFICATE, action_on_constants, all_subspaces,
                                     classify_delta_structure, conjugation_matrix, invariants_algebra,
                                     kummer_galois_group, matrix_units_iso, skolem_noether_lift,
                                     stable_right_ideals, submodule_lattice)
from hasseforge.galoisideals.lattice import intersect, spin
from hasseforge.itderiv import hasse_table

import oracles


def _gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@pytest.mark.parametrize("q,n", [(2, 3), (3, 2), (5, 2), (2, 4)])
def test_subspace_enumeration_counts(q, n):
    F = GF(q)
    subs = list(all_subspaces(F, n))
    assert len(subs) == sum(_gaussian_binomial(n, k, q) for k in range(n + 1))
    assert len(set(subs)) == len(subs)


@given(st.sampled_from([2, 3, 5]), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_lattice_flags_match_line_oracle(p, seed):
    rng = random.Random(seed)
    mats = list(oracles.gl2(p))
    gens = [rng.choice(mats) for _ in range(rng.randint(1, 2))]
    lat = submodule_lattice([Matrix(GF(p), g) for g in gens])
    ref = oracles.lattice_flags_2d(gens, p)
    assert lat.flags() == {k: ref[k] for k in ("completely_reducible", "irreducible", "indecomposable")}
    assert len(lat.submodules) == ref["count"]


def test_jordan_block_lattice():
    F = GF(5)
    lat = submodule_lattice([Matrix(F, [[1, 1], [0, 1]])])
    assert lat.flags() == {"completely_reducible": False, "irreducible": False, "indecomposable": True}
    assert len(lat.submodules) == 3
    assert len(submodule_lattice([Matrix.identity(F, 2)]).submodules) == 8


def test_randomized_branch_marks_incomplete():
    F = GF(5)
    # 5^6 vectors is past the enumeration limit
    g = Matrix(F, [[1 if i == j else 0 for j in range(6)] for i in range(6)])
    rows = [list(r) for r in g.rows]
    rows[0][1] = F(1)
    lat = submodule_lattice([Matrix(F, rows)])
    assert not lat.complete
    assert not lat.irreducible


def test_spin_and_intersect():
    F = GF(3)
    g = Matrix(F, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    one = (F(1), F(1), F(1))
    assert len(spin([g], one, F, 3)) == 1
    assert len(spin([g], (F(1), F(0), F(0)), F, 3)) == 3
    U = ((F(1), F(0), F(0)), (F(0), F(1), F(0)))
    W = ((F(0), F(1), F(0)), (F(0), F(0), F(1)))
    assert len(intersect(F, 3, U, W)) == 1


def test_skolem_noether_round_trip_small():
    F = GF(5)
    M2 = matrix_algebra(F, 2)
    P = Matrix(F, [[2, 1], [1, 1]])
    lift = skolem_noether_lift(M2, conjugation_matrix(M2, P))
    assert lift == P * P[0, 0].inverse()


def test_transpose_is_not_inner():
    F = GF(5)
    M2 = matrix_algebra(F, 2)
    # transpose swaps E12 and E21 and fixes E11, E22
    T = Matrix(F, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    with pytest.raises(NotInner):
        skolem_noether_lift(M2, T)


def test_matrix_units_iso_on_non_matrix_algebra():
    F = GF(5)
    Q = make_symbol_algebra(F(2), F(3), 2, 4, F)
    rho = matrix_units_iso(Q)
    flat = Matrix(F, [[x for row in R.rows for x in row] for R in rho])
    assert flat.rank() == 4
    # rho is multiplicative
    for i in range(4):
        for j in range(4):
            prod = Q.mul_basis(i, j)
            img = Matrix.zeros(F, 2, 2)
            for k, c in enumerate(prod):
                if c:
                    img = img + rho[k] * c
            assert rho[i] @ rho[j] == img
    with pytest.raises(NotMatrixAlgebra):
        matrix_units_iso(alg_from_structure_constants(F, [[{0: 1}, {}, {}], [{}, {1: 1}, {}], [{}, {}, {2: 1}]],
                                                      [1, 1, 1]))


def test_classification_of_matrix_algebra(F5):
    DM = matrix_entrywise_derivation(2, hasse_table(F5, 10), 10)
    cl = classify_delta_structure(DM, 1)
    assert cl.flags == {"delta_completely_reducible": True, "delta_irreducible": False,
                        "delta_indecomposable": False}
    assert cl.verified and len(cl.ideals) == 8
    assert sorted(len(b) for b in cl.ideals) == [0] + [2] * 6 + [4]
    assert cl.decomposition and IRREDUCIBLE_CERTIFICATE not in cl.certificates


def test_classification_of_quaternion_model(quaternion):
    kum, B, D_K, DB = quaternion
    cl = classify_delta_structure(DB, kum, D_K, N=10)
    assert cl.flags["delta_irreducible"] and cl.flags["delta_indecomposable"]
    assert [len(b) for b in cl.ideals] == [0, 4]
    assert IRREDUCIBLE_CERTIFICATE in cl.certificates
    assert set(cl.to_json()) >= {"flags", "ideals", "lattice", "certificates"}


def test_classification_needs_split(quaternion):
    kum, B, D_K, DB = quaternion
    with pytest.raises(PullbackRankMismatch):
        classify_delta_structure(DB, 1, N=10)


def test_galois_action_on_constants(quaternion):
    kum, B, D_K, DB = quaternion
    rep_split = check_split(DB, kum, D_K, N=10)
    G = kummer_galois_group(kum, D_K, 10, samples=5)
    assert len(G) == 2
    rep = action_on_constants(rep_split.constants.ambient, rep_split.constants, G)
    sq = rep.action_matrices[1] @ rep.action_matrices[1]
    assert sq == Matrix.identity(GF(5), 4)


def test_stable_right_ideals_column_convention():
    F = GF(3)
    ideals, lat = stable_right_ideals(2, F)
    assert len(ideals) == len(lat.submodules) == 6
    M = matrix_algebra(F, 2)
    line = next(ideal for ideal in ideals if ideal.dim == 2)
    # closed under right multiplication by every matrix unit
    ech = SparseEchelon(F, 4).extend(line.basis)
    for b in line.basis:
        for k in range(4):
            assert ech.contains(M.mul(b, M.basis(k)))


def test_invariants_algebra(quaternion):
    kum = quaternion[0]
    F = GF(5)
    A = invariants_algebra(kum, Matrix(F, [[0, 1], [3, 0]]))
    assert A.dim == 4 and csa_check(A).simple
    trivial = invariants_algebra(kum, Matrix.identity(F, 2))
    assert trivial.dim == 4
    with pytest.raises(ValueError):
        invariants_algebra(kum, Matrix(F, [[1, 1], [0, 1]]))
