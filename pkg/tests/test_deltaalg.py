import pytest

from hasseforge.algcore import (Cocycle, KummerExtension, alg_from_structure_constants, csa_check,
                                make_crossed_product, matrix_algebra)
from hasseforge.deltaalg import (Ansatz, DeltaAlgebra, FiltrationSpec, check_product_identities, check_split,
                                 crossed_product_derivation, crossed_product_levels, filtration_extension,
                                 matrix_entrywise_derivation, nilpotent_witness, solve_constants, standard_levels,
                                 tensor_delta, transport, trivial_extension)
from hasseforge.errors import (CocycleNotConstant, LeibnizInconsistent, NotIterative, RelationFails,
                               ScalarMismatch, SpanFailure, WellDefinednessFailure)
from hasseforge.exactfield import GF, QQ, function_field
from hasseforge.itderiv import DerivationTable, extend_to_kummer, hasse_table

import oracles


@pytest.fixture(scope="module")
def small(F5, hasse24):
    """Quaternion model; tests run it at order 10, the table reaches 24 for level-2 membership."""
    D_F = hasse24
    kum = KummerExtension(F5, 2)
    B = make_crossed_product(kum, Cocycle.cyclic(kum, 2))
    D_K = extend_to_kummer(D_F, kum)
    return D_F, kum, B, D_K


def test_matrix_entrywise_examples(F5, hasse24):
    DM = matrix_entrywise_derivation(2, hasse24, 12)
    t = F5.gen
    M = DM.alg
    E11 = M.element({"E11": 1})
    assert DM.derive(M.scale(t, E11), 1) == E11
    assert DM.derive(M.scale(t**5, E11), 5) == E11
    assert DM.derive(E11, 3) == M.zero()


def test_quaternion_first_images(quaternion):
    kum, B, D_K, DB = quaternion
    su = B.basis(3)
    t = kum.F.gen
    assert DB.derive(su, 1) == B.scale(3 / t, su)
    assert DB.derive(B.basis(1), 4) == B.zero()


def test_product_identities_small(small):
    D_F, kum, B, D_K = small
    DB = crossed_product_derivation(B, D_K, 10, D_F)
    rep = check_product_identities(DB, D_K, 10)
    assert rep.ok and rep.checked > 0


def test_nonconstant_cocycle_rejected(small, F5):
    D_F, kum, _, D_K = small
    B = make_crossed_product(kum, Cocycle.cyclic(kum, kum.embed(F5.gen)))
    with pytest.raises(CocycleNotConstant):
        crossed_product_derivation(B, D_K, 6, D_F)


def test_lift_mismatch_rejected(small, F5):
    D_F, kum, B, _ = small
    images = list(extend_to_kummer(hasse_table(F5, 10), kum).images)
    images[1] = images[1] * 2
    with pytest.raises(ScalarMismatch):
        crossed_product_derivation(B, DerivationTable(kum.K, images, parent=D_F), 4, D_F)


def test_broken_basis_images_are_caught(F5):
    D = hasse_table(F5, 4)
    M = matrix_algebra(F5, 2)
    good = trivial_extension(M, D, 4)
    rows = [list(r) for r in good.images]
    rows[1][1] = M.element({"E11": 1})  # delta(E12) = E11 breaks Leibniz on E11 * E12
    with pytest.raises(LeibnizInconsistent) as exc:
        DeltaAlgebra(M, rows, D, 4)
    assert len(exc.value.witness) == 3
    rows = [list(r) for r in good.images]
    rows[0][0] = M.zero()
    with pytest.raises(LeibnizInconsistent):
        DeltaAlgebra(M, rows, D, 4)


def test_composition_rule_is_checked(F5):
    # the unit of a one-dimensional algebra must be a constant
    D = hasse_table(F5, 4)
    A = alg_from_structure_constants(F5, [[{0: 1}]], [1])
    DeltaAlgebra(A, [[A.basis(0)] + [A.zero()] * 4], D, 4)
    with pytest.raises((LeibnizInconsistent, NotIterative)):
        DeltaAlgebra(A, [[A.basis(0), A.basis(0)] + [A.zero()] * 3], D, 4)


def test_scalar_field_must_match(F5):
    with pytest.raises(ScalarMismatch):
        trivial_extension(matrix_algebra(GF(5), 2), hasse_table(F5, 4))


def test_tensor_delta_validates(F5):
    D = hasse_table(F5, 6)
    M = matrix_entrywise_derivation(2, D, 6)
    T = tensor_delta(M, M)
    assert T.dim == 16 and T.trunc == 6


def test_filtration_matches_crossed_product_small(small):
    D_F, kum, B, D_K = small
    spec = crossed_product_levels(B, 2)
    DF = filtration_extension(B, spec, D_F, 10)
    DC = crossed_product_derivation(B, D_K, 10, D_F)
    assert DF.images == DC.images
    assert spec.to_json()["depth"] == 2


def test_filtration_rejects_bad_levels(small, F5):
    D_F, kum, B, _ = small
    t = F5.gen
    good = crossed_product_levels(B, 2)
    with pytest.raises(SpanFailure):
        filtration_extension(B, FiltrationSpec([good.levels[0][:2], good.levels[1]]), D_F, 10)
    # s * t is not a form over F_1 = F_5(t^5): products leave the level
    bent = [B.scale(t, v) if i == 0 else v for i, v in enumerate(good.levels[0])]
    with pytest.raises(WellDefinednessFailure):
        filtration_extension(B, FiltrationSpec([bent, good.levels[1]]), D_F, 10)


def test_filtration_on_matrix_algebra(hasse24):
    ref = matrix_entrywise_derivation(2, hasse24, 20)
    built = filtration_extension(ref.alg, standard_levels(ref.alg, 2), hasse24, 20)
    assert built.images == ref.images


def test_split_quaternion_over_kummer(quaternion):
    kum, B, D_K, DB = quaternion
    rep = check_split(DB, kum, D_K, N=10)
    assert rep.split and rep.constants_dim == rep.mu_rank == 4
    assert set(rep.to_json()) == {"constants_dim", "ambient_dim", "mu_rank", "split", "truncation", "ansatz"}
    csa = csa_check(rep.constants.algebra)
    assert csa.central and csa.simple


def test_quaternion_not_split_without_extension(quaternion):
    kum, B, D_K, DB = quaternion
    rep = check_split(DB, 1, N=10)
    # 1 and u are constants; x and xu are not reachable over F_5(t)
    assert rep.constants_dim == 2 and not rep.split
    assert "algebraically closed" in rep.truncation["caveat"]


def test_matrix_algebra_split_over_base(F5):
    DM = matrix_entrywise_derivation(2, hasse_table(F5, 10), 10)
    rep = check_split(DM, 1, N=10)
    assert rep.split and rep.constants_dim == 4


@pytest.mark.parametrize("D,k,N", [(0, 0, 3), (1, 1, 4), (2, 1, 5), (2, 0, 5)])
def test_constants_solver_matches_kernel_oracle(quaternion, D, k, N):
    kum, B, D_K, DB = quaternion
    AK = transport(DB, kum, D_K)
    ans = Ansatz(D, (0, 1), k)
    found = solve_constants(AK, ans, N)
    monos = []
    for i in range(AK.dim):
        for r in range(D + 1):
            v = list(AK.alg.zero())
            v[i] = kum.K.monomial(r - k)
            monos.append(tuple(v))
    series = [[[oracles.int_lists(c) for c in vec] for vec in AK.derive_series(m, N)] for m in monos]
    kern = oracles.constants_kernel(series, 5)
    assert len(found) == len(kern)
    for v in found:
        # read the monomial coefficients back off s^k * v
        lam = []
        for i in range(AK.dim):
            num, den = oracles.int_lists(v[i] * kum.K.monomial(k))
            assert den == [1]
            lam.extend([num[r] if r < len(num) else 0 for r in range(D + 1)])
        assert oracles.rank_mod(kern + [lam], 5) == len(kern)


def test_nilpotent_witness_expansion():
    for p, i in [(2, 1), (5, 1), (3, 2)]:
        F = function_field(GF(p))
        t = F.gen
        w = nilpotent_witness(p, i, t ** (p**i), t)
        assert w.index == p**i
        assert not w.algebra.is_zero(w.z)
        assert w.algebra.is_zero(w.algebra.mul(w.z, w.zero_divisor))
    F = function_field(GF(5))
    with pytest.raises(RelationFails):
        nilpotent_witness(5, 1, F.gen, F.gen)
    with pytest.raises(RelationFails):
        nilpotent_witness(3, 1, F.gen**3, F.gen)
    with pytest.raises(RelationFails):
        nilpotent_witness(0, 1, function_field(QQ).gen, function_field(QQ).gen)
