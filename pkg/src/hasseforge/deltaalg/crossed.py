"""The derivation on a cyclic crossed product that fixes every u^b."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algcore import CrossedProduct
from ..errors import CocycleNotConstant, GaloisDerivationMismatch, ScalarMismatch
from ..itderiv import DerivationTable
from .core import DeltaAlgebra


def _check_lift(B: CrossedProduct, D_K: DerivationTable, D_F: DerivationTable, N: int) -> None:
    kum = B.kummer
    if D_K.field != kum.K:
        raise ScalarMismatch(f"derivation lives on {D_K.field}, extension field is {kum.K}")
    if D_F.field != kum.F:
        raise ScalarMismatch(f"derivation lives on {D_F.field}, base field is {kum.F}")
    got = D_K.derive_series(kum.gen**kum.e, N)
    want = [kum.embed(x) for x in D_F.images[: N + 1]]
    if got != want:
        raise ScalarMismatch("the derivation on K does not restrict to the one on F")


def _check_galois(B: CrossedProduct, D_K: DerivationTable, N: int) -> None:
    kum = B.kummer
    s = kum.gen
    base = D_K.derive_series(s, N)
    for j in range(1, kum.e):
        moved = D_K.derive_series(kum.sigma(j, s), N)
        for n in range(N + 1):
            if moved[n] != kum.sigma(j, base[n]):
                raise GaloisDerivationMismatch(f"sigma^{j} does not commute with delta^({n}) on {s}")


def crossed_product_derivation(B: CrossedProduct, D_K: DerivationTable, N: int | None = None,
                               D_F: DerivationTable | None = None, validate: bool = True) -> DeltaAlgebra:
    """delta^(j)(sum k_b u^b) = sum delta_K^(j)(k_b) u^b.

    Requires cocycle values that are constants of ``D_K`` and a Galois action
    commuting with ``D_K``; both are checked on the generator up to N.
    """
    D_F = D_F if D_F is not None else D_K.parent
    if D_F is None:
        raise ScalarMismatch("pass the base derivation explicitly")
    N = min(D_K.trunc, D_F.trunc) if N is None else N
    _check_lift(B, D_K, D_F, N)
    _check_galois(B, D_K, N)
    for row in B.cocycle.table:
        for v in row:
            if any(D_K.derive_series(v, N)[1:]):
                raise CocycleNotConstant(f"cocycle value {v} is not a constant")
    kum = B.kummer
    e = kum.e
    s_series = [D_K.derive_series(kum.gen**a, N) for a in range(e)]
    images = []
    for a in range(e):
        for b in range(e):
            row = []
            for n in range(N + 1):
                ks = [kum.K.zero] * e
                ks[b] = s_series[a][n]
                row.append(B.pack(ks))
            images.append(row)
    return DeltaAlgebra(B, images, D_F, N, validate=validate, label="crossed-product")


@dataclass
class IdentityReport:
    product_rule_ok: bool = True
    split_rule_ok: bool = True
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.product_rule_ok and self.split_rule_ok

    def to_json(self) -> dict:
        return {
            "product_rule_ok": self.product_rule_ok,
            "split_rule_ok": self.split_rule_ok,
            "checked": self.checked,
            "failures": self.failures,
        }


def check_product_identities(DB: DeltaAlgebra, D_K: DerivationTable, N: int | None = None) -> IdentityReport:
    """Check, for all basis pairs s^a u^b, s^c u^d,

    delta^(n)(s^a u^b s^c u^d) = delta_K^(n)(s^a sigma^b(s^c)) f(b, d) u^(b+d)
    delta^(i)(s^a u^b) delta^(j)(s^c u^d) = delta_K^(i)(s^a) delta_K^(j)(sigma^b(s^c)) f(b, d) u^(b+d)
    """
    B = DB.alg
    kum = B.kummer
    e = kum.e
    N = DB.trunc if N is None else N
    K, s = kum.K, kum.gen
    rep = IdentityReport()

    def at_slot(k, slot):
        ks = [K.zero] * e
        ks[slot % e] = k
        return B.pack(ks)

    s_series = [D_K.derive_series(s**a, N) for a in range(e)]
    for a in range(e):
        for b in range(e):
            for c in range(e):
                for d in range(e):
                    x, y = a * e + b, c * e + d
                    f = B.cocycle(b, d)
                    moved = kum.sigma(b, s**c)
                    lhs = DB.derive_series(B.mul_basis(x, y), N)
                    rhs = D_K.derive_series(s**a * moved, N)
                    mseries = D_K.derive_series(moved, N)
                    for n in range(N + 1):
                        rep.checked += 1
                        if lhs[n] != at_slot(rhs[n] * f, b + d):
                            rep.product_rule_ok = False
                            rep.failures.append({"rule": "product", "pair": [x, y], "n": n})
                    for i in range(N + 1):
                        for j in range(N + 1 - i):
                            rep.checked += 1
                            got = B.mul(DB.images[x][i], DB.images[y][j])
                            want = at_slot(s_series[a][i] * mseries[j] * f, b + d)
                            if got != want:
                                rep.split_rule_ok = False
                                rep.failures.append({"rule": "split", "pair": [x, y], "orders": [i, j]})
    return rep
