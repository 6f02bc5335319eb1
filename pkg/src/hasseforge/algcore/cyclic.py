"""Symbol algebras and cyclic crossed products over Kummer extensions."""

from __future__ import annotations

from ..errors import BadRoot, DivisionByZero
from ..exactfield.fields import is_primitive_root
from .algebra import StructureAlgebra
from .kummer import Cocycle, KummerExtension


def _monomial_label(a: int, b: int, x: str, y: str) -> str:
    parts = []
    for name, k in ((x, a), (y, b)):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "".join(parts) or "1"


def make_symbol_algebra(a, b, n: int, zeta, field=None) -> StructureAlgebra:
    """Basis x^i y^j (index i*n + j) with x^n = a, y^n = b, y x = zeta x y."""
    if field is None:
        field = a.field
    a, b = field(a), field(b)
    if not a or not b:
        raise DivisionByZero("symbol algebra entries must be nonzero")
    base = getattr(field, "base", field)
    zeta = base(zeta)
    if not is_primitive_root(zeta, n):
        raise BadRoot(f"{zeta} is not a primitive {n}-th root of unity")
    zp = [zeta**k for k in range(n)]
    d = n * n
    consts = [[{} for _ in range(d)] for _ in range(d)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    # x^i y^j x^k y^l = zeta^(jk) x^(i+k) y^(j+l)
                    c = field(zp[(j * k) % n])
                    xi, yj = i + k, j + l
                    if xi >= n:
                        xi -= n
                        c = c * a
                    if yj >= n:
                        yj -= n
                        c = c * b
                    consts[i * n + j][k * n + l] = {xi * n + yj: c}
    unit = [1] + [0] * (d - 1)
    labels = [_monomial_label(i, j, "x", "y") for i in range(n) for j in range(n)]
    return StructureAlgebra(field, consts, unit, labels)


class CrossedProduct(StructureAlgebra):
    """(K/F, Z/e, f) as an F-algebra on the basis s^a u^b, index a*e + b.

    Elements can also be given K-semilinearly as sum_b k_b u^b with k_b in K;
    ``pack`` and ``unpack`` convert between the two descriptions.
    """

    def __init__(self, kummer: KummerExtension, cocycle: Cocycle):
        if cocycle.kummer != kummer:
            raise ValueError("cocycle belongs to a different extension")
        self.kummer = kummer
        self.cocycle = cocycle
        e = kummer.e
        F = kummer.F
        s = kummer.gen
        zp = [kummer.zeta**k for k in range(e)]
        d = e * e
        consts = [[{} for _ in range(d)] for _ in range(d)]
        for a in range(e):
            for b in range(e):
                for c in range(e):
                    for dd in range(e):
                        # s^a u^b s^c u^d = zeta^(bc) s^(a+c) f(b, d) u^(b+d)
                        k = s ** (a + c) * cocycle(b, dd) * zp[(b * c) % e]
                        target = (b + dd) % e
                        entry = consts[a * e + b][c * e + dd]
                        for i, coef in enumerate(kummer.to_coords(k)):
                            if coef:
                                entry[i * e + target] = coef
        unit = [1] + [0] * (d - 1)
        labels = [_monomial_label(a, b, "s", "u") for a in range(e) for b in range(e)]
        super().__init__(F, consts, unit, labels)

    def pack(self, ks) -> tuple:
        """F-coordinates of sum_b ks[b] u^b."""
        e = self.kummer.e
        v = [self.field.zero] * (e * e)
        for b, k in enumerate(ks):
            for i, c in enumerate(self.kummer.to_coords(k)):
                v[i * e + b] = c
        return tuple(v)

    def unpack(self, v) -> tuple:
        """The K-coefficients k_b with v = sum_b k_b u^b."""
        e = self.kummer.e
        return tuple(self.kummer.from_coords([v[i * e + b] for i in range(e)]) for b in range(e))


def make_crossed_product(kummer: KummerExtension, cocycle: Cocycle) -> CrossedProduct:
    return CrossedProduct(kummer, cocycle)
