"""Kummer extensions K = F(s), s**e = t, of a rational function field F = k(t)."""

from __future__ import annotations

import math

from ..errors import BadDegree, BadRoot, CocycleInvalid
from ..exactfield import FunctionField, RationalFunction, function_field
from ..exactfield.fields import is_primitive_root


def _spread(base, rp, e: int):
    """Raw polynomial p(x) -> p(x**e)."""
    cs = base.poly_coeffs(rp)
    out = [base.raw(0)] * (e * (len(cs) - 1) + 1) if cs else []
    for i, c in enumerate(cs):
        out[i * e] = c
    return base.poly(out)


class KummerExtension:
    """The cyclic extension K = F(s) with s**e = t and Galois group generated
    by sigma: s -> zeta * s.
    """

    def __init__(self, F: FunctionField, e: int, zeta=None, var: str = "s"):
        base = F.base
        p = F.char
        if e < 1:
            raise BadDegree("degree must be positive")
        if p and math.gcd(e, p) != 1:
            raise BadDegree(f"degree {e} is divisible by the characteristic {p}")
        if base.order is not None and (base.order - 1) % e:
            raise BadDegree(f"{e} does not divide q - 1 = {base.order - 1}")
        if base.order is None and e > 2:
            raise BadDegree("over Q only degrees 1 and 2 have their roots of unity")
        if zeta is None:
            zeta = base(-1) if (base.order is None and e == 2) else (
                base.one if e == 1 else base.primitive_root_of_unity(e))
        zeta = base(zeta)
        if not is_primitive_root(zeta, e):
            raise BadRoot(f"{zeta} is not a primitive {e}-th root of unity")
        if var == F.var:
            raise ValueError("the extension variable must differ from the base variable")
        self.F = F
        self.e = e
        self.zeta = zeta
        self.K = function_field(base, var)
        self.p = p
        self.q = base.order

    def __repr__(self):
        return f"Kummer({self.K.var}^{self.e} = {self.F.var} over {self.F.base})"

    def __eq__(self, other):
        return isinstance(other, KummerExtension) and (self.F, self.e, self.zeta, self.K) == (
            other.F, other.e, other.zeta, other.K)

    def __hash__(self):
        return hash((self.F, self.e, self.zeta, self.K))

    @property
    def gen(self) -> RationalFunction:
        return self.K.gen

    def embed(self, f) -> RationalFunction:
        """F -> K, t -> s**e."""
        f = self.F(f)
        base = self.F.base
        return RationalFunction(self.K, _spread(base, f.num, self.e), _spread(base, f.den, self.e))

    def descend(self, h: RationalFunction) -> RationalFunction:
        """K^G -> F; raises ValueError when h is not a function of s**e."""
        h = self.K(h)
        base = self.F.base
        out = []
        for rp in (h.num, h.den):
            cs = base.poly_coeffs(rp)
            if any(i % self.e and not base.is_zero_raw(c) for i, c in enumerate(cs)):
                raise ValueError(f"{h} is not Galois invariant")
            out.append(base.poly(cs[:: self.e]))
        return RationalFunction(self.F, out[0], out[1])

    def sigma(self, j: int, h) -> RationalFunction:
        """Apply sigma**j: s -> zeta**j s."""
        h = self.K(h)
        z = (self.zeta ** (j % self.e)).value
        base = self.F.base

        def twist(rp):
            cs = base.poly_coeffs(rp)
            out, w = [], base.raw(1)
            for c in cs:
                out.append(c * w)
                w = w * z
            return base.poly(out)

        return RationalFunction(self.K, twist(h.num), twist(h.den))

    def to_coords(self, h) -> tuple[RationalFunction, ...]:
        """Coordinates of h in the F-basis 1, s, ..., s**(e-1) of K.

        The denominator is made Galois invariant by multiplying through with
        its conjugates; the norm is then a polynomial in s**e.
        """
        h = self.K(h)
        e = self.e
        base = self.F.base
        if e == 1:
            return (RationalFunction(self.F, h.num, h.den),)
        num, norm = h.num, h.den
        for j in range(1, e):
            conj = self.sigma(j, self.K.from_raw(h.den)).num
            num = num * conj
            norm = norm * conj
        norm_f = self.descend(self.K.from_raw(norm))
        cs = base.poly_coeffs(num)
        coords = []
        for a in range(e):
            part = base.poly(cs[a::e]) if len(cs) > a else base.poly([])
            coords.append(RationalFunction(self.F, part, base.poly([1])) / norm_f)
        return tuple(coords)

    def from_coords(self, coords) -> RationalFunction:
        s = self.gen
        acc = self.K.zero
        for a, c in enumerate(coords):
            if c:
                acc = acc + self.embed(c) * s**a
        return acc

    def galois_elements(self) -> list[int]:
        return list(range(self.e))


class Cocycle:
    """Normalized 2-cocycle of the cyclic group Z/e with values in K^*.

    ``table[a][b]`` is f(sigma**a, sigma**b).  Values are elements of K (or
    scalars, which are coerced into K).
    """

    def __init__(self, kummer: KummerExtension, table):
        e = kummer.e
        K = kummer.K
        if len(table) != e or any(len(r) != e for r in table):
            raise CocycleInvalid(f"cocycle table must be {e} x {e}")
        self.kummer = kummer
        self.order = e
        self.table = tuple(tuple(K(v) for v in row) for row in table)
        for a in range(e):
            if self.table[0][a] != 1 or self.table[a][0] != 1:
                raise CocycleInvalid("cocycle is not normalized")
            for b in range(e):
                if not self.table[a][b]:
                    raise CocycleInvalid(f"cocycle value f({a},{b}) is zero")
        for a in range(e):
            for b in range(e):
                for c in range(e):
                    lhs = kummer.sigma(a, self.table[b][c]) * self.table[a][(b + c) % e]
                    rhs = self.table[a][b] * self.table[(a + b) % e][c]
                    if lhs != rhs:
                        raise CocycleInvalid(f"cocycle identity fails at ({a}, {b}, {c})")

    def __call__(self, a: int, b: int) -> RationalFunction:
        return self.table[a % self.order][b % self.order]

    @classmethod
    def cyclic(cls, kummer: KummerExtension, b) -> Cocycle:
        """The cocycle of u**e = b: f(a, c) = 1 if a + c < e else b."""
        e = kummer.e
        return cls(kummer, [[1 if i + j < e else b for j in range(e)] for i in range(e)])

    def is_constant(self) -> bool:
        return all(v.is_constant() for row in self.table for v in row)

    def to_json(self) -> dict:
        return {"order": self.order, "table": [[v.to_json() for v in row] for row in self.table]}

