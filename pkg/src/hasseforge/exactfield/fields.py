"""Scalar fields: F_p, F_q = F_p[z]/(modulus) and Q.

Field objects own the flint contexts and hand out raw flint scalars and
polynomials; :class:`FieldElement` is the user-facing wrapper that knows its
field, so mixing two fields is caught instead of silently coerced.
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction

import flint

from ..errors import DivisionByZero, FieldMismatch


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FieldElement:
    """An element of a scalar field (F_q or Q)."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.raw(other)
        return NotImplemented

    def _new(self, value):
        return FieldElement(self.field, value)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(self.value * self.field.inv_raw(o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(o * self.field.inv_raw(self.value))

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._new(self.value**e)

    def inverse(self):
        return self._new(self.field.inv_raw(self.value))

    def __bool__(self):
        return not self.field.is_zero_raw(self.value)

    def __eq__(self, other):
        try:
            o = self._other(other)
        except FieldMismatch:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.field.key(self.value) == self.field.key(o)

    def __hash__(self):
        return hash((self.field, self.field.key(self.value)))

    def __repr__(self):
        return str(self.value)

    def to_json(self):
        return self.field.to_json(self.value)


class _ScalarField:
    char: int
    order: int | None

    def __call__(self, x) -> FieldElement:
        return FieldElement(self, self.raw(x))

    @property
    def zero(self) -> FieldElement:
        return self(0)

    @property
    def one(self) -> FieldElement:
        return self(1)

    def inv_raw(self, r):
        if self.is_zero_raw(r):
            raise DivisionByZero(f"inverse of zero in {self}")
        return r ** -1 if self.char else 1 / r

    def element(self, x) -> FieldElement:
        return self(x)


class FiniteField(_ScalarField):
    """F_q with q = p**k, elements polynomials in z modulo ``modulus``."""

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = (0, 1) if k == 1 else _first_irreducible(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}")
        if not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = self.char = p
        self.k = k
        self.modulus = modulus
        self.order = p**k
        if k == 1:
            self._root = (-modulus[0]) % p
        else:
            self._ctx = flint.fq_default_ctx(
                modulus=flint.fmpz_mod_poly_ctx(p)(list(modulus))
            )
            self._pctx = flint.fq_default_poly_ctx(self._ctx)

    # identity
    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self):
        return hash(("GF", self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"

    # raw scalars
    def raw(self, x):
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x.field} vs {self}")
            return x.value
        if isinstance(x, Fraction):
            return self.raw(x.numerator) * self.inv_raw(self.raw(x.denominator))
        if self.k == 1:
            if isinstance(x, flint.nmod):
                return x
            if isinstance(x, (list, tuple)):
                # polynomial in z evaluated at the root of the modulus
                return flint.nmod(sum(int(c) * self._root**i for i, c in enumerate(x)), self.p)
            return flint.nmod(int(x), self.p)
        if isinstance(x, flint.fq_default):
            return x
        if isinstance(x, (list, tuple)):
            return self._ctx([int(c) % self.p for c in x])
        return self._ctx(int(x) % self.p)

    def is_zero_raw(self, r) -> bool:
        return r == 0 if self.k == 1 else r.is_zero()

    def key(self, r):
        if self.k == 1:
            return int(r)
        lst = [int(c) for c in r.to_list()]
        return tuple(lst + [0] * (self.k - len(lst)))

    def to_json(self, r):
        return int(r) if self.k == 1 else list(self.key(r))

    def from_json(self, obj):
        return self.raw(obj)

    def descriptor(self) -> dict:
        return {"char": self.p, "ext_degree": self.k, "modulus": list(self.modulus)}

    # enumeration
    def index(self, r) -> int:
        if self.k == 1:
            return int(r)
        return sum(c * self.p**i for i, c in enumerate(self.key(r)))

    def raw_from_index(self, i: int):
        if self.k == 1:
            return flint.nmod(i, self.p)
        digits = []
        for _ in range(self.k):
            digits.append(i % self.p)
            i //= self.p
        return self._ctx(digits)

    def elements(self):
        for i in range(self.order):
            yield FieldElement(self, self.raw_from_index(i))

    def random_raw(self, rng):
        return self.raw_from_index(rng.randrange(self.order))

    def primitive_root_of_unity(self, e: int) -> FieldElement:
        """Smallest (in enumeration order) element of exact multiplicative order e."""
        if e < 1 or (self.order - 1) % e:
            raise ValueError(f"no primitive {e}-th root of unity in {self}")
        for x in self.elements():
            if x and is_primitive_root(x, e):
                return x
        raise AssertionError("unreachable")

    # polynomials
    def poly(self, coeffs):
        if self.k == 1:
            return flint.nmod_poly([int(c) if isinstance(c, int) else c for c in coeffs], self.p)
        return self._pctx([self.raw(c) if not isinstance(c, flint.fq_default) else c for c in coeffs])

    def poly_coeffs(self, rp) -> list:
        return list(rp.coeffs())


class RationalNumbers(_ScalarField):
    """Q with arbitrary-precision exact arithmetic."""

    char = 0
    order = None
    k = 1

    def __eq__(self, other):
        return isinstance(other, RationalNumbers)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def raw(self, x):
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x.field} vs {self}")
            return x.value
        if isinstance(x, flint.fmpq):
            return x
        if isinstance(x, Fraction):
            return flint.fmpq(x.numerator, x.denominator)
        if isinstance(x, str):
            f = Fraction(x)
            return flint.fmpq(f.numerator, f.denominator)
        return flint.fmpq(int(x))

    def is_zero_raw(self, r) -> bool:
        return r == 0

    def key(self, r):
        return (int(r.p), int(r.q))

    def to_json(self, r):
        return int(r.p) if r.q == 1 else f"{r.p}/{r.q}"

    def from_json(self, obj):
        return self.raw(obj)

    def descriptor(self) -> dict:
        return {"char": 0, "ext_degree": 1, "modulus": [0, 1]}

    def random_raw(self, rng):
        return flint.fmpq(rng.randint(-9, 9), rng.randint(1, 5))

    def poly(self, coeffs):
        return flint.fmpq_poly([self.raw(c) for c in coeffs])

    def poly_coeffs(self, rp) -> list:
        return list(rp.coeffs())


QQ = RationalNumbers()


@functools.cache
def GF(p: int, k: int = 1, modulus: tuple | None = None) -> FiniteField:
    """Interned constructor; repeated calls return the same field object."""
    return FiniteField(p, k, modulus)


def field_from_descriptor(d: dict):
    """Inverse of ``descriptor()``: {"char": p, "ext_degree": k, "modulus": [...]}."""
    p = int(d["char"])
    if p == 0:
        return QQ
    k = int(d.get("ext_degree", 1))
    modulus = d.get("modulus")
    return GF(p, k, tuple(modulus) if modulus is not None else None)


def is_primitive_root(x: FieldElement, e: int) -> bool:
    if x**e != 1:
        return False
    return all(x ** (e // r) != 1 for r in prime_factors(e))


def _is_irreducible(modulus: tuple, p: int) -> bool:
    k = len(modulus) - 1
    if k == 1:
        return True
    f = flint.nmod_poly(list(modulus), p)
    x = flint.nmod_poly([0, 1], p)
    # Ben-Or: no factor of degree i <= k/2 divides f
    xp = x
    for _ in range(1, k // 2 + 1):
        xp = xp.pow_mod(p, f)
        if f.gcd(xp - x).degree() > 0:
            return False
    return True


def _first_irreducible(p: int, k: int) -> tuple:
    for tail in itertools.product(range(p), repeat=k):
        cand = tuple(tail) + (1,)
        if cand[0] != 0 and _is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")
