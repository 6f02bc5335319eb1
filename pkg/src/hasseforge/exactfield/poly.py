"""Univariate polynomials and rational functions over a scalar field.

Both types are immutable wrappers over flint polynomials.  A
:class:`RationalFunction` is always stored reduced: ``gcd(num, den) == 1`` and
``den`` monic.  The variable name is part of the field identity, so F_5(t) and
F_5(s) are different fields and must be linked by an explicit embedding.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from ..errors import BothZero, DivisionByZero, FieldMismatch
from .fields import FieldElement


def _is_zero(rp) -> bool:
    return rp.degree() < 0


def _degree(rp):
    d = rp.degree()
    return None if d < 0 else d


def _lc(rp):
    return rp[rp.degree()]


class Poly:
    """Polynomial over a scalar field; coefficients lowest degree first."""

    __slots__ = ("field", "rep")

    def __init__(self, field, coeffs=()):
        self.field = field
        self.rep = field.poly([field.raw(c) for c in coeffs])

    @classmethod
    def _wrap(cls, field, rep) -> Poly:
        obj = cls.__new__(cls)
        obj.field = field
        obj.rep = rep
        return obj

    @property
    def coeffs(self) -> tuple:
        return tuple(FieldElement(self.field, c) for c in self.field.poly_coeffs(self.rep))

    @property
    def degree(self):
        """Degree, or ``None`` for the zero polynomial."""
        return _degree(self.rep)

    def is_zero(self) -> bool:
        return _is_zero(self.rep)

    def _other(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.rep
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.field.poly([self.field.raw(other)])
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Poly._wrap(self.field, self.rep + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Poly._wrap(self.field, self.rep - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Poly._wrap(self.field, o - self.rep)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Poly._wrap(self.field, self.rep * o)

    __rmul__ = __mul__

    def __neg__(self):
        return Poly._wrap(self.field, -self.rep)

    def __pow__(self, e: int):
        return Poly._wrap(self.field, self.rep**e)

    def __divmod__(self, other):
        o = self._other(other)
        if _is_zero(o):
            raise DivisionByZero("polynomial division by zero")
        q, r = divmod(self.rep, o)
        return Poly._wrap(self.field, q), Poly._wrap(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.rep == other.rep
        if isinstance(other, (int, Fraction, FieldElement)):
            try:
                return self.rep == self._other(other)
            except FieldMismatch:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, tuple(self.field.key(c) for c in self.field.poly_coeffs(self.rep))))

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return Poly._wrap(self.field, self.rep * self.field.inv_raw(_lc(self.rep)))

    def __call__(self, x):
        acc = self.field.zero if not isinstance(x, Poly) else Poly(self.field, [])
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"Poly({self.rep})"

    def to_json(self) -> list:
        return [self.field.to_json(c) for c in self.field.poly_coeffs(self.rep)]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor of two polynomials, not both zero."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    if b.is_zero():
        return a.monic()
    if a.is_zero():
        return b.monic()
    return Poly._wrap(a.field, a.rep.gcd(b.rep)).monic()


class FunctionField:
    """The rational function field ``base(var)``."""

    def __init__(self, base, var: str = "t"):
        self.base = base
        self.var = var
        self.char = base.char

    def __eq__(self, other):
        return isinstance(other, FunctionField) and (self.base, self.var) == (
            other.base,
            other.var,
        )

    def __hash__(self):
        return hash(("FF", self.base, self.var))

    def __repr__(self):
        return f"{self.base}({self.var})"

    @property
    def gen(self) -> RationalFunction:
        return RationalFunction._make(self, self.base.poly([0, 1]), self.base.poly([1]))

    @property
    def zero(self) -> RationalFunction:
        return self(0)

    @property
    def one(self) -> RationalFunction:
        return self(1)

    def __call__(self, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            if x.field != self:
                raise FieldMismatch(f"{x.field} vs {self}")
            return x
        if isinstance(x, Poly):
            if x.field != self.base:
                raise FieldMismatch(f"{x.field} vs {self.base}")
            return RationalFunction._make(self, x.rep, self.base.poly([1]))
        return RationalFunction._make(self, self.base.poly([self.base.raw(x)]), self.base.poly([1]))

    def frac(self, num, den=(1,)) -> RationalFunction:
        """Build num/den from coefficient sequences (lowest degree first)."""
        return RationalFunction(self, self.base.poly([self.base.raw(c) for c in num]),
                                self.base.poly([self.base.raw(c) for c in den]))

    def from_raw(self, num, den=None) -> RationalFunction:
        return RationalFunction(self, num, den if den is not None else self.base.poly([1]))

    def monomial(self, exponent: int, coeff=1) -> RationalFunction:
        if exponent >= 0:
            return self.frac([0] * exponent + [coeff])
        return self.frac([coeff], [0] * (-exponent) + [1])

    def from_json(self, obj) -> RationalFunction:
        if isinstance(obj, dict):
            return self.frac(
                [self.base.from_json(c) for c in obj["num"]],
                [self.base.from_json(c) for c in obj.get("den", [1])],
            )
        return self(self.base.from_json(obj))

    def descriptor(self) -> dict:
        return dict(self.base.descriptor(), var=self.var)


@functools.cache
def function_field(base, var: str = "t") -> FunctionField:
    return FunctionField(base, var)


class RationalFunction:
    """Reduced fraction num/den of polynomials, den monic."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: FunctionField, num, den=None):
        if den is None:
            den = field.base.poly([1])
        if _is_zero(den):
            raise DivisionByZero("zero denominator")
        base = field.base
        if _is_zero(num):
            num, den = num, base.poly([1])
        else:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
            lc = _lc(den)
            if not (lc == 1):
                inv = base.inv_raw(lc)
                num = num * inv
                den = den * inv
        self.field = field
        self.num = num
        self.den = den

    @classmethod
    def _make(cls, field, num, den) -> RationalFunction:
        # caller guarantees normal form
        obj = cls.__new__(cls)
        obj.field = field
        obj.num = num
        obj.den = den
        return obj

    @property
    def numerator(self) -> Poly:
        return Poly._wrap(self.field.base, self.num)

    @property
    def denominator(self) -> Poly:
        return Poly._wrap(self.field.base, self.den)

    def _other(self, other):
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.num, other.den
        if isinstance(other, (int, Fraction, FieldElement)):
            base = self.field.base
            return base.poly([base.raw(other)]), base.poly([1])
        if isinstance(other, Poly):
            if other.field != self.field.base:
                raise FieldMismatch(f"{self.field.base} vs {other.field}")
            return other.rep, self.field.base.poly([1])
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        n, d = o
        if d == self.den:
            return RationalFunction(self.field, self.num + n, d)
        return RationalFunction(self.field, self.num * d + n * self.den, self.den * d)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._make(self.field, -self.num, self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        n, d = o
        if d == self.den:
            return RationalFunction(self.field, self.num - n, d)
        return RationalFunction(self.field, self.num * d - n * self.den, self.den * d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        n, d = o
        return RationalFunction(self.field, self.num * n, self.den * d)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if _is_zero(self.num):
            raise DivisionByZero(f"inverse of zero in {self.field}")
        return RationalFunction(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        n, d = o
        if _is_zero(n):
            raise DivisionByZero(f"division by zero in {self.field}")
        return RationalFunction(self.field, self.num * d, self.den * n)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction._make(self.field, self.num**e, self.den**e)

    def __bool__(self):
        return not _is_zero(self.num)

    def __eq__(self, other):
        try:
            o = self._other(other)
        except FieldMismatch:
            return False
        if o is NotImplemented:
            return NotImplemented
        n, d = o
        return self.num * d == n * self.den

    def __hash__(self):
        base = self.field.base
        return hash((
            self.field,
            tuple(base.key(c) for c in base.poly_coeffs(self.num)),
            tuple(base.key(c) for c in base.poly_coeffs(self.den)),
        ))

    def is_constant(self) -> bool:
        return self.den.degree() == 0 and self.num.degree() <= 0

    def constant_value(self) -> FieldElement:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        base = self.field.base
        cs = base.poly_coeffs(self.num)
        return FieldElement(base, cs[0] if cs else base.raw(0))

    def __repr__(self):
        v = self.field.var
        num = str(self.num).replace("x", v)
        if self.den.degree() == 0:
            return num
        den = str(self.den).replace("x", v)
        if self.num.degree() > 0 and ("+" in num or " - " in num):
            num = f"({num})"
        if "+" in den or " - " in den or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def to_json(self) -> dict:
        base = self.field.base
        return {
            "num": [base.to_json(c) for c in base.poly_coeffs(self.num)],
            "den": [base.to_json(c) for c in base.poly_coeffs(self.den)],
        }


def is_normalized(f: RationalFunction) -> bool:
    """Re-normalize from scratch and compare representations."""
    g = RationalFunction(f.field, f.num, f.den)
    return g.num == f.num and g.den == f.den and (f.num.degree() < 0 or f.num.gcd(f.den).degree() == 0)
