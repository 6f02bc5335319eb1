"""Small exact operations: checked field arithmetic, Lucas binomials, p-power subfields."""

from __future__ import annotations

from ..errors import CharZeroUnsupported, DivisionByZero, FieldMismatch
from .fields import FieldElement
from .poly import RationalFunction


def _field_of(x):
    if isinstance(x, (FieldElement, RationalFunction)):
        return x.field
    return None


def field_op(kind: str, a, b=None):
    """Apply ``add | mul | inv | neg`` after checking both operands share a field."""
    fa = _field_of(a)
    if b is not None:
        fb = _field_of(b)
        if fa is not None and fb is not None and fa != fb:
            raise FieldMismatch(f"{fa} vs {fb}")
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "neg":
        return -a
    if kind == "inv":
        if not a:
            raise DivisionByZero("inverse of zero")
        return a.inverse()
    raise ValueError(f"unknown field operation {kind!r}")


_SMALL_BINOM: dict[int, list[list[int]]] = {}


def _binom_table(p: int) -> list[list[int]]:
    table = _SMALL_BINOM.get(p)
    if table is None:
        table = [[1 if j in (0, i) else 0 for j in range(p)] for i in range(p)]
        for i in range(2, p):
            for j in range(1, i):
                table[i][j] = (table[i - 1][j - 1] + table[i - 1][j]) % p
        _SMALL_BINOM[p] = table
    return table


def lucas_binomial(m: int, n: int, p: int) -> int:
    """C(m, n) mod p as the product of digit binomials in base p."""
    if m < 0 or n < 0:
        raise ValueError("lucas_binomial needs nonnegative arguments")
    if n > m:
        return 0
    table = _binom_table(p)
    out = 1
    while n:
        mi, ni = m % p, n % p
        if ni > mi:
            return 0
        out = out * table[mi][ni] % p
        m //= p
        n //= p
    return out


def _support_divisible(base, rp, step: int) -> bool:
    return all(i % step == 0 for i, c in enumerate(base.poly_coeffs(rp)) if not base.is_zero_raw(c))


def subfield_membership(f: RationalFunction, m: int) -> bool:
    """Is ``f`` a rational function of t**(p**m)?

    The reduced form of such an f has both numerator and (monic) denominator
    supported on multiples of p**m.  When that shape check fails we retry on
    num * den**(P-1) / den**P, whose denominator always has the right support,
    which catches any representation that was not reduced the expected way.
    """
    p = f.field.char
    if p == 0:
        raise CharZeroUnsupported("p-power subfields need positive characteristic")
    step = p**m
    if step == 1:
        return True
    base = f.field.base
    if _support_divisible(base, f.num, step) and _support_divisible(base, f.den, step):
        return True
    cleared = f.num * f.den ** (step - 1)
    return _support_divisible(base, cleared, step) and _support_divisible(base, f.den**step, step)
