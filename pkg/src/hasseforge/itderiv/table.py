"""Iterative derivations on k(x), stored by the images of the generator.

Evaluation uses the Hasse-Schmidt homomorphism Phi(f) = sum_n delta^(n)(f) T^n.
With Q the lcm of the denominators of the stored images, the substitution
T = Q*U turns Phi(x) = x + E(U) into a power series with polynomial
coefficients, so Phi(a) = sum_k hasse_k(a) E**k and Phi(a/b) = Phi(a)/Phi(b)
only ever touch polynomials.  The quotient step is the recursion

    h_n = A_n b**n - sum_{j>=1} B_j h_{n-j} b**(j-1),   delta^(n)(a/b) = h_n / (b**(n+1) Q**n).
"""

from __future__ import annotations

import math
from functools import cached_property

from ..errors import FieldMismatch, OrderExceedsTruncation
from ..exactfield import FunctionField, RationalFunction, field_from_descriptor, function_field


class _Pascal:
    """Rows of Pascal's triangle reduced mod p (or exact for p = 0), grown on demand."""

    def __init__(self, p: int):
        self.p = p
        self.rows = [[1]]
        self.cols: dict[tuple[int, int], list[int]] = {}

    def row(self, m: int) -> list[int]:
        rows, p = self.rows, self.p
        while len(rows) <= m:
            prev = rows[-1]
            new = [1] + [prev[i - 1] + prev[i] for i in range(1, len(prev))] + [1]
            if p:
                new = [c % p for c in new]
            rows.append(new)
        return rows[m]

    def column(self, k: int, upto: int) -> list[int]:
        """[C(m, k) for m in 0..upto]."""
        col = self.cols.get((k, upto))
        if col is None:
            col = [self.row(m)[k] if k <= m else 0 for m in range(upto + 1)]
            self.cols[(k, upto)] = col
        return col


_PASCAL: dict[int, _Pascal] = {}


def _pascal(p: int) -> _Pascal:
    if p not in _PASCAL:
        _PASCAL[p] = _Pascal(p)
    return _PASCAL[p]


def hasse_all(base, rp, L: int) -> list:
    """Hasse derivatives [D^(k) a for k = 0..L] of a raw polynomial a."""
    d = rp.degree()
    zero = base.poly([])
    if d < 0:
        return [zero] * (L + 1)
    pas = _pascal(base.char)
    out = [rp]
    if base.char and base.k == 1:
        cs = [int(c) for c in rp.coeffs()]
        for k in range(1, L + 1):
            if k > d:
                out.append(zero)
                continue
            col = pas.column(k, d)
            out.append(base.poly([c * b for c, b in zip(cs[k:], col[k:])]))
        return out
    cs = base.poly_coeffs(rp)
    for k in range(1, L + 1):
        if k > d:
            out.append(zero)
            continue
        col = pas.column(k, d)
        out.append(base.poly([c * b for c, b in zip(cs[k:], col[k:])]))
    return out


class DerivationTable:
    """An iterative derivation on ``field`` given by delta^(n)(x), n = 0..trunc.

    ``parent`` records the table this one extends (for Kummer lifts) and
    ``kummer`` the extension data linking the two fields.
    """

    def __init__(self, field: FunctionField, images, parent=None, kummer=None, label: str = ""):
        images = tuple(field(x) for x in images)
        if not images:
            raise ValueError("a derivation table needs at least delta^(0)")
        if images[0] != field.gen:
            raise ValueError("delta^(0) of the generator must be the generator itself")
        self.field = field
        self.images = images
        self.parent = parent
        self.kummer = kummer
        self.label = label

    @property
    def trunc(self) -> int:
        return len(self.images) - 1

    @property
    def generator(self) -> str:
        return self.field.var

    @property
    def char(self) -> int:
        return self.field.char

    def __eq__(self, other):
        return isinstance(other, DerivationTable) and (self.field, self.images) == (other.field, other.images)

    def __hash__(self):
        return hash((self.field, self.images))

    def __repr__(self):
        return f"DerivationTable({self.field}, trunc={self.trunc}{', ' + self.label if self.label else ''})"

    def truncated(self, N: int) -> DerivationTable:
        if N > self.trunc:
            raise OrderExceedsTruncation(f"cannot extend a table of order {self.trunc} to {N}")
        return DerivationTable(self.field, self.images[: N + 1], self.parent, self.kummer, self.label)

    # -- precomputation -------------------------------------------------------

    @cached_property
    def _scale(self):
        base = self.field.base
        Q = base.poly([1])
        for d in self.images[1:]:
            if d:
                Q = Q * (d.den // Q.gcd(d.den))
        return Q

    @cached_property
    def _coeffs(self) -> list:
        """c_n = delta^(n)(x) * Q**n as raw polynomials (c_0 unused)."""
        Q = self._scale
        out = [None]
        for n, d in enumerate(self.images[1:], start=1):
            out.append(d.num * (Q // d.den) * Q ** (n - 1) if d else self.field.base.poly([]))
        return out

    @cached_property
    def _linear(self) -> bool:
        return all(c.degree() < 0 for c in self._coeffs[2:])

    @cached_property
    def _epow(self) -> list[list]:
        """_epow[k][n] = coefficient of U**n in E(U)**k, for k, n <= trunc."""
        L = self.trunc
        base = self.field.base
        zero, one = base.poly([]), base.poly([1])
        E = [zero] + self._coeffs[1:]
        pows = [[one] + [zero] * L]
        for k in range(1, L + 1):
            prev = pows[-1]
            cur = [zero] * (L + 1)
            for i in range(k - 1, L + 1):
                pi = prev[i]
                if pi.degree() < 0:
                    continue
                for j in range(1, L + 1 - i):
                    if E[j].degree() >= 0:
                        cur[i + j] = cur[i + j] + pi * E[j]
            pows.append(cur)
        return pows

    # -- evaluation -----------------------------------------------------------

    def _phi(self, rp, L: int) -> list:
        base = self.field.base
        H = hasse_all(base, rp, L)
        if self._linear:
            c1 = self._coeffs[1] if self.trunc >= 1 else base.poly([])
            if c1 == 1:
                return H
            out, w = [], base.poly([1])
            for h in H:
                out.append(h * w)
                w = w * c1
            return out
        E = self._epow
        zero = base.poly([])
        out = []
        for n in range(L + 1):
            acc = zero
            for k in range(n + 1):
                if H[k].degree() >= 0 and E[k][n].degree() >= 0:
                    acc = acc + H[k] * E[k][n]
            out.append(acc)
        return out

    def series_raw(self, f, L: int) -> list[tuple]:
        """Unreduced pairs (num, den) with delta^(n)(f) = num/den for n <= L."""
        f = self._coerce(f)
        if L > self.trunc:
            raise OrderExceedsTruncation(f"order {L} exceeds truncation {self.trunc}")
        base = self.field.base
        a, b = f.num, f.den
        A = self._phi(a, L)
        if b.degree() == 0:
            h = A
            bpow = None
        else:
            B = self._phi(b, L)
            nz = [j for j in range(1, L + 1) if B[j].degree() >= 0]
            bpow = [base.poly([1])]
            for _ in range(L):
                bpow.append(bpow[-1] * b)
            h = [A[0]]
            for n in range(1, L + 1):
                acc = A[n] * bpow[n]
                for j in nz:
                    if j > n:
                        break
                    acc = acc - B[j] * h[n - j] * bpow[j - 1]
                h.append(acc)
        Q = self._scale
        out = []
        qn = base.poly([1])
        for n in range(L + 1):
            den = qn if bpow is None else bpow[n] * b * qn
            out.append((h[n], den))
            qn = qn * Q
        return out

    def derive_series(self, f, L: int) -> list[RationalFunction]:
        """[delta^(n)(f) for n = 0..L], reduced."""
        return [RationalFunction(self.field, n, d) for n, d in self.series_raw(f, L)]

    def derive(self, f, n: int) -> RationalFunction:
        if n < 0:
            raise ValueError("order must be nonnegative")
        return self.derive_series(f, n)[n]

    def _coerce(self, f) -> RationalFunction:
        if isinstance(f, RationalFunction) and f.field != self.field:
            raise FieldMismatch(f"{f.field} vs {self.field}")
        return self.field(f)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.field.base.descriptor(),
            "generator": self.generator,
            "trunc": self.trunc,
            "images": [d.to_json() for d in self.images],
        }

    @classmethod
    def from_json(cls, obj: dict) -> DerivationTable:
        field = function_field(field_from_descriptor(obj["field"]), obj.get("generator", "t"))
        images = [field.from_json(x) for x in obj["images"]]
        if "trunc" in obj and obj["trunc"] != len(images) - 1:
            raise ValueError("trunc does not match the number of images")
        return cls(field, images)


def derive(D: DerivationTable, f, n: int) -> RationalFunction:
    """delta^(n)(f) for the derivation stored in ``D``."""
    return D.derive(f, n)


def binomial_in(field, m: int, n: int) -> int:
    """C(m, n) as an integer reduced for the characteristic of ``field``."""
    from ..exactfield import lucas_binomial

    p = field.char
    return lucas_binomial(m, n, p) if p else math.comb(m, n)
