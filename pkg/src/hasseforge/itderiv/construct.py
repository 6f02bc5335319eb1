"""Constructors for iterative derivations and the constant-field filtration."""

from __future__ import annotations

from fractions import Fraction

from ..errors import CharPUnsupported, OrderExceedsTruncation
from ..exactfield import FunctionField, RationalFunction
from .table import DerivationTable, hasse_all


def hasse_table(field: FunctionField, N: int) -> DerivationTable:
    """The Hasse derivative in the field generator: delta^(n)(t^m) = C(m, n) t^(m-n)."""
    if N < 1:
        raise ValueError("truncation order must be at least 1")
    images = [field.gen, field.one] + [field.zero] * (N - 1)
    return DerivationTable(field, images, label="hasse")


def extend_to_kummer(D_F: DerivationTable, e_or_kummer, N: int | None = None) -> DerivationTable:
    """Lift ``D_F`` on F = k(t) to K = k(s), s**e = t.

    Writing y_n = delta^(n)(s), the coefficient of T**n in (sum y_n T**n)**e is
    e s**(e-1) y_n plus terms in y_1..y_(n-1); equating it with the image of
    delta_F^(n)(t) determines y_n.  The partial powers P_k = (sum y_i T**i)**k
    are maintained coefficient by coefficient.
    """
    from ..algcore.kummer import KummerExtension

    kum = e_or_kummer if isinstance(e_or_kummer, KummerExtension) else KummerExtension(D_F.field, e_or_kummer)
    if kum.F != D_F.field:
        raise ValueError("the Kummer extension is not over the table's field")
    N = D_F.trunc if N is None else N
    if N > D_F.trunc:
        raise OrderExceedsTruncation(f"order {N} exceeds truncation {D_F.trunc}")
    K, e, s = kum.K, kum.e, kum.gen
    target = [kum.embed(d) for d in D_F.images[: N + 1]]
    y = [s]
    # P[k][n] = coefficient of T**n in Phi(s)**k, k = 1..e
    P = [None] + [[s**k] for k in range(1, e + 1)]
    s_pows = [K.one] + [s**k for k in range(1, e)]
    lead_inv = (s ** (e - 1) * e).inverse()
    for n in range(1, N + 1):
        # rest[k] = P[k][n] evaluated with y_n = 0; the y_n part is k s**(k-1) y_n
        rest = [None, K.zero]
        for k in range(2, e + 1):
            prev = P[k - 1]
            acc = rest[k - 1] * s
            for i in range(1, n):
                if prev[i] and y[n - i]:
                    acc = acc + prev[i] * y[n - i]
            rest.append(acc)
        y_n = (target[n] - rest[e]) * lead_inv
        y.append(y_n)
        for k in range(1, e + 1):
            P[k].append(rest[k] + s_pows[k - 1] * y_n * k)
    return DerivationTable(K, y, parent=D_F, kummer=kum, label=f"kummer-{e}")


def filtration_membership(D: DerivationTable, f, m: int) -> bool:
    """f lies in the m-th constant field: delta^(j) f = 0 for 1 <= j < p**m."""
    p = D.char
    if p == 0:
        from ..errors import CharZeroUnsupported

        raise CharZeroUnsupported("the filtration needs positive characteristic")
    top = p**m - 1
    if top > D.trunc:
        raise OrderExceedsTruncation(f"level {m} needs order {top} > {D.trunc}")
    if top == 0:
        return True
    return all(n.degree() < 0 for n, _ in D.series_raw(f, top)[1:])


def char0_divided_powers(d1_image, N: int, field: FunctionField | None = None) -> DerivationTable:
    """delta^(n) = (delta^(1))**n / n! for the derivation t -> d1_image on Q(t)."""
    if field is None:
        field = d1_image.field if isinstance(d1_image, RationalFunction) else None
    if field is None:
        raise ValueError("pass the field when the first image is a plain scalar")
    if field.char != 0:
        raise CharPUnsupported("divided powers need characteristic 0")
    d1 = field(d1_image)
    base = field.base

    def first(f: RationalFunction) -> RationalFunction:
        # f' = (a'b - ab') / b**2, then scale by delta^(1)(t)
        a, b = f.num, f.den
        da = hasse_all(base, a, 1)[1]
        db = hasse_all(base, b, 1)[1]
        return RationalFunction(field, da * b - a * db, b * b) * d1

    images = [field.gen]
    cur = field.gen
    fact = 1
    for n in range(1, N + 1):
        cur = first(cur)
        fact *= n
        images.append(cur * Fraction(1, fact))
    return DerivationTable(field, images, label="divided-powers")
