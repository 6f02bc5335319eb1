"""Seeded verification of the iterative-derivation axioms on a truncated table."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field

from ..errors import OrderExceedsTruncation
from ..exactfield import FunctionField, RationalFunction, lucas_binomial
from .table import DerivationTable

MAX_COUNTEREXAMPLES = 5


def random_rational(field: FunctionField, rng: random.Random, max_deg: int = 6) -> RationalFunction:
    """Random element num/den with deg num, deg den <= max_deg and den monic."""
    base = field.base
    num = [base.random_raw(rng) for _ in range(rng.randint(0, max_deg) + 1)]
    dd = rng.randint(0, max_deg)
    den = [base.random_raw(rng) for _ in range(dd)] + [base.raw(1)]
    return RationalFunction(field, base.poly(num), base.poly(den))


@dataclass
class AxiomReport:
    r1_ok: bool
    r2_ok: bool
    r3_ok: bool
    counterexamples: list = dc_field(default_factory=list)
    orders_checked: int = 0
    samples: int = 0
    seed: int = 0

    @property
    def ok(self) -> bool:
        return self.r1_ok and self.r2_ok and self.r3_ok

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, RationalFunction):
                return x.to_json()
            if isinstance(x, dict):
                return {k: enc(v) for k, v in x.items()}
            if isinstance(x, (list, tuple)):
                return [enc(v) for v in x]
            return x

        return {
            "r1_ok": self.r1_ok,
            "r2_ok": self.r2_ok,
            "r3_ok": self.r3_ok,
            "counterexamples": [enc(c) for c in self.counterexamples],
            "orders_checked": self.orders_checked,
            "samples": self.samples,
            "seed": self.seed,
        }


def _binom(p: int, m: int, n: int) -> int:
    return lucas_binomial(m, n, p) if p else math.comb(m, n)


def check_iterative_axioms(D: DerivationTable, N: int, samples: int = 100, seed: int = 0,
                           max_deg: int = 6) -> AxiomReport:
    """Check delta^(0) = id, the Leibniz rule and the composition rule up to order N.

    The generator is always among the sampled elements, so a corrupted table
    entry shows up even with very few samples.  Failures are collected, not
    raised.
    """
    if 2 * N > D.trunc:
        raise OrderExceedsTruncation(f"checking order {N} needs a table of order {2 * N}, have {D.trunc}")
    rng = random.Random(seed)
    field = D.field
    p = D.char
    elems = [field.gen] + [random_rational(field, rng, max_deg) for _ in range(max(samples - 1, 0))]
    partners = [random_rational(field, rng, max_deg) for _ in elems]
    bad = {"R1": [], "R2": [], "R3": []}

    def record(axiom, inputs, lhs, rhs):
        if len(bad[axiom]) < MAX_COUNTEREXAMPLES:
            bad[axiom].append({"axiom": axiom, "inputs": inputs, "lhs": lhs, "rhs": rhs})
        return True

    failed = {"R1": False, "R2": False, "R3": False}
    for f, g in zip(elems, partners):
        sf = D.derive_series(f, N)
        if sf[0] != f:
            failed["R1"] = record("R1", {"f": f, "n": 0}, sf[0], f)

        sg = D.derive_series(g, N)
        sfg = D.derive_series(f * g, N)
        for n in range(N + 1):
            rhs = field.zero
            for i in range(n + 1):
                if sf[i] and sg[n - i]:
                    rhs = rhs + sf[i] * sg[n - i]
            if sfg[n] != rhs:
                failed["R2"] = record("R2", {"f": f, "g": g, "n": n}, sfg[n], rhs)

        for m in range(1, N + 1):
            inner = D.derive_series(sf[m], N - m)
            for n in range(1, N - m + 1):
                rhs = sf[m + n] * _binom(p, m + n, n)
                if inner[n] != rhs:
                    failed["R3"] = record("R3", {"f": f, "m": m, "n": n}, inner[n], rhs)

    return AxiomReport(
        r1_ok=not failed["R1"],
        r2_ok=not failed["R2"],
        r3_ok=not failed["R3"],
        counterexamples=bad["R1"] + bad["R2"] + bad["R3"],
        orders_checked=N,
        samples=len(elems),
        seed=seed,
    )
