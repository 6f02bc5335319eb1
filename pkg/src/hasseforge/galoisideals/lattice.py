"""Invariant subspaces of a matrix group over a finite field."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from ..exactfield import Matrix, SparseEchelon, kernel_basis

EXHAUSTIVE_LIMIT = 10_000


def _span(field, n: int, vecs) -> SparseEchelon:
    return SparseEchelon(field, n).extend(vecs)


def canonical(field, n: int, vecs) -> tuple:
    """Reduced echelon basis of span(vecs), the lattice's canonical key."""
    return tuple(_span(field, n, vecs).basis())


def all_subspaces(field, n: int):
    """Every subspace of field^n once, by reduced echelon form."""
    q = field.order
    elems = [field(field.raw_from_index(i)) for i in range(q)]
    zero, one = field.zero, field.one
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
            for values in itertools.product(elems, repeat=len(free)):
                rows = [[zero] * n for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = one
                for (r, c), x in zip(free, values):
                    rows[r][c] = x
                yield tuple(tuple(r) for r in rows)


def is_invariant(gens, basis, field, n: int) -> bool:
    ech = _span(field, n, basis)
    return all(ech.contains(g @ b) for g in gens for b in basis)


def spin(gens, v, field, n: int) -> tuple:
    """Smallest invariant subspace containing v."""
    ech = SparseEchelon(field, n)
    todo = [tuple(v)]
    while todo:
        w = todo.pop()
        if ech.add(w):
            todo.extend(g @ w for g in gens)
    return tuple(ech.basis())


def intersect(field, n: int, U, W) -> tuple:
    if not U or not W:
        return ()
    cols = list(U) + [tuple(-x for x in w) for w in W]
    M = Matrix(field, [[c[r] for c in cols] for r in range(n)])
    out = []
    for k in kernel_basis(M):
        v = [field.zero] * n
        for a, u in zip(k, U):
            if a:
                v = [x + a * y for x, y in zip(v, u)]
        out.append(tuple(v))
    return canonical(field, n, out)


@dataclass
class SubmoduleLattice:
    field: object
    n: int
    generators: list
    submodules: list
    completely_reducible: bool
    irreducible: bool
    indecomposable: bool
    complete: bool = True

    def flags(self) -> dict:
        return {
            "completely_reducible": self.completely_reducible,
            "irreducible": self.irreducible,
            "indecomposable": self.indecomposable,
        }

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "flags": self.flags(),
            "complete": self.complete,
            "submodules": [[[c.to_json() for c in v] for v in U] for U in self.submodules],
        }


def _key(field, U):
    return (len(U), [[field.index(c.value) for c in v] for v in U])


def _meataxe_candidates(gens, field, n: int, seed: int):
    """Spins of kernel vectors of random elements of the enveloping algebra."""
    rng = random.Random(seed)
    found = set()
    ident = Matrix.identity(field, n)
    words = [ident] + list(gens)
    for _ in range(60):
        a, b = rng.choice(words), rng.choice(words)
        words.append(a @ b)
    for _ in range(200):
        M = Matrix.zeros(field, n, n)
        for w in rng.sample(words, min(4, len(words))):
            M = M + w * field(field.random_raw(rng))
        for v in kernel_basis(M):
            found.add(spin(gens, v, field, n))
    for i in range(n):
        e = tuple(field.one if j == i else field.zero for j in range(n))
        found.add(spin(gens, e, field, n))
    return found


def submodule_lattice(generators, field=None, seed: int = 0) -> SubmoduleLattice:
    """All subspaces invariant under the generators and the scalar matrices.

    Exhaustive when q^n is small; otherwise candidates come from spinning
    kernel vectors of random algebra elements, closed under sums and
    intersections, and the lattice is marked possibly incomplete.
    """
    generators = list(generators)
    field = field or generators[0].field
    n = generators[0].nrows
    q = field.order
    if q ** n <= EXHAUSTIVE_LIMIT and n <= 4:
        gens = generators + [Matrix.identity(field, n) * field(field.raw_from_index(i)) for i in range(1, q)]
        subs = [U for U in all_subspaces(field, n) if is_invariant(gens, U, field, n)]
        complete = True
    else:
        gens = generators
        pool = {canonical(field, n, ()), canonical(field, n, [Matrix.identity(field, n).rows[i] for i in range(n)])}
        pool |= _meataxe_candidates(gens, field, n, seed)
        changed = True
        while changed:
            changed = False
            items = list(pool)
            for U, W in itertools.combinations(items, 2):
                for X in (canonical(field, n, list(U) + list(W)), intersect(field, n, U, W)):
                    if X not in pool:
                        pool.add(X)
                        changed = True
        subs = list(pool)
        complete = False
    subs.sort(key=lambda U: _key(field, U))
    proper = [U for U in subs if 0 < len(U) < n]
    irreducible = n > 0 and not proper

    def complement_exists(U) -> bool:
        return any(len(U) + len(W) == n and len(_span(field, n, list(U) + list(W))) == n for W in subs)

    completely_reducible = all(complement_exists(U) for U in proper)
    decomposable = any(
        len(U) + len(W) == n and len(_span(field, n, list(U) + list(W))) == n
        for U in proper for W in proper
    )
    return SubmoduleLattice(field, n, generators, subs, completely_reducible, irreducible, not decomposable,
                            complete)
