"""Scenario loading, validation and the operation runners behind ``hasseforge run``."""

from __future__ import annotations

import json
import logging
import random
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from .. import __version__
from ..algcore import Cocycle, KummerExtension, csa_check, make_crossed_product
from ..deltaalg import (Ansatz, check_product_identities, check_split, crossed_product_derivation,
                        crossed_product_levels, filtration_extension, matrix_entrywise_derivation,
                        nilpotent_witness, standard_levels)
from ..errors import BadDegree, BadRoot, CocycleInvalid, ConfigInvalid, HasseForgeError, UnknownScenario
from ..exactfield import GF, Matrix, field_from_descriptor, function_field, subfield_membership
from ..galoisideals import classify_delta_structure, submodule_lattice
from ..itderiv import (DerivationTable, char0_divided_powers, check_iterative_axioms, extend_to_kummer,
                       filtration_membership, hasse_table, random_rational)

log = logging.getLogger("hasseforge")

DEFAULT_TRUNC = 12
CONSTRUCTION_ERRORS = (BadDegree, BadRoot, CocycleInvalid)

DESCRIPTIONS = {
    "hasse-axioms": "Hasse derivative on F_5(t): Leibniz and composition rules on random rational functions",
    "kummer-extend": "lift the Hasse derivative to F_5(s), s^2 = t, and check restriction and axioms",
    "filtration-extend": "build the quaternion derivation level by level from p-power subfield forms",
    "crossed-product-quaternion": "quaternion crossed product over F_5(s)/F_5(t) with u^2 = 2, product identities",
    "split-check": "constants of the quaternion model over F_5(s) form M_2(F_5), so F_5(s) splits it",
    "nonexample-nilpotent": "y - t is a nonzero nilpotent in F(y)/(y^(p^i) - t^(p^i))",
    "classify-matrix": "M_2(F_5(t)) with entrywise derivation: stable right ideals and decomposition",
    "classify-division": "quaternion model: Galois image is irreducible, so no proper stable right ideals",
    "char0-divided-powers": "divided powers of d/dt on Q(t) satisfy the iterative axioms exactly",
}

EXPLANATIONS = {
    "hasse-axioms": (
        "The Hasse derivative acts on powers of t by delta^(n)(t^m) = C(m, n) t^(m-n), with the\n"
        "binomial taken mod p.  The run checks delta^(0) = id, the order-graded Leibniz rule\n"
        "delta^(n)(fg) = sum_{i+j=n} delta^(i)(f) delta^(j)(g), and the composition rule\n"
        "delta^(n) delta^(m) = C(m+n, n) delta^(m+n) for all m + n up to the requested order."
    ),
    "kummer-extend": (
        "An iterative derivation on F extends uniquely to the separable extension K = F(s),\n"
        "s^e = t.  The images of s are solved order by order from delta^(n)(s^e) = delta^(n)(t).\n"
        "The run checks that the extension restricts to the original on F and passes the axioms;\n"
        "for p = 5, e = 2 the first image is delta^(1)(s) = 3/s = 1/(2s)."
    ),
    "filtration-extend": (
        "The constant fields F_i = {f : delta^(j) f = 0 for 0 < j < p^i} form a descending chain.\n"
        "Writing an algebra as a form over each F_i and letting delta^(n), p^(i-1) <= n < p^i, act\n"
        "on coordinates in that form defines an iterative derivation.  The run builds it for the\n"
        "quaternion model and compares it with the crossed-product derivation."
    ),
    "crossed-product-quaternion": (
        "For a cyclic crossed product (K/F, sigma, f) whose cocycle takes values in the constants\n"
        "and whose Galois action commutes with the derivation on K, setting\n"
        "delta^(n)(sum k_b u^b) = sum delta^(n)(k_b) u^b gives an iterative derivation on the algebra.\n"
        "The run validates it and checks the product and split identities on all basis pairs."
    ),
    "split-check": (
        "K splits a delta-algebra A when the constants C of A (x) K satisfy C (x) K = A (x) K.\n"
        "Constants are found by solving delta^(n) v = 0 over an ansatz of numerators over powers of s,\n"
        "then the rank of the multiplication map is computed.  The constant field F_5 is not\n"
        "algebraically closed, so a negative verdict only reports the bounded search."
    ),
    "nonexample-nilpotent": (
        "In characteristic p the ring F[y]/(y^(p^i) - f) with f = x^(p^i) is not a field:\n"
        "z = y - x is nonzero and z^(p^i) = y^(p^i) - x^(p^i) = 0.  This is why a p-th root\n"
        "extension cannot carry the derivation the way a separable one can."
    ),
    "classify-matrix": (
        "When the constants are M_n(k) and the Galois group acts trivially, every subspace U of k^n\n"
        "gives a delta-stable right ideal {X : columns of X lie in U}.  The run lists them, checks\n"
        "stability under right multiplication and all delta^(n), and finds a direct-sum decomposition."
    ),
    "classify-division": (
        "Delta-stable right ideals of a split delta-algebra correspond to subspaces of k^n stable\n"
        "under the Galois image in PGL_n(k), via Skolem-Noether lifts of the action on constants.\n"
        "For the quaternion model the image is irreducible, so only 0 and the whole algebra remain."
    ),
    "char0-divided-powers": (
        "In characteristic 0 the divided powers delta^(n) = D^n / n! of a derivation D form an\n"
        "iterative derivation.  The run builds them for D = d/dt on Q(t) with exact rationals\n"
        "and checks the axioms."
    ),
}


def builtin_names() -> list[str]:
    return sorted(DESCRIPTIONS)


def _schema() -> dict:
    return json.loads(resources.files("hasseforge").joinpath("schemas/scenario.v1.json").read_text())


def _pointer(path) -> str:
    return "/" + "/".join(str(p).replace("~", "~0").replace("/", "~1") for p in path) if path else ""


def validate_config(cfg) -> None:
    """Raise ConfigInvalid for the first schema violation, located by JSON pointer."""
    validator = jsonschema.Draft202012Validator(_schema())
    errors = sorted(validator.iter_errors(cfg), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        err = errors[0]
        # an if/then failure reports at the operation; dig for the concrete key
        leaf = min(err.context or [err], key=lambda e: -len(e.absolute_path))
        path = list(leaf.absolute_path)
        if leaf.validator == "additionalProperties":
            path.append(sorted(set(leaf.instance) - set(leaf.schema.get("properties", {})))[0])
        raise ConfigInvalid(_pointer(path), leaf.message)
    try:
        field_from_descriptor(cfg["field"])
    except (ValueError, HasseForgeError) as exc:
        raise ConfigInvalid("/field", str(exc)) from exc


def load_config(source: str) -> dict:
    """Read ``builtin:<name>`` or a path, parse JSON and validate it."""
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        if name not in DESCRIPTIONS:
            raise UnknownScenario(name)
        text = resources.files("hasseforge").joinpath(f"cli/builtin/{name}.json").read_text()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise ConfigInvalid("", f"cannot read {source}: {exc.strerror}") from exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigInvalid("", f"not valid JSON: {exc.msg} at line {exc.lineno}") from exc
    validate_config(cfg)
    return cfg


@dataclass
class Context:
    F: object
    seed: int
    trunc: int
    caveats: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)

    def hasse(self, N: int) -> DerivationTable:
        if N not in self.tables:
            self.tables[N] = hasse_table(self.F, N)
        return self.tables[N]

    def order(self, params: dict, default: int | None = None) -> int:
        n = params.get("order", default if default is not None else self.trunc)
        return min(n, self.trunc)


def _fmt(x) -> str:
    return repr(x)


def _quaternion(ctx: Context, params: dict, N: int, e: int = 2):
    kum = KummerExtension(ctx.F, e)
    B = make_crossed_product(kum, Cocycle.cyclic(kum, params.get("cocycle_value", 2)))
    D_F = ctx.hasse(N)
    D_K = extend_to_kummer(D_F, kum, N)
    return kum, B, D_F, D_K


def _delta_model(ctx: Context, params: dict, N: int):
    """(delta-algebra, kummer, D_K) for the algebra and extension named in params."""
    e = params.get("extension_degree", 2 if params.get("algebra", "quaternion") == "quaternion" else 1)
    if params.get("algebra", "quaternion") == "quaternion":
        _, B, D_F, _ = _quaternion(ctx, params, N)
        DA = crossed_product_derivation(B, extend_to_kummer(D_F, B.kummer, N), N, D_F)
    else:
        DA = matrix_entrywise_derivation(2, ctx.hasse(N), N)
    kum = KummerExtension(ctx.F, e)
    return DA, kum, extend_to_kummer(DA.scalar, kum, N)


def op_hasse_axioms(ctx: Context, params: dict, seed: int):
    order = params.get("order", min(12, ctx.trunc))
    D = ctx.hasse(2 * order) if ctx.F.char else char0_divided_powers(ctx.F.one, 2 * order, ctx.F)
    if "corrupt" in params:
        k = params["corrupt"]["order"]
        if k > D.trunc:
            raise ConfigInvalid("/corrupt/order", f"order {k} exceeds the table truncation {D.trunc}")
        images = list(D.images)
        images[k] = ctx.F.from_json(params["corrupt"]["value"])
        D = DerivationTable(ctx.F, images, label="corrupted")
    rep = check_iterative_axioms(D, order, params.get("samples", 100), seed)
    expected = params.get("expect_pass", True)
    summary = (f"R1 {_ok(rep.r1_ok)}, R2 {_ok(rep.r2_ok)}, R3 {_ok(rep.r3_ok)} "
               f"on {rep.samples} samples, m + n <= {order}")
    return rep.ok == expected, summary, rep.to_json()


def _ok(b: bool) -> str:
    return "ok" if b else "FAILED"


def op_kummer_extend(ctx: Context, params: dict, seed: int):
    e = params.get("degree", 2)
    N = ctx.order(params)
    kum = KummerExtension(ctx.F, e)
    D_F = ctx.hasse(N)
    D_K = extend_to_kummer(D_F, kum, N)
    rng = random.Random(seed)
    bad = 0
    for _ in range(params.get("restriction_samples", 50)):
        f = random_rational(ctx.F, rng, 4)
        lifted = D_K.derive_series(kum.embed(f), N)
        if lifted != [kum.embed(x) for x in D_F.derive_series(f, N)]:
            bad += 1
    M = min(params.get("axiom_order", N // 2), N // 2)
    rep = check_iterative_axioms(D_K, M, params.get("axiom_samples", 50), seed)
    firsts = [_fmt(x) for x in D_K.images[1:4]]
    ok = bad == 0 and rep.ok
    summary = f"restriction mismatches {bad}, axioms {_ok(rep.ok)} to order {M}; delta^(1)(s) = {firsts[0]}"
    return ok, summary, {"degree": e, "trunc": N, "first_images": firsts, "restriction_mismatches": bad,
                         "axioms": rep.to_json()}


def op_filtration_membership(ctx: Context, params: dict, seed: int):
    p = ctx.F.char
    if not p:
        raise ConfigInvalid("/field/char", "filtration membership needs positive characteristic")
    levels = params.get("levels", [1, 2])
    D = ctx.hasse(max(p**m for m in levels) - 1)
    rng = random.Random(seed)
    disagreements = {}
    for m in levels:
        bad = 0
        for k in range(params.get("samples", 100)):
            f = random_rational(ctx.F, rng, 3)
            if k % 2:
                # half the samples are forced into the subfield
                f = ctx.F.from_raw(f.num(ctx.F.base.poly([0] * p**m + [1])), f.den(ctx.F.base.poly([0] * p**m + [1])))
            if filtration_membership(D, f, m) != subfield_membership(f, m):
                bad += 1
        disagreements[str(m)] = bad
    ok = not any(disagreements.values())
    return ok, f"disagreements per level {disagreements}", {"levels": levels, "disagreements": disagreements}


def _images_equal(X, Y, N: int) -> bool:
    return all(X.derive(X.alg.basis(i), n) == Y.derive(Y.alg.basis(i), n)
               for i in range(X.dim) for n in range(N + 1))


def op_filtration_extend(ctx: Context, params: dict, seed: int):
    N = ctx.order(params)
    p = ctx.F.char
    if not p:
        raise ConfigInvalid("/field/char", "the filtration construction needs positive characteristic")
    depth = 1
    while p**depth - 1 < N:
        depth += 1
    if params.get("algebra", "quaternion") == "quaternion":
        _, B, D_F, D_K = _quaternion(ctx, params, N)
        built = filtration_extension(B, crossed_product_levels(B, depth), D_F, N)
        ref = crossed_product_derivation(B, D_K, N, D_F)
    else:
        ref = matrix_entrywise_derivation(2, ctx.hasse(N), N)
        built = filtration_extension(ref.alg, standard_levels(ref.alg, depth), ref.scalar, N)
    same = _images_equal(built, ref, N)
    return same, f"{depth} levels, images {'identical' if same else 'DIFFER'} up to order {N}", {
        "depth": depth, "trunc": N, "identical": same}


def op_crossed_product(ctx: Context, params: dict, seed: int):
    N = ctx.order(params)
    _, B, D_F, D_K = _quaternion(ctx, params, N, params.get("degree", 2))
    DB = crossed_product_derivation(B, D_K, N, D_F)
    rep = check_product_identities(DB, D_K, N)
    first = {B.labels[i]: B.format(DB.derive(B.basis(i), 1)) for i in range(B.dim)}
    return rep.ok, f"validated to order {N}; identities {_ok(rep.ok)} ({rep.checked} checks)", {
        "trunc": N, "delta1": first, "identities": rep.to_json()}


def op_split_check(ctx: Context, params: dict, seed: int):
    N = ctx.order(params)
    DA, kum, D_K = _delta_model(ctx, params, N)
    ans = None
    if "ansatz" in params:
        a = params["ansatz"]
        default = Ansatz.default(kum.e)
        ans = Ansatz(a.get("num_degree", default.num_degree), tuple(a.get("denominator", default.denominator)),
                     a.get("power", default.power))
    rep = check_split(DA, kum, D_K, ans, min(N, 2 * ctx.F.char or N))
    details = rep.to_json()
    ok = rep.split == params.get("expect_split", True)
    if rep.split:
        csa = csa_check(rep.constants.algebra, seed=seed)
        details["constants_csa"] = {"central": csa.central, "simple": csa.simple}
        ok &= csa.central and csa.simple
    else:
        ctx.caveats.append(rep.truncation["caveat"])
    summary = f"split={str(rep.split).lower()}, constants_dim={rep.constants_dim}, mu_rank={rep.mu_rank}"
    return ok, summary, details


def op_nilpotent_witness(ctx: Context, params: dict, seed: int):
    p = params.get("p", ctx.F.char or 2)
    i = params.get("level", 1)
    F = function_field(GF(p))
    t = F.gen
    w = nilpotent_witness(p, i, t ** (p**i), t)
    summary = f"z = y - t nonzero, nilpotency index {w.index} = {p}^{i}"
    return w.index == p**i, summary, dict(w.to_json(), p=p, level=i)


def op_classify(ctx: Context, params: dict, seed: int):
    N = ctx.order(params)
    DA, kum, D_K = _delta_model(ctx, params, N)
    cl = classify_delta_structure(DA, kum, D_K, N)
    flags = cl.flags
    ok = cl.verified and all(flags[k] == v for k, v in params.get("expect", {}).items())
    summary = ", ".join(f"{k}={str(v).lower()}" for k, v in flags.items()) + f"; {len(cl.ideals)} stable ideals"
    details = {"flags": flags, "ideal_dims": [len(b) for b in cl.ideals], "verified": cl.verified,
               "decomposition": cl.decomposition, "certificates": cl.certificates}
    return ok, summary, details


def op_divided_powers(ctx: Context, params: dict, seed: int):
    if ctx.F.char:
        raise ConfigInvalid("/field/char", "divided powers need characteristic 0")
    N = params.get("order", 12)
    first = ctx.F.from_json(params["first_image"]) if "first_image" in params else ctx.F.one
    D = char0_divided_powers(first, 2 * N, ctx.F)
    rep = check_iterative_axioms(D, N, params.get("samples", 30), seed)
    return rep.ok, f"axioms {_ok(rep.ok)} to order {N} over Q(t)", rep.to_json()


def op_lattice(ctx: Context, params: dict, seed: int):
    base = ctx.F.base
    if base.order is None:
        raise ConfigInvalid("/field/char", "lattices are computed over finite fields")
    gens = [Matrix(base, [[base(x) for x in row] for row in g]) for g in params["generators"]]
    n = gens[0].nrows
    if any(g.nrows != n or g.ncols != n for g in gens):
        raise ConfigInvalid("/generators", "generators must be square matrices of one size")
    lat = submodule_lattice(gens, base, seed)
    fl = lat.flags()
    implications = (not fl["irreducible"] or (fl["completely_reducible"] and fl["indecomposable"])) and (
        not (fl["completely_reducible"] and fl["indecomposable"]) or fl["irreducible"])
    ok = implications and all(fl[k] == v for k, v in params.get("expect", {}).items())
    summary = ", ".join(f"{k}={str(v).lower()}" for k, v in fl.items()) + f"; {len(lat.submodules)} submodules"
    if not lat.complete:
        ctx.caveats.append("lattice found by randomized search and may be incomplete")
    return ok, summary, dict(lat.to_json(), implications_hold=implications)


OPERATIONS = {
    "hasse_axioms": op_hasse_axioms,
    "kummer_extend": op_kummer_extend,
    "filtration_membership": op_filtration_membership,
    "filtration_extend": op_filtration_extend,
    "crossed_product": op_crossed_product,
    "split_check": op_split_check,
    "nilpotent_witness": op_nilpotent_witness,
    "classify": op_classify,
    "divided_powers": op_divided_powers,
    "lattice": op_lattice,
}


def run_scenario(cfg: dict, seed: int | None = None, trunc: int | None = None) -> tuple[dict, list[float]]:
    """Execute every operation; returns the JSON report and per-operation timings."""
    seed = cfg.get("seed", 0) if seed is None else seed
    trunc = cfg.get("trunc", DEFAULT_TRUNC) if trunc is None else trunc
    ctx = Context(function_field(field_from_descriptor(cfg["field"])), seed, trunc)
    results, timings = [], []
    for idx, params in enumerate(cfg["operations"]):
        op = params["op"]
        log.info("scenario %s: operation %d (%s)", cfg["name"], idx, op)
        start = time.perf_counter()
        try:
            ok, summary, details = OPERATIONS[op](ctx, params, seed + idx)
        except ConfigInvalid as exc:
            pointer = f"/operations/{idx}{exc.pointer}" if exc.pointer.startswith("/") else f"/operations/{idx}"
            raise ConfigInvalid(pointer, exc.message) from exc
        except CONSTRUCTION_ERRORS as exc:
            raise ConfigInvalid(f"/operations/{idx}", f"{type(exc).__name__}: {exc}") from exc
        except HasseForgeError as exc:
            ok, summary, details = False, f"{type(exc).__name__}: {exc}", {"error": type(exc).__name__}
        timings.append(time.perf_counter() - start)
        results.append({"index": idx, "op": op, "passed": bool(ok), "summary": summary, "details": details})
    report = {
        "tool": "hasseforge",
        "version": __version__,
        "scenario": cfg["name"],
        "seed": seed,
        "trunc": trunc,
        "passed": all(r["passed"] for r in results),
        "results": results,
        "caveats": sorted(set(ctx.caveats)),
    }
    return report, timings
