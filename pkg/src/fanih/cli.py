"""Command line interface: ``fanih compute|verify|lefschetz|decompose|examples``.

Exit codes: 0 ok, 1 a verdict failed (only with ``--strict``) or an
unsupported input, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .examples import EXAMPLES, examples
from .fan import Fan, FanError, is_complete, simplicial_refinement
from .io import SchemaError, load_fan
from .oracle.cochain import Variant, exactness_table, freeness_report, quasi_convex
from .oracle.decompose import decompose_semisimple
from .oracle.lefschetz import hard_lefschetz_check
from .oracle.sheaf import (DegreeBoundTooSmall, audit_axioms, build_minimal_extension,
                           default_degree_bound, direct_image, residue_dims)
from .recursion import NotQuasiConvexHint, check_duality, global_poly, local_poly_table

EXIT_OK, EXIT_VERDICT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(source: str, seed: int) -> Fan:
    if source.startswith("example:"):
        name = source.split(":", 1)[1]
        try:
            return examples(name, seed).to_fan()
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    if not os.path.exists(source):
        raise UsageError(f"no such file: {source}")
    try:
        return load_fan(source)
    except SchemaError as exc:
        raise UsageError(f"{source}: {exc}") from None


def _bound(F: Fan, args) -> int:
    D = args.degree_bound if args.degree_bound is not None else default_degree_bound(F)
    if D < default_degree_bound(F):
        raise UsageError(f"--degree-bound must be at least {default_degree_bound(F)}")
    return D


def _poly(p) -> dict:
    return {"coeffs": p.to_json(), "text": str(p)}


# -- commands ------------------------------------------------------------


def cmd_compute(args) -> tuple[dict, list[str], bool]:
    F = _load(args.fan, args.seed)
    assume = args.assume_quasi_convex
    table = local_poly_table(F)
    res: dict = {"fan": F.name, "ambient_dim": F.ambient_dim, "f_vector": list(F.f_vector()),
                 "complete": is_complete(F)}
    lines = [f"fan {F.name or args.fan}: n={F.ambient_dim} f={F.f_vector()}"]
    try:
        P = global_poly(F, False, assume_quasi_convex=assume, table=table)
        R = global_poly(F, True, assume_quasi_convex=assume, table=table)
    except NotQuasiConvexHint as exc:
        res["error"] = str(exc)
        return res, lines + [f"error: {exc} (use --assume-quasi-convex to override)"], False
    res["P"] = _poly(P)
    lines.append(f"P     = {P}")
    if args.relative:
        res["P_relative"] = _poly(R)
        lines.append(f"P_rel = {R}")
    if args.h_vector:
        res["h_vector"] = P.as_h_vector()
        lines.append(f"h = {tuple(P.as_h_vector())}")
    if args.g_vector:
        res["g_vector"] = P.g_vector(F.ambient_dim)
        lines.append(f"g = {tuple(P.g_vector(F.ambient_dim))}")
    if args.local:
        res["local"] = {str(c.id): table[c.id].to_json() for c in F.cones}
        for c in F.cones:
            if c.dim > 1:
                lines.append(f"  P_sigma[{c.id} rays={list(c.ray_ids)}] = {table[c.id]}")
    dual = check_duality(F, assume_quasi_convex=assume)
    res["duality"] = dual.holds
    lines.append(f"duality: {'ok' if dual.holds else 'FAILS'}")
    return res, lines, dual.holds


def cmd_verify(args) -> tuple[dict, list[str], bool]:
    F = _load(args.fan, args.seed)
    D = _bound(F, args)
    n = F.ambient_dim
    E = build_minimal_extension(F, D)
    failures: list[str] = []
    lines = [f"fan {F.name or args.fan}: n={n} f={F.f_vector()}  (verified up to t-degree {D})"]
    ax = audit_axioms(E)
    res: dict = {"fan": F.name, "degree_bound": D, "axioms": ax.to_json()}
    lines.append(f"axioms N/PF/LME: {'ok' if ax.ok else 'FAIL'}   V: {'ok' if ax.vanishing_ok else 'FAIL'}")
    if not ax.ok:
        failures.append("axioms")
    if not ax.vanishing_ok:
        failures.append("vanishing")
    qc = None
    if F.is_pure():
        table = exactness_table(E, Variant.AUGMENTED)
        exact = all(not any(v) for v in table.values())
        qc = quasi_convex(E)
        free = freeness_report(E)
        res.update(quasi_convex=qc.value, exactness={str(k): v for k, v in table.items()},
                   freeness=free.to_json(), theorem_coherent=exact == free.absolute)
        lines.append(f"quasi-convex: {qc.value}")
        lines.append("augmented relative complex, cohomology by t-degree:")
        for d, v in table.items():
            lines.append(f"  {d:2d}: {v}")
        lines.append(f"freeness (Hilbert): absolute={free.absolute} relative={free.relative}")
        lines.append(f"exactness <=> freeness: {exact == free.absolute}")
        if exact != free.absolute:
            failures.append("theorem coherence")
        if not qc.is_yes:
            failures.append("not quasi-convex")
    else:
        res["quasi_convex"] = None
        lines.append("quasi-convex: not decided (fan is not pure)")
    if qc is not None and qc.is_yes:
        lt = local_poly_table(F)
        P = global_poly(F, False, assume_quasi_convex=True, table=lt)
        R = global_poly(F, True, assume_quasi_convex=True, table=lt)
        Po = residue_dims(E).truncate_below(2 * n + 1)
        Ro = residue_dims(E, relative=True).truncate_below(2 * n + 1)
        local_bad = [c.id for c in F.cones if residue_dims(E, c.id) != lt[c.id]]
        dual_rec = R == P.duality_transform(n)
        dual_orc = Ro == Po.duality_transform(n) if Po.degree <= 2 * n else False
        res["recursion"] = {"P": P.to_json(), "P_relative": R.to_json()}
        res["oracle"] = {"P": Po.to_json(), "P_relative": Ro.to_json()}
        res["recursion_vs_oracle"] = {"global": P == Po, "relative": R == Ro,
                                      "local_mismatches": local_bad}
        res["duality"] = {"recursion": dual_rec, "oracle": dual_orc}
        lines.append(f"P recursion = {P}   oracle = {Po}")
        lines.append(f"P_rel recursion = {R}   oracle = {Ro}")
        lines.append(f"local polynomials agree on all cones: {not local_bad}")
        lines.append(f"duality: recursion={dual_rec} oracle={dual_orc}")
        if P != Po or R != Ro or local_bad:
            failures.append("recursion vs oracle")
        if not (dual_rec and dual_orc):
            failures.append("duality")
    res["failures"] = failures
    lines.append("verdict: " + ("PASS" if not failures else "FAIL (" + ", ".join(failures) + ")"))
    return res, lines, not failures


def cmd_lefschetz(args) -> tuple[dict, list[str], bool]:
    F = _load(args.fan, args.seed)
    cid = args.cone if args.cone is not None else F.max_cone_ids[0]
    if not 0 <= cid < len(F.cones) or F.cones[cid].dim == 0:
        raise UsageError(f"--cone must name a nonzero cone id below {len(F.cones)}")
    rep = hard_lefschetz_check(F, cid, args.degree_bound)
    res = rep.to_json()
    res["rays"] = list(F.cones[cid].ray_ids)
    lines = [f"cone {cid} rays={list(F.cones[cid].ray_ids)} m={rep.m} (t-degree bound {rep.degree_bound})",
             f"residue dims of G on the projection fan: {rep.residue_dims}"]
    for d, r in rep.ranks_by_degree().items():
        tags = []
        if d in rep.injective:
            tags.append("injective" + ("" if rep.injective[d] else " FAILS"))
        if d in rep.surjective:
            tags.append("surjective" + ("" if rep.surjective[d] else " FAILS"))
        lines.append(f"  mu {d} -> {d + 2}: rank {r}  {', '.join(tags)}")
    lines.append(f"vanishing condition: {rep.vanishing}")
    ok = rep.passed and rep.vanishing is not False
    return res, lines, ok


def cmd_decompose(args) -> tuple[dict, list[str], bool]:
    F = _load(args.fan, args.seed)
    D = _bound(F, args)
    ref = simplicial_refinement(F)
    Ah = build_minimal_extension(ref.fan, D)
    push = direct_image(ref, Ah)
    dec = decompose_semisimple(push)
    res = dec.to_json()
    for s, js in zip(dec.summands, res["summands"]):
        js["rays"] = list(F.cones[s.cone].ray_ids)
    lines = [f"refinement: {len(ref.fan.max_cone_ids)} maximal cones; direct image splits as"]
    for s in dec.summands:
        c = F.cones[s.cone]
        lines.append(f"  {s.multiplicity} x simple(cone {s.cone}, rays {list(c.ray_ids)}, dim {c.dim})[-{s.shift}]")
    lines.append(f"stalk polynomials match at every cone: {dec.verified}")
    return res, lines, dec.verified


def cmd_examples(args) -> tuple[dict, list[str], bool]:
    names = [args.name] if args.name else list(EXAMPLES)
    if args.name and args.name not in EXAMPLES:
        raise UsageError(f"unknown example {args.name!r}; choose from {', '.join(EXAMPLES)}")
    docs = {nm: examples(nm, args.seed) for nm in names}
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for nm, doc in docs.items():
            with open(os.path.join(args.out, f"{nm}.json"), "w") as fh:
                fh.write(doc.to_json())
        return {"written": sorted(docs)}, [f"wrote {len(docs)} documents to {args.out}"], True
    if args.name:
        doc = docs[args.name]
        return doc.to_dict(), doc.to_json().rstrip("\n").split("\n"), True
    return {"examples": names}, names, True


# -- parser --------------------------------------------------------------


def _common(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable report")
    p.add_argument("--seed", type=int, default=d(0), help="seed for random examples")
    p.add_argument("--degree-bound", type=int, default=d(None), help="t-degree bound D (default 2n+2)")
    p.add_argument("--strict", action="store_true", default=d(False),
                   help="exit 1 when a verdict fails")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fanih", description=__doc__.split("\n")[0])
    _common(p, False)
    sub = p.add_subparsers(dest="command", required=True)
    fan_help = "fan document (JSON path) or example:NAME"

    c = sub.add_parser("compute", help="polynomials from the recursion")
    c.add_argument("fan", help=fan_help)
    c.add_argument("--relative", action="store_true")
    c.add_argument("--h-vector", action="store_true")
    c.add_argument("--g-vector", action="store_true")
    c.add_argument("--local", action="store_true", help="list local polynomials")
    c.add_argument("--assume-quasi-convex", action="store_true")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="full linear-algebra audit")
    v.add_argument("fan", help=fan_help)
    v.set_defaults(func=cmd_verify)

    le = sub.add_parser("lefschetz", help="hard Lefschetz ranks for a cone")
    le.add_argument("fan", help=fan_help)
    le.add_argument("--cone", type=int, default=None, help="cone id (default: first maximal cone)")
    le.set_defaults(func=cmd_lefschetz)

    de = sub.add_parser("decompose", help="split the direct image of a triangulation")
    de.add_argument("fan", help=fan_help)
    de.set_defaults(func=cmd_decompose)

    ex = sub.add_parser("examples", help="emit bundled example documents")
    ex.add_argument("name", nargs="?")
    ex.add_argument("--out", help="write every selected document to this directory")
    ex.set_defaults(func=cmd_examples)

    for sp in (c, v, le, de, ex):
        _common(sp, True)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        result, lines, ok = args.func(args)
    except UsageError as exc:
        print(f"fanih: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FanError, DegreeBoundTooSmall, ValueError) as exc:
        print(f"fanih: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    elapsed = time.perf_counter() - t0
    if args.json:
        report = {"command": ["fanih"] + argv, "result": result, "ok": ok,
                  "degree_bound": result.get("degree_bound") if isinstance(result, dict) else None,
                  "timing_s": round(elapsed, 3)}
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(lines))
    if args.strict and not ok:
        return EXIT_VERDICT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
