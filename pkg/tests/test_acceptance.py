"""One test per acceptance criterion; each prints a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) or through pytest, which
repeats the lines in its terminal summary.
"""

import random
import time

from fanih.examples import EXAMPLES, example_fan, random_complete_fan
from fanih.fan import build_fan, is_complete, is_simplicial_fan, simplicial_refinement
from fanih.oracle.cochain import Variant, cochain_complex, exactness_table, freeness_report, quasi_convex
from fanih.oracle.decompose import decompose_semisimple
from fanih.oracle.lefschetz import hard_lefschetz_check
from fanih.oracle.sheaf import (audit_axioms, build_minimal_extension, build_simple_sheaf,
                                direct_image, direct_sum, residue_dims)
from fanih.poly import ONE, T2, PoincarePoly
from fanih.recursion import (check_duality, degree_bound_audit, global_poly, local_poly,
                             local_poly_table, syntactically_quasi_convex)

import acclog

QUASI_CONVEX = ("simplex-2", "simplex-3", "square", "cube-face-fan", "cross-polytope",
                "cone-over-square", "cone-over-cube", "half-plane", "random-2d", "random-3d")


def P(*c):
    return PoincarePoly(c)


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_criterion_1_golden_h_vectors():
    checks = []
    cube, dt = _timed(lambda: global_poly(example_fan("cube-face-fan")))
    checks.append(cube == P(1, 5, 5, 1) and cube.as_h_vector() == (1, 5, 5, 1)
                  and cube.g_vector(3) == (1, 4) and dt < 1)
    sq, dt = _timed(lambda: global_poly(example_fan("square")))
    checks.append(sq == P(1, 2, 1) and dt < 1)
    for name, n in (("simplex-2", 2), ("simplex-3", 3)):
        p, dt = _timed(lambda: global_poly(example_fan(name)))
        checks.append(p.as_h_vector() == (1,) * (n + 1) and dt < 1)
    ok = all(checks)
    acclog.record(1, ok, f"cube {cube}, square {sq}, simplex h-vectors all ones")
    assert ok


def test_criterion_2_local_recursion():
    F = example_fan("cone-over-square")
    a, ta = _timed(lambda: local_poly(F, F.max_cone_ids[0]))
    G = example_fan("cone-over-cube")
    b, tb = _timed(lambda: local_poly(G, G.max_cone_ids[0]))
    ok = a == P(1, 1) and b == P(1, 4) and ta < 1 and tb < 1
    acclog.record(2, ok, f"cone over square {a} ({ta:.3f}s), cone over cube {b} ({tb:.3f}s)")
    assert ok


def test_criterion_3_oracle_equivalence():
    t0 = time.perf_counter()
    bad = []
    count = 0
    for name in EXAMPLES:
        F = example_fan(name)
        n = F.ambient_dim
        if n > 3:
            continue
        count += 1
        E = build_minimal_extension(F)
        table = local_poly_table(F)
        for c in F.cones:
            if residue_dims(E, c.id).truncate_below(2 * n + 1) != table[c.id]:
                bad.append(f"{name}: cone {c.id}")
        if name in QUASI_CONVEX:
            rec = global_poly(F, assume_quasi_convex=True, table=table)
            rel = global_poly(F, True, assume_quasi_convex=True, table=table)
            if residue_dims(E).truncate_below(2 * n + 1) != rec:
                bad.append(f"{name}: global")
            if residue_dims(E, relative=True).truncate_below(2 * n + 1) != rel:
                bad.append(f"{name}: relative")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    acclog.record(3, ok, f"{count} fans with n<=3, mismatches {bad or 'none'}, {dt:.1f}s")
    assert ok


def test_criterion_4_axioms():
    failures = []
    for name in EXAMPLES:
        F = example_fan(name)
        E = build_minimal_extension(F)
        rep = audit_axioms(E)
        if not (rep.ok and rep.vanishing_ok):
            failures.append(name)
        if is_simplicial_fan(F):
            for c in F.cones:
                gens = E.generators[c.id]
                if len(gens) != 1 or gens[0].degree != 0 or gens[0].section != {(0, ()): 1}:
                    failures.append(f"{name}: cone {c.id} is not the constant 1")
                    break
    ok = not failures
    acclog.record(4, ok, f"N/PF/LME and V on {len(EXAMPLES)} fans; failures {failures or 'none'}")
    assert ok


def test_criterion_5_bernstein_lunts():
    failures = []
    complete = [nm for nm in EXAMPLES if is_complete(example_fan(nm))]
    for name in complete:
        E = build_minimal_extension(example_fan(name))
        table = exactness_table(E, Variant.AUGMENTED)
        if max(table) < 2 * E.fan.ambient_dim + 2 or any(any(v) for v in table.values()):
            failures.append(name)
    bad = build_minimal_extension(example_fan("bad-boundary"))
    bad_table = exactness_table(bad, Variant.AUGMENTED)
    contrast = any(any(v) for v in bad_table.values())
    ok = not failures and contrast
    acclog.record(5, ok, f"exact on {len(complete)} complete fans (failures {failures or 'none'}); "
                         f"bad-boundary H~ at t-degree 0 = {bad_table[0]}")
    assert ok


def test_criterion_6_theorem_coherence():
    rows = []
    agree = True
    for name in EXAMPLES:
        F = example_fan(name)
        if not F.is_pure():
            continue
        E = build_minimal_extension(F)
        exact = all(not any(v) for v in exactness_table(E).values())
        free = freeness_report(E).absolute
        agree &= exact == free
        rows.append(f"{name}={'Y' if exact else 'N'}{'Y' if free else 'N'}")
    acclog.record(6, agree, "exact/free: " + " ".join(rows))
    assert agree


def test_criterion_7_duality():
    failures = []
    for name in QUASI_CONVEX:
        F = example_fan(name)
        n = F.ambient_dim
        if not check_duality(F, assume_quasi_convex=True).holds:
            failures.append(f"{name}: recursion")
        E = build_minimal_extension(F)
        Pa = residue_dims(E).truncate_below(2 * n + 1)
        Pr = residue_dims(E, relative=True).truncate_below(2 * n + 1)
        if Pr != Pa.duality_transform(n):
            failures.append(f"{name}: oracle")
    ok = not failures
    acclog.record(7, ok, f"{len(QUASI_CONVEX)} quasi-convex fans; failures {failures or 'none'}")
    assert ok


def test_criterion_8_hard_lefschetz():
    F = example_fan("cone-over-square")
    a = hard_lefschetz_check(F, F.max_cone_ids[0])
    G = example_fan("cone-over-cube")
    b = hard_lefschetz_check(G, G.max_cone_ids[0])
    ok = (a.residue_dims == [1, 2, 1] and a.injective == {0: True} and a.surjective == {2: True}
          and b.residue_dims == [1, 5, 5, 1] and b.injective == {0: True, 2: True}
          and b.surjective == {2: True, 4: True} and a.vanishing and b.vanishing)
    acclog.record(8, ok, f"square cone dims {a.residue_dims} ranks {a.ranks}; "
                         f"cube cone dims {b.residue_dims} ranks {b.ranks}")
    assert ok


def test_criterion_9_decomposition():
    F = example_fan("cone-over-square")
    ref = simplicial_refinement(F)
    E = build_minimal_extension(F, refinement=ref)
    wall = F.cone([0, 1]).id
    top = F.max_cone_ids[0]
    built = direct_sum(direct_sum(E, build_simple_sheaf(F, wall, refinement=ref), 2),
                       build_simple_sheaf(F, top, refinement=ref), 4)
    rt = decompose_semisimple(built)
    ok = rt.verified and rt.as_tuples() == [(F.zero.id, 0, 1), (wall, 2, 1), (top, 4, 1)]
    shapes = []
    for name in ("cone-over-square", "cube-face-fan", "cone-over-cube"):
        G = example_fan(name)
        r = simplicial_refinement(G)
        dec = decompose_semisimple(direct_image(r, build_minimal_extension(r.fan)))
        head = dec.summands[0]
        good = (dec.verified and (head.cone, head.shift, head.multiplicity) == (G.zero.id, 0, 1)
                and all(G.cones[s.cone].dim >= 2 and s.shift > 0 for s in dec.summands[1:]))
        ok &= good
        shapes.append(f"{name}: {dec.as_tuples()}")
    acclog.record(9, ok, f"round trip {rt.as_tuples()}; " + "; ".join(shapes))
    assert ok


def _random_sheaves(rng, k):
    fans = []
    for i in range(k):
        kind = rng.randrange(4)
        if kind == 0:
            fans.append(random_complete_fan(2, rng.randrange(10 ** 6)))
        elif kind == 1:
            fans.append(random_complete_fan(3, rng.randrange(10 ** 6)))
        elif kind == 2:
            F = random_complete_fan(2, rng.randrange(10 ** 6))
            cones = F.maximal_cone_rays()
            keep = rng.randint(1, len(cones) - 1)
            fans.append(build_fan(F.rays, cones[:keep], 2, check=False))
        else:
            fans.append(example_fan(rng.choice(["cone-over-square", "half-plane", "bad-boundary",
                                                "cube-face-fan"])))
    out = []
    for F in fans:
        ref = simplicial_refinement(F)
        E = build_minimal_extension(F, refinement=ref)
        if rng.random() < 0.5:
            tau = rng.choice([c.id for c in F.cones])
            E = direct_sum(E, build_simple_sheaf(F, tau, refinement=ref), 2 * rng.randint(0, 2))
        out.append(E)
    return out


def test_criterion_10_structural():
    rng = random.Random(20240601)
    sheaves = _random_sheaves(rng, 25)
    complexes = 0
    squares = True
    for E in sheaves:
        pure = E.fan.is_pure() and E.fan.cones[E.fan.max_cone_ids[0]].dim == E.fan.ambient_dim
        for _ in range(4):
            variant = rng.choice(list(Variant) if pure else [Variant.ABSOLUTE])
            d = 2 * rng.randint(0, E.qmax)
            squares &= cochain_complex(E, variant, d).squares_to_zero()
            complexes += 1
    h_ok = True
    for i in range(20):
        F = random_complete_fan(2 + i % 2, 1000 + i)
        n = F.ambient_dim
        f = F.f_vector()
        h = PoincarePoly()
        for k in range(n + 1):
            h = h + PoincarePoly([f[k]]) * (T2 - ONE) ** (n - k)
        h_ok &= global_poly(F) == h
    audit_ok = all(degree_bound_audit(example_fan(nm), assume_quasi_convex=True).passed
                   for nm in QUASI_CONVEX
                   if syntactically_quasi_convex(example_fan(nm)) or nm == "half-plane")
    ok = squares and complexes >= 100 and h_ok and audit_ok
    acclog.record(10, ok, f"delta^2=0 on {complexes} random complexes: {squares}; "
                          f"f-vector h identity on 20 fans: {h_ok}; degree-bound audit: {audit_ok}")
    assert ok


if __name__ == "__main__":
    import sys
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
