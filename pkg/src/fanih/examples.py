"""Bundled example fans."""

from __future__ import annotations

import random
from functools import cmp_to_key
from itertools import product

from .fan import Fan, build_fan
from .io import FanDocument, document_from_fan
from .polytopes import DegenerateInput, convex_hull, polytope_to_fan

__all__ = ["EXAMPLES", "examples", "example_fan", "random_complete_fan"]


def _doc(name, rays, cones, **meta) -> FanDocument:
    return FanDocument(len(rays[0]), [list(r) for r in rays], [list(c) for c in cones], name, meta)


def _simplex(n: int) -> FanDocument:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    cones = [[j for j in range(n + 1) if j != i] for i in range(n + 1)]
    return _doc(f"simplex-{n}", rays, cones, complete=True)


def _square() -> FanDocument:
    return _doc("square", [(1, 0), (0, 1), (-1, 0), (0, -1)], [[0, 1], [1, 2], [2, 3], [3, 0]],
                complete=True)


def _cube_face_fan() -> FanDocument:
    rays = list(product([1, -1], repeat=3))
    cones = [[i for i, v in enumerate(rays) if v[k] == s] for k in range(3) for s in (1, -1)]
    return _doc("cube-face-fan", rays, cones, complete=True)


def _cross_polytope() -> FanDocument:
    rays = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    cones = [[a, b, c] for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    return _doc("cross-polytope", rays, cones, complete=True)


def _cone_over_square() -> FanDocument:
    return _doc("cone-over-square", [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)],
                [[0, 1, 2, 3]], complete=False)


def _cone_over_cube() -> FanDocument:
    rays = [v + (1,) for v in product([1, -1], repeat=3)]
    return _doc("cone-over-cube", rays, [list(range(8))], complete=False)


def _half_plane() -> FanDocument:
    return _doc("half-plane", [(1, 0), (0, 1), (-1, 0)], [[0, 1], [1, 2]], complete=False)


def _bad_boundary() -> FanDocument:
    # two quadrants meeting only at the origin
    return _doc("bad-boundary", [(1, 0), (0, 1), (-1, 0), (0, -1)], [[0, 1], [2, 3]],
                complete=False, quasi_convex=False)


def _half(v) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_cmp(a, b) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def random_complete_fan(dim: int, seed: int = 0, size: int | None = None,
                        box: int = 5) -> Fan:
    """Random complete simplicial fan in dimension 2 or 3."""
    rng = random.Random(seed)
    if dim == 2:
        k = size or rng.randint(3, 8)
        while True:
            vs = set()
            while len(vs) < k:
                v = (rng.randint(-box, box), rng.randint(-box, box))
                if v != (0, 0):
                    vs.add(v)
            rays = sorted(vs, key=cmp_to_key(_angle_cmp))
            # drop repeated directions
            uniq = [rays[0]]
            for v in rays[1:]:
                if _angle_cmp(uniq[-1], v) != 0:
                    uniq.append(v)
            m = len(uniq)
            if m < 3:
                continue
            ok = all(uniq[i][0] * uniq[(i + 1) % m][1] - uniq[i][1] * uniq[(i + 1) % m][0] > 0
                     for i in range(m))
            if ok:
                return build_fan(uniq, [[i, (i + 1) % m] for i in range(m)], 2,
                                 name=f"random-2d-{seed}")
    if dim == 3:
        k = size or rng.randint(4, 9)
        for _ in range(200):
            pts = {tuple(rng.randint(-box, box) for _ in range(3)) for _ in range(k)}
            try:
                P = convex_hull(sorted(pts))
            except DegenerateInput:
                continue
            if any(len(f) != 3 for f, _, _ in P.facets):
                continue
            return polytope_to_fan(P.vertices, "face_fan", name=f"random-3d-{seed}")
        raise RuntimeError("could not draw a simplicial polytope")
    raise ValueError("random fans are available in dimensions 2 and 3")


_BUILDERS = {
    "simplex-2": lambda: _simplex(2),
    "simplex-3": lambda: _simplex(3),
    "square": _square,
    "cube-face-fan": _cube_face_fan,
    "cross-polytope": _cross_polytope,
    "cone-over-square": _cone_over_square,
    "cone-over-cube": _cone_over_cube,
    "half-plane": _half_plane,
    "bad-boundary": _bad_boundary,
}

EXAMPLES = tuple(_BUILDERS) + ("random-2d", "random-3d")


def examples(name: str, seed: int = 0) -> FanDocument:
    if name in _BUILDERS:
        return _BUILDERS[name]()
    if name in ("random-2d", "random-3d"):
        F = random_complete_fan(int(name[7]), seed)
        return document_from_fan(F, {"complete": True, "seed": seed})
    raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")


def example_fan(name: str, seed: int = 0) -> Fan:
    return examples(name, seed).to_fan()
