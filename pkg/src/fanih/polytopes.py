"""Face fans and normal fans of small rational polytopes.

The convex hull is found by brute force: every affinely independent
``d``-subset of points spans a candidate hyperplane, kept when all points
lie weakly on one side.  Fine for ``d <= 4`` and a few dozen points.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

from . import linalg
from .fan import Fan, build_fan

__all__ = ["DegenerateInput", "Polytope", "convex_hull", "polytope_to_fan"]


class DegenerateInput(ValueError):
    pass


def _integral(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = lcm(*[x.denominator for x in v]) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(a // g for a in ints) if g else tuple(ints)


class Polytope:
    """Vertices and facets (as vertex-index sets with outer normals)."""

    def __init__(self, vertices: list[tuple[Fraction, ...]],
                 facets: list[tuple[frozenset[int], tuple[int, ...], Fraction]]):
        self.vertices = vertices
        self.facets = facets
        self.dim = len(vertices[0])

    def centroid(self) -> tuple[Fraction, ...]:
        k = len(self.vertices)
        return tuple(sum(v[i] for v in self.vertices) / k for i in range(self.dim))

    def f_vector(self) -> tuple[int, ...]:
        faces = {frozenset(f) for f, _, _ in self.facets}
        layer = set(faces)
        while layer:
            nxt = {a & b for a, b in combinations(layer, 2)} - {frozenset()}
            nxt = {x for x in nxt if x not in faces}
            faces |= nxt
            layer = nxt
        counts = [0] * self.dim
        for f in faces | {frozenset([i]) for i in range(len(self.vertices))}:
            pts = [self.vertices[i] for i in f]
            d = linalg.rank([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]], self.dim) if len(pts) > 1 else 0
            counts[d] += 1
        return tuple(counts)


def convex_hull(points: Sequence[Sequence]) -> Polytope:
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise DegenerateInput("no points")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DegenerateInput("points of different lengths")
    pts = list(dict.fromkeys(pts))
    diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    if d == 0 or linalg.rank(diffs, d) < d:
        raise DegenerateInput("points do not affinely span the space")
    found: dict[frozenset[int], tuple[tuple[int, ...], Fraction]] = {}
    for sub in combinations(range(len(pts)), d):
        base = pts[sub[0]]
        rows = [[a - b for a, b in zip(pts[i], base)] for i in sub[1:]]
        if d > 1 and linalg.rank(rows, d) < d - 1:
            continue
        ns = linalg.nullspace(rows, d) if d > 1 else [[1]]
        if len(ns) != 1:
            continue
        a = [Fraction(int(x.p), int(x.q)) for x in (linalg.to_fmpq(y) for y in ns[0])]
        b = sum(x * y for x, y in zip(a, base))
        vals = [sum(x * y for x, y in zip(a, p)) - b for p in pts]
        if all(v <= 0 for v in vals):
            pass
        elif all(v >= 0 for v in vals):
            a, b, vals = [-x for x in a], -b, [-v for v in vals]
        else:
            continue
        on = frozenset(i for i, v in enumerate(vals) if v == 0)
        if on not in found:
            normal = _integral(a)
            scale = Fraction(normal[0]) / a[0] if a[0] else next(
                Fraction(n) / x for n, x in zip(normal, a) if x)
            found[on] = (normal, b * scale)
    # vertices: points on facets whose normals span
    verts = [i for i in range(len(pts))
             if linalg.rank([list(found[f][0]) for f in found if i in f], d) == d]
    remap = {v: k for k, v in enumerate(verts)}
    facets = []
    for on, (normal, b) in sorted(found.items(), key=lambda kv: sorted(kv[0])):
        fs = frozenset(remap[i] for i in on if i in remap)
        facets.append((fs, normal, b))
    return Polytope([pts[i] for i in verts], facets)


def polytope_to_fan(vertices: Sequence[Sequence], mode: str = "face_fan",
                    name: str | None = None) -> Fan:
    """``face_fan``: cones over proper faces after centering at the vertex
    centroid.  ``normal_fan``: outer normal cones of the faces."""
    P = convex_hull(vertices)
    n = P.dim
    if mode == "face_fan":
        c = P.centroid()
        rays = [_integral([a - b for a, b in zip(v, c)]) for v in P.vertices]
        cones = [sorted(f) for f, _, _ in P.facets]
        return build_fan(rays, cones, n, name=name)
    if mode == "normal_fan":
        rays = [normal for _, normal, _ in P.facets]
        cones = [[j for j, (f, _, _) in enumerate(P.facets) if i in f]
                 for i in range(len(P.vertices))]
        return build_fan(rays, cones, n, name=name)
    raise ValueError(f"unknown mode {mode!r}")
