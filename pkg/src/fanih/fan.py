"""Rational polyhedral fans with exact face lattices.

Cones are stored by their ray index sets; every face relation is derived
geometrically from supporting functionals, never from ray-subset tests alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from . import linalg

__all__ = [
    "FanError",
    "NonPointedCone",
    "ConesIntersectBadly",
    "RedundantGenerator",
    "NotPure",
    "ZeroCone",
    "NotARefinement",
    "Cone",
    "Fan",
    "Subfan",
    "OrientationData",
    "ProjectionData",
    "Refinement",
    "primitive",
    "build_fan",
    "boundary_subfan",
    "is_complete",
    "is_simplicial",
    "is_simplicial_fan",
    "projection_fan",
    "simplicial_refinement",
    "orientation_data",
]


class FanError(ValueError):
    """Invalid fan input."""


class NonPointedCone(FanError):
    pass


class ConesIntersectBadly(FanError):
    pass


class RedundantGenerator(FanError):
    pass


class NotPure(FanError):
    pass


class ZeroCone(FanError):
    pass


class NotARefinement(FanError):
    pass


Vector = tuple[Fraction, ...]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(int(x.p), int(x.q))


def _dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def primitive(v: Iterable) -> tuple[int, ...]:
    """Primitive integer vector on the ray through ``v``."""
    fr = [_frac(x) for x in v]
    if all(x == 0 for x in fr):
        raise FanError("zero vector has no primitive representative")
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, (abs(x) for x in ints))
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class Cone:
    id: int
    ray_ids: tuple[int, ...]
    dim: int
    face_ids: frozenset[int]
    span_basis: tuple[Vector, ...]
    pivots: tuple[int, ...]

    @property
    def rayset(self) -> frozenset[int]:
        return frozenset(self.ray_ids)

    def coords(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` (assumed in the span) in ``span_basis``."""
        return tuple(_frac(v[p]) for p in self.pivots)


# ---------------------------------------------------------------------------
# single-cone geometry


def _span(vecs: Sequence[Sequence], n: int) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    basis, piv = linalg.echelon(vecs, n)
    return tuple(tuple(_frac(x) for x in row) for row in basis), tuple(piv)


def _facets(coords: dict[int, Vector], d: int) -> dict[frozenset[int], Vector]:
    """Facets of the cone over ``coords`` (full-dimensional in Q^d).

    Returns ray-set -> inner normal.  Candidate hyperplanes are spanned by
    d-1 independent generators; a candidate is a facet when every generator
    lies weakly on one side.
    """
    out: dict[frozenset[int], Vector] = {}
    if d == 0:
        return out
    ids = sorted(coords)
    for sub in combinations(ids, d - 1):
        rows = [coords[i] for i in sub]
        if linalg.rank(rows, d) != d - 1:
            continue
        ell = [_frac(x) for x in linalg.nullspace(rows, d)[0]]
        vals = {i: _dot(ell, coords[i]) for i in ids}
        pos = any(v > 0 for v in vals.values())
        neg = any(v < 0 for v in vals.values())
        if pos and neg:
            continue
        if neg:
            ell = [-x for x in ell]
        zero = frozenset(i for i in ids if vals[i] == 0)
        out.setdefault(zero, tuple(ell))
    return out


class _ConeGeometry:
    """Face enumeration for cones over subsets of a fixed ray list."""

    def __init__(self, rays: Sequence[Sequence[int]], n: int):
        self.rays = rays
        self.n = n
        self._faces: dict[frozenset[int], frozenset[frozenset[int]]] = {}
        self._info: dict[frozenset[int], tuple] = {}

    def info(self, S: frozenset[int]):
        """(dim, span_basis, pivots, facets-with-normals) of cone(S)."""
        if S not in self._info:
            vecs = [self.rays[i] for i in sorted(S)]
            basis, piv = _span(vecs, self.n)
            d = len(basis)
            coords = {i: tuple(_frac(self.rays[i][p]) for p in piv) for i in S}
            facets = _facets(coords, d)
            if d > 0:
                normals = list(facets.values())
                if not facets or linalg.rank(normals, d) != d:
                    raise NonPointedCone(f"cone on rays {sorted(S)} contains a line")
            self._info[S] = (d, basis, piv, facets)
        return self._info[S]

    def faces(self, S: frozenset[int]) -> frozenset[frozenset[int]]:
        if S not in self._faces:
            d, _, _, facets = self.info(S)
            acc = {S}
            for F in facets:
                acc |= self.faces(F)
            if d > 0:
                for i in S:
                    if frozenset([i]) not in acc:
                        raise RedundantGenerator(
                            f"ray {i} is not an extreme ray of cone {sorted(S)}")
            self._faces[S] = frozenset(acc)
        return self._faces[S]

    def hrep(self, S: frozenset[int]):
        """Equations and inequalities (ambient functionals) cutting out cone(S)."""
        d, basis, piv, facets = self.info(S)
        eqs = linalg.nullspace(basis, self.n) if basis else [
            [1 if j == i else 0 for j in range(self.n)] for i in range(self.n)]
        ineqs = []
        for ell in facets.values():
            f = [Fraction(0)] * self.n
            for k, p in enumerate(piv):
                f[p] = ell[k]
            ineqs.append(f)
        return [[_frac(x) for x in e] for e in eqs], ineqs


def _extreme_rays_of(eqs, ineqs, n: int) -> list[list[Fraction]]:
    """Extreme rays of the pointed cone ``{x : eqs x = 0, ineqs x >= 0}``."""
    W = [[_frac(x) for x in w] for w in linalg.nullspace(eqs, n)] if eqs else [
        [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    k = len(W)
    if k == 0:
        return []
    G = [[_dot(g, w) for w in W] for g in ineqs]
    found = []
    seen = set()
    for sub in combinations(range(len(G)), k - 1):
        rows = [G[i] for i in sub]
        if linalg.rank(rows, k) != k - 1:
            continue
        y = [_frac(x) for x in linalg.nullspace(rows, k)[0]]
        for sgn in (1, -1):
            yy = [sgn * x for x in y]
            if all(_dot(g, yy) >= 0 for g in G):
                x = [sum((yy[j] * W[j][i] for j in range(k)), Fraction(0)) for i in range(n)]
                key = primitive(x)
                if key not in seen:
                    seen.add(key)
                    found.append(x)
    return found


# ---------------------------------------------------------------------------
# fans


class Fan:
    """A fan: rays (primitive integer vectors) and a face-closed cone list.

    Cone ids are ordered by (dim, sorted rays); the zero cone has id 0.
    Instances are immutable after construction.
    """

    def __init__(self, ambient_dim: int, rays: Sequence[tuple[int, ...]],
                 cones: Sequence[Cone], name: str | None = None):
        self.ambient_dim = ambient_dim
        self.rays = tuple(tuple(r) for r in rays)
        self.cones = tuple(cones)
        self.name = name
        self.by_rays = {c.rayset: c.id for c in self.cones}
        facets: dict[int, list[int]] = {c.id: [] for c in self.cones}
        cofacets: dict[int, list[int]] = {c.id: [] for c in self.cones}
        cofaces: dict[int, list[int]] = {c.id: [] for c in self.cones}
        for c in self.cones:
            for f in c.face_ids:
                cofaces[f].append(c.id)
                if self.cones[f].dim == c.dim - 1:
                    facets[c.id].append(f)
                    cofacets[f].append(c.id)
        self.facets_of = {k: tuple(sorted(v)) for k, v in facets.items()}
        self.cofacets_of = {k: tuple(sorted(v)) for k, v in cofacets.items()}
        self.cofaces_of = {k: tuple(sorted(v)) for k, v in cofaces.items()}
        self.max_cone_ids = tuple(c.id for c in self.cones if not cofaces[c.id])

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return (f"<Fan{label} n={self.ambient_dim} rays={len(self.rays)} "
                f"cones={len(self.cones)}>")

    @property
    def zero(self) -> Cone:
        return self.cones[0]

    def cone(self, rays: Iterable[int]) -> Cone:
        return self.cones[self.by_rays[frozenset(rays)]]

    def cones_of_dim(self, k: int) -> list[Cone]:
        return [c for c in self.cones if c.dim == k]

    @property
    def dim(self) -> int:
        return max(c.dim for c in self.cones)

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.cones_of_dim(k)) for k in range(self.dim + 1))

    def is_pure(self, k: int | None = None) -> bool:
        k = self.ambient_dim if k is None else k
        return all(self.cones[i].dim == k for i in self.max_cone_ids)

    def closed_faces(self, cone_id: int) -> frozenset[int]:
        """Ids of ``cone_id`` and all its faces."""
        return self.cones[cone_id].face_ids | {cone_id}

    def boundary_of(self, cone_id: int) -> "Subfan":
        return Subfan(self, self.cones[cone_id].face_ids)

    def affine(self, cone_id: int) -> "Subfan":
        return Subfan(self, self.closed_faces(cone_id))

    def ray_vector(self, i: int) -> tuple[int, ...]:
        return self.rays[i]

    def maximal_cone_rays(self) -> list[list[int]]:
        return [list(self.cones[i].ray_ids) for i in self.max_cone_ids]


def _assemble(n: int, rays, geom: _ConeGeometry, conesets: Iterable[frozenset[int]],
              name: str | None) -> Fan:
    allsets: set[frozenset[int]] = set()
    for S in conesets:
        allsets |= geom.faces(S)
    allsets.add(frozenset())
    order = sorted(allsets, key=lambda S: (geom.info(S)[0], sorted(S)))
    ids = {S: i for i, S in enumerate(order)}
    cones = []
    for S in order:
        d, basis, piv, _ = geom.info(S)
        faces = frozenset(ids[F] for F in geom.faces(S) if F != S)
        cones.append(Cone(ids[S], tuple(sorted(S)), d, faces, basis, piv))
    return Fan(n, rays, cones, name=name)


def build_fan(rays: Sequence[Sequence], max_cones: Sequence[Iterable[int]],
              ambient_dim: int | None = None, *, check: bool = True,
              name: str | None = None) -> Fan:
    """Build a fan from rays and (maximal) cones given as ray-index sets.

    Rays are replaced by primitive integer representatives.  With ``check``
    every pair of listed cones is verified to meet in a common face.
    """
    if ambient_dim is None:
        if not rays:
            raise FanError("ambient dimension required for a fan without rays")
        ambient_dim = len(rays[0])
    n = ambient_dim
    prims = []
    for i, r in enumerate(rays):
        if len(r) != n:
            raise FanError(f"ray {i} has length {len(r)}, expected {n}")
        try:
            prims.append(primitive(r))
        except FanError:
            raise FanError(f"ray {i} is zero") from None
    if len(set(prims)) != len(prims):
        raise RedundantGenerator("two rays have the same direction")
    geom = _ConeGeometry(prims, n)
    sets = []
    for k, c in enumerate(max_cones):
        S = frozenset(int(i) for i in c)
        for i in S:
            if not 0 <= i < len(prims):
                raise FanError(f"cone {k} refers to missing ray {i}")
        try:
            geom.faces(S)
        except FanError as exc:
            raise type(exc)(f"cone {k}: {exc}") from None
        sets.append(S)
    used = set().union(*sets) if sets else set()
    if check:
        if used != set(range(len(prims))):
            raise FanError(f"rays {sorted(set(range(len(prims))) - used)} lie in no cone")
        for a, b in combinations(range(len(sets)), 2):
            _check_pair(geom, sets[a], sets[b], a, b)
    return _assemble(n, prims, geom, sets, name)


def _check_pair(geom: _ConeGeometry, A: frozenset, B: frozenset, a: int, b: int):
    S = A & B
    if S not in geom.faces(A) or S not in geom.faces(B):
        raise ConesIntersectBadly(
            f"cones {a} and {b}: common rays {sorted(S)} are not a common face")
    if S == A or S == B:
        return
    eqa, ina = geom.hrep(A)
    eqb, inb = geom.hrep(B)
    n = geom.n
    span_S = [geom.rays[i] for i in sorted(S)]
    rS = linalg.rank(span_S, n) if span_S else 0
    for x in _extreme_rays_of(eqa + eqb, ina + inb, n):
        if linalg.rank(span_S + [x], n) != rS:
            raise ConesIntersectBadly(
                f"cones {a} and {b} overlap beyond their common face {sorted(S)}")


def is_simplicial(c: Cone) -> bool:
    return len(c.ray_ids) == c.dim


def is_simplicial_fan(F: Fan) -> bool:
    return all(is_simplicial(c) for c in F.cones)


@dataclass(frozen=True)
class Subfan:
    parent: Fan
    cone_ids: frozenset[int]

    def __post_init__(self):
        ids = frozenset(self.cone_ids)
        object.__setattr__(self, "cone_ids", ids)
        for i in ids:
            if not self.parent.cones[i].face_ids <= ids:
                raise FanError(f"subfan is not closed under faces at cone {i}")

    def __contains__(self, cone_id: int) -> bool:
        return cone_id in self.cone_ids

    def __len__(self) -> int:
        return len(self.cone_ids)

    def __iter__(self):
        return iter(sorted(self.cone_ids))

    @property
    def is_empty(self) -> bool:
        return not self.cone_ids

    @property
    def max_cone_ids(self) -> tuple[int, ...]:
        P = self.parent
        return tuple(i for i in sorted(self.cone_ids)
                     if not any(j in self.cone_ids for j in P.cofaces_of[i]))

    def to_fan(self) -> Fan:
        """The subfan as a standalone fan on the rays it uses (renumbered)."""
        P = self.parent
        used = sorted({r for i in self.cone_ids for r in P.cones[i].ray_ids})
        remap = {r: k for k, r in enumerate(used)}
        rays = [P.rays[r] for r in used]
        cones = [[remap[r] for r in P.cones[i].ray_ids] for i in self.max_cone_ids]
        return build_fan(rays, cones, P.ambient_dim, check=False, name=P.name)


def _walls(F: Fan) -> dict[int, int]:
    n = F.ambient_dim
    return {c.id: sum(1 for j in F.cofacets_of[c.id] if F.cones[j].dim == n)
            for c in F.cones_of_dim(n - 1)}


def is_complete(F: Fan) -> bool:
    """Purely n-dimensional with every wall in exactly two n-cones."""
    if not F.is_pure():
        return False
    return all(k == 2 for k in _walls(F).values())


def boundary_subfan(F: Fan) -> Subfan:
    """Face closure of the walls lying in exactly one n-cone.

    Empty (no cones at all, not even the zero cone) exactly when ``F`` is
    complete, so relative constructions over complete fans impose nothing.
    """
    if not F.is_pure():
        raise NotPure("boundary subfan requires a purely n-dimensional fan")
    ids: set[int] = set()
    for w, k in _walls(F).items():
        if k == 1:
            ids |= F.closed_faces(w)
    return Subfan(F, frozenset(ids))


# ---------------------------------------------------------------------------
# projection fans


@dataclass(frozen=True)
class ProjectionData:
    """Data of ``V_sigma -> V_sigma / L`` for L through an interior point.

    Coordinates on V_sigma are ``Cone.coords``.  ``T`` is the coordinate
    functional ``u -> u[split] / r[split]`` (so T(r) = 1); the complement it
    vanishes on is spanned by the other coordinate axes, which also give the
    coordinates on the quotient.
    """

    cone_id: int
    interior_point: tuple[Fraction, ...]
    split: int
    ray_map: dict[int, int]
    scale: dict[int, Fraction]
    T_values: dict[int, Fraction]
    cone_map: dict[int, int]

    def psi_on_rays(self) -> dict[int, Fraction]:
        """Values of the piecewise linear ``T o (pi|boundary)^-1`` on the
        primitive rays of the projection fan."""
        return {self.ray_map[r]: self.scale[self.ray_map[r]] * t
                for r, t in self.T_values.items()}


def projection_fan(F: Fan, sigma: Cone | int) -> tuple[Fan, ProjectionData]:
    """The complete fan of images of proper faces of sigma in V_sigma / L."""
    if isinstance(sigma, int):
        sigma = F.cones[sigma]
    if sigma.dim == 0:
        raise ZeroCone("projection fan of the zero cone is undefined")
    d = sigma.dim
    rids = sigma.ray_ids
    u = {r: sigma.coords(F.rays[r]) for r in rids}
    rp = tuple(sum((u[r][k] for r in rids), Fraction(0)) for k in range(d))
    split = next(k for k in range(d) if rp[k] != 0)
    T = {r: u[r][split] / rp[split] for r in rids}
    images = {}
    scale = {}
    for idx, r in enumerate(rids):
        w = [u[r][k] - T[r] * rp[k] for k in range(d) if k != split]
        prim = primitive(w) if d > 1 else ()
        if d > 1:
            nz = next(k for k in range(d - 1) if w[k] != 0)
            scale[idx] = Fraction(prim[nz]) / w[nz]
        else:
            scale[idx] = Fraction(1)
        images[idx] = prim
    ray_map = {r: idx for idx, r in enumerate(rids)}
    facets = [[ray_map[r] for r in F.cones[f].ray_ids] for f in F.facets_of[sigma.id]]
    if d == 1:
        lam = _assemble(0, [], _ConeGeometry([], 0), [frozenset()], name=None)
    else:
        rays = [images[i] for i in range(len(rids))]
        lam = build_fan(rays, facets, d - 1, check=False)
    if not is_complete(lam):
        raise FanError(f"projection fan of cone {sigma.id} is not complete")
    cone_map = {}
    for f in sigma.face_ids:
        c = F.cones[f]
        key = frozenset(ray_map[r] for r in c.ray_ids)
        img = lam.cones[lam.by_rays[key]]
        if img.dim != c.dim:
            raise FanError("projection does not preserve face dimensions")
        cone_map[f] = img.id
    if len(cone_map) != len(lam.cones):
        raise FanError("projection fan is not isomorphic to the boundary")
    data = ProjectionData(sigma.id, rp, split, ray_map, scale, T, cone_map)
    return lam, data


# ---------------------------------------------------------------------------
# refinement


@dataclass(frozen=True)
class Refinement:
    """A simplicial refinement with its carrier map (fine cone -> base cone)."""

    base: Fan
    fan: Fan
    carrier: dict[int, int]

    def __iter__(self):
        yield self.fan
        yield self.carrier

    def cones_over(self, base_ids: Iterable[int]) -> frozenset[int]:
        ids = set(base_ids)
        return frozenset(c for c, b in self.carrier.items() if b in ids)

    def is_identity(self) -> bool:
        return self.fan is self.base


def _simplicial_fan(n: int, rays, simplices: Iterable[frozenset[int]], name=None) -> Fan:
    geom = _ConeGeometry(rays, n)
    faces: dict[frozenset, frozenset] = {}
    for S in simplices:
        for k in range(len(S) + 1):
            for sub in combinations(sorted(S), k):
                T = frozenset(sub)
                if T not in faces:
                    faces[T] = frozenset(frozenset(x) for j in range(len(T) + 1)
                                         for x in combinations(sorted(T), j))
    geom._faces.update(faces)
    return _assemble(n, rays, geom, faces.keys(), name)


def simplicial_refinement(F: Fan) -> Refinement:
    """Pulling triangulation at the lowest-index ray, recursively on faces."""
    if is_simplicial_fan(F):
        return Refinement(F, F, {c.id: c.id for c in F.cones})
    memo: dict[int, list[frozenset[int]]] = {}

    def pull(cid: int) -> list[frozenset[int]]:
        if cid in memo:
            return memo[cid]
        c = F.cones[cid]
        if is_simplicial(c):
            out = [c.rayset]
        else:
            rho = c.ray_ids[0]
            out = []
            for f in F.facets_of[cid]:
                if rho not in F.cones[f].rayset:
                    out.extend(S | {rho} for S in pull(f))
        memo[cid] = out
        return out

    simplices = [S for m in F.max_cone_ids for S in pull(m)]
    fine = _simplicial_fan(F.ambient_dim, F.rays, simplices, name=F.name)
    carrier = {c.id: _carrier(F, c.rayset) for c in fine.cones}
    return Refinement(F, fine, carrier)


def _carrier(F: Fan, rays: frozenset[int]) -> int:
    best = None
    for c in F.cones:
        if rays <= c.rayset and (best is None or c.dim < F.cones[best].dim):
            best = c.id
    if best is None:
        raise FanError(f"rays {sorted(rays)} lie in no cone of the fan")
    return best


def refinement_from(base: Fan, fine: Fan) -> Refinement:
    """Carrier map for an arbitrary simplicial ``fine`` on the same rays."""
    if base.rays != fine.rays:
        raise NotARefinement("refinement must use the rays of the base fan")
    carrier = {}
    for c in fine.cones:
        try:
            b = _carrier(base, c.rayset)
        except FanError:
            raise NotARefinement(f"cone {c.ray_ids} lies in no base cone") from None
        if base.cones[b].dim < c.dim:
            raise NotARefinement(f"cone {c.ray_ids} has no carrier of its dimension")
        carrier[c.id] = b
    covered = {carrier[c.id] for c in fine.cones if c.dim == base.cones[carrier[c.id]].dim}
    if covered != {c.id for c in base.cones}:
        raise NotARefinement("some base cone is not covered by fine cones of its dimension")
    return Refinement(base, fine, carrier)


# ---------------------------------------------------------------------------
# orientations


@dataclass(frozen=True)
class OrientationData:
    """Per-cone ordered bases and facet incidence signs ``[sigma : tau]``."""

    bases: dict[int, tuple[Vector, ...]]
    signs: dict[tuple[int, int], int] = field(default_factory=dict)

    def sign(self, sigma: int, tau: int) -> int:
        return self.signs[(sigma, tau)]


def orientation_data(F: Fan) -> OrientationData:
    bases = {c.id: c.span_basis for c in F.cones}
    signs = {}
    for c in F.cones:
        for f in F.facets_of[c.id]:
            tau = F.cones[f]
            w = next(r for r in c.ray_ids if r not in tau.rayset)
            cols = [c.coords(F.rays[w])] + [c.coords(b) for b in tau.span_basis]
            # rows of the transpose have the same determinant
            dt = linalg.det(cols)
            signs[(c.id, f)] = 1 if dt > 0 else -1
    return OrientationData(bases, signs)
