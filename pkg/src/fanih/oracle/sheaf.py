"""Sheaves of graded modules on a fan, realized inside piecewise polynomials.

A :class:`SheafRealization` lives inside a direct sum of shifted copies of
the piecewise polynomial sheaf of a fixed simplicial refinement.  Its stalk
at a cone is the submodule generated by homogeneous generator sections
over the refinement of that cone; restriction maps are restriction of
functions.  Sections over a subfan are the piecewise polynomials whose
restriction to each cone lies in the stalk.

Degrees: internally ``q`` is polynomial degree; the t-degree is ``2q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from flint import fmpq

from .. import linalg
from ..fan import Fan, NotARefinement, Refinement, Subfan, boundary_subfan, simplicial_refinement
from ..poly import PoincarePoly
from .pwpoly import Key, linear_form, monomials_on, times_ray

__all__ = [
    "DegreeBoundTooSmall",
    "Space",
    "Generator",
    "Residue",
    "SheafRealization",
    "build_minimal_extension",
    "build_simple_sheaf",
    "direct_image",
    "direct_sum",
    "extend_from_boundary",
    "sections_over",
    "residue_dims",
    "hilbert_dims",
    "check_V",
    "AxiomReport",
    "audit_axioms",
    "default_degree_bound",
]


class DegreeBoundTooSmall(RuntimeError):
    pass


def default_degree_bound(fan: Fan) -> int:
    """t-degree bound ``2n + 2``."""
    return 2 * fan.ambient_dim + 2


@dataclass
class Space:
    """Subspace of the degree slice spanned by ``keys``, in RREF."""

    keys: tuple[Key, ...]
    basis: list
    pivots: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, vec) -> list | None:
        return linalg.coords_in_echelon(vec, self.basis, self.pivots)

    def sections(self) -> list[dict[Key, fmpq]]:
        return [_to_dict(row, self.keys) for row in self.basis]


@dataclass
class Generator:
    degree: int  # q
    section: dict

    @property
    def t_degree(self) -> int:
        return 2 * self.degree


@dataclass
class Residue:
    """``M^q / (m M^(q-1))`` with representatives taken from ``M``'s basis."""

    space: Space
    reps: list[int]
    m_rows: list
    m_pivots: list

    @property
    def dim(self) -> int:
        return len(self.reps)

    def rep_rows(self) -> list:
        return [self.space.basis[i] for i in self.reps]

    def rank_of_images(self, vecs: Sequence) -> int:
        """Rank of the classes of ``vecs`` (rows over ``space.keys``)."""
        n = len(self.space.keys)
        if not vecs:
            return 0
        return linalg.rank(list(self.m_rows) + list(vecs), n) - len(self.m_rows)

    def class_coords(self, vec) -> list:
        """Coordinates of the class of ``vec`` in the basis ``reps``."""
        c = self.space.coords(vec)
        if c is None:
            raise ValueError("vector outside the module")
        red = list(c)
        mc = [[row[p] for p in self.space.pivots] for row in self.m_rows]
        ech, piv = linalg.echelon(mc, self.space.dim)
        for row, p in zip(ech, piv):
            a = red[p]
            if a != 0:
                red = [x - a * y for x, y in zip(red, row)]
        return [red[i] for i in self.reps]


def _to_dict(row, keys) -> dict:
    return {k: a for k, a in zip(keys, row) if a != 0}


def _to_row(section: dict, index: dict) -> list:
    row = [fmpq(0)] * len(index)
    for k, a in section.items():
        row[index[k]] = a
    return row


class SheafRealization:
    """A sheaf of graded modules on ``fan`` realized in piecewise polynomials.

    ``offsets[c]`` is the face-ring degree minus the sheaf degree of ambient
    component ``c``.  ``generators[cone_id]`` are homogeneous generators of
    the stalk over the refinement of that cone.
    """

    def __init__(self, fan: Fan, refinement: Refinement, offsets: Sequence[int],
                 degree_bound: int, kind: str, label: str = ""):
        if refinement.base is not fan:
            raise NotARefinement("refinement is not over this fan")
        self.fan = fan
        self.refinement = refinement
        self.offsets = tuple(offsets)
        self.degree_bound = degree_bound
        self.qmax = degree_bound // 2
        self.kind = kind
        self.label = label
        self.generators: dict[int, list[Generator]] = {}
        self.flags: dict[str, object] = {}
        fine = refinement.fan
        self._forms = [linear_form(fine.rays, [int(i == j) for j in range(fan.ambient_dim)],
                                   range(len(fine.rays)))
                       for i in range(fan.ambient_dim)]
        self._faces: dict[frozenset, frozenset] = {}
        self._keys: dict[tuple, tuple] = {}
        self._table: dict[tuple, list] = {}
        self._stalk: dict[tuple, Space] = {}
        self._ann: dict[tuple, list] = {}
        self._sections: dict[tuple, Space] = {}
        self._residue: dict[tuple, Residue] = {}

    def __repr__(self) -> str:
        return f"<SheafRealization {self.kind} {self.label} on {self.fan!r} D={self.degree_bound}>"

    # -- geometry ---------------------------------------------------------

    def fine_faces(self, base_ids: frozenset[int]) -> frozenset:
        if base_ids not in self._faces:
            fine = self.refinement.fan
            self._faces[base_ids] = frozenset(
                fine.cones[c].rayset for c in self.refinement.cones_over(base_ids))
        return self._faces[base_ids]

    def keys(self, base_ids: frozenset[int], q: int) -> tuple[tuple[Key, ...], dict]:
        ck = (base_ids, q)
        if ck not in self._keys:
            faces = self.fine_faces(base_ids)
            keys = []
            for c, off in enumerate(self.offsets):
                k = q + off
                if k >= 0:
                    keys.extend((c, m) for m in monomials_on(faces, k))
            keys = tuple(keys)
            self._keys[ck] = (keys, {k: i for i, k in enumerate(keys)})
        return self._keys[ck]

    def closed(self, cone_id: int) -> frozenset[int]:
        return self.fan.closed_faces(cone_id)

    def _products(self, base_ids: frozenset[int], q: int) -> list:
        """For each key of degree q: ray -> index of ``x_ray * key`` in degree q+1."""
        ck = (base_ids, q)
        if ck not in self._table:
            faces = self.fine_faces(base_ids)
            src, _ = self.keys(base_ids, q)
            _, dst = self.keys(base_ids, q + 1)
            rays = sorted({r for f in faces for r in f})
            table = []
            for c, m in src:
                entry = {}
                for r in rays:
                    new = times_ray(m, r, faces)
                    if new is not None:
                        entry[r] = dst[(c, new)]
                table.append(entry)
            self._table[ck] = table
        return self._table[ck]

    def multiply(self, row, base_ids: frozenset[int], q: int, form: dict) -> list:
        """Product of a degree-q row with a linear form, as a degree-(q+1) row."""
        table = self._products(base_ids, q)
        keys, _ = self.keys(base_ids, q + 1)
        out = [fmpq(0)] * len(keys)
        for i, a in enumerate(row):
            if a == 0:
                continue
            entry = table[i]
            for r, v in form.items():
                t = entry.get(r)
                if t is not None:
                    out[t] += a * v
        return out

    def m_times(self, rows: Sequence, base_ids: frozenset[int], q: int,
                forms: Sequence[dict] | None = None) -> list:
        forms = self._forms if forms is None else forms
        return [self.multiply(row, base_ids, q, f) for row in rows for f in forms]

    def stalk_forms(self, cone_id: int) -> list[dict]:
        """Coordinate forms restricting to a basis of the dual of the span."""
        return [self._forms[p] for p in self.fan.cones[cone_id].pivots]

    # -- stalks and sections ----------------------------------------------

    def stalk(self, cone_id: int, q: int) -> Space:
        ck = (cone_id, q)
        if ck not in self._stalk:
            ids = self.closed(cone_id)
            keys, index = self.keys(ids, q)
            rows = [_to_row(g.section, index) for g in self.generators.get(cone_id, [])
                    if g.degree == q]
            if q > 0:
                prev = self.stalk(cone_id, q - 1)
                rows += self.m_times(prev.basis, ids, q - 1, self.stalk_forms(cone_id))
            basis, piv = linalg.echelon(rows, len(keys))
            self._stalk[ck] = Space(keys, basis, piv)
        return self._stalk[ck]

    def free_rank_count(self, cone_id: int, q: int) -> int:
        """Dimension the degree-q stalk would have if freely generated."""
        k = self.fan.cones[cone_id].dim
        total = 0
        for g in self.generators.get(cone_id, []):
            e = q - g.degree
            if e >= 0:
                total += comb(e + k - 1, k - 1) if k > 0 else int(e == 0)
        return total

    def _annihilator(self, cone_id: int, q: int) -> list:
        ck = (cone_id, q)
        if ck not in self._ann:
            st = self.stalk(cone_id, q)
            self._ann[ck] = [] if st.dim == len(st.keys) else linalg.annihilator(st.basis, len(st.keys))
        return self._ann[ck]

    def sections(self, base_ids: Iterable[int], q: int,
                 vanish_on: Iterable[int] = ()) -> Space:
        """Degree-q sections over the subfan ``base_ids``, optionally vanishing
        on the subfan ``vanish_on``."""
        ids = frozenset(base_ids)
        van = frozenset(vanish_on)
        ck = (ids, q, van)
        if ck in self._sections:
            return self._sections[ck]
        keys, index = self.keys(ids, q)
        rows = []
        cofaces = self.fan.cofaces_of
        maxes = [i for i in sorted(ids) if not any(j in ids for j in cofaces[i])]
        if len(maxes) == 1 and not van:
            sp = self.stalk(maxes[0], q)
            self._sections[ck] = sp
            return sp
        for s in maxes:
            ann = self._annihilator(s, q)
            if not ann:
                continue
            lkeys, _ = self.keys(self.closed(s), q)
            cols = [index[k] for k in lkeys]
            for a in ann:
                row = [fmpq(0)] * len(keys)
                for j, x in zip(cols, a):
                    row[j] = x
                rows.append(row)
        if van:
            vfaces = self.fine_faces(van)
            for i, (c, m) in enumerate(keys):
                if frozenset(m) in vfaces:
                    row = [fmpq(0)] * len(keys)
                    row[i] = fmpq(1)
                    rows.append(row)
        ns = linalg.nullspace(rows, len(keys))
        basis, piv = linalg.echelon(ns, len(keys))
        sp = Space(keys, basis, piv)
        self._sections[ck] = sp
        return sp

    def residue(self, base_ids: Iterable[int], q: int, vanish_on: Iterable[int] = (),
                *, stalk_of: int | None = None) -> Residue:
        """Degree-q residue classes of sections (or of a stalk)."""
        ids = frozenset(base_ids) if stalk_of is None else self.closed(stalk_of)
        van = frozenset(vanish_on)
        ck = (ids, q, van, stalk_of)
        if ck in self._residue:
            return self._residue[ck]
        if stalk_of is None:
            M = self.sections(ids, q, van)
            prev = self.sections(ids, q - 1, van) if q > 0 else None
        else:
            M = self.stalk(stalk_of, q)
            prev = self.stalk(stalk_of, q - 1) if q > 0 else None
        mrows = self.m_times(prev.basis, ids, q - 1) if prev is not None and prev.dim else []
        mech, mpiv = linalg.echelon(mrows, len(M.keys))
        reps = linalg.complement_in(mech, M.basis, M.pivots)
        res = Residue(M, reps, mech, mpiv)
        self._residue[ck] = res
        return res

    def restrict_row(self, row, from_ids: frozenset[int], to_ids: frozenset[int], q: int) -> list:
        fkeys, _ = self.keys(from_ids, q)
        _, tindex = self.keys(to_ids, q)
        out = [fmpq(0)] * len(tindex)
        for k, a in zip(fkeys, row):
            if a != 0:
                j = tindex.get(k)
                if j is not None:
                    out[j] = a
        return out

    # -- induction ----------------------------------------------------------

    def boundary_generators(self, cone_id: int) -> list[Generator]:
        """Lift a residue basis of the sections over the boundary of a cone."""
        bd = self.fan.cones[cone_id].face_ids
        gens = []
        for q in range(self.qmax + 1):
            res = self.residue(bd, q)
            if res.dim == 0:
                continue
            if q == self.qmax:
                raise DegreeBoundTooSmall(
                    f"cone {cone_id} needs a generator in t-degree {2 * q} = "
                    f"degree bound {self.degree_bound}")
            keys = res.space.keys
            for row in res.rep_rows():
                gens.append(Generator(q, extend_from_boundary(self, _to_dict(row, keys), cone_id)))
        return gens

    def stalk_residue_poly(self, cone_id: int) -> PoincarePoly:
        return PoincarePoly(self.residue((), q, stalk_of=cone_id).dim
                            for q in range(self.qmax + 1))


def _induct(R: SheafRealization, seed) -> SheafRealization:
    for c in sorted(R.fan.cones, key=lambda c: (c.dim, c.id)):
        gens = seed(c)
        R.generators[c.id] = R.boundary_generators(c.id) if gens is None else gens
    return R


def extend_from_boundary(R: SheafRealization, section: dict, cone_id: int) -> dict:
    """Extend a section over the boundary of a cone to the whole cone.

    In face-ring coordinates the boundary monomials are themselves sections
    over the refined cone, so the same expansion is a piecewise polynomial
    extension of the same degree.
    """
    bfaces = R.fine_faces(R.fan.cones[cone_id].face_ids)
    for (_, m) in section:
        if frozenset(m) not in bfaces:
            raise ValueError("section is not supported on the boundary")
    return dict(section)


def _one(offset_comp: int = 0) -> dict:
    return {(offset_comp, ()): fmpq(1)}


def build_minimal_extension(fan: Fan, degree_bound: int | None = None,
                            refinement: Refinement | None = None) -> SheafRealization:
    """Minimal extension sheaf built cone by cone in increasing dimension."""
    D = default_degree_bound(fan) if degree_bound is None else degree_bound
    if D < 2 * fan.ambient_dim + 2:
        raise DegreeBoundTooSmall(f"degree bound must be at least {2 * fan.ambient_dim + 2}")
    ref = simplicial_refinement(fan) if refinement is None else refinement
    R = SheafRealization(fan, ref, (0,), D, "minimal")
    zero = fan.zero.id
    return _induct(R, lambda c: [Generator(0, _one())] if c.id == zero else None)


def _seed_face(ref: Refinement, tau: int) -> tuple[int, ...]:
    fine = ref.fan
    interior = [fine.cones[c].ray_ids for c, b in ref.carrier.items() if b == tau]
    return min(interior, key=lambda r: (len(r), r))


def build_simple_sheaf(fan: Fan, tau: int, degree_bound: int | None = None,
                       refinement: Refinement | None = None) -> SheafRealization:
    """Simple sheaf seeded by the free rank-one module at ``tau``.

    The seed generator is the face-ring monomial of the smallest refinement
    cone interior to ``tau``; it vanishes on the boundary of ``tau``.  The
    ambient is shifted so that this generator sits in degree 0.
    """
    D = default_degree_bound(fan) if degree_bound is None else degree_bound
    ref = simplicial_refinement(fan) if refinement is None else refinement
    face = _seed_face(ref, tau)
    R = SheafRealization(fan, ref, (len(face),), D, "simple", label=f"tau={tau}")
    dt = fan.cones[tau].dim

    def seed(c):
        if c.id == tau:
            return [Generator(0, {(0, face): fmpq(1)})]
        if c.dim <= dt:
            return []
        return None

    R.flags["seed_cone"] = tau
    return _induct(R, seed)


def direct_image(refinement: Refinement, fine_sheaf: SheafRealization) -> SheafRealization:
    """Push forward a sheaf on the refinement to the base fan.

    The stalk at a base cone is the module of sections of ``fine_sheaf`` over
    the refinement of that cone; generators are lifted residue bases.
    """
    if fine_sheaf.fan is not refinement.fan:
        raise NotARefinement("sheaf does not live on the refinement fan")
    if not fine_sheaf.refinement.is_identity():
        raise NotARefinement("fine sheaf must be realized on its own (simplicial) fan")
    base = refinement.base
    R = SheafRealization(base, refinement, fine_sheaf.offsets, fine_sheaf.degree_bound,
                         "direct_image", label=fine_sheaf.kind)
    for c in sorted(base.cones, key=lambda c: (c.dim, c.id)):
        fine_ids = refinement.cones_over(base.closed_faces(c.id))
        gens = []
        for q in range(R.qmax + 1):
            res = fine_sheaf.residue(fine_ids, q)
            if res.dim and q == R.qmax:
                raise DegreeBoundTooSmall(f"cone {c.id} needs generators at the degree bound")
            gens.extend(Generator(q, _to_dict(row, res.space.keys)) for row in res.rep_rows())
        R.generators[c.id] = gens
    return R


def direct_sum(first: SheafRealization, second: SheafRealization,
               shift: int = 0) -> SheafRealization:
    """``first (+) second[-shift]`` on a shared refinement; ``shift`` in t-degrees."""
    if first.fan is not second.fan or first.refinement is not second.refinement:
        raise ValueError("summands must share fan and refinement")
    if shift % 2:
        raise ValueError("shift must be even")
    sq = shift // 2
    k = len(first.offsets)
    offsets = first.offsets + tuple(o - sq for o in second.offsets)
    D = min(first.degree_bound, second.degree_bound)
    R = SheafRealization(first.fan, first.refinement, offsets, D, "sum",
                         label=f"({first.kind}+{second.kind}[-{shift}])")
    for c in first.fan.cones:
        gens = list(first.generators.get(c.id, []))
        for g in second.generators.get(c.id, []):
            if g.degree + sq <= R.qmax:
                gens.append(Generator(g.degree + sq,
                                      {(comp + k, m): a for (comp, m), a in g.section.items()}))
        R.generators[c.id] = gens
    return R


# ---------------------------------------------------------------------------
# public queries (t-degrees)


def _ids(F: SheafRealization, target) -> frozenset[int]:
    if isinstance(target, Subfan):
        return target.cone_ids
    if isinstance(target, Fan):
        return frozenset(c.id for c in target.cones)
    return frozenset(target)


def sections_over(F: SheafRealization, target, d: int, vanish_on=()) -> Space:
    """Degree-``d`` (t-degree) sections over a subfan, cone id, or the fan."""
    if d % 2:
        return Space((), [], [])
    if isinstance(target, int):
        return F.stalk(target, d // 2)
    return F.sections(_ids(F, target), d // 2, _ids(F, vanish_on) if vanish_on else ())


def residue_dims(F: SheafRealization, target=None, *, relative: bool = False) -> PoincarePoly:
    """Residue Poincare polynomial of a stalk (cone id) or of sections.

    ``target=None`` means the whole fan; ``relative`` restricts to sections
    vanishing on the boundary subfan.  Coefficients are computed up to the
    realization's degree bound.
    """
    if isinstance(target, int):
        return F.stalk_residue_poly(target)
    ids = _ids(F, F.fan if target is None else target)
    van = boundary_subfan(F.fan).cone_ids if relative else ()
    return PoincarePoly(F.residue(ids, q, van).dim for q in range(F.qmax + 1))


def hilbert_dims(F: SheafRealization, target=None, *, relative: bool = False) -> list[int]:
    ids = _ids(F, F.fan if target is None else target)
    van = boundary_subfan(F.fan).cone_ids if relative else ()
    return [F.sections(ids, q, van).dim for q in range(F.qmax + 1)]


def check_V(F: SheafRealization, sigma: int) -> bool:
    """Residues of the stalk vanish in t-degrees ``>= dim sigma`` (nonzero cones)."""
    d = F.fan.cones[sigma].dim
    if d == 0:
        return True
    p = F.stalk_residue_poly(sigma)
    return all(p[q] == 0 for q in range(len(p)) if 2 * q >= d)


@dataclass
class AxiomReport:
    degree_bound: int
    normalization: bool
    pointwise_free: dict[int, bool] = field(default_factory=dict)
    local_minimal_extension: dict[int, bool] = field(default_factory=dict)
    restrictions_land: dict[int, bool] = field(default_factory=dict)
    vanishing: dict[int, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.normalization and all(self.pointwise_free.values())
                and all(self.local_minimal_extension.values())
                and all(self.restrictions_land.values()))

    @property
    def vanishing_ok(self) -> bool:
        return all(self.vanishing.values())

    def to_json(self) -> dict:
        return {"degree_bound": self.degree_bound, "N": self.normalization,
                "PF": all(self.pointwise_free.values()),
                "LME": all(self.local_minimal_extension.values()),
                "restrictions": all(self.restrictions_land.values()),
                "V": self.vanishing_ok,
                "failed_cones": sorted(
                    c for c in self.pointwise_free
                    if not (self.pointwise_free[c] and self.local_minimal_extension.get(c, True)
                            and self.restrictions_land.get(c, True)))}


def pointwise_free(F: SheafRealization, cone_id: int) -> bool:
    return all(F.stalk(cone_id, q).dim == F.free_rank_count(cone_id, q)
               for q in range(F.qmax + 1))


def restrictions_land(F: SheafRealization, cone_id: int) -> bool:
    ids = F.closed(cone_id)
    for f in F.fan.facets_of[cone_id]:
        fids = F.closed(f)
        for q in range(F.qmax + 1):
            st, sf = F.stalk(cone_id, q), F.stalk(f, q)
            for row in st.basis:
                if sf.coords(F.restrict_row(row, ids, fids, q)) is None:
                    return False
    return True


def lme_holds(F: SheafRealization, cone_id: int) -> bool:
    """Restriction induces an isomorphism of residue spaces onto the boundary's."""
    ids = F.closed(cone_id)
    bd = F.fan.cones[cone_id].face_ids
    for q in range(F.qmax + 1):
        rs = F.residue((), q, stalk_of=cone_id)
        rb = F.residue(bd, q)
        imgs = [F.restrict_row(r, ids, bd, q) for r in rs.rep_rows()]
        if rs.dim != rb.dim or rb.rank_of_images(imgs) != rs.dim:
            return False
    return True


def audit_axioms(F: SheafRealization) -> AxiomReport:
    zero = F.fan.zero.id
    gens = F.generators.get(zero, [])
    normal = (len(gens) == 1 and gens[0].degree == 0
              and F.stalk(zero, 0).dim == 1
              and all(F.stalk(zero, q).dim == 0 for q in range(1, F.qmax + 1)))
    rep = AxiomReport(F.degree_bound, normal)
    for c in F.fan.cones:
        rep.pointwise_free[c.id] = pointwise_free(F, c.id)
        rep.restrictions_land[c.id] = restrictions_land(F, c.id)
        if c.dim > 0:
            rep.local_minimal_extension[c.id] = lme_holds(F, c.id)
        rep.vanishing[c.id] = check_V(F, c.id)
    return rep
