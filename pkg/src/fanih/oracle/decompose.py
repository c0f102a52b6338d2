"""Splitting a flabby sheaf with free stalks into shifted simple sheaves.

Cones are visited by increasing dimension.  At ``tau`` the new summands in
degree ``l`` are counted by the kernel of the residue restriction
``F_tau / m F_tau -> F(boundary tau) / m F(boundary tau)`` in degree ``l``:
summands seeded below ``tau`` restrict isomorphically on residues, while a
summand seeded at ``tau`` vanishes on the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import linalg
from ..poly import PoincarePoly
from .sheaf import (SheafRealization, build_simple_sheaf, pointwise_free, residue_dims)

__all__ = ["NotFlabby", "NotFreeStalks", "DecompositionSummand", "Decomposition",
           "is_flabby", "decompose_semisimple"]


class NotFlabby(ValueError):
    pass


class NotFreeStalks(ValueError):
    pass


@dataclass(frozen=True)
class DecompositionSummand:
    """``multiplicity`` copies of the simple sheaf at ``cone`` shifted by ``shift`` t-degrees."""

    cone: int
    shift: int
    multiplicity: int

    def to_json(self) -> dict:
        return {"cone": self.cone, "shift": self.shift, "multiplicity": self.multiplicity}


@dataclass
class Decomposition:
    summands: list[DecompositionSummand]
    verified: bool
    mismatches: dict[int, tuple[PoincarePoly, PoincarePoly]]
    degree_bound: int

    def __iter__(self):
        return iter(self.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def as_tuples(self) -> list[tuple[int, int, int]]:
        return [(s.cone, s.shift, s.multiplicity) for s in self.summands]

    def to_json(self) -> dict:
        return {"summands": [s.to_json() for s in self.summands], "verified": self.verified,
                "degree_bound": self.degree_bound,
                "mismatches": {str(c): [a.to_json(), b.to_json()]
                               for c, (a, b) in self.mismatches.items()}}


def is_flabby(F: SheafRealization, cone_id: int) -> bool:
    """Restriction from the stalk onto sections over the boundary is onto."""
    cone = F.fan.cones[cone_id]
    if cone.dim == 0:
        return True
    ids = F.closed(cone_id)
    bd = cone.face_ids
    for q in range(F.qmax + 1):
        target = F.sections(bd, q)
        if target.dim == 0:
            continue
        imgs = [F.restrict_row(r, ids, bd, q) for r in F.stalk(cone_id, q).basis]
        if linalg.rank(imgs, len(target.keys)) != target.dim:
            return False
    return True


def _kernel_dims(F: SheafRealization, cone_id: int) -> list[int]:
    cone = F.fan.cones[cone_id]
    ids = F.closed(cone_id)
    out = []
    for q in range(F.qmax + 1):
        rs = F.residue((), q, stalk_of=cone_id)
        if cone.dim == 0:
            out.append(rs.dim)
            continue
        rb = F.residue(cone.face_ids, q)
        imgs = [F.restrict_row(r, ids, cone.face_ids, q) for r in rs.rep_rows()]
        out.append(rs.dim - rb.rank_of_images(imgs))
    return out


def decompose_semisimple(F: SheafRealization, *, verify: bool = True,
                         check: bool = True) -> Decomposition:
    """Multiplicities of shifted simple sheaves in ``F``.

    With ``verify`` the stalk residue polynomials of the reported summands
    are rebuilt and compared against those of ``F`` at every cone.
    """
    fan = F.fan
    if check:
        for c in fan.cones:
            if not pointwise_free(F, c.id):
                raise NotFreeStalks(f"stalk at cone {c.id} is not free up to t-degree {F.degree_bound}")
            if not is_flabby(F, c.id):
                raise NotFlabby(f"restriction to the boundary of cone {c.id} is not onto")
    summands = []
    for c in sorted(fan.cones, key=lambda c: (c.dim, c.id)):
        for q, n in enumerate(_kernel_dims(F, c.id)):
            if n:
                summands.append(DecompositionSummand(c.id, 2 * q, n))
    mismatches: dict[int, tuple[PoincarePoly, PoincarePoly]] = {}
    if verify:
        simple = {tau: build_simple_sheaf(fan, tau, F.degree_bound, F.refinement)
                  for tau in {s.cone for s in summands}}
        for c in fan.cones:
            want = residue_dims(F, c.id)
            got = PoincarePoly()
            for s in summands:
                got = got + PoincarePoly.monomial(s.shift // 2, s.multiplicity) * simple[s.cone].stalk_residue_poly(c.id)
            got = got.truncate_below(2 * F.qmax + 1)
            if got != want:
                mismatches[c.id] = (got, want)
    return Decomposition(summands, verify and not mismatches, mismatches, F.degree_bound)
