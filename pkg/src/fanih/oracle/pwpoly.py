"""Piecewise polynomial functions on simplicial fans.

On a simplicial cone with rays ``v_1..v_k`` use the coordinates ``x_i``
dual to the rays.  A piecewise polynomial on a simplicial fan is then a
linear combination of monomials ``x^a`` whose support is a cone of the fan
(the face ring), and restriction to a subfan drops every monomial whose
support leaves it.  A monomial is stored as the sorted tuple of its ray
ids with repetition, ``x_0^2 x_3 -> (0, 0, 3)``.

:func:`pw_poly_basis` solves the gluing conditions directly, cone by cone,
and is used to audit the face-ring description.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence

from flint import fmpq

from .. import linalg
from ..fan import Fan, Subfan, is_simplicial_fan

Monomial = tuple[int, ...]
Key = tuple[int, Monomial]  # (ambient component, monomial)
Faces = frozenset  # frozenset[frozenset[int]]

__all__ = [
    "Monomial",
    "Key",
    "monomials_with_support",
    "monomials_on",
    "times_ray",
    "linear_form",
    "PwPolyBasis",
    "pw_poly_basis",
]


@lru_cache(maxsize=None)
def monomials_with_support(face: tuple[int, ...], k: int) -> tuple[Monomial, ...]:
    """Monomials of degree ``k`` whose support is exactly ``face``."""
    s = len(face)
    if k < s or (s == 0 and k > 0):
        return ()
    out = []
    for extra in combinations_with_replacement(face, k - s):
        out.append(tuple(sorted(face + extra)))
    return tuple(sorted(out))


def monomials_on(faces: Iterable[frozenset[int]], k: int) -> list[Monomial]:
    """All degree-``k`` monomials supported on some face in ``faces``."""
    out: list[Monomial] = []
    for f in faces:
        out.extend(monomials_with_support(tuple(sorted(f)), k))
    out.sort()
    return out


def times_ray(m: Monomial, r: int, faces: Faces) -> Monomial | None:
    """``x_r * x^m`` restricted to ``faces`` (``None`` when it vanishes)."""
    new = list(m)
    insort(new, r)
    new_t = tuple(new)
    if frozenset(new_t) in faces:
        return new_t
    return None


def linear_form(rays: Sequence[Sequence[int]], functional: Sequence, ray_ids: Iterable[int]) -> dict[int, fmpq]:
    """Face-ring expression ``sum_r functional(v_r) x_r`` of a linear function."""
    out = {}
    for r in ray_ids:
        val = sum((linalg.to_fmpq(a) * b for a, b in zip(functional, rays[r])), fmpq(0))
        if val != 0:
            out[r] = val
    return out


# ---------------------------------------------------------------------------
# independent gluing computation


@dataclass(frozen=True)
class PwPolyBasis:
    """Degree-``q`` piecewise polynomials on a simplicial (sub)fan.

    Each basis section is a tuple of per-maximal-cone coefficient vectors
    over ``cone_monomials[c]`` (all degree-q monomials in the dual
    coordinates of cone ``c``), agreeing on shared faces.
    """

    fan: Fan
    cone_ids: tuple[int, ...]
    degree: int
    cone_monomials: dict[int, tuple[Monomial, ...]]
    basis: tuple[tuple[tuple[fmpq, ...], ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def face_ring_monomials(self) -> list[Monomial]:
        faces = frozenset(self.fan.cones[i].rayset for i in self._all_ids())
        return monomials_on(faces, self.degree)

    def _all_ids(self) -> set[int]:
        out = set()
        for c in self.cone_ids:
            out |= self.fan.closed_faces(c)
        return out


def pw_poly_basis(fan: Fan | Subfan, q: int) -> PwPolyBasis:
    """Solve the compatibility system for degree-``q`` piecewise polynomials.

    Polynomials on each maximal cone are written in that cone's dual
    coordinates; two cones must agree on every monomial supported in their
    common face.
    """
    if isinstance(fan, Subfan):
        parent, maxes = fan.parent, fan.max_cone_ids
    else:
        parent, maxes = fan, fan.max_cone_ids
    if not is_simplicial_fan(parent):
        raise ValueError("piecewise polynomial bases need a simplicial fan")
    cone_monos = {c: tuple(sorted(combinations_with_replacement(parent.cones[c].ray_ids, q)))
                  for c in maxes}
    offsets = {}
    total = 0
    for c in maxes:
        offsets[c] = total
        total += len(cone_monos[c])
    index = {c: {m: offsets[c] + j for j, m in enumerate(cone_monos[c])} for c in maxes}
    rows = []
    for a, b in combinations(maxes, 2):
        common = parent.cones[a].rayset & parent.cones[b].rayset
        for m in cone_monos[a]:
            if set(m) <= common:
                row = [0] * total
                row[index[a][m]] = 1
                row[index[b][m]] = -1
                rows.append(row)
    ker = linalg.nullspace(rows, total)
    ker, _ = linalg.echelon(ker, total)
    basis = tuple(
        tuple(tuple(v[offsets[c]:offsets[c] + len(cone_monos[c])]) for c in maxes)
        for v in ker)
    return PwPolyBasis(parent, tuple(maxes), q, cone_monos, basis)
