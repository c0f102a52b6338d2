"""Multiplication by a strictly convex piecewise linear function on residues.

For a cone ``sigma`` of dimension ``m + 1`` let ``G`` be the minimal
extension sheaf on the projection fan and ``psi`` the piecewise linear
function transported from the functional ``T``.  The maps
``G(Lambda)^q / m -> G(Lambda)^(q+1) / m`` are expected to be injective for
``2q <= m - 1`` and surjective for ``2q >= m - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import linalg
from ..fan import Fan, projection_fan
from .sheaf import build_minimal_extension, check_V, default_degree_bound

__all__ = ["LefschetzReport", "hard_lefschetz_check", "vanishing_holds"]


@dataclass
class LefschetzReport:
    cone: int
    m: int
    degree_bound: int
    residue_dims: list[int]
    ranks: list[int]
    vanishing: bool | None
    injective: dict[int, bool] = field(default_factory=dict)
    surjective: dict[int, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.injective.values()) and all(self.surjective.values())

    def ranks_by_degree(self) -> dict[int, int]:
        """Source t-degree -> rank."""
        return {2 * q: r for q, r in enumerate(self.ranks)}

    def to_json(self) -> dict:
        return {"cone": self.cone, "m": self.m, "degree_bound": self.degree_bound,
                "residue_dims": self.residue_dims,
                "ranks": {str(k): v for k, v in self.ranks_by_degree().items()},
                "injective": {str(k): v for k, v in self.injective.items()},
                "surjective": {str(k): v for k, v in self.surjective.items()},
                "vanishing": self.vanishing, "passed": self.passed}


def vanishing_holds(F: Fan, sigma: int) -> bool:
    """Build the minimal extension sheaf on the affine fan of ``sigma`` and test V."""
    sub = F.affine(sigma).to_fan()
    top = sub.max_cone_ids[0]
    return check_V(build_minimal_extension(sub), top)


def hard_lefschetz_check(F: Fan, sigma: int, degree_bound: int | None = None, *,
                         check_vanishing: bool = True) -> LefschetzReport:
    cone = F.cones[sigma]
    if cone.dim < 1:
        raise ValueError("the cone must be nonzero")
    lam, pd = projection_fan(F, cone)
    m = lam.ambient_dim
    D = default_degree_bound(lam) if degree_bound is None else degree_bound
    G = build_minimal_extension(lam, D)
    psi = pd.psi_on_rays()
    fine = G.refinement.fan
    # the pulling refinement keeps the rays of the projection fan
    form = {r: linalg.to_fmpq(psi[r]) for r in range(len(fine.rays)) if psi.get(r, 0) != 0}
    all_ids = frozenset(c.id for c in lam.cones)
    res = [G.residue(all_ids, q) for q in range(G.qmax + 1)]
    dims = [r.dim for r in res]
    while dims and dims[-1] == 0:
        dims.pop()
    ranks = []
    for q in range(len(dims) - 1):
        cols = [res[q + 1].class_coords(G.multiply(row, all_ids, q, form))
                for row in res[q].rep_rows()]
        ranks.append(linalg.rank(cols, dims[q + 1]) if cols and dims[q + 1] else 0)
    vanish = vanishing_holds(F, sigma) if check_vanishing else None
    rep = LefschetzReport(sigma, m, D, dims, ranks, vanish)
    for q, r in enumerate(ranks):
        if 2 * q <= m - 1:
            rep.injective[2 * q] = r == dims[q]
        if 2 * q >= m - 1:
            rep.surjective[2 * q] = r == dims[q + 1]
    return rep

