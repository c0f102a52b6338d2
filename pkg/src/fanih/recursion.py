"""Combinatorial intersection cohomology polynomials of fans.

Local polynomials come from the recursion through projection fans; global
and relative polynomials from summing ``(t^2 - 1)^(n - dim) P_sigma`` over
interior (resp. all) cones.  Everything here is integer polynomial
arithmetic; the linear-algebra cross-check lives in :mod:`fanih.oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fan import Fan, Subfan, boundary_subfan, is_complete, is_simplicial, projection_fan
from .poly import ONE, T2, PoincarePoly

__all__ = [
    "NotQuasiConvexHint",
    "LocalPolyTable",
    "local_poly",
    "local_poly_table",
    "global_poly",
    "syntactically_quasi_convex",
    "check_duality",
    "degree_bound_audit",
    "DualityReport",
    "AuditReport",
]

_MINUS = ONE - T2  # 1 - t^2
_T2M1 = T2 - ONE  # t^2 - 1


class NotQuasiConvexHint(ValueError):
    """Neither completeness nor full-dimensional affineness holds."""


@dataclass
class LocalPolyTable:
    """Memo of local polynomials ``cone id -> P_sigma`` for one fan."""

    fan: Fan
    table: dict[int, PoincarePoly] = field(default_factory=dict)

    def __getitem__(self, cone_id: int) -> PoincarePoly:
        if cone_id not in self.table:
            self.table[cone_id] = _local(self.fan, cone_id)
        return self.table[cone_id]

    def fill(self) -> "LocalPolyTable":
        for c in sorted(self.fan.cones, key=lambda c: c.dim):
            self[c.id]
        return self


def _local(F: Fan, cid: int) -> PoincarePoly:
    c = F.cones[cid]
    if is_simplicial(c):
        return ONE
    lam, _ = projection_fan(F, c)
    P_lam = global_poly(lam)
    return (_MINUS * P_lam).truncate_below(c.dim)


def local_poly(F: Fan, sigma: int) -> PoincarePoly:
    """Local polynomial of ``sigma``: 1 if simplicial, else
    ``truncate_below((1 - t^2) P_Lambda, dim sigma)``."""
    return _local(F, sigma)


def local_poly_table(F: Fan) -> LocalPolyTable:
    return LocalPolyTable(F).fill()


def syntactically_quasi_convex(F: Fan) -> bool:
    """Complete, or affine on a single full-dimensional cone."""
    if is_complete(F):
        return True
    return len(F.max_cone_ids) == 1 and F.cones[F.max_cone_ids[0]].dim == F.ambient_dim


def global_poly(F: Fan | Subfan, relative: bool = False, *,
                assume_quasi_convex: bool = False,
                table: LocalPolyTable | None = None) -> PoincarePoly:
    """Global (``relative=False``) or relative Poincare polynomial.

    Refuses fans that are not syntactically quasi-convex unless
    ``assume_quasi_convex`` is set (e.g. after an oracle verdict).
    """
    if isinstance(F, Subfan):
        F = F.to_fan()
    if not assume_quasi_convex and not syntactically_quasi_convex(F):
        raise NotQuasiConvexHint(
            "fan is neither complete nor affine full-dimensional; "
            "pass assume_quasi_convex=True to override")
    if table is None:
        table = LocalPolyTable(F)
    n = F.ambient_dim
    skip = frozenset() if relative else boundary_subfan(F).cone_ids
    total = PoincarePoly()
    for c in F.cones:
        if c.id in skip:
            continue
        total = total + _T2M1 ** (n - c.dim) * table[c.id]
    return total


@dataclass
class DualityReport:
    holds: bool
    absolute: PoincarePoly
    relative: PoincarePoly
    dual_of_absolute: PoincarePoly

    def to_json(self) -> dict:
        return {"holds": self.holds, "absolute": self.absolute.to_json(),
                "relative": self.relative.to_json(),
                "dual_of_absolute": self.dual_of_absolute.to_json()}


def check_duality(F: Fan, *, assume_quasi_convex: bool = False) -> DualityReport:
    table = LocalPolyTable(F)
    P = global_poly(F, False, assume_quasi_convex=assume_quasi_convex, table=table)
    R = global_poly(F, True, assume_quasi_convex=assume_quasi_convex, table=table)
    dual = P.duality_transform(F.ambient_dim) if P.degree <= 2 * F.ambient_dim else PoincarePoly()
    return DualityReport(R == dual, P, R, dual)


@dataclass
class AuditReport:
    monic_relative: bool
    complete_iff_top_degree: bool
    local_bounds: bool
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.monic_relative and self.complete_iff_top_degree and self.local_bounds

    def to_json(self) -> dict:
        return {"i_relative_monic_deg_2n": self.monic_relative,
                "ii_top_degree_iff_complete": self.complete_iff_top_degree,
                "iii_local_degree_bounds": self.local_bounds,
                "failures": self.failures, "passed": self.passed}


def degree_bound_audit(F: Fan, *, assume_quasi_convex: bool = False) -> AuditReport:
    n = F.ambient_dim
    table = local_poly_table(F)
    P = global_poly(F, False, assume_quasi_convex=assume_quasi_convex, table=table)
    R = global_poly(F, True, assume_quasi_convex=assume_quasi_convex, table=table)
    fails = []
    i_ok = R.is_monic() and R.degree == 2 * n
    if not i_ok:
        fails.append(f"relative polynomial {R} is not monic of degree {2 * n}")
    ii_ok = (P.degree == 2 * n) == is_complete(F) and P.degree <= 2 * n
    if not ii_ok:
        fails.append(f"deg P = {P.degree} inconsistent with completeness={is_complete(F)}")
    iii_ok = True
    for c in F.cones:
        p = table[c.id]
        if c.dim > 0 and p.degree > 2 * c.dim - 2:
            iii_ok = False
            fails.append(f"cone {c.id}: deg P_sigma = {p.degree} > {2 * c.dim - 2}")
        if not p.is_nonnegative():
            iii_ok = False
            fails.append(f"cone {c.id}: negative coefficient in {p}")
    return AuditReport(i_ok, ii_ok, iii_ok, fails)
