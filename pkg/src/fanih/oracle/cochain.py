"""Cellular cochain complexes of a sheaf on a fan, and what they decide.

``C^k`` is the sum of the stalks at the cones of dimension ``n - k``; the
coboundary restricts to facets with the incidence signs of
:func:`fanih.fan.orientation_data`.  The relative complex drops the cones of
the boundary subfan; the augmented one prepends global sections.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from flint import fmpq_mat

from .. import linalg
from ..fan import Fan, NotPure, boundary_subfan, orientation_data
from ..poly import PoincarePoly
from ..recursion import syntactically_quasi_convex
from .sheaf import SheafRealization, residue_dims, hilbert_dims

__all__ = [
    "Variant",
    "CochainComplexInstance",
    "cochain_complex",
    "cohomology_dims",
    "exactness_table",
    "Verdict",
    "quasi_convex",
    "FreenessReport",
    "freeness_hilbert_check",
    "freeness_report",
]


class Variant(str, enum.Enum):
    ABSOLUTE = "absolute"
    RELATIVE = "relative"
    AUGMENTED = "augmented"


@dataclass
class CochainComplexInstance:
    """Matrices ``delta[i] : C^{k_i} -> C^{k_i + 1}`` in a fixed t-degree.

    ``indices`` lists the cochain positions; the augmented complex starts at
    ``-1`` (global sections).  ``cones[k]`` lists the cones indexing ``C^k``.
    """

    fan: Fan
    sheaf: SheafRealization
    degree: int
    variant: Variant
    indices: list[int]
    dims: list[int]
    cones: dict[int, list[int]]
    delta: list[fmpq_mat]

    def squares_to_zero(self) -> bool:
        return all(linalg.matmul_is_zero(b, a) for a, b in zip(self.delta, self.delta[1:]))

    def ranks(self) -> list[int]:
        return [m.rank() if m.nrows() and m.ncols() else 0 for m in self.delta]

    def cohomology(self) -> list[int]:
        r = self.ranks()
        out = []
        for i, d in enumerate(self.dims):
            out.append(d - (r[i] if i < len(r) else 0) - (r[i - 1] if i > 0 else 0))
        return out

    def is_exact(self) -> bool:
        return not any(self.cohomology())


def _block(F: SheafRealization, sigma: int, tau: int, q: int, sign: int) -> list[list]:
    """Columns: stalk basis at sigma; rows: stalk basis at tau."""
    src = F.stalk(sigma, q)
    dst = F.stalk(tau, q)
    ids, tids = F.closed(sigma), F.closed(tau)
    cols = []
    for row in src.basis:
        r = F.restrict_row(row, ids, tids, q)
        c = dst.coords(r)
        if c is None:
            raise ValueError(f"restriction from cone {sigma} does not land in the stalk at {tau}")
        cols.append([sign * x for x in c])
    return cols


def _assemble(col_blocks: dict[tuple[int, int], list[list]], src: list[int], dst: list[int],
              sdim: dict[int, int], ddim: dict[int, int]) -> fmpq_mat:
    so, off = {}, 0
    for s in src:
        so[s], off = off, off + sdim[s]
    ncols = off
    do, off = {}, 0
    for t in dst:
        do[t], off = off, off + ddim[t]
    nrows = off
    M = fmpq_mat(nrows, ncols)
    for (s, t), cols in col_blocks.items():
        for j, col in enumerate(cols):
            for i, x in enumerate(col):
                if x != 0:
                    M[do[t] + i, so[s] + j] = x
    return M


def cochain_complex(F: SheafRealization, variant: Variant | str = Variant.ABSOLUTE,
                    d: int = 0) -> CochainComplexInstance:
    """Cellular cochain complex of ``F`` in t-degree ``d``."""
    variant = Variant(variant)
    fan = F.fan
    n = fan.ambient_dim
    skip: frozenset[int] = frozenset()
    if variant is not Variant.ABSOLUTE:
        if not fan.is_pure():
            raise NotPure("relative complexes need a purely n-dimensional fan")
        skip = boundary_subfan(fan).cone_ids
    odd = d % 2 == 1
    q = d // 2
    orient = orientation_data(fan)
    cones = {k: [c.id for c in fan.cones_of_dim(n - k) if c.id not in skip] for k in range(n + 1)}
    sdims = {c.id: (0 if odd else F.stalk(c.id, q).dim) for c in fan.cones}
    indices = list(range(n + 1))
    dims = [sum(sdims[c] for c in cones[k]) for k in indices]
    delta = []
    for k in range(n):
        blocks = {}
        if not odd:
            keep = set(cones[k + 1])
            for s in cones[k]:
                for t in fan.facets_of[s]:
                    if t in keep:
                        blocks[(s, t)] = _block(F, s, t, q, orient.sign(s, t))
        delta.append(_assemble(blocks, cones[k], cones[k + 1], sdims, sdims))
    if variant is Variant.AUGMENTED:
        glob = F.sections(frozenset(c.id for c in fan.cones), q) if not odd else None
        gdim = glob.dim if glob is not None else 0
        all_ids = frozenset(c.id for c in fan.cones)
        M = fmpq_mat(dims[0], gdim)
        off = 0
        for s in cones[0]:
            st = F.stalk(s, q) if not odd else None
            for j, row in enumerate(glob.basis if glob is not None else []):
                c = st.coords(F.restrict_row(row, all_ids, F.closed(s), q))
                for i, x in enumerate(c):
                    if x != 0:
                        M[off + i, j] = x
            off += sdims[s]
        delta.insert(0, M)
        indices.insert(0, -1)
        dims.insert(0, gdim)
        cones[-1] = []
    return CochainComplexInstance(fan, F, d, variant, indices, dims, cones, delta)


def cohomology_dims(F: SheafRealization, variant: Variant | str = Variant.ABSOLUTE,
                    d: int = 0) -> list[int]:
    return cochain_complex(F, variant, d).cohomology()


def exactness_table(F: SheafRealization, variant: Variant | str = Variant.AUGMENTED) -> dict[int, list[int]]:
    """t-degree -> cohomology dims, for every even t-degree up to the bound."""
    return {d: cohomology_dims(F, variant, d) for d in range(0, F.degree_bound + 1, 2)}


class Verdict(str, enum.Enum):
    YES_SYNTACTIC = "Yes_syntactic"
    YES_ORACLE = "Yes_oracle"
    NO_ORACLE = "No_oracle"

    @property
    def is_yes(self) -> bool:
        return self is not Verdict.NO_ORACLE


def quasi_convex(F: SheafRealization, *, use_syntax: bool = True) -> Verdict:
    """Complete or full-dimensional affine fans are accepted outright;
    otherwise the augmented relative complex must be exact up to the bound."""
    fan = F.fan
    if not fan.is_pure():
        raise NotPure("quasi-convexity is decided for purely n-dimensional fans")
    if use_syntax and syntactically_quasi_convex(fan):
        return Verdict.YES_SYNTACTIC
    for d in range(0, F.degree_bound + 1, 2):
        if not cochain_complex(F, Variant.AUGMENTED, d).is_exact():
            return Verdict.NO_ORACLE
    return Verdict.YES_ORACLE


@dataclass
class FreenessReport:
    degree_bound: int
    absolute: bool
    relative: bool | None
    hilbert: list[int] = field(default_factory=list)
    expected: list[int] = field(default_factory=list)
    hilbert_relative: list[int] = field(default_factory=list)
    expected_relative: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"degree_bound": self.degree_bound, "absolute": self.absolute,
                "relative": self.relative, "hilbert": self.hilbert, "expected": self.expected,
                "hilbert_relative": self.hilbert_relative,
                "expected_relative": self.expected_relative}


def _expected(res: PoincarePoly, n: int, qmax: int) -> list[int]:
    return [int(x) for x in res.series_div(n, qmax)]


def freeness_report(F: SheafRealization) -> FreenessReport:
    """Compare Hilbert functions with those of free modules on the residues."""
    fan = F.fan
    n = fan.ambient_dim
    h = hilbert_dims(F)
    e = _expected(residue_dims(F), n, F.qmax)
    rep = FreenessReport(F.degree_bound, h == e, None, h, e)
    if fan.is_pure():
        hr = hilbert_dims(F, relative=True)
        er = _expected(residue_dims(F, relative=True), n, F.qmax)
        rep.relative = hr == er
        rep.hilbert_relative, rep.expected_relative = hr, er
    return rep


def freeness_hilbert_check(F: SheafRealization) -> bool:
    """Global sections free (up to the degree bound)."""
    return freeness_report(F).absolute
