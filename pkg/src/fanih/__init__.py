"""Combinatorial intersection cohomology of fans."""

from .fan import Fan, Subfan, build_fan, boundary_subfan, is_complete, projection_fan, simplicial_refinement
from .poly import PoincarePoly
from .recursion import check_duality, global_poly, local_poly

__all__ = [
    "Fan",
    "Subfan",
    "PoincarePoly",
    "build_fan",
    "boundary_subfan",
    "is_complete",
    "projection_fan",
    "simplicial_refinement",
    "local_poly",
    "global_poly",
    "check_duality",
]
