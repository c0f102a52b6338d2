"""Decompose the direct image of the simplicial refinement's sheaf."""

import argparse

from fanih.examples import example_fan
from fanih.fan import simplicial_refinement
from fanih.oracle.decompose import decompose_semisimple
from fanih.oracle.sheaf import build_minimal_extension, direct_image


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=["cone-over-square", "cube-face-fan", "cone-over-cube"])
    args = ap.parse_args()
    for name in args.names:
        F = example_fan(name)
        ref = simplicial_refinement(F)
        dec = decompose_semisimple(direct_image(ref, build_minimal_extension(ref.fan)))
        parts = " + ".join(f"{s.multiplicity}*E_{s.cone}[-{s.shift}]" for s in dec.summands)
        print(f"{name}: {parts}   verified={dec.verified}")


if __name__ == "__main__":
    main()
