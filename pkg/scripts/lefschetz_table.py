"""Hard Lefschetz ranks on every non-simplicial maximal cone of the corpus."""

from fanih.examples import EXAMPLES, example_fan
from fanih.oracle.lefschetz import hard_lefschetz_check


def main():
    for name in EXAMPLES:
        F = example_fan(name)
        for cid in F.max_cone_ids:
            c = F.cones[cid]
            if len(c.ray_ids) == c.dim:
                continue
            rep = hard_lefschetz_check(F, cid)
            print(f"{name:18} cone {cid:3d}  dims {rep.residue_dims}  ranks {rep.ranks}  "
                  f"{'ok' if rep.passed else 'FAIL'}")


if __name__ == "__main__":
    main()
