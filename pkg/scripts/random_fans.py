"""Compare recursion and oracle on random complete simplicial fans."""

import argparse

from fanih.examples import random_complete_fan
from fanih.oracle.sheaf import build_minimal_extension, residue_dims
from fanih.recursion import global_poly


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    bad = 0
    for i in range(args.count):
        F = random_complete_fan(2 + i % 2, args.seed + i)
        n = F.ambient_dim
        rec = global_poly(F)
        orc = residue_dims(build_minimal_extension(F)).truncate_below(2 * n + 1)
        bad += rec != orc
        print(f"{F.name:16} f={F.f_vector()}  recursion {rec}  oracle {orc}")
    print(f"{bad} mismatches")


if __name__ == "__main__":
    main()
