"""Verify every bundled fan and print a one-line summary for each."""

import time

from fanih.examples import EXAMPLES, example_fan
from fanih.oracle.cochain import exactness_table, freeness_report, quasi_convex
from fanih.oracle.sheaf import audit_axioms, build_minimal_extension, residue_dims
from fanih.recursion import global_poly


def main():
    print(f"{'fan':18} {'n':>2} {'axioms':>6} {'qc':>14} {'exact':>5} {'free':>5}  P")
    for name in EXAMPLES:
        t = time.perf_counter()
        F = example_fan(name)
        E = build_minimal_extension(F)
        ax = audit_axioms(E)
        qc = quasi_convex(E).value if F.is_pure() else "-"
        exact = all(not any(v) for v in exactness_table(E).values()) if F.is_pure() else None
        free = freeness_report(E).absolute
        P = global_poly(F, assume_quasi_convex=True) if qc not in ("-", "No_oracle") \
            else residue_dims(E).truncate_below(2 * F.ambient_dim + 1)
        print(f"{name:18} {F.ambient_dim:>2} {str(ax.ok and ax.vanishing_ok):>6} {qc:>14} "
              f"{str(exact):>5} {str(free):>5}  {P}   ({time.perf_counter() - t:.2f}s)")


if __name__ == "__main__":
    main()
