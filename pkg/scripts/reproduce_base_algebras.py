#!/usr/bin/env python3
"""Run every shipped fixture end to end and print the base-algebra summary.

Usage: python scripts/reproduce_base_algebras.py [--max-steps N]
"""

import argparse

from ncdef.artin import (dimension_signature, end_algebra,
                         socle_and_gorenstein, spherical_permutation,
                         verify_pointed_artin)
from ncdef.problems import load_problem
from ncdef.tower import run_tower

TERMINATING = ("fx_loop2", "fx_cyc2", "fx_aba", "fx_fat3")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-steps", type=int, default=10)
    args = ap.parse_args()

    for name in TERMINATING:
        problem = load_problem(name)
        col = problem.collection()
        tr = run_tower(col, max_steps=args.max_steps)
        ea = end_algebra(tr, col)
        a = ea.algebra
        art = verify_pointed_artin(a)
        sig = dimension_signature(a)
        soc = socle_and_gorenstein(a)
        sph = spherical_permutation(tr, col)
        print(f"== {name} ==")
        print(f"  tower: terminated at N={tr.terminated_level}, "
              f"r-sequence {tuple(tr.state.r_sequence)}")
        print(f"  algebra: dim {a.dim}, commutative={a.is_commutative()}, "
              f"nilpotency {art.nilpotency}")
        for m, layer in enumerate(sig.grid):
            print(f"  dim(e_j M^{m} e_i): {layer}")
        print(f"  Gorenstein: {soc.gorenstein} (socle colors {soc.color_dims})")
        print(f"  spherical permutation: {sph.permutation}")
        print()

    problem = load_problem("fx_st")
    tr = run_tower(problem.collection(), max_steps=args.max_steps)
    print("== fx_st ==")
    print(f"  tower: {tr.status} ({tr.cutoff_reason}), "
          f"r-sequence {tuple(tr.state.r_sequence)}, "
          f"total dim {tr.state.total_dim}")


if __name__ == "__main__":
    main()
