#!/usr/bin/env python3
"""Growth of the non-terminating tower on the s^2/t^3 two-loop fixture.

Prints the r-sequence next to the count of words over {s, t} avoiding the
factors ss and ttt; the two must agree level by level (the deformation base
is a quotient of the free algebra on the two loop classes).

Usage: python scripts/st_growth.py [--steps N] [--guard D]
"""

import argparse

from ncdef.problems import load_problem
from ncdef.tower import run_tower


def word_counts(n):
    states = {("", 0): 1}
    counts = [1]
    for _ in range(n):
        nxt = {}
        for (last, run), c in states.items():
            for letter, cap in (("s", 1), ("t", 2)):
                if letter == last and run >= cap:
                    continue
                key = (letter, run + 1 if letter == last else 1)
                nxt[key] = nxt.get(key, 0) + c
        states = nxt
        counts.append(sum(states.values()))
    return counts


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--steps", type=int, default=10)
    ap.add_argument("--guard", type=int, default=2000)
    args = ap.parse_args()

    problem = load_problem("fx_st")
    tr = run_tower(problem.collection(), max_steps=args.steps,
                   dimension_guard=args.guard)
    rs = tr.state.r_sequence
    ws = word_counts(len(rs) - 1)
    print(f"status: {tr.status} ({tr.cutoff_reason})")
    print(f"{'m':>3} {'r_m':>6} {'words':>6}")
    for m, (r, w) in enumerate(zip(rs, ws)):
        mark = "" if r == w else "   <- MISMATCH"
        print(f"{m:>3} {r:>6} {w:>6}{mark}")
    print(f"total dim F^({len(rs) - 1}) = {tr.state.total_dim}")


if __name__ == "__main__":
    main()
