"""Smallest n for which SA_n holds a copy of S_m, by exhaustive search where
feasible, compared with the two explicit constructions."""

import argparse
import math

from asmgroups.constructions import build_symmetric_group_generators, build_symmetric_group_low_rank
from asmgroups.enumeration import group_atlas
from asmgroups.order import closure, fingerprint


def sym_fingerprint(m):
    s, t = build_symmetric_group_generators(m)
    return fingerprint(closure([s.asm, t.asm], max_size=math.factorial(m) + 1))


def search(m, max_n, jobs):
    target = sym_fingerprint(m)
    for n in range(1, max_n + 1):
        for g in group_atlas(n, jobs=jobs).groups:
            # fingerprints separate S_3 and S_4 from every other group of their order
            if fingerprint(g) == target:
                return n
    return None


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=5)
    ap.add_argument("--search-up-to", type=int, default=7)
    ap.add_argument("--jobs", type=int, default=None)
    args = ap.parse_args()

    print("m  search  frame(n+4)  low-rank(4*ceil(m/2)+1)")
    for m in range(1, args.max_m + 1):
        found = search(m, args.search_up_to, args.jobs) if m <= 4 else None
        low = build_symmetric_group_low_rank(m)[0].n
        shown = found if found is not None else f">{args.search_up_to}" if m <= 4 else "-"
        print(f"{m:<2} {shown!s:<7} {m + 4:<11} {low}")


if __name__ == "__main__":
    main()
