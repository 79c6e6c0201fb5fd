"""Classify singular ASMs for n = 1..N and print the order tables.

    python scripts/reproduce_tables.py --max-n 7 --jobs 4 --json tables.json
"""

import argparse
import json
import time

from asmgroups.enumeration import atlas_summary, classify, group_atlas, square_root_census


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--jobs", type=int, default=None)
    ap.add_argument("--atlas", action="store_true", help="also build the group atlas (n <= 7)")
    ap.add_argument("--json", help="write all results here")
    args = ap.parse_args()

    results = {}
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        r = classify(n, args.jobs)
        dt = time.perf_counter() - t0
        row = r.as_dict()
        print(f"n={n}: {r.total_asm_count} ASMs, {r.singular_count} singular, "
              f"orders {dict(r.order_counts)}  ({dt:.1f}s)")
        if n >= 5 and n <= 7:
            roots = square_root_census(n, args.jobs)
            row["square_root_multiplicities"] = sorted(len(v) for v in roots.values())
        if args.atlas and n <= 7:
            atlas = group_atlas(n, jobs=args.jobs)
            row["atlas"] = {"groups": len(atlas.groups), "max_order": atlas.max_order,
                            "by_order": atlas_summary(atlas)}
            print(f"    groups: {len(atlas.groups)}, largest order {atlas.max_order}, "
                  f"{atlas_summary(atlas)}")
        results[str(n)] = row

    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()
