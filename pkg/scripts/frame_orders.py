"""Tabulate frame orders over every cycle type of S_n, n <= 8."""

import argparse
from collections import defaultdict

from asmgroups import Permutation
from asmgroups.constructions import build_frame
from asmgroups.order import detect_order


def partitions(n, largest=None):
    largest = largest or n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def perm_of_type(parts):
    imgs, start = [], 1
    for k in parts:
        imgs += [start + (i + 1) % k for i in range(k)]
        start += k
    return Permutation(tuple(imgs))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()
    bad = defaultdict(list)
    for n in range(1, args.max_n + 1):
        for parts in partitions(n):
            p = perm_of_type(parts)
            k = p.order()
            a = detect_order(build_frame(p, "A").asm).order
            b = detect_order(build_frame(p, "B").asm).order
            print(f"n={n} type={parts} ord(P)={k} A={a} B={b}")
            if a != k or b != (2 * k if k % 2 else k):
                bad[n].append(parts)
    print("mismatches:", dict(bad) or "none")


if __name__ == "__main__":
    main()
