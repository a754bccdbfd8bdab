#!/usr/bin/env python3
"""Tabulate the finite Sugihara chains and how each even chain collapses
onto the odd chain one step below.

Example:
    python3 scripts/sugihara_tower.py --max 10
"""

import argparse

from dmm.constructions import homs, make_sugihara
from dmm.filters import classify


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=8)
    args = ap.parse_args()

    for n in range(1, args.max + 1):
        S = make_sugihara(n)
        c = classify(S)
        odd = S.e == S.f
        print(f"S{n}: size {n}, e={S.e}, f={S.f}, "
              f"{'odd' if odd else 'even'}, "
              f"simple={c.simple}, si={c.si}")
        if n % 2 == 0 and n >= 4:
            tgt = make_sugihara(n - 1)
            hs = homs(S, tgt)
            surjs = [h for h in hs if h.surjective]
            print(f"    maps onto S{n - 1}: {len(hs)} hom(s), "
                  f"{len(surjs)} surjection(s)")
            for h in surjs:
                pairs = [(a, b) for a in S.elements for b in S.elements
                         if a < b and h.mapping[a] == h.mapping[b]]
                print(f"    surjection {h.mapping}, identifies {pairs}")


if __name__ == "__main__":
    main()
