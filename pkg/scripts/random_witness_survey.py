#!/usr/bin/env python3
"""Survey SPA verdicts over random witnesses sigma - c I.

For each dimension pair reports how often the SPA is entangled, whether the
partial-transpose criterion predicts it, and whether one of SPA(W) and
SPA(W^Gamma) is always separable.
"""
import argparse
import json
import time

from spawit.catalog import random_witness
from spawit.spa import spa_witness, theorem3_check, theorem4_check
from spawit.witness import SeeSawOptions


def survey(dims, n, opts):
    counts = dict(samples=n, spa_entangled=0, pt_more_negative=0, biconditional_failures=0,
                  pt_is_witness=0, both_spas_entangled=0)
    for seed in range(n):
        w = random_witness(dims, seed, opts=opts).witness
        entangled = spa_witness(w).verdict.entangled
        violating = theorem3_check(w).violating
        counts["spa_entangled"] += entangled
        counts["pt_more_negative"] += violating
        counts["biconditional_failures"] += entangled != violating
        if dims[0] * dims[1] <= 6:
            t4 = theorem4_check(w, opts)
            if not t4.pt_positive:
                counts["pt_is_witness"] += 1
                counts["both_spas_entangled"] += not t4.holds
    return counts


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=200, help="witnesses per dimension pair")
    parser.add_argument("--dims", nargs="+", default=["2x2", "2x3", "3x3"])
    parser.add_argument("--restarts", type=int, default=64)
    args = parser.parse_args()

    opts = SeeSawOptions(restarts=args.restarts)
    out = {}
    for text in args.dims:
        dims = tuple(int(x) for x in text.split("x"))
        start = time.perf_counter()
        out[text] = survey(dims, args.n, opts)
        out[text]["seconds"] = round(time.perf_counter() - start, 2)
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
