#!/usr/bin/env python3
"""SPA verdict of the two-qubit Korbicz witness W(a, b) over a parameter grid.

Prints a character map (E = entangled SPA, s = separable SPA) and
optionally writes a CSV with the noise weight and both minimum eigenvalues.
"""
import argparse
import csv

import numpy as np

from spawit.catalog import korbicz_witness
from spawit.linalg import min_eigenvalue, partial_transpose
from spawit.spa import spa_witness
from spawit.witness import SeeSawOptions


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=20, help="grid points per axis")
    parser.add_argument("--max", type=float, default=1.0, help="largest a and b")
    parser.add_argument("--csv", help="write the grid to this CSV file")
    args = parser.parse_args()

    values = np.linspace(args.max / args.n, args.max, args.n)
    opts = SeeSawOptions(restarts=8)
    rows = []
    print("b \\ a " + "".join("-" for _ in values))
    for b in values[::-1]:
        line = []
        for a in values:
            entry = korbicz_witness(a, b)
            report = spa_witness(entry.as_witness(opts))
            line.append("E" if report.verdict.entangled else "s")
            rows.append((a, b, report.noise_p, report.verdict.outcome.value,
                         min_eigenvalue(entry.operator), min_eigenvalue(partial_transpose(entry.operator))))
        print(f"{b:5.2f} " + "".join(line))
    mismatches = sum((r[3] == "Entangled") != (r[1] > r[0]) for r in rows)
    print(f"\nentangled SPA exactly when b > a: {mismatches} mismatches on {len(rows)} points")

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["a", "b", "noise_p", "verdict", "lambda_min_w", "lambda_min_wpt"])
            w.writerows(rows)


if __name__ == "__main__":
    main()
