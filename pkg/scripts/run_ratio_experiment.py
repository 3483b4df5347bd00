"""Approximation ratio of phi against the exact optimum on seed-fixed sparse instances.

    python3 scripts/run_ratio_experiment.py --seeds 300 --jobs 4 --out ratio.csv

Writes the bench CSV (seed,n,c,opt,phi,ratio) and prints, per c, the worst
observed ratio next to the guaranteed bound 1 + 6/(c-1).
"""

from __future__ import annotations

import argparse
import csv
import sys
from collections import defaultdict

from tripack.approx import arc_fraction_bound, phi, ratio_bound
from tripack.cli import main as cli_main
from tripack.gadgets.generators import ratio_instance


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seeds", type=int, default=210)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="ratio.csv")
    args = ap.parse_args(argv)

    code = cli_main(["bench", "--suite", "ratio", "--seeds", str(args.seeds), "--jobs", str(args.jobs), "--out", args.out])
    with open(args.out) as fh:
        rows = list(csv.DictReader(fh))
    worst = defaultdict(float)
    frac = defaultdict(lambda: 1.0)
    count = defaultdict(int)
    for r in rows:
        c = int(r["c"])
        worst[c] = max(worst[c], float(r["ratio"]))
        count[c] += 1
        L, _ = ratio_instance(int(r["seed"]))
        rep = phi(L, c)
        frac[c] = min(frac[c], (rep.m1 + rep.m2) / rep.m)
    print(f"{'c':>3} {'rows':>5} {'worst ratio':>12} {'bound':>8} {'min arc frac':>13} {'bound':>8}")
    for c in sorted(worst):
        print(f"{c:>3} {count[c]:>5} {worst[c]:>12.4f} {ratio_bound(c):>8.4f} {frac[c]:>13.4f} {arc_fraction_bound(c):>8.4f}")
    return code


if __name__ == "__main__":
    sys.exit(main())
