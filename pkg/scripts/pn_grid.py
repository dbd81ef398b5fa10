"""Rank table of gamma_{a,b}(P^n, O(e)) over a small grid.

    python scripts/pn_grid.py --max-t 6 --csv grid.csv
"""

import argparse
import csv
import sys
import time

from wgauss import gauss_pn


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[1, 2, 3])
    parser.add_argument("-e", type=int, nargs="+", default=[1, 2])
    parser.add_argument("--max-t", type=int, default=6)
    parser.add_argument("--csv", metavar="FILE")
    args = parser.parse_args()

    fields = ["n", "e", "a", "b", "domain_dim", "codomain_dim", "rank", "surjective", "seconds"]
    rows = []
    for n in args.n:
        for e in args.e:
            for s in range(2, args.max_t + 1):
                for a in range(1, s):
                    start = time.perf_counter()
                    r = gauss_pn(n, e, a, s - a)
                    rows.append({k: getattr(r, k) for k in fields[:-1]} | {"seconds": round(time.perf_counter() - start, 3)})
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    writer = csv.DictWriter(out, fieldnames=fields)
    writer.writeheader()
    writer.writerows(rows)
    if args.csv:
        out.close()
    print(f"{sum(r['surjective'] for r in rows)}/{len(rows)} surjective", file=sys.stderr)


if __name__ == "__main__":
    main()
