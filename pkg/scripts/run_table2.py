"""Unmatched nodes and clustering of the Route-views AS graph after T link additions.

    python scripts/run_table2.py [--T 0 20 40 ...] [--out table2.csv]
"""

import argparse
import sys

from netmatch.experiments import run_table2_sweep, table2_csv
from netmatch.ingest import load_route_views


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--T", type=int, nargs="+", default=list(range(0, 121, 20)))
    ap.add_argument("--data")
    ap.add_argument("--out")
    args = ap.parse_args()
    try:
        g = load_route_views(args.data).graph
    except FileNotFoundError as exc:
        print(exc, file=sys.stderr)
        return 3
    text = table2_csv(run_table2_sweep(g, args.T))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
