"""Download the Route-views AS snapshot (2000-01-02) into a data directory.

    python scripts/fetch_route_views.py [--dest data/]

Then point NETMATCH_DATA_DIR at the directory (``data/`` in the repo root is
found automatically).
"""

import argparse
import sys
import urllib.request
from pathlib import Path

from netmatch.ingest import ROUTE_VIEWS_FILES, ROUTE_VIEWS_URL, load_route_views


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dest", default=str(Path(__file__).resolve().parents[1] / "data"))
    ap.add_argument("--url", default=ROUTE_VIEWS_URL)
    args = ap.parse_args()
    dest = Path(args.dest)
    dest.mkdir(parents=True, exist_ok=True)
    target = dest / ROUTE_VIEWS_FILES[1]
    print(f"fetching {args.url} -> {target}", file=sys.stderr)
    urllib.request.urlretrieve(args.url, target)
    doc = load_route_views(target)  # raises if node/edge counts are off
    print(f"ok: {doc.graph.node_count} nodes, {doc.graph.edge_count} edges")
    return 0


if __name__ == "__main__":
    sys.exit(main())
