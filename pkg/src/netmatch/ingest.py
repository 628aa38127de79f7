"""SNAP-style edge lists: ``#`` comments and one ``u v`` pair per line.

Original ids are remapped to dense ``0..n-1`` in ascending id order; the
mapping is kept so results can be reported in the original ids.
"""

from __future__ import annotations

import gzip
import io
import logging
import os
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

from .graph import Graph

log = logging.getLogger(__name__)

ROUTE_VIEWS_URL = "https://snap.stanford.edu/data/as20000102.txt.gz"
ROUTE_VIEWS_FILES = ("as20000102.txt", "as20000102.txt.gz")
ROUTE_VIEWS_NODES = 6474
ROUTE_VIEWS_EDGES = 13895
DATA_DIR_ENV = "NETMATCH_DATA_DIR"

_NODES_HEADER = re.compile(r"#\s*Nodes:\s*(\d+)")


class EdgeListParseError(ValueError):
    def __init__(self, lineno: int, line: str, reason: str):
        super().__init__(f"line {lineno}: {reason}: {line!r}")
        self.lineno = lineno


@dataclass
class EdgeListDocument:
    graph: Graph
    id_map: dict[int, int]  # original id -> dense id
    comments: list[str] = field(default_factory=list)
    self_loops_dropped: int = 0
    duplicates_collapsed: int = 0

    def stats(self) -> dict:
        return {
            "nodes": self.graph.node_count,
            "edges": self.graph.edge_count,
            "self_loops_dropped": self.self_loops_dropped,
            "duplicates_collapsed": self.duplicates_collapsed,
        }


def _lines(source) -> Iterable[str]:
    if isinstance(source, (str, bytes)):
        source = io.BytesIO(source.encode() if isinstance(source, str) else source)
    for raw in source:
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        yield raw.rstrip("\r\n")


def read_edge_list(source: IO | bytes | str | Iterable[str]) -> EdgeListDocument:
    """Parse an edge list from a byte/text stream, raw bytes or an iterable of lines.

    A ``# Nodes: N`` header whose ids all fall in ``0..N-1`` keeps the ids
    as they are, so isolated nodes survive a save/load round trip.
    """
    comments: list[str] = []
    pairs: set[tuple[int, int]] = set()
    loops = dups = 0
    declared = None
    for lineno, line in enumerate(_lines(source), 1):
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            comments.append(s)
            if declared is None and (m := _NODES_HEADER.match(s)):
                declared = int(m.group(1))
            continue
        tok = s.split()
        if len(tok) != 2:
            raise EdgeListParseError(lineno, line, f"expected 2 tokens, got {len(tok)}")
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise EdgeListParseError(lineno, line, "non-integer node id") from None
        if u == v:
            loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in pairs:
            dups += 1
        else:
            pairs.add(key)

    ids = {u for e in pairs for u in e}
    if declared is not None and all(0 <= i < declared for i in ids):
        id_map = {i: i for i in range(declared)}
    else:
        id_map = {orig: k for k, orig in enumerate(sorted(ids))}
    g = Graph(len(id_map))
    for u, v in sorted(pairs):
        g.add_edge(id_map[u], id_map[v])
    if g.node_count == 0:
        warnings.warn("edge list contains no edges", stacklevel=2)
    if loops:
        log.info("dropped %d self-loop lines", loops)
    return EdgeListDocument(g, id_map, comments, loops, dups)


def load_edge_list(source) -> tuple[Graph, dict[int, int]]:
    doc = read_edge_list(source)
    return doc.graph, doc.id_map


def open_path(path: str | os.PathLike) -> IO[bytes]:
    path = Path(path)
    if path.suffix == ".gz":
        return gzip.open(path, "rb")
    return open(path, "rb")


def read_edge_list_path(path: str | os.PathLike) -> EdgeListDocument:
    with open_path(path) as fh:
        return read_edge_list(fh)


def save_edge_list(g: Graph, id_map: dict[int, int] | None = None,
                   header: Iterable[str] = ()) -> bytes:
    """Serialize ``g``; with ``id_map`` (original -> dense) original ids are written."""
    out = io.StringIO()
    for h in header:
        out.write(f"# {h}\n")
    out.write("# Undirected graph\n")
    if id_map is None:
        out.write(f"# Nodes: {g.node_count} Edges: {g.edge_count}\n")
        back = None
    else:
        out.write(f"# Edges: {g.edge_count}\n")
        back = {d: o for o, d in id_map.items()}
    out.write("# FromNodeId\tToNodeId\n")
    for u, v in g.edges():
        if back is not None:
            u, v = back[u], back[v]
        out.write(f"{u}\t{v}\n")
    return out.getvalue().encode()


def write_edge_list(g: Graph, path: str | os.PathLike, id_map=None, header=()) -> None:
    Path(path).write_bytes(save_edge_list(g, id_map, header))


def find_route_views(data_dir: str | os.PathLike | None = None) -> Path | None:
    """Locate the Route-views snapshot under ``data_dir`` or $NETMATCH_DATA_DIR."""
    base = data_dir or os.environ.get(DATA_DIR_ENV)
    candidates = [Path(base)] if base else []
    candidates.append(Path(__file__).resolve().parents[2] / "data")
    for d in candidates:
        for name in ROUTE_VIEWS_FILES:
            if (d / name).is_file():
                return d / name
    return None


def load_route_views(path: str | os.PathLike | None = None) -> EdgeListDocument:
    path = Path(path) if path else find_route_views()
    if path is None:
        raise FileNotFoundError(
            f"Route-views edge list not found; set {DATA_DIR_ENV} or run scripts/fetch_route_views.py")
    doc = read_edge_list_path(path)
    if (doc.graph.node_count, doc.graph.edge_count) != (ROUTE_VIEWS_NODES, ROUTE_VIEWS_EDGES):
        raise ValueError(
            f"{path} has {doc.graph.node_count} nodes / {doc.graph.edge_count} edges, "
            f"expected {ROUTE_VIEWS_NODES} / {ROUTE_VIEWS_EDGES}")
    return doc
