import gzip
import io

import pytest
from hypothesis import given

from netmatch.graph import Graph, complete_graph
from netmatch.ingest import (EdgeListParseError, find_route_views, load_edge_list,
                             read_edge_list, read_edge_list_path, save_edge_list)

from conftest import small_graphs


def test_orientation_collapse():
    doc = read_edge_list(b"0 1\n1 0\n")
    assert (doc.graph.node_count, doc.graph.edge_count) == (2, 1)
    assert doc.duplicates_collapsed == 1


def test_self_loop_dropped():
    doc = read_edge_list(b"# comment\n5 5\n5 6\n")
    assert (doc.graph.node_count, doc.graph.edge_count) == (2, 1)
    assert doc.self_loops_dropped == 1
    assert doc.id_map == {5: 0, 6: 1}
    assert doc.stats() == {"nodes": 2, "edges": 1, "self_loops_dropped": 1,
                           "duplicates_collapsed": 0}


def test_ids_remapped_in_ascending_order():
    g, id_map = load_edge_list(b"7018 701\n3356 701\n")
    assert id_map == {701: 0, 3356: 1, 7018: 2}
    assert sorted(g.edges()) == [(0, 1), (0, 2)]


def test_crlf_tabs_and_text_streams():
    g, _ = load_edge_list(io.StringIO("1\t2\r\n2   3\r\n\r\n"))
    assert g.edge_count == 2
    g, _ = load_edge_list(["1 2", "2 3"])
    assert g.edge_count == 2


@pytest.mark.parametrize("text, lineno", [
    (b"1 2\n3\n", 2),
    (b"1 2\n# ok\na b\n", 3),
    (b"1 2 3\n", 1),
])
def test_parse_errors_carry_line_number(text, lineno):
    with pytest.raises(EdgeListParseError) as exc:
        load_edge_list(text)
    assert exc.value.lineno == lineno
    assert f"line {lineno}" in str(exc.value)


def test_empty_input_warns():
    with pytest.warns(UserWarning):
        g, _ = load_edge_list(b"")
    assert g.node_count == 0


def test_save_k3_and_empty():
    data = save_edge_list(complete_graph(3)).decode().splitlines()
    assert len([l for l in data if not l.startswith("#")]) == 3
    empty = save_edge_list(Graph(0)).decode().splitlines()
    assert empty and all(l.startswith("#") for l in empty)


@pytest.mark.filterwarnings("ignore:edge list contains no edges")
@given(small_graphs(max_nodes=15))
def test_round_trip_identity(g):
    doc = read_edge_list(save_edge_list(g))
    assert doc.graph == g
    assert list(doc.graph.edges()) == list(g.edges())


def test_round_trip_with_original_ids():
    text = b"# Nodes: 3 Edges: 2\n100 7\n7 42\n"
    doc = read_edge_list(text)
    again = read_edge_list(save_edge_list(doc.graph, doc.id_map))
    assert again.id_map == doc.id_map
    assert again.graph == doc.graph


def test_streams_large_files(tmp_path):
    p = tmp_path / "big.txt.gz"
    with gzip.open(p, "wt") as fh:
        for i in range(120_000):
            fh.write(f"{i}\t{i + 1}\n")
    doc = read_edge_list_path(p)
    assert doc.graph.edge_count == 120_000


def test_find_route_views_respects_env(tmp_path, monkeypatch):
    monkeypatch.setenv("NETMATCH_DATA_DIR", str(tmp_path))
    (tmp_path / "as20000102.txt").write_text("1 2\n")
    assert find_route_views() == tmp_path / "as20000102.txt"
