import itertools
import random

import pytest
from hypothesis import strategies as st

from netmatch.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(n, ((i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p))


@st.composite
def small_graphs(draw, min_nodes=0, max_nodes=10):
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, (e for e, keep in zip(pairs, mask) if keep))


def structured_corpus() -> dict[str, Graph]:
    corpus = {"P3": path_graph(3), "K3": complete_graph(3), "P4": path_graph(4)}
    corpus.update({f"S{k}": star_graph(k) for k in range(2, 7)})
    corpus.update({f"C{k}": cycle_graph(k) for k in range(3, 9)})
    return corpus


@pytest.fixture
def corpus():
    return structured_corpus()


_ACCEPTANCE: list[str] = []


@pytest.fixture
def verdict(request):
    """Record one acceptance line: ``verdict(ok, detail)``, printed at the end of the run.

    ``ok=None`` records a SKIP line.
    """
    def record(ok: bool | None, detail: str) -> bool | None:
        name = request.node.name.removeprefix("test_")
        status = "SKIP" if ok is None else "PASS" if ok else "FAIL"
        _ACCEPTANCE.append(f"{status}  {name}: {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
