import networkx as nx
import pytest
from hypothesis import HealthCheck
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from config.settings import settings
from core.graph import Graph, VertexSet, generate, parse_edge_list, parse_vertex_set

PROPERTY_SETTINGS = hypothesis_settings(max_examples=60, deadline=None,
                                        suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 6) -> Graph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [pair for pair, keep in zip(pairs, chosen) if keep])


@st.composite
def graphs_with_subset(draw, min_n: int = 0, max_n: int = 6, nonempty: bool = False):
    g = draw(graphs(max(min_n, 1 if nonempty else 0), max_n))
    low = 1 if nonempty else 0
    mask = draw(st.integers(min_value=low, max_value=(1 << g.n) - 1)) if g.n else 0
    return g, VertexSet.from_mask(g.n, mask)


def to_networkx(g: Graph) -> nx.Graph:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges())
    return nxg


@pytest.fixture(autouse=True)
def structured_log_in_tmp(tmp_path, monkeypatch):
    monkeypatch.setattr(settings, 'STRUCTURED_LOG_FILE', str(tmp_path / "audit.jsonl"))


@pytest.fixture
def triangle():
    """K_3 labelled a, b, c with B = {a, b}."""
    g = parse_edge_list("a b\nb c\na c\n")
    return g, parse_vertex_set("a b", g)


@pytest.fixture
def petersen():
    return generate('petersen')


@pytest.fixture
def c5():
    return generate('cycle', 5)


@pytest.fixture
def k4():
    return generate('complete', 4)
