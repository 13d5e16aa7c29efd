import sys
import networkx as nx
import pytest
from hypothesis import settings

from curvlab.graph import Graph

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph.from_edges(len(idx), ((idx[a], idx[b]) for a, b in h.edges))


def brute_isomorphic(a: Graph, b: Graph) -> bool:
    """Backtracking search over vertex bijections with adjacency pruning."""
    if a.n != b.n or a.m != b.m:
        return False
    if sorted(map(len, a.adj)) != sorted(map(len, b.adj)):
        return False
    n = a.n
    image = [-1] * n
    used = [False] * n

    def extend(v):
        if v == n:
            return True
        for w in range(n):
            if used[w] or a.degree(v) != b.degree(w):
                continue
            if all(a.has_edge(v, u) == b.has_edge(w, image[u]) for u in range(v)):
                image[v] = w
                used[w] = True
                if extend(v + 1):
                    return True
                used[w] = False
        return False

    return extend(0)


def nx_outerplanar(g: Graph) -> bool:
    """Independent oracle: G is outerplanar iff G plus a universal vertex is planar."""
    h = to_nx(g)
    h.add_edges_from(("apex", v) for v in range(g.n))
    return nx.check_planarity(h)[0]


def atlas_graphs(n: int) -> list[Graph]:
    return [from_nx(h) for h in nx.graph_atlas_g() if h.number_of_nodes() == n]


@pytest.fixture(scope="session")
def atlas():
    return {n: atlas_graphs(n) for n in range(1, 8)}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
