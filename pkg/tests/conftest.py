import random
import sys
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import strategies as st

from matchpoly.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p])


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


def brute_matching_counts(g: Graph) -> list[int]:
    """Counts of r-subsets of edges that are pairwise disjoint, by plain subset enumeration."""
    counts = [0] * (g.n // 2 + 1)
    for r in range(len(counts)):
        for sub in combinations(g.edges, r):
            if len({v for e in sub for v in e}) == 2 * r:
                counts[r] += 1
    return counts


def brute_saturation(g: Graph) -> int:
    for s in range(g.n // 2 + 1):
        for sub in combinations(g.edges, s):
            cov = {v for e in sub for v in e}
            if len(cov) == 2 * s and all(u in cov or v in cov for u, v in g.edges):
                return s
    raise AssertionError("unreachable")


def brute_independence(g: Graph) -> int:
    for size in range(g.n, -1, -1):
        for sub in combinations(range(g.n), size):
            if not any(g.has_edge(u, v) for u, v in combinations(sub, 2)):
                return size
    return 0


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
