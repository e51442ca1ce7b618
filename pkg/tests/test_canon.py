import time

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs, to_nx
from matchpoly.canon import (
    CertificateSizeError,
    are_isomorphic,
    canonical_certificate,
    canonical_form,
    connected_certificate,
)
from matchpoly.catalog import load_catalog_graphs
from matchpoly.graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    prism_graph,
    relabel,
)


@settings(max_examples=200)
@given(graphs(max_n=10), st.randoms(use_true_random=False))
def test_certificate_is_relabelling_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = relabel(g, perm)
    assert canonical_certificate(g) == canonical_certificate(h)
    assert canonical_form(g) == canonical_form(h)


@settings(max_examples=300)
@given(graphs(max_n=7), graphs(max_n=7))
def test_certificate_agrees_with_networkx(g, h):
    same = g.n == h.n and nx.is_isomorphic(to_nx(g), to_nx(h))
    assert are_isomorphic(g, h) == same
    assert (canonical_certificate(g) == canonical_certificate(h)) == same


def test_canonical_form_is_isomorphic(rng):
    for _ in range(50):
        n = rng.randint(1, 9)
        g = Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4])
        assert nx.is_isomorphic(to_nx(g), to_nx(canonical_form(g)))


def test_cycle_examples():
    c5 = cycle_graph(5)
    shuffled = relabel(c5, [3, 0, 4, 1, 2])
    assert canonical_certificate(c5) == canonical_certificate(shuffled)
    diamond = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert canonical_certificate(diamond) != canonical_certificate(c5)


def test_cubic_order_ten_certificates_distinct():
    gs = load_catalog_graphs()
    assert len({canonical_certificate(g) for g in gs}) == 21
    for i, g in enumerate(gs):
        for h in gs[i + 1 :]:
            assert not nx.is_isomorphic(to_nx(g), to_nx(h))


def test_size_cap():
    with pytest.raises(CertificateSizeError):
        connected_certificate(complete_graph(15))


@pytest.mark.parametrize(
    "g",
    [complete_graph(14), complete_bipartite_graph(7, 7), prism_graph(7), disjoint_union(complete_graph(7), complete_graph(7))],
    ids=["K14", "K77", "prism7", "2K7"],
)
def test_symmetric_graphs_are_cheap(g):
    # automorphism pruning keeps these far below the n! leaves of a plain search
    start = time.perf_counter()
    h = relabel(g, list(reversed(range(g.n))))
    assert canonical_certificate(g) == canonical_certificate(h)
    assert time.perf_counter() - start < 5
