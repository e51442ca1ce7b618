import math
from collections import Counter
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import graphs, random_graph, to_nx
from matchpoly.census import (
    CensusError,
    census,
    census_is_complete,
    class_dictionary,
    class_named,
    classify,
    default_index_map,
    matching_class,
    published_index_map,
)
from matchpoly.formulas import FORMULAS, PRINTED_FORMULAS
from matchpoly.graph import Graph, complete_graph, cycle_graph, petersen_graph
from matchpoly.matching import count_matchings


def nx_census(g: Graph, m: int) -> Counter:
    """Isomorphism types of m-edge subsets, keyed by a representative, via networkx."""
    reps: list[nx.Graph] = []
    counts: Counter = Counter()
    for sub in combinations(g.edges, m):
        h = nx.Graph(list(sub))
        for i, rep in enumerate(reps):
            if nx.is_isomorphic(h, rep):
                counts[i] += 1
                break
        else:
            reps.append(h)
            counts[len(reps) - 1] += 1
    return Counter({classify(Graph.from_edges(g.n, list(reps[i].edges))): c for i, c in counts.items()})


def test_dictionary_sizes():
    sizes = Counter(c.m for c in class_dictionary())
    assert [sizes[m] for m in range(1, 6)] == [1, 2, 5, 11, 26]
    assert len(class_dictionary(3)) == 8


def test_dictionary_classes_pairwise_non_isomorphic():
    classes = class_dictionary()
    for a, b in combinations(classes, 2):
        if a.m == b.m:
            assert not nx.is_isomorphic(to_nx(a.graph), to_nx(b.graph)), (a.name, b.name)
    assert len({c.name for c in classes}) == len(classes)


def test_dictionary_pendant_counts():
    for c in class_dictionary():
        assert c.graph.num_edges == c.m
        assert sum(1 for d in c.graph.degrees() if d == 1) == c.k
        assert min(c.graph.degrees()) >= 1


def test_class_ids_follow_published_indexing():
    # every (m, k) bucket has exactly as many classes as there are published ids for it
    ids = Counter((m, k) for m, k, _ in FORMULAS)
    ids.update([(3, 0), (4, 0), (5, 0), (5, 0)])
    buckets = Counter((c.m, c.k) for c in class_dictionary())
    assert ids == buckets


def test_petersen_counts():
    t = census(petersen_graph())
    assert t["C5"] == 12
    assert t["K3"] == t["C4"] == t["K4-e"] == 0
    assert t["K2"] == 15
    assert t["2K2"] == 75
    assert t["5K2"] == 6
    cycles = [c for c in nx.simple_cycles(nx.petersen_graph(), length_bound=5)]
    assert Counter(len(c) for c in cycles) == Counter({5: 12})


def test_k4_counts():
    t = census(complete_graph(4))
    assert t["K3"] == 4
    assert t["C4"] == 3
    assert t["K4-e"] == 6
    assert t["P3"] == 12
    assert t["K1,3"] == 4
    assert t.total(5) == 6


def test_single_edge_host():
    t = census(complete_graph(2))
    assert t["K2"] == 1
    assert sum(t.counts.values()) == 1
    assert census(Graph.empty(3)).total(1) == 0


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_census_matches_networkx_classification(rng, m):
    for _ in range(3):
        g = random_graph(rng, 7, 0.45)
        t = census(g, m)
        expected = nx_census(g, m)
        got = Counter({c: n for c, n in t.counts.items() if c.m == m and n})
        assert got == expected


def test_five_edge_census_matches_networkx_on_k33():
    g = Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])
    got = Counter({c: n for c, n in census(g).counts.items() if c.m == 5 and n})
    assert got == nx_census(g, 5)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_census_is_complete_and_counts_matchings(g):
    t = census(g)
    assert census_is_complete(t, g.num_edges)
    for m in range(1, 6):
        assert t.total(m) == math.comb(g.num_edges, m)
        assert t[matching_class(m)] == count_matchings(g, m)


def test_census_triangles_against_networkx(rng):
    for _ in range(10):
        g = random_graph(rng, 9, 0.5)
        assert census(g, 3)["K3"] == sum(nx.triangles(to_nx(g)).values()) // 3


def test_census_limits():
    with pytest.raises(CensusError):
        census(cycle_graph(5), 6)
    with pytest.raises(CensusError):
        census(cycle_graph(5), -1)
    t = census(cycle_graph(5), 0)
    assert t.counts == {}


def test_classify_ignores_isolated_vertices():
    g = Graph.from_edges(7, [(0, 1), (2, 3)])
    assert classify(g) == class_named("2K2")
    with pytest.raises(CensusError):
        classify(Graph.empty(3))


def test_records_are_sorted_and_indexed():
    index = default_index_map().by_class()
    rows = census(petersen_graph()).records(index)
    assert [(r["m"], r["class"]) for r in rows] == sorted((r["m"], r["class"]) for r in rows)
    c5 = next(r for r in rows if r["class"] == "C5")
    assert c5["index"] == [5, 0, 1] and c5["count"] == 12


def test_default_index_map():
    mapping = default_index_map()
    assert mapping.ok, mapping.problems()
    assert len(mapping.by_id) == len(FORMULAS) + 4 == len(class_dictionary())
    assert mapping.by_id[(4, 4, 2)] == class_named("K1,4")
    assert mapping.by_id[(5, 0, 1)] == class_named("C5")
    assert mapping.by_id[(5, 0, 2)] == class_named("K4-e")
    assert mapping.by_id[(5, 10, 1)] == class_named("5K2")
    assert mapping.by_id[(1, 2, 1)] == class_named("K2")


def test_printed_table_leaves_one_id_unmatched():
    mapping = published_index_map(formulas=PRINTED_FORMULAS)
    assert mapping.unmatched == [(5, 6, 3)]
    assert [c.name for c in mapping.unused] == ["2P3+K2"]
