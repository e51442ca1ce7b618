"""Edge-subset census of small subgraphs.

A class is an isomorphism type of graph with ``m`` edges and no isolated
vertices; ``k`` is its number of degree-1 vertices. ``census`` classifies every
edge subset of the host with at most five edges.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import groupby
from math import comb
from typing import Iterable, Optional

from .canon import Certificate, canonical_certificate, canonical_form, connected_certificate
from .graph import Graph, connected_components, induced_subgraph, serialize_graph6

MAX_CENSUS_EDGES = 5

# connected graphs with at most five edges, by conventional name
_NAMED = {
    "K2": [(0, 1)],
    "P3": [(0, 1), (1, 2)],
    "P4": [(0, 1), (1, 2), (2, 3)],
    "K1,3": [(0, 1), (0, 2), (0, 3)],
    "K3": [(0, 1), (1, 2), (0, 2)],
    "P5": [(0, 1), (1, 2), (2, 3), (3, 4)],
    "fork": [(0, 1), (0, 2), (0, 3), (3, 4)],
    "K1,4": [(0, 1), (0, 2), (0, 3), (0, 4)],
    "paw": [(0, 1), (1, 2), (0, 2), (0, 3)],
    "C4": [(0, 1), (1, 2), (2, 3), (0, 3)],
    "K4-e": [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
    "C5": [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
    "banner": [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)],
    "bull": [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)],
    "cricket": [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4)],
    "lollipop3,2": [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4)],
    "P6": [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)],
    "K1,5": [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)],
    "S1,1,3": [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)],
    "S1,2,2": [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)],
    "S1,1,1,2": [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)],
    "H": [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)],
}


class CensusError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SubgraphClass:
    m: int
    k: int
    name: str
    cert: Certificate = field(compare=False)
    graph: Graph = field(compare=False, repr=False)


@lru_cache(maxsize=None)
def _component_names() -> dict:
    names = {}
    for name, edges in _NAMED.items():
        g = Graph.from_edges(1 + max(max(e) for e in edges), edges)
        names[connected_certificate(g)] = name
    return names


def _class_name(g: Graph) -> str:
    names = _component_names()
    parts = []
    for comp in connected_components(g):
        h = induced_subgraph(g, comp)
        parts.append((h.num_edges, names[connected_certificate(h)]))
    parts.sort(key=lambda p: (-p[0], p[1]))
    out = []
    for name, grp in groupby(p[1] for p in parts):
        count = len(list(grp))
        out.append(name if count == 1 else f"{count}{name}")
    return "+".join(out)


def _make_class(g: Graph) -> SubgraphClass:
    g = canonical_form(g)
    return SubgraphClass(
        m=g.num_edges,
        k=sum(1 for d in g.degrees() if d == 1),
        name=_class_name(g),
        cert=canonical_certificate(g),
        graph=g,
    )


@lru_cache(maxsize=None)
def class_dictionary(max_edges: int = MAX_CENSUS_EDGES) -> tuple[SubgraphClass, ...]:
    """All graphs with 1..max_edges edges and no isolated vertices, up to isomorphism.

    Built by adding one edge in every possible way to each class of the
    previous size; every graph arises this way from one of its edge-deleted
    subgraphs, so the list is complete.
    """
    layer = {canonical_certificate(Graph.from_edges(2, [(0, 1)])): Graph.from_edges(2, [(0, 1)])}
    found = list(layer.values())
    for _ in range(max_edges - 1):
        nxt: dict[Certificate, Graph] = {}
        for g in layer.values():
            n = g.n
            cands = [(u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)]
            cands += [(u, n) for u in range(n)]
            cands.append((n, n + 1))
            for u, v in cands:
                size = max(n, v + 1)
                h = Graph.from_edges(size, list(g.edges) + [(u, v)])
                nxt.setdefault(canonical_certificate(h), h)
        layer = nxt
        found.extend(layer.values())
    classes = sorted(_make_class(g) for g in found)
    names = [c.name for c in classes]
    if len(set(names)) != len(names):
        raise CensusError("class names are not unique")
    return tuple(classes)


@lru_cache(maxsize=None)
def _class_by_cert() -> dict:
    return {c.cert: c for c in class_dictionary()}


def class_named(name: str) -> SubgraphClass:
    for c in class_dictionary():
        if c.name == name:
            return c
    raise KeyError(name)


@lru_cache(maxsize=None)
def _classify_pattern(pattern: tuple[tuple[int, int], ...]) -> SubgraphClass:
    n = 1 + max(max(e) for e in pattern)
    return _class_by_cert()[canonical_certificate(Graph.from_edges(n, pattern))]


def classify(g: Graph) -> SubgraphClass:
    """Class of a graph with 1..5 edges; isolated vertices are ignored."""
    if not 1 <= g.num_edges <= MAX_CENSUS_EDGES:
        raise CensusError(f"cannot classify a graph with {g.num_edges} edges")
    used = sorted({v for e in g.edges for v in e})
    return _class_by_cert()[canonical_certificate(induced_subgraph(g, used))]


@dataclass
class CensusTable:
    host: str  # graph6 of the host graph
    max_edges: int
    counts: dict[SubgraphClass, int]

    def __getitem__(self, key) -> int:
        if isinstance(key, str):
            key = class_named(key)
        return self.counts.get(key, 0)

    def total(self, m: int) -> int:
        return sum(c for cls, c in self.counts.items() if cls.m == m)

    def records(self, index: Optional[dict] = None) -> list[dict]:
        """Sorted rows for export; ``index`` maps classes to (m, k, i)."""
        rows = []
        for cls in sorted(self.counts, key=lambda c: (c.m, c.name)):
            row = {"class": cls.name, "m": cls.m, "k": cls.k, "count": self.counts[cls]}
            if index is not None and cls in index:
                row["index"] = list(index[cls])
            rows.append(row)
        return rows


def census(g: Graph, max_edges: int = MAX_CENSUS_EDGES) -> CensusTable:
    """Classify every edge subset of ``g`` with 1..max_edges edges."""
    if not 0 <= max_edges <= MAX_CENSUS_EDGES:
        raise CensusError(f"max_edges must be between 0 and {MAX_CENSUS_EDGES}, got {max_edges}")
    edges = g.edges
    patterns: Counter = Counter()
    label: dict[int, int] = {}
    key: list[tuple[int, int]] = []

    # subsets are visited in lexicographic order; vertices are relabelled by
    # first appearance so that equal patterns share a classification
    def extend(start: int, depth: int) -> None:
        for i in range(start, len(edges)):
            u, v = edges[i]
            fresh = []
            if u not in label:
                label[u] = len(label)
                fresh.append(u)
            if v not in label:
                label[v] = len(label)
                fresh.append(v)
            key.append((label[u], label[v]))
            patterns[tuple(key)] += 1
            if depth + 1 < max_edges:
                extend(i + 1, depth + 1)
            key.pop()
            for w in fresh:
                del label[w]

    if max_edges:
        extend(0, 0)
    counts = {cls: 0 for cls in class_dictionary() if cls.m <= max_edges}
    for pattern, c in patterns.items():
        counts[_classify_pattern(pattern)] += c
    return CensusTable(host=serialize_graph6(g), max_edges=max_edges, counts=counts)


def census_is_complete(table: CensusTable, num_edges: int) -> bool:
    return all(table.total(m) == comb(num_edges, m) for m in range(1, table.max_edges + 1))


def matching_class(m: int) -> SubgraphClass:
    """The class of m disjoint edges."""
    return class_named("K2" if m == 1 else f"{m}K2")


# -- index identification -----------------------------------------------------

PINNED = {(3, 0, 1): "K3", (4, 0, 1): "C4", (5, 0, 1): "C5", (5, 0, 2): "K4-e"}


@dataclass
class IndexMapping:
    """Result of matching formula predictions against census counts."""

    by_id: dict  # (m, k, i) -> SubgraphClass
    unmatched: list  # formula ids with no consistent class
    ambiguous: dict  # formula id -> candidate classes
    unused: list  # classes claimed by no formula

    @property
    def ok(self) -> bool:
        return not (self.unmatched or self.ambiguous or self.unused)

    def by_class(self) -> dict:
        return {cls: fid for fid, cls in self.by_id.items()}

    def problems(self) -> list[str]:
        out = [f"g{fid}: no class matches on every probe" for fid in self.unmatched]
        out += [
            f"g{fid}: ambiguous between {', '.join(c.name for c in cands)}"
            for fid, cands in self.ambiguous.items()
        ]
        out += [f"class {c.name} matches no formula" for c in self.unused]
        return out


def default_probes() -> list[Graph]:
    """Regular graphs of several orders and degrees with varied cycle counts."""
    from .catalog import generate_regular
    from .graph import petersen_graph

    probes = []
    for n, r in [(4, 3), (6, 3), (8, 3), (5, 4), (6, 4), (7, 4), (8, 4), (6, 5), (8, 5), (7, 6)]:
        probes.extend(generate_regular(n, r))
    probes.append(petersen_graph())
    return probes


def published_index_map(probes: Optional[Iterable[Graph]] = None, formulas: Optional[dict] = None) -> IndexMapping:
    """Identify each published formula id with a census class.

    A class is a candidate for id (m, k, i) when it has the same m and k and
    its brute-force count equals the closed form on every probe. The four
    free counts (triangles, 4-cycles, 5-cycles, diamonds) are pinned by
    structure.
    """
    from . import formulas as fm
    from .graph import is_regular

    formulas = fm.FORMULAS if formulas is None else formulas

    probes = default_probes() if probes is None else list(probes)
    tables = []
    for g in probes:
        r = is_regular(g)
        if r is None:
            raise CensusError("probe graphs must be regular")
        t = census(g)
        tables.append((fm.RegularParams.from_census(t, g.n, r), t))

    by_id = {fid: class_named(name) for fid, name in PINNED.items()}
    unmatched, ambiguous = [], {}
    for fid in formulas:
        m, k, _ = fid
        cands = [c for c in class_dictionary() if c.m == m and c.k == k]
        cands = [c for c in cands if all(fm.closed_form(fid, p, formulas) == t[c] for p, t in tables)]
        if len(cands) == 1:
            by_id[fid] = cands[0]
        elif cands:
            ambiguous[fid] = cands
        else:
            unmatched.append(fid)
    claimed = {}
    for fid, cls in by_id.items():
        if cls in claimed:
            ambiguous[fid] = [cls]
        claimed[cls] = fid
    unused = [c for c in class_dictionary() if c not in claimed]
    return IndexMapping(by_id=by_id, unmatched=unmatched, ambiguous=ambiguous, unused=unused)


@lru_cache(maxsize=1)
def default_index_map() -> IndexMapping:
    return published_index_map()
