"""Regular-graph generation and the labelled catalog of cubic graphs on ten vertices."""
from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from typing import Iterable, Optional

from .canon import canonical_certificate, canonical_form
from .graph import Graph, connected_components, is_regular, parse_graph6, serialize_graph6
from .formulas import RegularParams, theorem_pol
from .matching import (
    MatchingPolynomial,
    MatchingStats,
    matching_polynomial,
    matching_stats,
    parse_polynomial,
    polynomial_from_coefficients,
)

MAX_EXHAUSTIVE_ORDER = 12

# mu(G_i, x) as printed, i = 1..21
PUBLISHED_POLYNOMIALS = {
    1: "x^10-15x^8+75x^6-141x^4+80x^2-8",
    2: "x^10-15x^8+75x^6-143x^4+86x^2-6",
    3: "x^10-15x^8+75x^6-142x^4+84x^2-7",
    4: "x^10-15x^8+75x^6-143x^4+90x^2-10",
    5: "x^10-15x^8+75x^6-141x^4+80x^2-6",
    6: "x^10-15x^8+75x^6-145x^4+95x^2-13",
    7: "x^10-15x^8+75x^6-145x^4+93x^2-9",
    8: "x^10-15x^8+75x^6-145x^4+92x^2-8",
    9: "x^10-15x^8+75x^6-144x^4+89x^2-8",
    10: "x^10-15x^8+75x^6-145x^4+95x^2-11",
    11: "x^10-15x^8+75x^6-143x^4+87x^2-7",
    12: "x^10-15x^8+75x^6-143x^4+84x^2-6",
    13: "x^10-15x^8+75x^6-144x^4+91x^2-8",
    14: "x^10-15x^8+75x^6-142x^4+81x^2-6",
    15: "x^10-15x^8+75x^6-144x^4+90x^2-9",
    16: "x^10-15x^8+75x^6-145x^4+96x^2-12",
    17: "x^10-15x^8+75x^6-145x^4+90x^2-6",
    18: "x^10-15x^8+75x^6-141x^4+84x^2-4",
    19: "x^10-15x^8+75x^6-143x^4+85x^2-7",
    20: "x^10-15x^8+75x^6-139x^4+78x^2-12",
    21: "x^10-15x^8+75x^6-141x^4+90x^2-18",
}

PUBLISHED_SATURATION = {
    **{i: 3 for i in (1, 2, 5, 8, 12, 16, 17, 18)},
    **{i: 4 for i in (3, 4, 6, 7, 9, 10, 11, 13, 14, 15, 19, 20)},
    21: 5,
}


class CatalogError(ValueError):
    pass


def published_polynomial(index: int) -> MatchingPolynomial:
    if index not in PUBLISHED_POLYNOMIALS:
        raise CatalogError(f"no printed polynomial with index {index} (1..21)")
    return polynomial_from_coefficients(10, parse_polynomial(PUBLISHED_POLYNOMIALS[index]))


# -- generation ---------------------------------------------------------------


def _regular_labelled(n: int, r: int):
    """Labelled r-regular graphs with untouched vertices used in index order.

    Vertices are completed one at a time, each picking its missing neighbours
    among later vertices. Vertices of degree 0 are interchangeable, so only the
    lowest-numbered ones are ever chosen; this removes most relabelled copies.
    """
    deg = [0] * n
    adj = [set() for _ in range(n)]

    def fill(v: int):
        while v < n and deg[v] == r:
            v += 1
        if v == n:
            yield [(a, b) for a in range(n) for b in adj[a] if a < b]
            return
        need = r - deg[v]
        later = [w for w in range(v + 1, n) if deg[w] < r and w not in adj[v]]
        touched = [w for w in later if deg[w] > 0]
        fresh = [w for w in later if deg[w] == 0]
        for k in range(min(need, len(fresh)) + 1):
            if need - k > len(touched):
                continue
            for picks in combinations(touched, need - k):
                chosen = list(picks) + fresh[:k]
                for w in chosen:
                    adj[v].add(w)
                    adj[w].add(v)
                    deg[w] += 1
                deg[v] = r
                yield from fill(v + 1)
                deg[v] -= len(chosen)
                for w in chosen:
                    adj[v].discard(w)
                    adj[w].discard(v)
                    deg[w] -= 1

    yield from fill(0)


def generate_regular(n: int, r: int) -> list[Graph]:
    """All r-regular graphs of order n up to isomorphism, connected or not.

    Results are in canonical form, sorted by certificate.
    """
    if r < 0 or n < 0 or (r and r >= n):
        raise ValueError(f"no {r}-regular graphs on {n} vertices")
    if (n * r) % 2:
        raise ValueError(f"n*r must be even (n={n}, r={r})")
    if n > MAX_EXHAUSTIVE_ORDER:
        raise ValueError(f"exhaustive generation is limited to n <= {MAX_EXHAUSTIVE_ORDER}")
    seen: dict = {}
    for edges in _regular_labelled(n, r):
        g = Graph.from_edges(n, edges)
        cert = canonical_certificate(g)
        if cert not in seen:
            seen[cert] = canonical_form(g)
    return [seen[c] for c in sorted(seen)]


def generate_graphs(n: int) -> list[Graph]:
    """All graphs of order n up to isomorphism.

    Each graph is obtained from a smaller one by adding a vertex of minimum
    degree, so new vertices never get more neighbours than any old vertex
    ends up with.
    """
    if n == 0:
        return [Graph.empty(0)]
    layer = [Graph.empty(1)]
    for size in range(1, n):
        nxt: dict = {}
        for g in layer:
            degs = g.degrees()
            for k in range(0, size + 1):
                for nbrs in combinations(range(size), k):
                    chosen = set(nbrs)
                    if any(degs[v] + (v in chosen) < k for v in range(size)):
                        continue
                    h = Graph.from_edges(size + 1, list(g.edges) + [(v, size) for v in nbrs])
                    nxt.setdefault(canonical_certificate(h), h)
        layer = [nxt[c] for c in sorted(nxt)]
    return layer


def random_regular(n: int, r: int, rng: Optional[random.Random] = None, max_tries: int = 100000) -> Graph:
    """Uniform random r-regular graph via the pairing model with rejection."""
    if (n * r) % 2 or r >= n:
        raise ValueError(f"no {r}-regular graphs on {n} vertices")
    rng = rng or random.Random()
    stubs = [v for v in range(n) for _ in range(r)]
    for _ in range(max_tries):
        rng.shuffle(stubs)
        edges = set()
        for a, b in zip(stubs[::2], stubs[1::2]):
            if a == b:
                break
            e = (min(a, b), max(a, b))
            if e in edges:
                break
            edges.add(e)
        else:
            return Graph.from_edges(n, sorted(edges))
    raise RuntimeError(f"pairing model failed {max_tries} times for n={n}, r={r}")


# -- labelled catalog ---------------------------------------------------------


@dataclass
class CatalogEntry:
    graph: Graph
    polynomial: MatchingPolynomial
    stats: MatchingStats
    params: RegularParams
    label: Optional[int] = None

    @property
    def connected(self) -> bool:
        return len(connected_components(self.graph)) == 1

    def record(self) -> dict:
        return {
            "index": self.label,
            "graph6": serialize_graph6(self.graph),
            "polynomial": str(self.polynomial),
            "s": self.stats.saturation_number,
            "matching_number": self.stats.matching_number,
            "c3": self.params.c3,
            "c4": self.params.c4,
            "c5": self.params.c5,
            "q": self.params.q,
        }


def make_entry(g: Graph) -> CatalogEntry:
    return CatalogEntry(
        graph=g,
        polynomial=matching_polynomial(g),
        stats=matching_stats(g),
        params=RegularParams.from_graph(g),
    )


def assign_labels(entries: Iterable[CatalogEntry]) -> list[CatalogEntry]:
    """Label each entry by the printed polynomial it equals; sorted by label."""
    entries = list(entries)
    lookup: dict = {}
    for i in PUBLISHED_POLYNOMIALS:
        lookup.setdefault(published_polynomial(i), []).append(i)
    problems = []
    for e in entries:
        hits = lookup.get(e.polynomial, [])
        if len(hits) != 1:
            problems.append(f"{serialize_graph6(e.graph)} ({e.polynomial}) matches {len(hits)} printed lines")
        else:
            e.label = hits[0]
    labels = [e.label for e in entries if e.label is not None]
    if len(set(labels)) != len(labels):
        problems.append("two graphs share a printed polynomial")
    if not problems and sorted(labels) != sorted(PUBLISHED_POLYNOMIALS):
        problems.append(f"labels {sorted(labels)} do not cover 1..21")
    if problems:
        raise CatalogError("; ".join(problems))
    return sorted(entries, key=lambda e: e.label)


def build_catalog(graphs: Optional[Iterable[Graph]] = None) -> list[CatalogEntry]:
    """The 21 cubic graphs of order ten with their printed labels."""
    graphs = generate_regular(10, 3) if graphs is None else graphs
    return assign_labels(make_entry(g) for g in graphs)


def load_catalog_graphs() -> list[Graph]:
    """Shipped graph6 list, ordered by label."""
    text = resources.files("matchpoly.data").joinpath("cubic10.g6").read_text()
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


# -- verification suites --------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def record(self) -> dict:
        return {"check": self.name, "expected": str(self.expected), "actual": str(self.actual), "ok": self.ok}


def verify_observation(catalog: list[CatalogEntry]) -> list[Check]:
    return [
        Check(f"s(G_{e.label})", PUBLISHED_SATURATION[e.label], e.stats.saturation_number)
        for e in catalog
    ]


def verify_uniqueness(catalog: list[CatalogEntry]) -> list[Check]:
    """Printed-table agreement, pairwise distinctness and perfect matchings.

    Only distinctness inside the cubic order-10 class is machine-checked.
    """
    checks = [Check(f"mu(G_{e.label}) printed", published_polynomial(e.label), e.polynomial) for e in catalog]
    clashes = [
        (a.label, b.label)
        for i, a in enumerate(catalog)
        for b in catalog[i + 1 :]
        if a.polynomial == b.polynomial
    ]
    npairs = len(catalog) * (len(catalog) - 1) // 2
    checks.append(Check(f"pairwise distinct ({npairs} pairs)", [], clashes))
    checks += [
        Check(f"perfect matching G_{e.label}", True, e.polynomial.rho[-1] >= 1 and e.stats.has_perfect_matching)
        for e in catalog
    ]
    return checks


def verify_theorem_pol(catalog: list[CatalogEntry]) -> list[Check]:
    return [Check(f"theorem pol G_{e.label}", e.polynomial, theorem_pol(e.params)) for e in catalog]


def verify_catalog(catalog: list[CatalogEntry]) -> list[Check]:
    checks = [Check("cubic graphs of order 10", 21, len(catalog))]
    checks.append(Check("connected", 19, sum(e.connected for e in catalog)))
    for e in catalog:
        if is_regular(e.graph) != 3 or e.graph.n != 10:
            checks.append(Check(f"G_{e.label} cubic of order 10", True, False))
    return checks + verify_observation(catalog) + verify_uniqueness(catalog) + verify_theorem_pol(catalog)
