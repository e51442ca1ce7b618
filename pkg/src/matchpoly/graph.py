"""Immutable simple graphs and graph6 encoding.

Vertices are the integers ``0..n-1``. Every mutation returns a new graph so
graphs can be used as dictionary keys by the memoized routines downstream.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

MAX_ORDER = 62
GRAPH6_HEADER = ">>graph6<<"

Edge = tuple[int, int]


class Graph6Error(ValueError):
    """Malformed or unsupported graph6 input."""

    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} (at character {position})"
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for v, nbrs in enumerate(self.adj):
            for u in nbrs:
                if u == v:
                    raise ValueError(f"self-loop at vertex {v}")
                if not 0 <= u < self.n or v not in self.adj[u]:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(frozenset() for _ in range(n)))

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return tuple((u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def _check_vertices(g: Graph, vs: Iterable[int]) -> set[int]:
    vs = set(vs)
    for v in vs:
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range for n={g.n}")
    return vs


def delete_vertices(g: Graph, vs: Iterable[int]) -> Graph:
    """Induced subgraph on the remaining vertices, relabelled in order."""
    gone = _check_vertices(g, vs)
    if not gone:
        return g
    keep = [v for v in range(g.n) if v not in gone]
    index = {v: i for i, v in enumerate(keep)}
    return Graph(
        len(keep),
        tuple(frozenset(index[u] for u in g.adj[v] if u in index) for v in keep),
    )


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise ValueError(f"no edge ({u}, {v})")
    adj = list(g.adj)
    adj[u] = adj[u] - {v}
    adj[v] = adj[v] - {u}
    return Graph(g.n, tuple(adj))


def induced_subgraph(g: Graph, vs: Iterable[int]) -> Graph:
    keep = _check_vertices(g, vs)
    return delete_vertices(g, set(range(g.n)) - keep)


def is_regular(g: Graph) -> Optional[int]:
    """Common degree of all vertices, or ``None`` if the degrees differ.

    The order-0 graph has no degree and returns ``None``.
    """
    degs = {len(a) for a in g.adj}
    return degs.pop() if len(degs) == 1 else None


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of the components, ordered by smallest vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [s]
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(frozenset(comp))
    return comps


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph.from_edges(offset, edges)


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph whose vertex ``i`` is ``order[i]`` of ``g``."""
    pos = {v: i for i, v in enumerate(order)}
    return Graph.from_edges(g.n, ((pos[u], pos[v]) for u, v in g.edges))


# -- graph6 -----------------------------------------------------------------


def serialize_graph6(g: Graph) -> str:
    if g.n > MAX_ORDER:
        raise Graph6Error(f"n={g.n} exceeds supported maximum {MAX_ORDER}")
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        word = 0
        for b in bits[k : k + 6]:
            word = (word << 1) | b
        out.append(chr(63 + word))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    offset = 0
    if s.startswith(GRAPH6_HEADER):
        offset = len(GRAPH6_HEADER)
        s = s[offset:]
    if not s:
        raise Graph6Error("empty graph6 string")
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside range 63..126", offset + i)
    n = ord(s[0]) - 63
    if n > MAX_ORDER:
        raise Graph6Error(f"orders above {MAX_ORDER} are not supported", offset)
    nbits = n * (n - 1) // 2
    expected = 1 + (nbits + 5) // 6
    if len(s) != expected:
        raise Graph6Error(
            f"length {len(s)} does not match {expected} for n={n}", offset + min(len(s), expected)
        )
    bits = []
    for ch in s[1:]:
        word = ord(ch) - 63
        bits.extend((word >> (5 - k)) & 1 for k in range(6))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits", offset + len(s) - 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


# -- small named graphs -----------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    """Path on ``n`` vertices."""
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def star_graph(k: int) -> Graph:
    """K_{1,k}: centre 0 joined to ``k`` leaves."""
    return Graph.from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


def prism_graph(k: int = 3) -> Graph:
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)]
    return Graph.from_edges(2 * k, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
