"""Canonical labelling by colour refinement plus individualization.

Each connected component is labelled independently: refine the degree
partition to an equitable one, branch on every vertex of the first smallest
non-singleton cell, and keep the largest adjacency code over all leaves of the
search tree. Leaves with equal codes reveal automorphisms, and a child whose
subtree is the image of an explored sibling under one of them (fixing the
current prefix) is skipped; this keeps highly symmetric graphs such as K_n
cheap without changing the maximum. Components are capped at 14 vertices.
"""
from __future__ import annotations

from .graph import Graph, connected_components, induced_subgraph, relabel

MAX_COMPONENT_ORDER = 14

# (order, adjacency code) for one connected component
ComponentCert = tuple[int, int]
Certificate = tuple[ComponentCert, ...]


class CertificateSizeError(ValueError):
    pass


def _refine(adj: list[list[int]], colors: list[int]) -> list[int]:
    ncells = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [rank[s] for s in sigs]
        if len(rank) == ncells:
            return colors
        ncells = len(rank)


def _code(adj: list[list[int]], colors: list[int]) -> int:
    # bit for pair (i, j), i < j, sits at j*(j-1)/2 + i; higher positions dominate
    code = 0
    for v, nbrs in enumerate(adj):
        pv = colors[v]
        for u in nbrs:
            pu = colors[u]
            if pu < pv:
                code |= 1 << (pv * (pv - 1) // 2 + pu)
    return code


def _in_known_orbit(v: int, explored: list[int], autos: list[tuple[int, ...]], prefix: list[int]) -> bool:
    # only automorphisms fixing the individualized prefix map one subtree onto another
    gens = [a for a in autos if all(a[p] == p for p in prefix)]
    seen, stack = {v}, [v]
    while stack:
        w = stack.pop()
        for a in gens:
            x = a[w]
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return not seen.isdisjoint(explored)


def _search(adj: list[list[int]], colors: list[int]) -> tuple[int, list[int]]:
    n = len(adj)
    first: tuple[int, list[int]] | None = None
    best: tuple[int, list[int]] | None = None
    autos: list[tuple[int, ...]] = []

    def visit(colors: list[int], prefix: list[int]) -> None:
        nonlocal first, best
        colors = _refine(adj, colors)
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        if len(sizes) == n:
            code = _code(adj, colors)
            if first is None:
                first = best = (code, colors)
                return
            assert best is not None
            for ref in (first, best):
                if code == ref[0]:
                    # equal codes: sending each vertex to the one at the same position is an automorphism
                    at = [0] * n
                    for v, pos in enumerate(ref[1]):
                        at[pos] = v
                    autos.append(tuple(at[colors[v]] for v in range(n)))
                    break
            if code > best[0]:
                best = (code, colors)
            return
        target = min((size, c) for c, size in sizes.items() if size > 1)[1]
        explored: list[int] = []
        for v in range(n):
            if colors[v] != target or (explored and _in_known_orbit(v, explored, autos, prefix)):
                continue
            explored.append(v)
            visit([2 * c + (1 if (c == target and u != v) else 0) for u, c in enumerate(colors)], prefix + [v])

    visit(colors, [])
    assert best is not None
    return best


def _component_labelling(g: Graph) -> tuple[ComponentCert, list[int]]:
    """Certificate of connected ``g`` and its canonical vertex order."""
    if g.n > MAX_COMPONENT_ORDER:
        raise CertificateSizeError(
            f"component of order {g.n} exceeds the certificate cap {MAX_COMPONENT_ORDER}"
        )
    adj = [sorted(a) for a in g.adj]
    code, colors = _search(adj, [len(a) for a in adj])
    order = sorted(range(g.n), key=colors.__getitem__)
    return (g.n, code), order


def connected_certificate(g: Graph) -> ComponentCert:
    """Certificate of a graph assumed connected (used as a memo key)."""
    return _component_labelling(g)[0]


def canonical_labelling(g: Graph) -> tuple[Certificate, list[int]]:
    """Certificate plus a vertex order realising the canonical form.

    Components are placed in increasing certificate order.
    """
    parts = []
    for comp in connected_components(g):
        verts = sorted(comp)
        cert, order = _component_labelling(induced_subgraph(g, verts))
        parts.append((cert, [verts[i] for i in order]))
    parts.sort(key=lambda p: p[0])
    cert = tuple(p[0] for p in parts)
    order = [v for _, o in parts for v in o]
    return cert, order


def canonical_certificate(g: Graph) -> Certificate:
    """Isomorphism-complete invariant: equal iff the graphs are isomorphic."""
    return canonical_labelling(g)[0]


def canonical_form(g: Graph) -> Graph:
    return relabel(g, canonical_labelling(g)[1])


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.num_edges == h.num_edges and canonical_certificate(g) == canonical_certificate(h)
