"""Exact matching counts, the matching polynomial and saturation numbers.

Everything here is exhaustive; graphs of interest have at most 14 vertices.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

from .canon import MAX_COMPONENT_ORDER, connected_certificate
from .graph import Graph, connected_components, delete_edge, delete_vertices, induced_subgraph


@dataclass(frozen=True)
class MatchingPolynomial:
    """mu(G, x) = sum_r (-1)^r rho[r] x^(n - 2r), stored as unsigned counts."""

    n: int
    rho: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rho) != self.n // 2 + 1:
            raise ValueError(f"rho needs {self.n // 2 + 1} entries for n={self.n}, got {len(self.rho)}")
        if self.rho[0] != 1:
            raise ValueError("rho[0] must be 1")
        if any(c < 0 for c in self.rho):
            raise ValueError("matching counts cannot be negative")

    @classmethod
    def from_counts(cls, n: int, counts) -> "MatchingPolynomial":
        """Pad or trim a count vector to length n//2 + 1 (trailing entries must be 0)."""
        counts = list(counts)
        size = n // 2 + 1
        if any(counts[size:]):
            raise ValueError("nonzero count beyond n//2")
        return cls(n, tuple(counts[:size]) + (0,) * (size - len(counts)))

    def coefficients(self) -> dict[int, int]:
        """Signed coefficients keyed by power of x (zero terms omitted)."""
        return {self.n - 2 * r: (-1) ** r * c for r, c in enumerate(self.rho) if c}

    def __call__(self, x: Union[int, float]):
        return sum(c * x**p for p, c in self.coefficients().items())

    def __mul__(self, other: "MatchingPolynomial") -> "MatchingPolynomial":
        return MatchingPolynomial.from_counts(self.n + other.n, _convolve(self.rho, other.rho))

    def __str__(self) -> str:
        return render_polynomial(self.coefficients())

    @property
    def degree_of_matching(self) -> int:
        return max(r for r, c in enumerate(self.rho) if c)


def _convolve(a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def render_polynomial(coeffs: dict[int, int]) -> str:
    """``x^10-15x^8+...`` with descending powers and explicit signs."""
    parts = []
    for p in sorted((p for p, c in coeffs.items() if c), reverse=True):
        c = coeffs[p]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = "" if p == 0 else ("x" if p == 1 else f"x^{p}")
        body = mono if (mag == 1 and p) else f"{mag}{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(s + b for s, b in parts[1:])


_TERM = re.compile(r"([+-]?)(\d*)(x(?:\^(\d+))?)?")


def parse_polynomial(text: str) -> dict[int, int]:
    """Inverse of :func:`render_polynomial`."""
    s = text.replace(" ", "")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} at {pos}")
        sign = -1 if m.group(1) == "-" else 1
        mag = int(m.group(2)) if m.group(2) else 1
        power = 0 if not m.group(3) else int(m.group(4) or 1)
        coeffs[power] = coeffs.get(power, 0) + sign * mag
        pos = m.end()
    return coeffs


def polynomial_from_coefficients(n: int, coeffs: dict[int, int]) -> MatchingPolynomial:
    rho = [0] * (n // 2 + 1)
    for p, c in coeffs.items():
        if (n - p) % 2 or p > n or p < 0:
            raise ValueError(f"x^{p} cannot occur in a matching polynomial of order {n}")
        r = (n - p) // 2
        rho[r] = (-1) ** r * c
    return MatchingPolynomial(n, tuple(rho))


# -- matching polynomial ------------------------------------------------------

# keyed by connected certificate (or the graph itself past the certificate cap)
_memo: dict = {}


def _component_rho(g: Graph) -> tuple[int, ...]:
    m = g.num_edges
    if m == 0:
        return (1,)
    if m == 1:
        return (1, 1)
    key = connected_certificate(g) if g.n <= MAX_COMPONENT_ORDER else g
    hit = _memo.get(key)
    if hit is not None:
        return hit
    u = max(range(g.n), key=lambda v: (g.degree(v), -v))
    v = min(g.adj[u])
    without = _rho(delete_edge(g, u, v))
    through = _rho(delete_vertices(g, (u, v)))
    out = list(without)
    for r, c in enumerate(through):
        if r + 1 < len(out):
            out[r + 1] += c
        else:
            out.append(c)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    result = tuple(out)
    _memo[key] = result
    return result


def _rho(g: Graph) -> tuple[int, ...]:
    comps = connected_components(g)
    if len(comps) == 1:
        return _component_rho(g)
    acc: list[int] = [1]
    for comp in comps:
        if len(comp) > 1:
            acc = _convolve(acc, _component_rho(induced_subgraph(g, comp)))
    return tuple(acc)


def matching_polynomial(g: Graph) -> MatchingPolynomial:
    """Matching polynomial by the edge recurrence mu(G) = mu(G-e) - mu(G-u-v).

    Residual components are memoized on their canonical certificate, so
    isomorphic pieces are solved once per process.
    """
    return MatchingPolynomial.from_counts(g.n, _rho(g))


def clear_memo() -> None:
    _memo.clear()


def iter_matchings(g: Graph) -> Iterator[tuple[tuple[int, int], ...]]:
    """Every matching (including the empty one), edges in increasing order."""
    edges = g.edges

    def extend(start: int, used: int, chosen: list) -> Iterator[tuple[tuple[int, int], ...]]:
        yield tuple(chosen)
        for i in range(start, len(edges)):
            u, v = edges[i]
            bits = (1 << u) | (1 << v)
            if used & bits:
                continue
            chosen.append(edges[i])
            yield from extend(i + 1, used | bits, chosen)
            chosen.pop()

    return extend(0, 0, [])


def matching_polynomial_enumeration(g: Graph) -> MatchingPolynomial:
    """Reference implementation: list every matching explicitly."""
    counts = [0] * (g.n // 2 + 1)
    for mt in iter_matchings(g):
        counts[len(mt)] += 1
    return MatchingPolynomial(g.n, tuple(counts))


def count_matchings(g: Graph, r: int) -> int:
    if r < 0:
        return 0
    rho = matching_polynomial(g).rho
    return rho[r] if r < len(rho) else 0


def matching_number(g: Graph) -> int:
    return matching_polynomial(g).degree_of_matching


def has_perfect_matching(g: Graph) -> bool:
    return g.n % 2 == 0 and matching_number(g) == g.n // 2


# -- saturation and independence ---------------------------------------------


def saturation_number(g: Graph) -> int:
    """Size of a smallest maximal matching.

    Branches on the first edge not yet dominated: some edge of the final
    matching must cover one of its ends, and that edge has both ends free.
    """
    edges = [((1 << u) | (1 << v), u, v) for u, v in g.edges]
    if not edges:
        return 0
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for bits, u, v in edges:
        incident[u].append(bits)
        incident[v].append(bits)

    covered = 0
    size = 0
    for bits, _, _ in edges:
        if not covered & bits:
            covered |= bits
            size += 1
    best = size

    def search(covered: int, size: int) -> None:
        nonlocal best
        for bits, u, v in edges:
            if not covered & bits:
                break
        else:
            best = min(best, size)
            return
        if size + 1 >= best:
            return
        for cand in dict.fromkeys(incident[u] + incident[v]):
            if not covered & cand:
                search(covered | cand, size + 1)

    search(0, 0)
    return best


def independence_number(g: Graph) -> int:
    nbr = [sum(1 << u for u in g.adj[v]) for v in range(g.n)]

    @lru_cache(maxsize=None)
    def alpha(mask: int) -> int:
        if not mask:
            return 0
        # a vertex of degree <= 1 inside mask can always be taken
        best_v, best_d = -1, -1
        m = mask
        while m:
            b = m & -m
            w = b.bit_length() - 1
            d = bin(nbr[w] & mask).count("1")
            if d <= 1:
                return 1 + alpha(mask & ~b & ~nbr[w])
            if d > best_d:
                best_v, best_d = w, d
            m ^= b
        b = 1 << best_v
        return max(alpha(mask & ~b), 1 + alpha(mask & ~b & ~nbr[best_v]))

    return alpha((1 << g.n) - 1)


def saturation_bounds(g: Graph) -> tuple[int, int]:
    """Lower bounds ``ceil(a'/2)`` and ``ceil((n - alpha)/2)`` on the saturation number."""
    return math.ceil(matching_number(g) / 2), math.ceil((g.n - independence_number(g)) / 2)


@dataclass(frozen=True)
class MatchingStats:
    matching_number: int
    saturation_number: int
    independence_number: int
    has_perfect_matching: bool


def matching_stats(g: Graph) -> MatchingStats:
    nu = matching_number(g)
    return MatchingStats(
        matching_number=nu,
        saturation_number=saturation_number(g),
        independence_number=independence_number(g),
        has_perfect_matching=g.n % 2 == 0 and nu == g.n // 2,
    )
