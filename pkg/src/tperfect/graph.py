"""Plain simple graphs on dense vertex ids, with bitmask adjacency.

Every search in the package works on :class:`Graph`; embedded graphs expose
one through ``EmbeddedGraph.graph``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``adj[v]`` is the neighbour bitmask of ``v``."""

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @cached_property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def neighbours(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def complement(self) -> Graph:
        full = self.all_mask
        return Graph(self.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(self.adj)))

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Return the induced subgraph (relabelled 0..k-1) and the old ids."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[v]) for u in old for v in bits(self.adj[u] & mask_of(old)) if u < v]
        return Graph.from_edges(len(old), edges), old

    def delete_vertex(self, v: int) -> Graph:
        return self.induced(u for u in range(self.n) if u != v)[0]

    def is_connected(self, within: int | None = None) -> bool:
        within = self.all_mask if within is None else within
        if not within:
            return True
        return self.reach(within & -within, within) == within

    def reach(self, start: int, within: int) -> int:
        """Vertices of ``within`` reachable from the ``start`` mask inside ``within``."""
        seen = start & within
        frontier = seen
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & within & ~seen
            seen |= frontier
        return seen

    def components(self, within: int | None = None) -> list[int]:
        within = self.all_mask if within is None else within
        comps = []
        rest = within
        while rest:
            comp = self.reach(rest & -rest, within)
            comps.append(comp)
            rest &= ~comp
        return comps

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1:])


def cycle_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def wheel_graph(k: int) -> Graph:
    """Wheel W_k: hub 0 joined to the rim cycle 1..k."""
    edges = [(0, i) for i in range(1, k + 1)]
    edges += [(i, i % k + 1) for i in range(1, k + 1)]
    return Graph.from_edges(k + 1, edges)


def complete_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def antihole(k: int) -> Graph:
    return cycle_graph(k).complement()
