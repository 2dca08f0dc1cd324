"""Small graphs and embeddings shared by the unit tests."""

from __future__ import annotations

from tperfect.catalog import FamilySpec, build_family
from tperfect.graph import Graph
from tperfect.surface import EmbeddedGraph, from_triangles, parse_pprs

K6_FACES = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
            (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]

K6_PPRS = """\
pprs 1
# K6 in the projective plane; '-' marks an edge crossing the crosscap
vertices 6
rot 0: 1- 2+ 3+ 4+ 5-
rot 1: 0- 2- 4+ 3+ 5+
rot 2: 0+ 1- 4- 5+ 3+
rot 3: 0+ 2+ 5+ 1+ 4+
rot 4: 0+ 3+ 1+ 2- 5-
rot 5: 0- 1+ 3+ 2+ 4-
"""

W5_PPRS = """\
pprs 1
vertices 6
rot 0: 1+ 2+ 3+ 4+ 5+
rot 1: 0+ 5+ 2+
rot 2: 0+ 1+ 3+
rot 3: 0+ 2+ 4+
rot 4: 0+ 3+ 5+
rot 5: 0+ 4+ 1+
"""


def k6() -> EmbeddedGraph:
    return from_triangles(6, K6_FACES)


def tetrahedron() -> EmbeddedGraph:
    """Sphere embedding; every signature is 0."""
    return from_triangles(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def w5_embedded() -> EmbeddedGraph:
    return parse_pprs(W5_PPRS)


def octahedron_graph() -> Graph:
    return Graph.from_edges(6, [(u, v) for u in range(6) for v in range(u + 1, 6) if v != u + 3 or u >= 3])


def family(name: str, *params: int):
    return build_family(FamilySpec(name, tuple(params)))


def graph(n: int, edges) -> Graph:
    return Graph.from_edges(n, edges)
