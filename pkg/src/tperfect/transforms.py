"""Reduction moves on Eulerian projective-plane triangulations.

All moves edit the face set and rebuild the rotation system with
:func:`from_triangles`, so the embedding of the result is forced by the
faces. Ids are compacted after every deleting move; each log step keeps the
full old-to-new id map.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Graph, bits
from .surface import (
    EmbeddedGraph,
    all_triangles,
    from_triangles,
    interior_vertices,
    is_contractible,
    require_triangulation,
)


class TransformError(ValueError):
    pass


class StepKind(str, enum.Enum):
    EVEN_CONTRACT = "contract"
    EVEN_SPLIT = "split"
    OCTA_DELETE = "octa-"
    OCTA_ATTACH = "octa+"


@dataclass(frozen=True)
class EvenContractionSite:
    """``x`` has link (a, b, a2, b2); contracting merges x, b, b2 into one vertex."""

    x: int
    a: int
    a2: int
    b: int
    b2: int


@dataclass(frozen=True)
class OctahedronSite:
    """Outer triangle (u, v, w) filled by the triangle (x, y, z) and nothing else."""

    triangle: tuple[int, int, int]
    inner: tuple[int, int, int]


@dataclass(frozen=True)
class Step:
    kind: StepKind
    args: tuple[int, ...]
    id_map: dict[int, int] = field(default_factory=dict, compare=False, hash=False)

    def to_line(self) -> str:
        return " ".join([self.kind.value, *map(str, self.args)])


@dataclass
class TransformLog:
    steps: list[Step] = field(default_factory=list)

    def append(self, step: Step) -> None:
        self.steps.append(step)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def to_text(self) -> str:
        return "".join(s.to_line() + "\n" for s in self.steps)

    @classmethod
    def parse(cls, text: str) -> TransformLog:
        log = cls()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            word, *rest = line.split()
            try:
                kind = StepKind(word)
                args = tuple(int(t) for t in rest)
            except ValueError:
                raise TransformError(f"log line {lineno}: cannot parse {raw!r}") from None
            if len(args) != 3:
                raise TransformError(f"log line {lineno}: expected three vertex ids")
            log.append(Step(kind, args))
        return log

    def replay(self, g: EmbeddedGraph) -> EmbeddedGraph:
        for step in self.steps:
            g, _ = apply_step(g, step)
        return g


def _compact(n: int, removed: Iterable[int], merged: dict[int, int] | None = None) -> dict[int, int]:
    """Order-preserving id map after deleting ``removed``; ``merged`` sends ids onto survivors first."""
    removed = set(removed)
    keep = [v for v in range(n) if v not in removed]
    index = {v: i for i, v in enumerate(keep)}
    out = {v: index[v] for v in keep}
    for v, target in (merged or {}).items():
        out[v] = index[target]
    return out


def _rebuild(n: int, faces: Iterable[Sequence[int]], id_map: dict[int, int] | None = None) -> EmbeddedGraph:
    if id_map is not None:
        faces = [tuple(id_map[v] for v in f) for f in faces]
        n = len(set(id_map.values()))
    try:
        g = from_triangles(n, faces)
        require_triangulation(g)
    except ValueError as exc:
        raise TransformError(f"move does not give a triangulation: {exc}") from None
    return g


# --------------------------------------------------------------------------
# even contraction and splitting
# --------------------------------------------------------------------------


def _site_ok(g: EmbeddedGraph, x: int, a: int, a2: int, b: int, b2: int) -> bool:
    graph = g.graph
    if graph.has_edge(b, b2):
        return False
    return graph.adj[b] & graph.adj[b2] == (1 << a) | (1 << a2) | (1 << x)


def find_even_contractions(g: EmbeddedGraph) -> list[EvenContractionSite]:
    sites = []
    for x in range(g.n):
        if g.degree(x) != 4:
            continue
        l0, l1, l2, l3 = g.neighbours_in_order(x)
        for a, a2, b, b2 in ((l0, l2, l1, l3), (l1, l3, l0, l2)):
            a, a2 = sorted((a, a2))
            b, b2 = sorted((b, b2))
            if _site_ok(g, x, a, a2, b, b2):
                sites.append(EvenContractionSite(x, a, a2, b, b2))
    return sorted(sites, key=lambda s: (s.x, s.b))


def site_at(g: EmbeddedGraph, x: int, b: int, b2: int) -> EvenContractionSite:
    """The site at ``x`` that merges ``b`` and ``b2``; raises if it is not valid."""
    if not 0 <= x < g.n or g.degree(x) != 4:
        raise TransformError(f"vertex {x} does not have degree 4")
    link = g.neighbours_in_order(x)
    if b not in link or b2 not in link or abs(link.index(b) - link.index(b2)) != 2:
        raise TransformError(f"{b} and {b2} are not opposite in the link of {x}")
    a, a2 = sorted(v for v in link if v not in (b, b2))
    b, b2 = sorted((b, b2))
    if not _site_ok(g, x, a, a2, b, b2):
        raise TransformError(f"common neighbours of {b} and {b2} are not exactly {{{a}, {a2}, {x}}} "
                             "or they are adjacent")
    return EvenContractionSite(x, a, a2, b, b2)


def even_contract(g: EmbeddedGraph, site: EvenContractionSite) -> tuple[EmbeddedGraph, Step]:
    """Identify x, b, b2 into one vertex y = min(x, b, b2); |V| -2, |E| -6, F -4."""
    site = site_at(g, site.x, site.b, site.b2)
    x, b, b2 = site.x, site.b, site.b2
    y = min(x, b, b2)
    id_map = _compact(g.n, {x, b, b2} - {y}, {v: y for v in (x, b, b2) if v != y})
    faces = [f for f in g.faces if x not in f]
    return _rebuild(g.n, faces, id_map), Step(StepKind.EVEN_CONTRACT, (x, b, b2), id_map)


def _arcs(g: EmbeddedGraph, y: int, a: int, a2: int) -> tuple[list[int], list[int]]:
    rot = g.neighbours_in_order(y)
    i, j = rot.index(a), rot.index(a2)
    L = len(rot)
    first = [rot[(i + s) % L] for s in range((j - i) % L + 1)]
    second = [rot[(j + s) % L] for s in range((i - j) % L + 1)]
    return first, second


def even_split(g: EmbeddedGraph, y: int, a: int, a2: int) -> tuple[EmbeddedGraph, Step]:
    """Replace ``y`` by x, b, b2 with link(x) = (a, b, a2, b2).

    ``b`` keeps the id of ``y`` and takes the rotation arc from ``a`` to
    ``a2``; the new ``x`` and ``b2`` get ids n and n + 1. Both open arcs must
    be non-empty and of odd length so that every degree stays even.
    """
    if not 0 <= y < g.n:
        raise TransformError(f"vertex {y} out of range")
    nbrs = g.neighbours_in_order(y)
    if a not in nbrs or a2 not in nbrs or a == a2:
        raise TransformError(f"gates {a}, {a2} must be distinct neighbours of {y}")
    first, second = _arcs(g, y, a, a2)
    if len(first) < 3 or len(second) < 3:
        raise TransformError(f"gates {a}, {a2} are adjacent in the rotation of {y}")
    if len(first) % 2 == 0 or len(second) % 2 == 0:
        raise TransformError(f"gates {a}, {a2} split the rotation of {y} into even arcs")
    b, x, b2 = y, g.n, g.n + 1
    faces = [f for f in g.faces if y not in f]
    faces += [(b, first[k], first[k + 1]) for k in range(len(first) - 1)]
    faces += [(b2, second[k], second[k + 1]) for k in range(len(second) - 1)]
    faces += [(x, a, b), (x, b, a2), (x, a2, b2), (x, b2, a)]
    id_map = {v: v for v in range(g.n)}
    return _rebuild(g.n + 2, faces), Step(StepKind.EVEN_SPLIT, (y, a, a2), id_map)


# --------------------------------------------------------------------------
# octahedra
# --------------------------------------------------------------------------


def find_octahedra(g: EmbeddedGraph) -> list[OctahedronSite]:
    graph = g.graph
    deg4 = [v for v in range(g.n) if g.degree(v) == 4]
    four = sum(1 << v for v in deg4)
    sites = []
    for x, y, z in all_triangles(graph):
        if not all(four >> v & 1 for v in (x, y, z)):
            continue
        inner = (1 << x) | (1 << y) | (1 << z)
        outer = (graph.adj[x] | graph.adj[y] | graph.adj[z]) & ~inner
        if outer.bit_count() != 3:
            continue
        u, v, w = bits(outer)
        if not graph.is_clique((u, v, w)) or frozenset((u, v, w)) in g.triangles():
            continue
        if not is_contractible(g, (u, v, w)) or interior_vertices(g, (u, v, w)) != {x, y, z}:
            continue
        sites.append(OctahedronSite((u, v, w), (x, y, z)))
    return sorted(sites, key=lambda s: (s.triangle, s.inner))


def delete_octahedron(g: EmbeddedGraph, t: Sequence[int]) -> tuple[EmbeddedGraph, Step]:
    key = tuple(sorted(t))
    site = next((s for s in find_octahedra(g) if s.triangle == key), None)
    if site is None:
        raise TransformError(f"triangle {tuple(t)} does not bound an octahedron")
    inner = set(site.inner)
    faces = [f for f in g.faces if not inner & set(f)] + [site.triangle]
    id_map = _compact(g.n, inner)
    return _rebuild(g.n, faces, id_map), Step(StepKind.OCTA_DELETE, site.triangle, id_map)


def attach_octahedron(g: EmbeddedGraph, f: Sequence[int]) -> tuple[EmbeddedGraph, Step]:
    """Fill face (u, v, w) with new x, y, z = n, n+1, n+2, where x sees u, w; y sees u, v; z sees v, w."""
    u, v, w = f
    faces = list(g.faces)
    target = frozenset((u, v, w))
    if len(target) != 3 or target not in g.triangles():
        raise TransformError(f"{tuple(f)} is not a face")
    x, y, z = g.n, g.n + 1, g.n + 2
    faces = [fc for fc in faces if frozenset(fc) != target]
    faces += [(u, v, y), (v, w, z), (w, u, x), (u, y, x), (v, z, y), (w, x, z), (x, y, z)]
    id_map = {i: i for i in range(g.n)}
    return _rebuild(g.n + 3, faces), Step(StepKind.OCTA_ATTACH, (u, v, w), id_map)


# --------------------------------------------------------------------------
# reduction and replay
# --------------------------------------------------------------------------


def apply_step(g: EmbeddedGraph, step: Step) -> tuple[EmbeddedGraph, Step]:
    a, b, c = step.args
    if step.kind is StepKind.EVEN_CONTRACT:
        return even_contract(g, site_at(g, a, b, c))
    if step.kind is StepKind.EVEN_SPLIT:
        return even_split(g, a, b, c)
    if step.kind is StepKind.OCTA_DELETE:
        return delete_octahedron(g, (a, b, c))
    return attach_octahedron(g, (a, b, c))


def reduce_to_irreducible(g: EmbeddedGraph) -> tuple[EmbeddedGraph, TransformLog]:
    """Delete octahedra (lowest triangle first), else contract the first site, until neither applies."""
    log = TransformLog()
    while True:
        octa = find_octahedra(g)
        if octa:
            g, step = delete_octahedron(g, octa[0].triangle)
        else:
            sites = find_even_contractions(g)
            if not sites:
                return g, log
            g, step = even_contract(g, sites[0])
        log.append(step)


# --------------------------------------------------------------------------
# colouring and clique separators
# --------------------------------------------------------------------------


def three_colour(g: Graph | EmbeddedGraph) -> tuple[int, ...] | None:
    """A proper colouring with colours 0, 1, 2, by backtracking on the most constrained vertex."""
    g = g.graph if isinstance(g, EmbeddedGraph) else g
    colour = [-1] * g.n

    def options(v: int) -> list[int]:
        used = {colour[u] for u in bits(g.adj[v])}
        return [c for c in range(3) if c not in used]

    def solve(left: int) -> bool:
        if not left:
            return True
        best = min(bits(left), key=lambda v: (len(options(v)), -g.degree(v), v))
        for c in options(best):
            colour[best] = c
            if solve(left & ~(1 << best)):
                return True
        colour[best] = -1
        return False

    return tuple(colour) if solve(g.all_mask) else None


def _cliques(g: Graph) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def grow(clique: tuple[int, ...], cand: int) -> None:
        out.append(clique)
        for v in bits(cand):
            grow(clique + (v,), cand & g.adj[v] & ~((2 << v) - 1))

    for v in range(g.n):
        grow((v,), g.adj[v] & ~((2 << v) - 1))
    return sorted(out, key=lambda c: (len(c), c))


def clique_separator(g: Graph) -> tuple[int, ...] | None:
    """Smallest clique whose removal disconnects ``g`` (first in id order)."""
    for clique in _cliques(g):
        rest = g.all_mask & ~sum(1 << v for v in clique)
        if rest and not g.is_connected(rest):
            return clique
    return None


def clique_separator_components(g: Graph | EmbeddedGraph) -> list[tuple[Graph, tuple[int, ...]]]:
    """Recursively split at clique cutsets; each piece comes with its original vertex ids."""
    g = g.graph if isinstance(g, EmbeddedGraph) else g
    if not g.is_connected():
        raise ValueError("graph is disconnected")
    out: list[tuple[Graph, tuple[int, ...]]] = []
    stack: list[tuple[Graph, tuple[int, ...]]] = [(g, tuple(range(g.n)))]
    while stack:
        h, ids = stack.pop()
        x = clique_separator(h)
        if x is None:
            out.append((h, ids))
            continue
        xmask = sum(1 << v for v in x)
        for comp in h.components(h.all_mask & ~xmask):
            piece, local = h.induced(bits(comp | xmask))
            stack.append((piece, tuple(ids[v] for v in local)))
    return sorted(out, key=lambda p: p[1])
