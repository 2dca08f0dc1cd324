"""Graphs embedded in the projective plane by signed rotation systems.

A vertex's rotation is the cyclic order of its neighbours; each undirected
edge carries a signature bit (0 keeps the local orientation, 1 reverses it).
A cycle is contractible exactly when its signature sum is even, because the
fundamental group of the projective plane is Z/2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .graph import Graph, bits

Rotation = tuple[tuple[int, int], ...]


class PprsError(ValueError):
    """Malformed ``.pprs`` input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NotACycleError(ValueError):
    pass


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class CycleWitness:
    """A cycle given as a cyclic vertex sequence, with its signature sum."""

    vertices: tuple[int, ...]
    signature: int

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def parity(self) -> int:
        return len(self.vertices) % 2

    @property
    def contractible(self) -> bool:
        return self.signature == 0

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def segment(self, v1: int, v2: int, v3: int) -> tuple[int, ...]:
        return segment(self, v1, v2, v3)


def segment(c: CycleWitness | Sequence[int], v1: int, v2: int, v3: int) -> tuple[int, ...]:
    """The path from ``v1`` to ``v2`` along the cycle that avoids ``v3``.

    Its edge count is ``len(result) - 1``.
    """
    vs = tuple(c.vertices if isinstance(c, CycleWitness) else c)
    try:
        i, j, k = vs.index(v1), vs.index(v2), vs.index(v3)
    except ValueError as exc:
        raise NotACycleError(f"vertex not on cycle: {exc}") from None
    if len({i, j, k}) != 3:
        raise ValueError("segment endpoints must be three distinct cycle vertices")
    L = len(vs)
    forward = [vs[(i + s) % L] for s in range((j - i) % L + 1)]
    if v3 not in forward:
        return tuple(forward)
    return tuple(vs[(i - s) % L] for s in range((i - j) % L + 1))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[tuple[str, str], ...] = ()
    vertices: int = 0
    edges: int = 0
    faces: int | None = None

    @property
    def euler_characteristic(self) -> int | None:
        return None if self.faces is None else self.vertices - self.edges + self.faces

    def messages(self) -> list[str]:
        return [f"{rule}: {locus}" for rule, locus in self.violations]


@dataclass(frozen=True)
class EmbeddedGraph:
    """Simple graph with a signed rotation system.

    ``rotation[v]`` is the cyclic sequence of ``(neighbour, signature)`` pairs.
    Instances are structurally well-formed once parsed; use :func:`validate`
    to check the surface invariants.
    """

    rotation: tuple[Rotation, ...]
    _pos: tuple[dict[int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_pos", tuple({u: i for i, (u, _) in enumerate(r)} for r in self.rotation))

    @property
    def n(self) -> int:
        return len(self.rotation)

    @cached_property
    def graph(self) -> Graph:
        adj = [0] * self.n
        for v, rot in enumerate(self.rotation):
            for u, _ in rot:
                adj[v] |= 1 << u
                adj[u] |= 1 << v
        return Graph(self.n, tuple(adj))

    @property
    def adj(self) -> tuple[int, ...]:
        return self.graph.adj

    @cached_property
    def signatures(self) -> dict[tuple[int, int], int]:
        sig = {}
        for v, rot in enumerate(self.rotation):
            for u, s in rot:
                sig.setdefault(_edge(u, v), s)
        return sig

    @property
    def edge_count(self) -> int:
        return len(self.signatures)

    def sig(self, u: int, v: int) -> int:
        return self.signatures[_edge(u, v)]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbours_in_order(self, v: int) -> list[int]:
        return [u for u, _ in self.rotation[v]]

    def succ(self, v: int, u: int) -> int:
        rot = self.rotation[v]
        return rot[(self._pos[v][u] + 1) % len(rot)][0]

    def pred(self, v: int, u: int) -> int:
        rot = self.rotation[v]
        return rot[(self._pos[v][u] - 1) % len(rot)][0]

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        return tuple(trace_faces(self))

    def triangles(self) -> set[frozenset[int]]:
        """Face vertex sets; meaningful for triangulations."""
        return {frozenset(f) for f in self.faces}

    def cycle(self, vertices: Iterable[int]) -> CycleWitness:
        vs = tuple(vertices)
        if len(vs) < 3 or len(set(vs)) != len(vs):
            raise NotACycleError(f"not a cycle: {vs}")
        total = 0
        for i, u in enumerate(vs):
            w = vs[(i + 1) % len(vs)]
            if not self.graph.has_edge(u, w):
                raise NotACycleError(f"{u}-{w} is not an edge")
            total ^= self.sig(u, w)
        return CycleWitness(vs, total)


# --------------------------------------------------------------------------
# .pprs text format
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"^(\d+)([+-])$")


def parse_pprs(text: str | bytes) -> EmbeddedGraph:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header: list[tuple[int, str]] = []
    rot_lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        (rot_lines if len(header) >= 2 else header).append((lineno, line))
    if len(header) < 1 or header[0][1].split() != ["pprs", "1"]:
        raise PprsError("expected header 'pprs 1'", header[0][0] if header else 1)
    if len(header) < 2:
        raise PprsError("missing 'vertices <n>' line", header[0][0] + 1)
    lineno, line = header[1]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "vertices" or not parts[1].isdigit():
        raise PprsError(f"expected 'vertices <n>', got {line!r}", lineno)
    n = int(parts[1])
    rotation: list[Rotation | None] = [None] * n
    for lineno, line in rot_lines:
        head, sep, rest = line.partition(":")
        hp = head.split()
        if not sep or len(hp) != 2 or hp[0] != "rot" or not hp[1].isdigit():
            raise PprsError(f"expected 'rot <v>: ...', got {line!r}", lineno)
        v = int(hp[1])
        if v >= n:
            raise PprsError(f"vertex id {v} out of range (n={n})", lineno)
        if rotation[v] is not None:
            raise PprsError(f"duplicate vertex id {v}", lineno)
        entries = []
        for tok in rest.split():
            m = _TOKEN.match(tok)
            if not m:
                raise PprsError(f"bad neighbour token {tok!r}", lineno)
            u = int(m.group(1))
            if u >= n:
                raise PprsError(f"neighbour id {u} out of range (n={n})", lineno)
            entries.append((u, 0 if m.group(2) == "+" else 1))
        rotation[v] = tuple(entries)
    return EmbeddedGraph(tuple(r if r is not None else () for r in rotation))


def write_pprs(g: EmbeddedGraph, comment: str | None = None) -> str:
    lines = ["pprs 1"]
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines.append(f"vertices {g.n}")
    for v, rot in enumerate(g.rotation):
        if rot:
            start = min(range(len(rot)), key=lambda i: rot[i][0])
            rot = rot[start:] + rot[:start]
        toks = " ".join(f"{u}{'-' if s else '+'}" for u, s in rot)
        lines.append(f"rot {v}: {toks}".rstrip())
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# faces and validation
# --------------------------------------------------------------------------


def _canonical_walk(walk: Sequence[int]) -> tuple[int, ...]:
    L = len(walk)
    best = None
    for seq in (list(walk), list(reversed(walk))):
        for i in range(L):
            cand = tuple(seq[i:] + seq[:i])
            if best is None or cand < best:
                best = cand
    return best


def trace_faces(g: EmbeddedGraph) -> list[tuple[int, ...]]:
    """Face boundary walks of a reciprocal signed rotation system.

    States are (u, v, eps): leaving ``u`` towards ``v`` with local orientation
    ``eps`` at ``u``. Each face is met once per direction; both directions are
    consumed together so every face is reported once.
    """
    seen = set()
    faces = []
    for u in range(g.n):
        for v, _ in g.rotation[u]:
            for eps in (0, 1):
                if (u, v, eps) in seen:
                    continue
                walk = []
                state = (u, v, eps)
                while state not in seen:
                    a, b, e = state
                    seen.add(state)
                    walk.append(a)
                    e2 = e ^ g.sig(a, b)
                    seen.add((b, a, 1 - e2))
                    c = g.succ(b, a) if e2 == 0 else g.pred(b, a)
                    state = (b, c, e2)
                faces.append(_canonical_walk(walk))
    return sorted(faces)


def _is_orientable(g: EmbeddedGraph) -> bool:
    """True iff some local-orientation switch makes every signature 0."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v, sg in g.rotation[u]:
                want = side[u] ^ sg
                if side[v] < 0:
                    side[v] = want
                    stack.append(v)
                elif side[v] != want:
                    return False
    return True


def validate(g: EmbeddedGraph, triangulation: bool = False) -> ValidationReport:
    violations: list[tuple[str, str]] = []
    n = g.n
    structural_ok = True
    for v, rot in enumerate(g.rotation):
        nbrs = [u for u, _ in rot]
        if v in nbrs:
            violations.append(("loop", f"vertex {v}"))
            structural_ok = False
        if len(set(nbrs)) != len(nbrs):
            violations.append(("repeated-neighbour", f"vertex {v}"))
            structural_ok = False
        for u, s in rot:
            if not 0 <= u < n:
                violations.append(("range", f"vertex {v} lists {u}"))
                structural_ok = False
                continue
            back = [t for w, t in g.rotation[u] if w == v]
            if not back:
                violations.append(("reciprocity", f"{u} in rotation({v}) but {v} not in rotation({u})"))
                structural_ok = False
            elif back[0] != s:
                violations.append(("signature", f"edge {_edge(u, v)} has unequal signature bits"))
                structural_ok = False
    if not structural_ok:
        return ValidationReport(False, tuple(violations), n, 0, None)

    E = g.edge_count
    if not g.graph.is_connected():
        violations.append(("connected", "graph is disconnected"))
    F = len(g.faces) if E else 1
    chi = n - E + F
    if chi != 1:
        violations.append(("euler", f"χ = {chi}, not projective plane"))
    if _is_orientable(g):
        violations.append(("orientable", "every cycle has even signature sum"))
    if triangulation:
        for f in g.faces:
            if len(f) != 3:
                violations.append(("triangulation", f"face {f} has length {len(f)}"))
        if E and 2 * E != 3 * F:
            violations.append(("triangulation", f"2E = {2 * E} but 3F = {3 * F}"))
    return ValidationReport(not violations, tuple(violations), n, E, F)


def require_triangulation(g: EmbeddedGraph) -> None:
    report = validate(g, triangulation=True)
    if not report.ok:
        raise ValueError("not a projective-plane triangulation: " + "; ".join(report.messages()))


# --------------------------------------------------------------------------
# building from faces
# --------------------------------------------------------------------------


def from_triangles(n: int, triangles: Iterable[Iterable[int]]) -> EmbeddedGraph:
    """Signed rotation system of the closed surface glued from ``triangles``.

    Each vertex link must be a single cycle and each edge must lie on exactly
    two triangles. The gauge is canonical: a rotation starts at the smallest
    neighbour and continues to the smaller of that neighbour's two link
    neighbours.
    """
    tris = []
    for t in triangles:
        t = tuple(t)
        if len(t) != 3 or len(set(t)) != 3:
            raise ValueError(f"degenerate triangle {t}")
        if not all(0 <= v < n for v in t):
            raise ValueError(f"triangle {t} out of range for n={n}")
        tris.append(t)
    if len({frozenset(t) for t in tris}) != len(tris):
        raise ValueError("repeated triangle")
    edge_faces: dict[tuple[int, int], list[int]] = {}
    link: list[dict[int, list[int]]] = [{} for _ in range(n)]
    for idx, (a, b, c) in enumerate(tris):
        for u, v, w in ((a, b, c), (b, c, a), (c, a, b)):
            edge_faces.setdefault(_edge(u, v), []).append(idx)
            link[w].setdefault(u, []).append(v)
            link[w].setdefault(v, []).append(u)
    for e, fs in edge_faces.items():
        if len(fs) != 2:
            raise ValueError(f"edge {e} lies on {len(fs)} triangles")

    order: list[list[int]] = []
    for v in range(n):
        lk = link[v]
        if not lk:
            order.append([])
            continue
        if any(len(ws) != 2 for ws in lk.values()):
            raise ValueError(f"link of vertex {v} is not a cycle")
        start = min(lk)
        seq = [start, min(lk[start])]
        while True:
            a, b = lk[seq[-1]]
            nxt = a if a != seq[-2] else b
            if nxt == start:
                break
            seq.append(nxt)
        if len(seq) != len(lk):
            raise ValueError(f"link of vertex {v} is not a single cycle")
        order.append(seq)

    pos = [{u: i for i, u in enumerate(seq)} for seq in order]

    def succ(v: int, u: int) -> int:
        return order[v][(pos[v][u] + 1) % len(order[v])]

    def pred(v: int, u: int) -> int:
        return order[v][(pos[v][u] - 1) % len(order[v])]

    sig = {}
    for (u, v), fs in edge_faces.items():
        w = next(x for x in tris[fs[0]] if x != u and x != v)
        sig[(u, v)] = 0 if (succ(u, v) == w) == (pred(v, u) == w) else 1
    rotation = tuple(tuple((u, sig[_edge(u, v)]) for u in order[v]) for v in range(n))
    return EmbeddedGraph(rotation)


def same_embedding(g: EmbeddedGraph, h: EmbeddedGraph) -> bool:
    """Equal vertex sets and face sets: identical surfaces up to orientation gauge."""
    return g.n == h.n and g.graph == h.graph and sorted(g.faces) == sorted(h.faces)


def switch(g: EmbeddedGraph, v: int) -> EmbeddedGraph:
    """Flip the local orientation at ``v``: reverse its rotation and toggle incident signatures."""
    rot = []
    for w, r in enumerate(g.rotation):
        if w == v:
            rot.append(tuple((u, s ^ 1) for u, s in reversed(r)))
        else:
            rot.append(tuple((u, s ^ (u == v)) for u, s in r))
    return EmbeddedGraph(tuple(rot))


# --------------------------------------------------------------------------
# cycles, interiors, niceness
# --------------------------------------------------------------------------


def link_cycle(g: EmbeddedGraph, v: int) -> CycleWitness:
    if g.degree(v) < 3:
        raise ValueError(f"vertex {v} has degree {g.degree(v)} < 3")
    return g.cycle(g.neighbours_in_order(v))


def is_contractible(g: EmbeddedGraph, c: CycleWitness | Sequence[int]) -> bool:
    vs = c.vertices if isinstance(c, CycleWitness) else tuple(c)
    return g.cycle(vs).signature == 0


def _face_edges(face: Sequence[int]) -> list[tuple[int, int]]:
    return [_edge(face[i], face[(i + 1) % len(face)]) for i in range(len(face))]


def interior_vertices(g: EmbeddedGraph, c: CycleWitness | Sequence[int]) -> frozenset[int]:
    """Vertices strictly inside the disk bounded by a contractible cycle.

    Faces are flood-filled across every edge not on the cycle; the side whose
    closure has Euler characteristic 1 is the disk.
    """
    cyc = g.cycle(c.vertices if isinstance(c, CycleWitness) else c)
    if not cyc.contractible:
        raise ValueError(f"cycle {cyc.vertices} is not contractible")
    cyc_edges = set(cyc.edges())
    faces = g.faces
    parent = list(range(len(faces)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    incident: dict[tuple[int, int], list[int]] = {}
    for idx, f in enumerate(faces):
        for e in _face_edges(f):
            incident.setdefault(e, []).append(idx)
    for e, fs in incident.items():
        if e in cyc_edges:
            continue
        for other in fs[1:]:
            parent[find(other)] = find(fs[0])
    regions: dict[int, list[int]] = {}
    for idx in range(len(faces)):
        regions.setdefault(find(idx), []).append(idx)

    on_cycle = set(cyc.vertices)
    for members in regions.values():
        verts = set()
        edges = set()
        for idx in members:
            verts.update(faces[idx])
            edges.update(_face_edges(faces[idx]))
        if len(verts) - len(edges) + len(members) == 1:
            return frozenset(verts - on_cycle)
    raise ValueError(f"no disk side found for cycle {cyc.vertices}")


def all_triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u in range(g.n):
        higher = g.adj[u] >> (u + 1) << (u + 1)
        for v in bits(higher):
            for w in bits(higher & g.adj[v] & ~((1 << (v + 1)) - 1)):
                out.append((u, v, w))
    return out


def nice_witness(g: EmbeddedGraph) -> tuple[tuple[int, int, int], int] | None:
    """A contractible triangle with a vertex inside it, or ``None`` if ``g`` is nice."""
    face_sets = g.triangles()
    for t in all_triangles(g.graph):
        if frozenset(t) in face_sets or not is_contractible(g, t):
            continue
        inside = interior_vertices(g, t)
        if inside:
            return t, min(inside)
    return None


def is_nice(g: EmbeddedGraph) -> bool:
    return nice_witness(g) is None
