"""Pieces D, E, h1, h2, h3 and the infinite irreducible families.

Frames D and E are stored with their antipodal identifications already
applied, so D has a single vertex ``e`` (its ``e1 = e2``) and E has single
vertices ``a`` and ``c``. Each h-piece is a disk between a top and a bottom
boundary path from ``e1`` to ``e2``; h2 is pinched at its ``e2`` end and h3 at
its ``e1`` end, so those two paths share a vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import networkx as nx

from .detectors import Certificate, CertKind, classify, verify
from .graph import Graph
from .surface import EmbeddedGraph, from_triangles, parse_pprs, require_triangulation
from .transforms import find_even_contractions, find_octahedra, three_colour

FAMILIES = ("I16", "I18", "I19")
PERFECT_REGISTRY_NAMES = frozenset({"I5", "I8", "I11", "I13", "I15", "I20"})


class InvalidFamilyParams(ValueError):
    pass


class RegistryError(ValueError):
    pass


@dataclass(frozen=True)
class Piece:
    kind: str
    labels: tuple[str, ...]
    faces: tuple[tuple[str, str, str], ...]
    top: tuple[str, ...]
    bottom: tuple[str, ...]
    extra_edges: tuple[tuple[str, str], ...] = ()
    spine: tuple[tuple[str, str], ...] = ()
    aliases: dict[str, str] = field(default_factory=dict)

    def edges(self) -> set[frozenset[str]]:
        out = {frozenset(e) for e in self.extra_edges}
        for a, b, c in self.faces:
            out |= {frozenset((a, b)), frozenset((b, c)), frozenset((a, c))}
        return out


_PIECES = {
    "D": Piece(
        "D",
        ("v", "a", "b", "c", "d", "e"),
        (("v", "c", "d"), ("v", "d", "a"), ("c", "e", "d"), ("e", "a", "b"), ("a", "b", "v"), ("b", "v", "c")),
        top=("e", "b", "c", "e"),
        bottom=("e", "d", "a", "e"),
        aliases={"e1": "e", "e2": "e"},
    ),
    "E": Piece(
        "E",
        ("x", "y", "a", "b", "c", "d"),
        (("y", "x", "d"), ("x", "a", "d"), ("c", "y", "d"), ("x", "y", "b"), ("x", "a", "b"), ("y", "c", "b")),
        top=("c", "a", "b", "c"),
        bottom=("c", "d", "a", "c"),
        aliases={"a1": "a", "a2": "a", "c1": "c", "c2": "c"},
    ),
    "h1": Piece(
        "h1",
        ("e1", "t1", "t2", "b1", "b2", "m", "e2"),
        (("e1", "t1", "b1"), ("t1", "m", "b1"), ("t1", "t2", "m"), ("b1", "b2", "m"), ("t2", "b2", "m"),
         ("t2", "b2", "e2")),
        top=("e1", "t1", "t2", "e2"),
        bottom=("e1", "b1", "b2", "e2"),
        spine=(("t1", "b1"),),
    ),
    "h2": Piece(
        "h2",
        ("e1", "t1", "b1", "p", "q", "m", "e2"),
        (("e1", "t1", "p"), ("e1", "p", "b1"), ("t1", "p", "q"), ("p", "b1", "q"), ("t1", "q", "m"),
         ("q", "b1", "m")),
        top=("e1", "t1", "m", "e2"),
        bottom=("e1", "b1", "m", "e2"),
        extra_edges=(("m", "e2"),),
        spine=(("t1", "p"), ("p", "b1")),
    ),
    "h3": Piece(
        "h3",
        ("e1", "m", "t2", "b2", "p", "q", "e2"),
        (("m", "t2", "p"), ("m", "p", "b2"), ("p", "t2", "q"), ("p", "q", "b2"), ("q", "t2", "e2"),
         ("q", "b2", "e2")),
        top=("e1", "m", "t2", "e2"),
        bottom=("e1", "m", "b2", "e2"),
        extra_edges=(("e1", "m"),),
    ),
}


def build_piece(kind: str) -> Piece:
    try:
        return _PIECES[kind]
    except KeyError:
        raise ValueError(f"unknown piece {kind!r}; expected one of {sorted(_PIECES)}") from None


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidFamilyParams(f"unknown family {self.family!r}")
        if self.family == "I16":
            if not self.params or any(s not in (1, 2, 3) for s in self.params):
                raise InvalidFamilyParams("I16 needs a non-empty sequence over {1, 2, 3}")
        elif len(self.params) != 1 or self.params[0] < 1:
            raise InvalidFamilyParams(f"{self.family} needs a single parameter >= 1")

    @classmethod
    def parse(cls, family: str, text: str) -> FamilySpec:
        try:
            params = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
        except ValueError:
            raise InvalidFamilyParams(f"cannot parse parameters {text!r}") from None
        return cls(family.upper(), params)

    def __str__(self) -> str:
        return f"{self.family}[{','.join(map(str, self.params))}]"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: EmbeddedGraph
    known_certificate: Certificate | None = None
    colouring: tuple[int, ...] | None = None
    labels: dict[str, int] = field(default_factory=dict, compare=False)
    witness_segments: tuple[tuple[int, ...], ...] = ()


class _Assembly:
    """Union-find over (owner, label) keys; ids follow first appearance."""

    def __init__(self) -> None:
        self.parent: dict[tuple, tuple] = {}
        self.first: list[tuple] = []
        self.faces: list[tuple[tuple, tuple, tuple]] = []

    def add_piece(self, owner: tuple, piece: Piece) -> None:
        for lbl in piece.labels:
            key = (*owner, lbl)
            self.parent[key] = key
            self.first.append(key)
        self.faces += [tuple((*owner, lbl) for lbl in f) for f in piece.faces]

    def find(self, key: tuple) -> tuple:
        while self.parent[key] != key:
            self.parent[key] = self.parent[self.parent[key]]
            key = self.parent[key]
        return key

    def union(self, a: tuple, b: tuple) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.first.index(ra) > self.first.index(rb):
            ra, rb = rb, ra
        self.parent[rb] = ra

    def glue_paths(self, owner_a: tuple, path_a: Sequence[str], owner_b: tuple, path_b: Sequence[str]) -> None:
        for la, lb in zip(path_a, path_b, strict=True):
            self.union((*owner_a, la), (*owner_b, lb))

    def numbering(self) -> dict[tuple, int]:
        ids: dict[tuple, int] = {}
        for key in self.first:
            root = self.find(key)
            if root not in ids:
                ids[root] = len(ids)
        return {key: ids[self.find(key)] for key in self.first}

    def build(self, extra_faces: Sequence[tuple[tuple, tuple, tuple]] = ()) -> tuple[EmbeddedGraph, dict[tuple, int]]:
        ids = self.numbering()
        tris = [tuple(ids[k] for k in f) for f in [*self.faces, *extra_faces]]
        n = len(set(ids.values()))
        try:
            g = from_triangles(n, tris)
        except ValueError as exc:
            raise InvalidFamilyParams(f"gluing does not give a simple triangulation: {exc}") from None
        return g, ids


def _stack(frame: str, kinds: Sequence[str], glue_e: str, top_slots: Sequence[str],
           bottom_slots: Sequence[str]) -> tuple[_Assembly, list[tuple]]:
    asm = _Assembly()
    F = ("F",)
    asm.add_piece(F, _PIECES[frame])
    owners = []
    for i, k in enumerate(kinds):
        owner = ("h", i)
        owners.append(owner)
        asm.add_piece(owner, _PIECES[k])
        asm.union((*owner, "e1"), (*F, glue_e))
        asm.union((*owner, "e2"), (*F, glue_e))
    return asm, owners


def i16_degenerate(params: Sequence[int]) -> bool:
    """Sequences without h1 that switch between h2 and h3 at most once.

    Their pinch vertices chain up into an identification of two frame
    vertices or a doubled frame edge, so no simple graph results.
    """
    if 1 in params:
        return False
    return sum(a != b for a, b in zip(params, params[1:])) <= 1


def _assemble_i16(params: Sequence[int]) -> tuple[EmbeddedGraph, dict, list[tuple], list[str]]:
    if i16_degenerate(params):
        raise InvalidFamilyParams(f"I16[{','.join(map(str, params))}] is degenerate: without an h1 piece and with at "
                                  "most one switch between h2 and h3 the gluing is not a simple graph")
    kinds = [f"h{s}" for s in params]
    asm, owners = _stack("D", kinds, "e", (), ())
    D = _PIECES["D"]
    asm.glue_paths(("F",), D.top, owners[0], _PIECES[kinds[0]].top)
    asm.glue_paths(("F",), D.bottom, owners[-1], _PIECES[kinds[-1]].bottom)
    for (o1, k1), (o2, k2) in zip(zip(owners, kinds), zip(owners[1:], kinds[1:])):
        asm.glue_paths(o1, _PIECES[k1].bottom, o2, _PIECES[k2].top)
    g, ids = asm.build()
    return g, ids, owners, kinds


def _assemble_i18(n: int) -> tuple[EmbeddedGraph, dict, list[tuple], list[str]]:
    kinds = ["h2", "h3"] * n
    asm, owners = _stack("E", kinds, "c", (), ())
    E = _PIECES["E"]
    asm.glue_paths(("F",), E.top, owners[0], _PIECES[kinds[0]].top)
    asm.glue_paths(("F",), E.bottom, owners[-1], _PIECES[kinds[-1]].bottom)
    for (o1, k1), (o2, k2) in zip(zip(owners, kinds), zip(owners[1:], kinds[1:])):
        asm.glue_paths(o1, _PIECES[k1].bottom, o2, _PIECES[k2].top)
    g, ids = asm.build()
    return g, ids, owners, kinds


def _hexagon_faces(upper: Sequence[tuple], lower: Sequence[tuple], c: tuple, split: int) -> list[tuple]:
    """Triangulate the hexagon c, u1, u2, c, l2, l1 without touching ``c``.

    Both ears at ``c`` are forced (any diagonal from ``c`` would duplicate a
    path edge); ``split`` picks the diagonal of the middle quadrilateral.
    """
    u1, u2 = upper
    l1, l2 = lower
    faces = [(l1, c, u1), (u2, c, l2)]
    if split == 0:
        faces += [(u1, u2, l2), (u1, l2, l1)]
    else:
        faces += [(u1, u2, l1), (u2, l2, l1)]
    return faces


def _i19_hexagons(m: int, owners: list[tuple], kinds: list[str]) -> list[tuple[tuple, tuple]]:
    F = ("F",)
    E = _PIECES["E"]
    paths = [tuple((*F, lbl) for lbl in E.top[1:3])]
    for o, k in zip(owners, kinds):
        paths.append(tuple((*o, lbl) for lbl in _PIECES[k].top[1:3]))
        paths.append(tuple((*o, lbl) for lbl in _PIECES[k].bottom[1:3]))
    paths.append(tuple((*F, lbl) for lbl in E.bottom[1:3]))
    return [(paths[2 * i], paths[2 * i + 1]) for i in range(2 * m + 1)]


def _assemble_i19(m: int) -> tuple[EmbeddedGraph, dict, list[tuple], list[str], list[int]]:
    kinds = ["h2", "h3"] * m
    asm, owners = _stack("E", kinds, "c", (), ())
    hexagons = _i19_hexagons(m, owners, kinds)
    c = ("F", "c")
    found = []
    for splits in itertools.product((0, 1), repeat=len(hexagons)):
        extra = []
        for (upper, lower), s in zip(hexagons, splits):
            extra += _hexagon_faces(upper, lower, c, s)
        try:
            g, ids = asm.build(extra)
        except InvalidFamilyParams:
            continue
        if all(g.degree(v) % 2 == 0 for v in range(g.n)):
            found.append((g, ids, list(splits)))
    if len(found) != 1:
        raise InvalidFamilyParams(f"expected a unique even completion of the I19[{m}] hexagons, found {len(found)}")
    g, ids, splits = found[0]
    return g, ids, owners, kinds, splits


def _label(ids: dict, owner: tuple, lbl: str) -> int:
    return ids[(*owner, lbl)]


def _loose_wheel(hub: int, path: Sequence[int], closing: Sequence[int]) -> Certificate:
    """Odd ``path`` from p to q closed by the two-edge route q - w - p; hub sees p, q and w."""
    cycle = tuple(path) + tuple(closing)
    return Certificate(CertKind.LOOSE_ODD_WHEEL, cycle, hub=hub, odd=(path[0], path[-1], closing[0]))


def _i16_witness(ids: dict, owners: list[tuple], kinds: list[str]) -> tuple[int, ...]:
    """Spine path from b to d through the h1 and h2 pieces."""
    path = [ids[("F", "b")]]
    for o, k in zip(owners, kinds):
        for a, b in _PIECES[k].spine:
            assert path[-1] == ids[(*o, a)]
            path.append(ids[(*o, b)])
    assert path[-1] == ids[("F", "d")]
    return tuple(path)


def _i18_witness(ids: dict, owners: list[tuple], kinds: list[str]) -> tuple[int, ...]:
    """Union of the single edges shared by consecutive pieces away from ``c``."""
    path = [ids[("F", "b")]]
    for o, k in zip(owners[:-1], kinds[:-1]):
        u, w = (ids[(*o, lbl)] for lbl in _PIECES[k].bottom[1:3])
        nxt = u if w == path[-1] else w
        assert {u, w} == {path[-1], nxt}
        path.append(nxt)
    assert path[-1] == ids[("F", "d")]
    return tuple(path)


def _i19_segments(g: EmbeddedGraph, ids: dict, m: int, owners: list[tuple],
                  kinds: list[str]) -> tuple[tuple[int, ...], ...]:
    """Induced odd b-d path avoiding x, y, c, assembled one pair of pieces at a time.

    Segment k runs from the previous checkpoint through pieces 2k-1 and 2k
    and ends on the top path of the next piece (on ``d`` for the last pair).
    The first segment is odd and every later one even.
    """
    graph = g.graph
    c = ids[("F", "c")]

    def piece_vertices(i: int) -> set[int]:
        return {ids[(*owners[i], lbl)] for lbl in _PIECES[kinds[i]].labels} - {c}

    def next_top(k: int) -> set[int]:
        if k == m:
            return {ids[("F", "d")]}
        top = _PIECES[kinds[2 * k]].top[1:3]
        return {ids[(*owners[2 * k], lbl)] for lbl in top}

    def options(k: int, start: int) -> list[tuple[int, ...]]:
        region = piece_vertices(2 * k - 2) | piece_vertices(2 * k - 1) | {start}
        if k == 1:
            region.add(ids[("F", "a")])
        targets = next_top(k)
        local = to_networkx(graph).subgraph(region | targets).copy()
        local.remove_edges_from([(u, w) for u, w in itertools.combinations(targets, 2)])
        want = 1 if k == 1 else 0
        out = []
        for t in sorted(targets):
            for p in nx.all_simple_paths(local, start, t):
                if (len(p) - 1) % 2 == want and not set(p[1:-1]) & targets:
                    out.append(tuple(p))
        return sorted(out, key=lambda p: (len(p), p))

    def chordless(path: Sequence[int]) -> bool:
        return not any(graph.has_edge(path[i], path[j]) for i in range(len(path)) for j in range(i + 2, len(path)))

    def extend(k: int, segs: list[tuple[int, ...]]) -> list[tuple[int, ...]] | None:
        if k > m:
            return segs
        start = segs[-1][-1] if segs else ids[("F", "b")]
        prefix = [v for sg in segs for v in sg[:-1]]
        for seg in options(k, start):
            if chordless(prefix + list(seg)):
                found = extend(k + 1, segs + [seg])
                if found:
                    return found
        return None

    segs = extend(1, [])
    if segs is None:
        raise InvalidFamilyParams(f"no induced odd b-d path in I19[{m}]")
    return tuple(segs)


def build_family(spec: FamilySpec) -> CatalogEntry:
    """Construct an irreducible family member with its certificate or colouring."""
    F = ("F",)
    if spec.family == "I16":
        g, ids, owners, kinds = _assemble_i16(spec.params)
    elif spec.family == "I18":
        g, ids, owners, kinds = _assemble_i18(spec.params[0])
    else:
        g, ids, owners, kinds, _ = _assemble_i19(spec.params[0])
    require_triangulation(g)
    if any(g.degree(v) % 2 for v in range(g.n)):
        raise InvalidFamilyParams(f"{spec} is not Eulerian")
    frame = _PIECES["D" if spec.family == "I16" else "E"]
    labels = {lbl: ids[(*F, lbl)] for lbl in frame.labels}

    cert = colouring = None
    segments: tuple[tuple[int, ...], ...] = ()
    if spec.family == "I16":
        if spec.params.count(1) % 2:
            path = _i16_witness(ids, owners, kinds)
            cert = _loose_wheel(labels["a"], path, (labels["v"],))
        else:
            colouring = three_colour(g.graph)
            if colouring is None:
                raise InvalidFamilyParams(f"{spec} has no 3-colouring")
    else:
        if spec.family == "I18":
            path = _i18_witness(ids, owners, kinds)
            cert = _loose_wheel(labels["x"], path, (labels["y"],))
        else:
            # y sees only x, b, c, d, so an induced b-d path avoiding them closes chordlessly
            segments = _i19_segments(g, ids, spec.params[0], owners, kinds)
            path = tuple(v for sg in segments for v in sg[:-1]) + (segments[-1][-1],)
            cert = _loose_wheel(labels["x"], path, (labels["y"],))
    if cert is not None and not verify(g.graph, cert):
        raise AssertionError(f"constructed certificate for {spec} does not verify")
    return CatalogEntry(str(spec), g, cert, colouring, labels, segments)


def is_irreducible(g: EmbeddedGraph) -> bool:
    return not find_octahedra(g) and not find_even_contractions(g)


# --------------------------------------------------------------------------
# isomorphism and the external registry
# --------------------------------------------------------------------------


def to_networkx(g: Graph | EmbeddedGraph) -> nx.Graph:
    g = g.graph if isinstance(g, EmbeddedGraph) else g
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def isomorphic(g: Graph | EmbeddedGraph, h: Graph | EmbeddedGraph) -> bool:
    return nx.is_isomorphic(to_networkx(g), to_networkx(h))


def read_manifest(path: Path) -> list[tuple[str, Path]]:
    """``<name> <file>`` per line; ``#`` starts a comment. Files resolve against the manifest's directory."""
    path = Path(path)
    if path.is_dir():
        path = path / "manifest.txt"
    entries = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise RegistryError(f"{path}:{lineno}: expected '<name> <file>'")
        entries.append((parts[0], path.parent / parts[1]))
    return entries


def audit_entry(name: str, g: EmbeddedGraph) -> CatalogEntry:
    try:
        require_triangulation(g)
    except ValueError as exc:
        raise RegistryError(f"{name}: {exc}") from None
    if any(g.degree(v) % 2 for v in range(g.n)):
        raise RegistryError(f"{name}: not Eulerian")
    if not is_irreducible(g):
        raise RegistryError(f"{name}: not irreducible")
    if name == "I1" and not isomorphic(g, build_family(FamilySpec("I16", (1,))).graph):
        raise RegistryError("I1: not isomorphic to I16[1]")
    report = classify(g)
    if name in PERFECT_REGISTRY_NAMES:
        if not report.t_perfect or report.k4 is not None or not report.perfect:
            raise RegistryError(f"{name}: expected perfect without K4")
        return CatalogEntry(name, g)
    cert = report.loose_odd_wheel
    if cert is None or not verify(g.graph, cert):
        raise RegistryError(f"{name}: expected a loose odd wheel")
    return CatalogEntry(name, g, cert)


def registry_load(path: str | Path) -> list[CatalogEntry]:
    return [audit_entry(name, parse_pprs(file.read_bytes())) for name, file in read_manifest(Path(path))]
