"""Exact searches for the substructures that decide t-perfection.

Every finder returns a :class:`Certificate` that :func:`verify` can replay
against the graph, or ``None`` when the structure is absent. Searches scan
vertex ids in increasing order, so results are deterministic.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from .graph import Graph, bits
from .surface import EmbeddedGraph, link_cycle, nice_witness, segment, validate


class CertificateError(ValueError):
    """A certificate is malformed (wrong shape, not merely false)."""


class CertKind(str, enum.Enum):
    K4 = "K4"
    ODD_HOLE = "ODD_HOLE"
    C7BAR = "C7BAR"
    LOOSE_ODD_WHEEL = "LOOSE_ODD_WHEEL"
    NON_EULERIAN = "NON_EULERIAN"


@dataclass(frozen=True)
class Certificate:
    """A checkable witness.

    ``vertices`` is the clique, the hole in cyclic order, the seven anti-hole
    vertices in cycle order of the complement, the wheel cycle, or the single
    odd-degree vertex. Loose odd wheels also carry ``hub`` and the three odd
    neighbours ``odd``.
    """

    kind: CertKind
    vertices: tuple[int, ...]
    hub: int | None = None
    odd: tuple[int, int, int] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", CertKind(self.kind))
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        if self.odd is not None:
            object.__setattr__(self, "odd", tuple(int(v) for v in self.odd))

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"kind": self.kind.value, "vertices": list(self.vertices)}
        if self.kind is CertKind.LOOSE_ODD_WHEEL:
            d["hub"] = self.hub
            d["odd"] = list(self.odd or ())
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> Certificate:
        try:
            kind = CertKind(d["kind"])
            vertices = tuple(int(v) for v in d["vertices"])
            hub = d.get("hub")
            odd = d.get("odd")
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"malformed certificate record: {exc}") from None
        if odd is not None:
            odd = tuple(int(v) for v in odd)
        return cls(kind, vertices, None if hub is None else int(hub), odd)

    @classmethod
    def from_json(cls, text: str) -> Certificate:
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise CertificateError(f"certificate is not JSON: {exc}") from None


def _graph(g: Graph | EmbeddedGraph) -> Graph:
    return g.graph if isinstance(g, EmbeddedGraph) else g


# --------------------------------------------------------------------------
# verification
# --------------------------------------------------------------------------


def _is_induced_cycle(g: Graph, vs: Sequence[int]) -> bool:
    k = len(vs)
    return all(g.has_edge(vs[i], vs[j]) == ((j - i) % k in (1, k - 1))
               for i in range(k) for j in range(i + 1, k))


def verify(g: Graph | EmbeddedGraph, cert: Certificate) -> bool:
    """Replay ``cert`` against ``g``. Raises :class:`CertificateError` if it is malformed."""
    g = _graph(g)
    vs = cert.vertices
    if any(not 0 <= v < g.n for v in vs):
        return False
    if len(set(vs)) != len(vs):
        raise CertificateError("certificate repeats a vertex")
    kind = cert.kind
    if kind is CertKind.NON_EULERIAN:
        if len(vs) != 1:
            raise CertificateError("NON_EULERIAN names exactly one vertex")
        return g.degree(vs[0]) % 2 == 1
    if kind is CertKind.K4:
        if len(vs) != 4:
            raise CertificateError("K4 names exactly four vertices")
        return g.is_clique(vs)
    if kind is CertKind.C7BAR:
        if len(vs) != 7:
            raise CertificateError("C7BAR names exactly seven vertices")
        return all(g.has_edge(vs[i], vs[j]) == (min((i - j) % 7, (j - i) % 7) >= 2)
                   for i in range(7) for j in range(i + 1, 7))
    if kind is CertKind.ODD_HOLE:
        k = len(vs)
        if k < 5 or k % 2 == 0:
            raise CertificateError("an odd hole has odd length at least 5")
        return _is_induced_cycle(g, vs)
    if kind is CertKind.LOOSE_ODD_WHEEL:
        if cert.hub is None or cert.odd is None or len(cert.odd) != 3 or len(vs) < 3:
            raise CertificateError("LOOSE_ODD_WHEEL needs a hub, a cycle and three odd neighbours")
        hub, odd = cert.hub, cert.odd
        if len(set(odd)) != 3:
            raise CertificateError("odd neighbours must be distinct")
        if not 0 <= hub < g.n or hub in vs or any(v not in vs for v in odd):
            return False
        if len(vs) % 2 == 0 or not _is_induced_cycle(g, vs) or not all(g.has_edge(hub, v) for v in odd):
            return False
        v1, v2, v3 = odd
        return all((len(segment(vs, a, b, c)) - 1) % 2 == 1 for a, b, c in ((v1, v2, v3), (v2, v3, v1), (v3, v1, v2)))
    raise CertificateError(f"unknown certificate kind {kind}")


# --------------------------------------------------------------------------
# finders
# --------------------------------------------------------------------------


def find_k4(g: Graph | EmbeddedGraph) -> Certificate | None:
    g = _graph(g)
    for a in range(g.n):
        up_a = g.adj[a] >> (a + 1) << (a + 1)
        for b in bits(up_a):
            common_ab = up_a & g.adj[b] >> (b + 1) << (b + 1)
            for c in bits(common_ab):
                rest = common_ab & g.adj[c] >> (c + 1) << (c + 1)
                if rest:
                    d = (rest & -rest).bit_length() - 1
                    return Certificate(CertKind.K4, (a, b, c, d))
    return None


def wheel_from_k4(cert: Certificate) -> Certificate:
    """A K4 is the wheel W3: any vertex is a hub over the other three."""
    a, b, c, d = cert.vertices
    return Certificate(CertKind.LOOSE_ODD_WHEEL, (b, c, d), hub=a, odd=(b, c, d))


def shortest_odd_cycle(g: Graph, within: int) -> tuple[int, ...] | None:
    """A shortest odd cycle of ``g[within]``; being shortest, it has no chord."""
    best: tuple[int, ...] | None = None
    for s in bits(within):
        dist = {s: 0}
        parent = {s: s}
        frontier = [s]
        hit = None
        while frontier and hit is None:
            nxt = []
            for u in frontier:
                for w in bits(g.adj[u] & within):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif dist[w] == dist[u] and hit is None:
                        hit = (u, w)
            frontier = nxt
        if hit is None:
            continue
        u, w = hit
        left, right = [u], [w]
        while left[-1] != s:
            left.append(parent[left[-1]])
        while right[-1] != s:
            right.append(parent[right[-1]])
        cyc = left[:-1] + [s] + right[-2::-1]
        if len(set(cyc)) == len(cyc) and (best is None or len(cyc) < len(best)):
            best = tuple(cyc)
    return best


def wheel_at(g: Graph, hub: int) -> Certificate | None:
    """An odd wheel centred at ``hub`` when its neighbourhood is not bipartite."""
    cyc = shortest_odd_cycle(g, g.adj[hub])
    if cyc is None:
        return None
    return Certificate(CertKind.LOOSE_ODD_WHEEL, cyc, hub=hub, odd=cyc[:3])


def wheel_from_odd_link(g: EmbeddedGraph, v: int) -> Certificate:
    """An odd-degree vertex of a triangulation has an odd link, hence an odd wheel around it."""
    if g.degree(v) % 2 == 0:
        raise ValueError(f"vertex {v} has even degree")
    cert = wheel_at(g.graph, v)
    assert cert is not None
    return cert


def _is_bipartite(g: Graph, within: int) -> bool:
    colour: dict[int, int] = {}
    rest = within
    while rest:
        s = (rest & -rest).bit_length() - 1
        colour[s] = 0
        stack = [s]
        rest &= ~(1 << s)
        while stack:
            u = stack.pop()
            for w in bits(g.adj[u] & within):
                if w not in colour:
                    colour[w] = colour[u] ^ 1
                    rest &= ~(1 << w)
                    stack.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def induced_cycles(g: Graph | EmbeddedGraph, odd_only: bool = False) -> list[tuple[int, ...]]:
    """All chordless cycles, each listed once from its minimum vertex towards the smaller neighbour."""
    g = _graph(g)
    out: list[tuple[int, ...]] = []
    for s in range(g.n):
        above = g.all_mask & ~((2 << s) - 1)
        close = g.adj[s] & above
        for p1 in bits(close):
            closers = close & ~((2 << p1) - 1)
            path = [s, p1]

            def grow(eligible: int) -> None:
                end = path[-1]
                for w in bits(g.adj[end] & eligible):
                    if closers >> w & 1:
                        if not odd_only or len(path) % 2 == 0:
                            out.append(tuple(path) + (w,))
                        continue
                    path.append(w)
                    grow(eligible & ~g.adj[end] & ~(1 << w))
                    path.pop()

            # a closer next to p1 only closes a triangle
            out.extend((s, p1, w) for w in bits(closers & g.adj[p1]))
            grow((above & ~close) | (closers & ~g.adj[p1]))
    return out


def find_odd_hole(g: Graph | EmbeddedGraph) -> Certificate | None:
    """Smallest-start induced odd cycle of length at least 5.

    The hole is grown as an induced path from its minimum vertex ``s``. Only
    vertices above ``s`` that see no interior path vertex stay eligible, so
    the future of a partial path depends only on the eligible component at
    its end; failed states are memoised on that.
    """
    g = _graph(g)
    for s in range(g.n):
        above = g.all_mask & ~((2 << s) - 1)
        close = g.adj[s] & above
        if close.bit_count() < 2:
            continue
        for p1 in bits(close):
            closers = close & ~((2 << p1) - 1) & ~g.adj[p1]
            if not closers:
                continue
            failed: set[tuple[int, int, int, bool]] = set()

            def grow(path: list[int], eligible: int) -> list[int] | None:
                end = path[-1]
                k = len(path) - 1
                region = g.reach(g.adj[end] & eligible, eligible)
                if not region & closers:
                    return None
                key = (region, end, k % 2, k >= 3)
                if key in failed:
                    return None
                for w in bits(g.adj[end] & region):
                    if closers >> w & 1:
                        if k >= 3 and k % 2 == 1:
                            return path + [w]
                        continue
                    path.append(w)
                    found = grow(path, region & ~g.adj[end] & ~(1 << w))
                    if found:
                        return found
                    path.pop()
                failed.add(key)
                return None

            found = grow([s, p1], (above & ~close) | closers)
            if found:
                return Certificate(CertKind.ODD_HOLE, tuple(found))
    return None


def find_induced_c7bar(g: Graph | EmbeddedGraph) -> Certificate | None:
    """Seven vertices p0..p6 with pi ~ pj exactly when their cyclic distance is at least 2."""
    g = _graph(g)
    if g.n < 7:
        return None
    eligible = 0
    for v in range(g.n):
        if g.degree(v) >= 4:
            eligible |= 1 << v

    def extend(seq: list[int]) -> list[int] | None:
        k = len(seq)
        if k == 7:
            return seq if not g.has_edge(seq[6], seq[0]) else None
        cand = eligible & g.adj[seq[k - 2]] if k >= 2 else eligible
        cand &= ~((2 << seq[0]) - 1)
        for i, p in enumerate(seq):
            d = min(k - i, 7 - (k - i))
            cand &= g.adj[p] if d >= 2 else ~g.adj[p]
        for w in bits(cand):
            seq.append(w)
            found = extend(seq)
            if found:
                return found
            seq.pop()
        return None

    for s in bits(eligible):
        found = extend([s])
        if found:
            return Certificate(CertKind.C7BAR, tuple(found))
    return None


def _wheel_with_hub(g: Graph, hub: int) -> Certificate | None:
    marks = g.adj[hub]
    within = g.all_mask & ~(1 << hub)
    for v1 in bits(marks):
        later = marks & ~((2 << v1) - 1)
        if later.bit_count() < 2:
            return None
        comp = g.reach(1 << v1, within)
        if (comp & later).bit_count() < 2 or _is_bipartite(g, comp):
            continue
        closers = g.adj[v1] & comp
        failed: set[tuple[int, int, int, int]] = set()
        path = [v1]
        chosen: list[int] = []

        def walk(eligible: int, seg: int, stage: int) -> bool:
            # stage = marks chosen after v1; seg = parity of the open segment
            end = path[-1]
            region = g.reach(g.adj[end] & eligible, eligible)
            if not region & closers or (region & later).bit_count() < 2 - stage:
                return False
            key = (region, end, seg, stage)
            if key in failed:
                return False
            for w in bits(g.adj[end] & region):
                path.append(w)
                if closers >> w & 1:
                    if len(path) >= 3:
                        if stage == 2 and seg == 1:
                            return True
                        if stage == 1 and seg == 0 and later >> w & 1:
                            chosen.append(w)
                            return True
                    path.pop()
                    continue
                rest = region & ~g.adj[end] & ~(1 << w)
                if seg == 0 and stage < 2 and later >> w & 1:
                    chosen.append(w)
                    if walk(rest, 0, stage + 1):
                        return True
                    chosen.pop()
                if walk(rest, seg ^ 1, stage):
                    return True
                path.pop()
            failed.add(key)
            return False

        for p1 in bits(g.adj[v1] & comp):
            path[1:] = [p1]
            chosen.clear()
            eligible = comp & ~g.adj[v1] | (closers & ~(1 << p1))
            eligible &= ~(1 << v1) & ~(1 << p1)
            found = False
            if later >> p1 & 1:
                chosen[:] = [p1]
                found = walk(eligible, 0, 1)
            if not found:
                chosen.clear()
                path[1:] = [p1]
                found = walk(eligible, 1, 0)
            if found:
                return Certificate(CertKind.LOOSE_ODD_WHEEL, tuple(path), hub=hub,
                                   odd=(v1, chosen[0], chosen[1]))
    return None


def find_loose_odd_wheel(g: Graph | EmbeddedGraph) -> Certificate | None:
    """An induced odd cycle and a hub off it with three neighbours splitting it into odd segments.

    Hubs with a non-bipartite neighbourhood give an odd wheel directly.
    Otherwise, for each hub, a chordless cycle is grown from its smallest
    marked neighbour ``v1`` and must close three odd segments, each ending at
    a marked neighbour. ``seg`` is the parity of the open segment, so a step
    onto a mark closes it oddly exactly when ``seg`` is 0.
    """
    g = _graph(g)
    for hub in range(g.n):
        cert = wheel_at(g, hub)
        if cert is not None:
            return cert
    for hub in range(g.n):
        if g.degree(hub) >= 3:
            cert = _wheel_with_hub(g, hub)
            if cert is not None:
                return cert
    return None


# --------------------------------------------------------------------------
# verdicts
# --------------------------------------------------------------------------


def is_eulerian(g: Graph | EmbeddedGraph) -> tuple[bool, Certificate | None]:
    g = _graph(g)
    for v in range(g.n):
        if g.degree(v) % 2:
            return False, Certificate(CertKind.NON_EULERIAN, (v,))
    return True, None


def is_perfect_embedded(g: EmbeddedGraph) -> tuple[bool, Certificate | None]:
    """Perfection of a projective-plane graph: no odd hole and no induced C̄7.

    Larger odd anti-holes cannot embed in the projective plane, and C̄5 is C5.
    """
    if not isinstance(g, EmbeddedGraph):
        raise TypeError("needs an embedded graph; use the brute-force oracle for plain graphs")
    report = validate(g)
    if not report.ok:
        raise ValueError("not a projective-plane embedding: " + "; ".join(report.messages()))
    hole = find_odd_hole(g)
    if hole is not None:
        return False, hole
    c7 = find_induced_c7bar(g)
    if c7 is not None:
        return False, c7
    return True, None


@dataclass(frozen=True)
class ClassificationReport:
    vertices: int
    edges: int
    eulerian: bool
    non_eulerian: Certificate | None
    nice: bool
    filled_triangle: tuple[tuple[int, int, int], int] | None
    k4: Certificate | None
    c7bar: Certificate | None
    loose_odd_wheel: Certificate | None
    odd_hole: Certificate | None
    perfect: bool
    t_perfect: bool
    strongly_t_perfect: bool = field(init=False)
    perfect_without_k4: bool = field(init=False)

    def __post_init__(self) -> None:
        # the three properties coincide on projective-plane triangulations
        object.__setattr__(self, "strongly_t_perfect", self.t_perfect)
        object.__setattr__(self, "perfect_without_k4", self.t_perfect)

    def certificates(self) -> list[Certificate]:
        return [c for c in (self.non_eulerian, self.k4, self.c7bar, self.loose_odd_wheel, self.odd_hole) if c]

    def to_dict(self) -> dict[str, Any]:
        def cert(c: Certificate | None) -> dict | None:
            return None if c is None else c.to_dict()

        return {
            "vertices": self.vertices,
            "edges": self.edges,
            "t_perfect": self.t_perfect,
            "strongly_t_perfect": self.strongly_t_perfect,
            "perfect_without_k4": self.perfect_without_k4,
            "perfect": self.perfect,
            "eulerian": self.eulerian,
            "nice": self.nice,
            "filled_triangle": None if self.filled_triangle is None else {
                "triangle": list(self.filled_triangle[0]), "inside": self.filled_triangle[1]},
            "certificates": {
                "non_eulerian": cert(self.non_eulerian),
                "k4": cert(self.k4),
                "c7bar": cert(self.c7bar),
                "loose_odd_wheel": cert(self.loose_odd_wheel),
                "odd_hole": cert(self.odd_hole),
            },
        }

    def summary(self) -> str:
        verdict = "t-perfect" if self.t_perfect else "t-imperfect"
        lines = [f"{verdict} (n={self.vertices}, m={self.edges})",
                 f"  eulerian: {self.eulerian}", f"  nice: {self.nice}", f"  perfect: {self.perfect}"]
        for c in self.certificates():
            lines.append(f"  {c.kind.value}: {c.to_json()}")
        return "\n".join(lines)


def classify(g: EmbeddedGraph) -> ClassificationReport:
    """Decide t-perfection of a projective-plane triangulation, with certificates."""
    report = validate(g, triangulation=True)
    if not report.ok:
        raise ValueError("not a projective-plane triangulation: " + "; ".join(report.messages()))
    graph = g.graph
    eulerian, non_eulerian = is_eulerian(graph)
    k4 = find_k4(graph)
    c7 = find_induced_c7bar(graph)
    if k4 is not None:
        wheel = wheel_from_k4(k4)
    elif non_eulerian is not None:
        wheel = wheel_from_odd_link(g, non_eulerian.vertices[0])
    else:
        wheel = find_loose_odd_wheel(graph)
    hole = find_odd_hole(graph)
    return ClassificationReport(
        vertices=g.n,
        edges=g.edge_count,
        eulerian=eulerian,
        non_eulerian=non_eulerian,
        nice=(filled := nice_witness(g)) is None,
        filled_triangle=filled,
        k4=k4,
        c7bar=c7,
        loose_odd_wheel=wheel,
        odd_hole=hole,
        perfect=hole is None and c7 is None,
        t_perfect=wheel is None and c7 is None,
    )
