"""Exact brute-force ground truth for small graphs.

Vertex enumeration of TSTAB uses the double description method on the
homogenised cone with integer rays, so no rounding ever happens. SSP
membership is an exact phase-one simplex over rationals.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .detectors import find_odd_hole, induced_cycles
from .graph import Graph, bits
from .surface import EmbeddedGraph

STABLE_SET_CAP = 20
TSTAB_CAP = 14
PERFECT_SWEEP_CAP = 12
PERFECT_SPGT_CAP = 20

RationalPoint = tuple[Fraction, ...]


class CapExceeded(RuntimeError):
    pass


class RowTag(str, enum.Enum):
    NONNEG = "NONNEG"
    EDGE = "EDGE"
    ODD_CYCLE = "ODD_CYCLE"
    BOUND = "BOUND"


@dataclass(frozen=True)
class Row:
    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    tag: RowTag
    support: tuple[int, ...] = ()

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        return sum((c * v for c, v in zip(self.coeffs, x)), Fraction(0)) <= self.rhs


@dataclass(frozen=True)
class TstabSystem:
    n: int
    rows: tuple[Row, ...]

    def contains(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.n:
            raise ValueError(f"point has dimension {len(x)}, expected {self.n}")
        return all(r.satisfied_by(x) for r in self.rows)

    def count(self, tag: RowTag) -> int:
        return sum(r.tag is tag for r in self.rows)


@dataclass(frozen=True)
class TPerfectVerdict:
    """``witness`` lies in TSTAB but not in SSP when the graph is t-imperfect.

    The all-1/3 point is preferred when it separates the two polytopes;
    otherwise a fractional vertex is used. ``fractional_vertex`` is always a
    vertex of TSTAB when one exists.
    """

    t_perfect: bool
    witness: RationalPoint | None
    fractional_vertex: RationalPoint | None
    vertex_count: int

    def __iter__(self):
        return iter((self.t_perfect, self.witness))


def _graph(g: Graph | EmbeddedGraph) -> Graph:
    return g.graph if isinstance(g, EmbeddedGraph) else g


def _check_cap(g: Graph, cap: int, what: str) -> None:
    if g.n > cap:
        raise CapExceeded(f"{what} limited to n <= {cap}, got n = {g.n}")


def format_point(p: Sequence[Fraction]) -> str:
    return " ".join(str(v) for v in p)


# --------------------------------------------------------------------------
# stable sets and the TSTAB system
# --------------------------------------------------------------------------


def stable_set_masks(g: Graph) -> list[int]:
    out = []

    def grow(mask: int, cand: int) -> None:
        out.append(mask)
        for v in bits(cand):
            grow(mask | 1 << v, cand & ~g.adj[v] & ~((2 << v) - 1))

    grow(0, g.all_mask)
    return out


def enumerate_stable_sets(g: Graph | EmbeddedGraph, cap: int = STABLE_SET_CAP) -> list[tuple[int, ...]]:
    g = _graph(g)
    _check_cap(g, cap, "stable set enumeration")
    return sorted(tuple(bits(m)) for m in stable_set_masks(g))


def tstab_system(g: Graph | EmbeddedGraph, cap: int = STABLE_SET_CAP) -> TstabSystem:
    """Non-negativity, edge and induced-odd-cycle rows; isolated vertices also get x_v <= 1."""
    g = _graph(g)
    _check_cap(g, cap, "TSTAB system")
    n = g.n
    zero, one = Fraction(0), Fraction(1)

    def unit(support: Sequence[int], value: Fraction) -> tuple[Fraction, ...]:
        row = [zero] * n
        for v in support:
            row[v] = value
        return tuple(row)

    rows = [Row(unit((v,), -one), zero, RowTag.NONNEG, (v,)) for v in range(n)]
    rows += [Row(unit((v,), one), one, RowTag.BOUND, (v,)) for v in range(n) if g.adj[v] == 0]
    rows += [Row(unit(e, one), one, RowTag.EDGE, e) for e in g.edges()]
    cycles = sorted(induced_cycles(g, odd_only=True), key=lambda c: (len(c), c))
    rows += [Row(unit(c, one), Fraction(len(c) // 2), RowTag.ODD_CYCLE, c) for c in cycles]
    return TstabSystem(n, tuple(rows))


# --------------------------------------------------------------------------
# double description
# --------------------------------------------------------------------------


def _int_row(row: Row) -> tuple[int, ...]:
    """Row a.x <= b as the homogeneous a.x - b t <= 0 over integers."""
    denom = 1
    for c in (*row.coeffs, row.rhs):
        denom = denom * c.denominator // gcd(denom, c.denominator)
    return tuple(int(c * denom) for c in row.coeffs) + (-int(row.rhs * denom),)


def _normalise(r: list[int]) -> tuple[int, ...]:
    g = 0
    for v in r:
        g = gcd(g, v)
    return tuple(v // g for v in r) if g > 1 else tuple(r)


def _bfs_order(g: Graph) -> list[int]:
    order: list[int] = []
    seen = 0
    for s in range(g.n):
        if seen >> s & 1:
            continue
        seen |= 1 << s
        queue = [s]
        for u in queue:
            order.append(u)
            for w in bits(g.adj[u] & ~seen):
                seen |= 1 << w
                queue.append(w)
    return order


def _stage_order(system: TstabSystem, order: Sequence[int]) -> tuple[list[int], list[int]]:
    """Row indices sorted so that rows living on the first k vertices of ``order`` come first.

    Returns the row order and, per position, the stage (prefix length) it completes or -1.
    """
    rank = {v: i for i, v in enumerate(order)}
    keyed = sorted(range(len(system.rows)),
                   key=lambda i: (max(rank[v] for v in system.rows[i].support), len(system.rows[i].support), i))
    stage_of = [max(rank[v] for v in system.rows[i].support) for i in keyed]
    ends = [stage_of[j] if j + 1 == len(keyed) or stage_of[j + 1] != stage_of[j] else -1 for j in range(len(keyed))]
    return keyed, ends


def _vertices_of(rays: list[tuple[int, ...]], n: int) -> list[RationalPoint]:
    return [tuple(Fraction(x, r[n]) for x in r[:n]) for r in rays if r[n] != 0]


def polytope_vertices(system: TstabSystem, max_rays: int = 200_000, order: Sequence[int] | None = None,
                      stop_at_fractional: bool = False) -> list[RationalPoint]:
    """Vertices of a bounded polytope given with a NONNEG row for every coordinate.

    Rows are added in stages: stage k holds the rows supported on the first
    k + 1 vertices of ``order``. After a stage the rays with t > 0 are the
    vertices of the face where the remaining coordinates vanish, so with
    ``stop_at_fractional`` the first fractional one is returned alone.
    """
    n = system.n
    d = n + 1
    nonneg = {r.support[0]: i for i, r in enumerate(system.rows) if r.tag is RowTag.NONNEG}
    if set(nonneg) != set(range(n)):
        raise ValueError("every coordinate needs a non-negativity row")
    order = list(range(n)) if order is None else list(order)
    row_order, stage_end = _stage_order(system, order)
    # constraint ids: rows of the system, then one more for t >= 0
    t_row = len(system.rows)
    rays: list[tuple[int, ...]] = []
    tight: list[int] = []
    for j in range(d):
        r = [0] * d
        r[j] = 1
        rays.append(tuple(r))
        z = (1 << t_row) if j < n else 0
        for v, i in nonneg.items():
            if v != j:
                z |= 1 << i
        tight.append(z)

    for pos, idx in enumerate(row_order):
        row = system.rows[idx]
        if row.tag is not RowTag.NONNEG:
            rays, tight = _add_row(rays, tight, _int_row(row), idx, d, max_rays)
        if stop_at_fractional and stage_end[pos] >= 0:
            frac = next((v for v in _vertices_of(rays, n) if any(x.denominator != 1 for x in v)), None)
            if frac is not None:
                return [frac]

    if any(r[n] == 0 for r in rays):
        raise ValueError("system is unbounded")
    return sorted(set(_vertices_of(rays, n)))


def _add_row(rays: list[tuple[int, ...]], tight: list[int], a: tuple[int, ...], idx: int, d: int,
             max_rays: int) -> tuple[list[tuple[int, ...]], list[int]]:
    """One double-description step: intersect the cone with a.x <= 0."""
    vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
    plus = [k for k, v in enumerate(vals) if v > 0]
    if not plus:
        return rays, [z | (1 << idx) if vals[k] == 0 else z for k, z in enumerate(tight)]
    minus = [k for k, v in enumerate(vals) if v < 0]
    zero = [k for k, v in enumerate(vals) if v == 0]
    # rays grouped by the constraints they are tight at, for the combinatorial adjacency test
    by_constraint: dict[int, int] = {}
    for k, z in enumerate(tight):
        while z:
            low = z & -z
            c = low.bit_length() - 1
            by_constraint[c] = by_constraint.get(c, 0) | 1 << k
            z ^= low
    new_rays = [rays[k] for k in minus] + [rays[k] for k in zero]
    new_tight = [tight[k] for k in minus] + [tight[k] | (1 << idx) for k in zero]
    everyone = (1 << len(rays)) - 1
    for p in plus:
        zp = tight[p]
        for m in minus:
            common = zp & tight[m]
            if common.bit_count() < d - 2:
                continue
            pair = (1 << p) | (1 << m)
            holders = everyone
            z = common
            while z and holders != pair:
                low = z & -z
                holders &= by_constraint[low.bit_length() - 1]
                z ^= low
            if holders != pair:
                continue
            vp, vm = vals[p], vals[m]
            new_rays.append(_normalise([vp * x - vm * y for x, y in zip(rays[m], rays[p])]))
            new_tight.append(common | (1 << idx))
    if len(new_rays) > max_rays:
        raise CapExceeded(f"double description exceeded {max_rays} rays")
    return new_rays, new_tight


# --------------------------------------------------------------------------
# SSP membership by exact simplex
# --------------------------------------------------------------------------


def _phase_one(columns: list[list[Fraction]], target: list[Fraction]) -> bool:
    """Is ``target`` a non-negative combination of ``columns``? Bland's rule, exact."""
    m = len(target)
    k = len(columns)
    # tableau rows: [A | I | b] with b >= 0
    rows = []
    for i in range(m):
        sign = -1 if target[i] < 0 else 1
        rows.append([sign * columns[j][i] for j in range(k)] + [Fraction(int(i == r)) for r in range(m)]
                    + [sign * target[i]])
    basis = [k + i for i in range(m)]
    width = k + m
    # objective: minimise the sum of artificials, reduced costs for the non-basic columns
    cost = [-sum(rows[i][j] for i in range(m)) for j in range(width)] + [-sum(r[-1] for r in rows)]
    for j in range(k, width):
        cost[j] = Fraction(0)
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if rows[i][enter] > 0:
                ratio = rows[i][-1] / rows[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        assert best is not None, "phase one cannot be unbounded"
        i = best[1]
        piv = rows[i][enter]
        rows[i] = [v / piv for v in rows[i]]
        for r in range(m):
            if r != i and rows[r][enter] != 0:
                f = rows[r][enter]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[i])]
        f = cost[enter]
        cost = [a - f * b for a, b in zip(cost, rows[i])]
        basis[i] = enter
    return cost[-1] == 0


def ssp_membership(g: Graph | EmbeddedGraph, p: Sequence[Fraction | int], cap: int = STABLE_SET_CAP) -> bool:
    g = _graph(g)
    if len(p) != g.n:
        raise ValueError(f"point has dimension {len(p)}, expected {g.n}")
    _check_cap(g, cap, "SSP membership")
    p = [Fraction(v) for v in p]
    if any(v < 0 for v in p):
        return False
    columns = []
    for mask in stable_set_masks(g):
        columns.append([Fraction(mask >> v & 1) for v in range(g.n)] + [Fraction(1)])
    return _phase_one(columns, p + [Fraction(1)])


# --------------------------------------------------------------------------
# verdicts
# --------------------------------------------------------------------------


def is_t_perfect_bruteforce(g: Graph | EmbeddedGraph, cap: int = TSTAB_CAP, full: bool = False) -> TPerfectVerdict:
    """Integrality of TSTAB by exact vertex enumeration.

    Unless ``full`` is set, enumeration stops at the first face (coordinates
    outside a vertex prefix set to zero) that already has a fractional vertex.
    """
    g = _graph(g)
    _check_cap(g, cap, "TSTAB vertex enumeration")
    system = tstab_system(g, cap=max(cap, g.n))
    verts = polytope_vertices(system, order=_bfs_order(g), stop_at_fractional=not full)
    frac = next((v for v in verts if any(x.denominator != 1 for x in v)), None)
    if frac is None:
        return TPerfectVerdict(True, None, None, len(verts))
    third = tuple(Fraction(1, 3) for _ in range(g.n))
    witness = third if not ssp_membership(g, third, cap=max(cap, g.n)) else frac
    return TPerfectVerdict(False, witness, frac, len(verts))


def _clique_numbers(g: Graph) -> list[int]:
    size = 1 << g.n
    omega = [0] * size
    for mask in range(1, size):
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        omega[mask] = max(omega[rest], 1 + omega[rest & g.adj[v]])
    return omega


def _chromatic_numbers(g: Graph) -> list[int]:
    size = 1 << g.n
    stable = [True] * size
    for mask in range(1, size):
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        stable[mask] = stable[rest] and not g.adj[v] & rest
    chi = [0] * size
    for mask in range(1, size):
        low = mask & -mask
        rest = mask ^ low
        best = g.n
        # colour classes containing the lowest vertex suffice
        sub = rest
        while True:
            cls = sub | low
            if stable[cls]:
                c = chi[mask ^ cls] + 1
                if c < best:
                    best = c
            if sub == 0:
                break
            sub = (sub - 1) & rest
        chi[mask] = best
    return chi


def is_perfect_sweep(g: Graph | EmbeddedGraph, cap: int = PERFECT_SWEEP_CAP) -> bool:
    """chi(H) = omega(H) for every induced subgraph H."""
    g = _graph(g)
    _check_cap(g, cap, "perfection sweep")
    omega = _clique_numbers(g)
    chi = _chromatic_numbers(g)
    return all(c == w for c, w in zip(chi, omega))


def is_perfect_spgt(g: Graph | EmbeddedGraph, cap: int = PERFECT_SPGT_CAP) -> bool:
    """No odd hole and no odd anti-hole."""
    g = _graph(g)
    _check_cap(g, cap, "hole and anti-hole search")
    return find_odd_hole(g) is None and find_odd_hole(g.complement()) is None


def is_perfect_bruteforce(g: Graph | EmbeddedGraph, method: str = "auto", cap: int | None = None) -> bool:
    """Perfection by the subgraph sweep (n <= 12 by default) or else by hole and anti-hole search."""
    g = _graph(g)
    if method == "auto":
        method = "sweep" if g.n <= (cap or PERFECT_SWEEP_CAP) else "spgt"
    if method == "sweep":
        return is_perfect_sweep(g, cap or PERFECT_SWEEP_CAP)
    if method == "spgt":
        return is_perfect_spgt(g, cap or PERFECT_SPGT_CAP)
    raise ValueError(f"unknown method {method!r}")
