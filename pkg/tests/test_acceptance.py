"""Acceptance criteria 1 to 7.

Each test records a PASS/FAIL line that is printed in the terminal summary.
Running this file directly prints the same lines without pytest.
"""

from __future__ import annotations

import itertools
import sys
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE
from corpus import build_corpus
from tperfect.catalog import FamilySpec, build_family, i16_degenerate
from tperfect.detectors import CertKind, Certificate, classify, find_loose_odd_wheel, induced_cycles, verify
from tperfect.graph import antihole, cycle_graph, wheel_graph
from tperfect.oracle import (
    enumerate_stable_sets,
    is_perfect_bruteforce,
    is_perfect_spgt,
    is_perfect_sweep,
    is_t_perfect_bruteforce,
    tstab_system,
)
from tperfect.surface import is_contractible, is_nice, link_cycle, validate
from tperfect.transforms import (
    attach_octahedron,
    delete_octahedron,
    even_contract,
    even_split,
    find_even_contractions,
    three_colour,
)

THIRD = Fraction(1, 3)


def record(number: int, failures: list, detail: str) -> None:
    ok = not failures
    ACCEPTANCE[number] = (ok, detail if ok else f"{detail}; first failures: {failures[:3]}")
    assert ok, failures[:5]


def check_output(g, label: str, failures: list) -> None:
    report = validate(g, triangulation=True)
    if not report.ok or report.euler_characteristic != 1 or 3 * report.faces != 2 * report.edges:
        failures.append((label, report.messages()))
    if any(g.degree(v) % 2 for v in range(g.n)):
        failures.append((label, "odd degree"))


def face_set(g, relabel=None):
    relabel = relabel or {}
    return {frozenset(relabel.get(v, v) for v in f) for f in g.faces}


# --------------------------------------------------------------------------


def criterion_1(corpus) -> None:
    failures = []
    assert len(corpus) >= 200
    for item in corpus:
        g = item.graph
        assert g.n <= 14 and validate(g, triangulation=True).ok
        report = classify(g)
        verdict = is_t_perfect_bruteforce(g.graph)
        if report.t_perfect != verdict.t_perfect:
            failures.append((item.name, "t-perfect", report.t_perfect, verdict.t_perfect))
        left = report.k4 is None and is_perfect_bruteforce(g.graph)
        right = report.loose_odd_wheel is None and report.c7bar is None
        if left != right:
            failures.append((item.name, "perfect without K4", left, right))
        for cert in report.certificates():
            if not verify(g, cert):
                failures.append((item.name, "certificate", cert))
    record(1, failures, f"{len(corpus)} triangulations, classify matches both oracles")


def criterion_2() -> None:
    failures = []
    count = 0
    for length in range(1, 5):
        for s in itertools.product((1, 2, 3), repeat=length):
            if i16_degenerate(s):
                continue
            entry = build_family(FamilySpec("I16", s))
            want = s.count(1) % 2 == 0
            report = classify(entry.graph)
            count += 1
            if report.t_perfect != want:
                failures.append((entry.name, report.t_perfect))
            if not want and (report.loose_odd_wheel is None or not verify(entry.graph, report.loose_odd_wheel)):
                failures.append((entry.name, "no verified wheel"))
    for family, k in itertools.product(("I18", "I19"), (1, 2, 3)):
        entry = build_family(FamilySpec(family, (k,)))
        report = classify(entry.graph)
        count += 1
        cert = report.loose_odd_wheel
        if report.t_perfect or cert is None or not verify(entry.graph, cert):
            failures.append((entry.name, report.t_perfect, cert))
        if not verify(entry.graph, entry.known_certificate):
            failures.append((entry.name, "catalog certificate"))
    record(2, failures, f"{count} family instances obey the parity law")


def criterion_3() -> None:
    failures = []
    w5, c7bar, c5 = wheel_graph(5), antihole(7), cycle_graph(5)
    verdict = is_t_perfect_bruteforce(w5)
    if verdict.t_perfect or verdict.witness is None or any(c != THIRD for c in verdict.witness):
        failures.append(("W5", verdict.t_perfect, verdict.witness))
    if verdict.fractional_vertex is None or any(c.denominator == 1 for c in verdict.fractional_vertex):
        failures.append(("W5 fractional vertex", verdict.fractional_vertex))
    if is_t_perfect_bruteforce(c7bar).t_perfect:
        failures.append(("C7bar", True))
    if not is_t_perfect_bruteforce(c5).t_perfect:
        failures.append(("C5", False))
    for name, g in (("W5", w5), ("C7bar", c7bar)):
        for v in range(g.n):
            if not is_t_perfect_bruteforce(g.delete_vertex(v)).t_perfect:
                failures.append((f"{name} - {v}", False))
    record(3, failures, "W5 witness all 1/3, C7bar and C5 verdicts, vertex-deletion minimality")


def criterion_4(corpus) -> None:
    failures = []
    contractions = attachments = 0
    for item in corpus:
        g = item.graph
        for site in find_even_contractions(g):
            contractions += 1
            small, step = even_contract(g, site)
            check_output(small, item.name, failures)
            m = step.id_map
            y = m[site.x]
            big, _ = even_split(small, y, m[site.a], m[site.a2])
            check_output(big, item.name, failures)
            n = small.n
            base = {v: m[v] for v in range(g.n) if v not in (site.x, site.b, site.b2)}
            options = [
                {**base, site.x: n, site.b: y, site.b2: n + 1},
                {**base, site.x: n, site.b2: y, site.b: n + 1},
            ]
            target = face_set(big)
            if not any(face_set(g, r) == target for r in options):
                failures.append((item.name, "split after contract", site))
        for face in g.faces:
            attachments += 1
            bigger, _ = attach_octahedron(g, face)
            check_output(bigger, item.name, failures)
            back, step = delete_octahedron(bigger, face)
            check_output(back, item.name, failures)
            if face_set(back) != face_set(g) or any(step.id_map[v] != v for v in range(g.n)):
                failures.append((item.name, "delete after attach", face))
    record(4, failures, f"{contractions} contractions and {attachments} attachments round-trip")


def degree_four_wheels(g, hole):
    """Hub x from the link u, x, w, y of a degree-4 hole vertex v."""
    out = []
    k = len(hole)
    for i, v in enumerate(hole):
        if g.degree(v) != 4:
            continue
        u, w = hole[i - 1], hole[(i + 1) % k]
        rot = g.neighbours_in_order(v)
        j = rot.index(u)
        assert rot[(j + 2) % 4] == w
        x = rot[(j + 1) % 4]
        out.append(Certificate(CertKind.LOOSE_ODD_WHEEL, tuple(hole), hub=x, odd=(u, v, w)))
    return out


def link_paths(g, v, u, w):
    """The two u-w paths along the link cycle of v."""
    vs = link_cycle(g, v).vertices
    out = []
    for ring in (vs, vs[::-1]):
        start = ring.index(u)
        walk = [ring[(start + s) % len(ring)] for s in range(len(ring))]
        out.append(walk[: walk.index(w) + 1])
    return out


def path_chords(graph, walk):
    return [(walk[i], walk[j]) for i, j in itertools.combinations(range(len(walk)), 2)
            if j > i + 1 and graph.has_edge(walk[i], walk[j])]


def surface_properties(corpus) -> dict[str, list]:
    """Failures per property; ``link-paths-inner`` ignores chords that touch u or w."""
    failures: dict[str, list] = {k: [] for k in ("link-cycles", "link-paths", "link-paths-inner", "degree-four-wheel", "contractible-hole")}
    for item in corpus:
        g = item.graph
        graph = g.graph
        for v in range(g.n):
            hc = link_cycle(g, v)
            vs = hc.vertices
            hamilton = set(vs) == set(graph.neighbours(v)) and len(vs) == g.degree(v)
            closed = all(graph.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))
            if not (hc.contractible and hamilton and closed):
                failures["link-cycles"].append((item.name, v))
        cycles = induced_cycles(graph)
        if is_nice(g):
            for c in cycles:
                if is_contractible(g, c):
                    continue
                for i, v in enumerate(c):
                    u, w = c[i - 1], c[(i + 1) % len(c)]
                    for walk in link_paths(g, v, u, w):
                        chords = path_chords(graph, walk)
                        if chords:
                            failures["link-paths"].append((item.name, c, v, walk, chords))
                        if any(u not in e and w not in e for e in chords):
                            failures["link-paths-inner"].append((item.name, c, v, walk, chords))
        found = None
        for hole in (c for c in cycles if len(c) >= 5 and len(c) % 2):
            for cert in degree_four_wheels(g, hole):
                if not verify(g, cert):
                    failures["degree-four-wheel"].append((item.name, cert))
            if is_contractible(g, hole):
                found = found or find_loose_odd_wheel(g)
                if found is None or not verify(g, found):
                    failures["contractible-hole"].append((item.name, hole))
    return failures


def criterion_5(corpus) -> None:
    failures = surface_properties(corpus)
    detail = ", ".join(f"{k} {'ok' if not v else f'{len(v)} failures'}" for k, v in failures.items())
    literal = [f for k in ("link-cycles", "link-paths", "degree-four-wheel", "contractible-hole") for f in failures[k]]
    record(5, literal, detail)


def criterion_6(corpus) -> None:
    failures = []
    pairs = used = 0
    for item in corpus:
        g = item.graph
        for site in find_even_contractions(g):
            pairs += 1
            small, _ = even_contract(g, site)
            report = classify(small)
            if not (report.perfect and report.k4 is None):
                continue
            used += 1
            colours = three_colour(g)
            if colours is None or any(colours[u] == colours[v] for u, v in g.graph.edges()):
                failures.append((item.name, site))
    assert used > 0
    record(6, failures, f"{used} of {pairs} contraction pairs qualify and lift to 3-colourings")


def criterion_7(corpus) -> None:
    failures = []
    swept = 0
    for item in corpus:
        graph = item.graph.graph
        system = tstab_system(graph)
        for s in enumerate_stable_sets(graph):
            point = [Fraction(int(v in s)) for v in range(graph.n)]
            if not system.contains(point):
                failures.append((item.name, "stable set outside TSTAB", s))
                break
        if graph.n <= 12:
            swept += 1
            if is_perfect_sweep(graph) != is_perfect_spgt(graph):
                failures.append((item.name, "perfection methods disagree"))
    record(7, failures, f"SSP inside TSTAB on {len(corpus)} graphs, sweep equals hole search on {swept}")


# --------------------------------------------------------------------------


def test_criterion_1(corpus):
    criterion_1(corpus)


def test_criterion_2():
    criterion_2()


def test_criterion_3():
    criterion_3()


def test_criterion_4(corpus):
    criterion_4(corpus)


@pytest.mark.xfail(strict=True, reason=(
    "the literal link-path statement fails on nice triangulations: for C = (1, 2, 3, 7, 8) "
    "in I16[1] | split 3 0 6, the link path 8, 6, 4, 0, 2 of vertex 1 has the chord 8-4 "
    "and the triangle 1, 8, 4 is non-contractible"))
def test_criterion_5(corpus):
    criterion_5(corpus)


def test_surface_properties_with_inner_link_paths(corpus):
    failures = surface_properties(corpus)
    for key in ("link-cycles", "link-paths-inner", "degree-four-wheel", "contractible-hole"):
        assert not failures[key], (key, failures[key][:3])


def test_criterion_6(corpus):
    criterion_6(corpus)


def test_criterion_7(corpus):
    criterion_7(corpus)


if __name__ == "__main__":
    data = build_corpus()
    runs = [lambda: criterion_1(data), criterion_2, criterion_3, lambda: criterion_4(data),
            lambda: criterion_5(data), lambda: criterion_6(data), lambda: criterion_7(data)]
    for number, run in enumerate(runs, start=1):
        try:
            run()
        except AssertionError:
            pass
        ok, detail = ACCEPTANCE.get(number, (False, "did not complete"))
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    sys.exit(0 if all(ok for ok, _ in ACCEPTANCE.values()) and len(ACCEPTANCE) == 7 else 1)
