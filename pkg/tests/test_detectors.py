from __future__ import annotations

import itertools

import pytest

from builders import family, graph, k6, octahedron_graph
from tperfect.detectors import (
    CertKind,
    Certificate,
    CertificateError,
    classify,
    find_induced_c7bar,
    find_k4,
    find_loose_odd_wheel,
    find_odd_hole,
    induced_cycles,
    is_eulerian,
    is_perfect_embedded,
    verify,
)
from tperfect.graph import antihole, complete_graph, cycle_graph, wheel_graph
from tperfect.surface import from_triangles, link_cycle
from tperfect.transforms import even_split


def brute_induced_cycles(g):
    """Every induced cycle as a frozenset, by subset scan."""
    out = set()
    for k in range(3, g.n + 1):
        for vs in itertools.combinations(range(g.n), k):
            h, _ = g.induced(vs)
            if h.is_connected() and all(h.degree(v) == 2 for v in range(h.n)):
                out.add(frozenset(vs))
    return out


def test_find_k4():
    assert set(find_k4(complete_graph(4)).vertices) == {0, 1, 2, 3}
    assert find_k4(cycle_graph(6)) is None
    assert find_k4(graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])) is None
    assert find_k4(wheel_graph(3)) is not None


def test_find_odd_hole():
    assert len(find_odd_hole(cycle_graph(5)).vertices) == 5
    assert len(find_odd_hole(cycle_graph(7)).vertices) == 7
    assert find_odd_hole(complete_graph(6)) is None
    assert find_odd_hole(wheel_graph(4)) is None
    assert find_odd_hole(cycle_graph(6)) is None


def test_find_induced_c7bar():
    cert = find_induced_c7bar(antihole(7))
    assert cert is not None and verify(antihole(7), cert)
    assert find_induced_c7bar(cycle_graph(7)) is None
    assert find_induced_c7bar(complete_graph(6)) is None


def test_loose_odd_wheel_examples():
    w5 = wheel_graph(5)
    cert = find_loose_odd_wheel(w5)
    assert cert.hub == 0 and verify(w5, cert)
    assert find_loose_odd_wheel(wheel_graph(4)) is None
    i16 = family("I16", 1)
    cert = find_loose_odd_wheel(i16.graph)
    assert cert is not None and verify(i16.graph, cert)
    assert verify(i16.graph, i16.known_certificate)
    assert i16.known_certificate.hub == i16.labels["a"]


def test_loose_odd_wheel_with_extra_hub_neighbours():
    # C7 with hub seeing 0, 1, 2 and also 4: segments 0-1, 1-2, 2..0 are odd
    edges = [(i, (i + 1) % 7) for i in range(7)] + [(7, 0), (7, 1), (7, 2), (7, 4)]
    g = graph(8, edges)
    cert = Certificate(CertKind.LOOSE_ODD_WHEEL, tuple(range(7)), hub=7, odd=(0, 1, 2))
    assert verify(g, cert)
    found = find_loose_odd_wheel(g)
    assert found is not None and verify(g, found)


def test_verify_rejects_bad_certificates():
    assert verify(wheel_graph(5), Certificate(CertKind.LOOSE_ODD_WHEEL, (1, 2, 3, 4, 5), hub=0, odd=(1, 2, 3)))
    assert not verify(complete_graph(5).delete_vertex(4).complement(),
                      Certificate(CertKind.K4, (0, 1, 2, 3)))
    assert not verify(wheel_graph(5), Certificate(CertKind.LOOSE_ODD_WHEEL, (1, 2, 3, 4, 5), hub=0, odd=(1, 3, 4)))
    c7 = graph(8, [(i, (i + 1) % 7) for i in range(7)] + [(7, 0), (7, 1), (7, 2), (7, 3)])
    # segments 0-1, 1-3 (length 2), 3..0: not all odd
    assert not verify(c7, Certificate(CertKind.LOOSE_ODD_WHEEL, tuple(range(7)), hub=7, odd=(0, 1, 3)))
    # a chorded cycle is not a loose odd wheel rim
    w = graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (5, 0), (5, 1), (5, 2)])
    assert not verify(w, Certificate(CertKind.LOOSE_ODD_WHEEL, (0, 1, 2, 3, 4), hub=5, odd=(0, 1, 2)))
    with pytest.raises(CertificateError):
        verify(wheel_graph(5), Certificate(CertKind.LOOSE_ODD_WHEEL, (1, 2, 3), hub=None))


def test_certificate_json_round_trip():
    cert = Certificate(CertKind.LOOSE_ODD_WHEEL, (1, 2, 3, 4, 5), hub=0, odd=(1, 2, 3))
    assert Certificate.from_json(cert.to_json()) == cert
    assert cert.to_dict()["kind"] == "LOOSE_ODD_WHEEL"


def test_induced_cycles_match_subset_scan():
    for g in (wheel_graph(5), antihole(7), family("I16", 1).graph.graph, octahedron_graph()):
        found = induced_cycles(g)
        assert len(found) == len(set(map(frozenset, found)))
        assert set(map(frozenset, found)) == brute_induced_cycles(g)
        odd = induced_cycles(g, odd_only=True)
        assert set(map(frozenset, odd)) == {c for c in brute_induced_cycles(g) if len(c) % 2}


def test_is_eulerian():
    ok, cert = is_eulerian(k6())
    assert not ok and cert.kind is CertKind.NON_EULERIAN
    assert is_eulerian(octahedron_graph()) == (True, None)
    for name, params in [("I16", (1, 2)), ("I18", (2,)), ("I19", (1,))]:
        assert is_eulerian(family(name, *params).graph)[0]


def test_is_perfect_embedded():
    ok, cert = is_perfect_embedded(family("I16", 1, 1).graph)
    assert ok and cert is None
    ok, cert = is_perfect_embedded(family("I18", 2).graph)
    assert not ok and cert.kind in (CertKind.ODD_HOLE, CertKind.C7BAR)
    with pytest.raises(TypeError):
        is_perfect_embedded(cycle_graph(5))


def test_classify_examples():
    r = classify(family("I16", 1, 1).graph)
    assert r.t_perfect and r.perfect and r.k4 is None and r.strongly_t_perfect and r.perfect_without_k4
    r = classify(family("I18", 1).graph)
    assert not r.t_perfect and r.loose_odd_wheel is not None
    r = classify(k6())
    assert not r.t_perfect and r.non_eulerian is not None and r.loose_odd_wheel is not None
    assert all(verify(k6(), c) for c in r.certificates())


def test_classify_rejects_non_triangulations():
    sphere = from_triangles(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    with pytest.raises(ValueError):
        classify(sphere)


def test_split_keeps_verdict_certificates_verifiable():
    g = family("I16", 1, 1).graph
    rot = link_cycle(g, 0).vertices
    big, _ = even_split(g, 0, rot[0], rot[2])
    report = classify(big)
    for c in report.certificates():
        assert verify(big, c)
