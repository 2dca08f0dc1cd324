"""Recognising t-perfect Eulerian triangulations of the projective plane."""

from __future__ import annotations

from .catalog import CatalogEntry, FamilySpec, build_family, build_piece, is_irreducible, registry_load
from .detectors import (
    Certificate,
    CertKind,
    ClassificationReport,
    classify,
    find_induced_c7bar,
    find_k4,
    find_loose_odd_wheel,
    find_odd_hole,
    is_eulerian,
    is_perfect_embedded,
    verify,
)
from .graph import Graph
from .oracle import (
    CapExceeded,
    enumerate_stable_sets,
    is_perfect_bruteforce,
    is_t_perfect_bruteforce,
    ssp_membership,
    tstab_system,
)
from .surface import EmbeddedGraph, from_triangles, parse_pprs, validate, write_pprs
from .transforms import (
    EvenContractionSite,
    TransformLog,
    attach_octahedron,
    clique_separator_components,
    delete_octahedron,
    even_contract,
    even_split,
    find_even_contractions,
    reduce_to_irreducible,
    three_colour,
)

__version__ = "0.1.0"
