"""Command-line front end.

Exit codes: 0 ok or t-perfect, 1 t-imperfect (or a false oracle verdict),
2 invalid input, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .catalog import FamilySpec, InvalidFamilyParams, build_family
from .detectors import Certificate, CertKind, classify
from .oracle import (
    PERFECT_SPGT_CAP,
    TSTAB_CAP,
    CapExceeded,
    format_point,
    is_perfect_bruteforce,
    is_t_perfect_bruteforce,
)
from .surface import EmbeddedGraph, PprsError, parse_pprs, validate, write_pprs
from .transforms import (
    Step,
    TransformError,
    TransformLog,
    attach_octahedron,
    delete_octahedron,
    even_contract,
    even_split,
    reduce_to_irreducible,
    site_at,
)

EXIT_OK, EXIT_IMPERFECT, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _ints(text: str, count: int, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must be {count} comma-separated vertex ids, got {text!r}") from None
    if len(vals) != count:
        raise UsageError(f"{what} must be {count} comma-separated vertex ids, got {text!r}")
    return vals


def _read_graph(path: str | None) -> EmbeddedGraph:
    if path is None or path == "-":
        return parse_pprs(sys.stdin.read())
    try:
        return parse_pprs(Path(path).read_bytes())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, path: str | None, out: TextIO) -> None:
    if path is None or path == "-":
        out.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _append_log(path: str | None, steps: Sequence[Step]) -> None:
    if path:
        with open(path, "a", encoding="utf-8") as fh:
            for s in steps:
                fh.write(s.to_line() + "\n")


def _cert_line(c: Certificate) -> str:
    return f"CERT {c.kind.value}: {c.to_json()}"


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace, out: TextIO) -> int:
    g = _read_graph(args.input)
    report = validate(g, triangulation=args.triangulation)
    if args.json:
        out.write(json.dumps({"ok": report.ok, "vertices": report.vertices, "edges": report.edges,
                              "faces": report.faces, "euler_characteristic": report.euler_characteristic,
                              "violations": report.messages()}) + "\n")
    else:
        out.write(f"VALID: {str(report.ok).lower()}\n")
        out.write(f"V: {report.vertices}\nE: {report.edges}\nF: {report.faces}\n")
        out.write(f"EULER: {report.euler_characteristic}\n")
        for msg in report.messages():
            out.write(f"VIOLATION: {msg}\n")
    if not report.ok:
        for msg in report.messages():
            print(msg, file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_classify(args: argparse.Namespace, out: TextIO) -> int:
    g = _read_graph(args.input)
    report = classify(g)
    if args.json:
        out.write(json.dumps(report.to_dict()) + "\n")
    else:
        no_low_c7 = report.loose_odd_wheel is None and report.c7bar is None
        out.write(f"T_PERFECT: {str(report.t_perfect).lower()}\n")
        out.write(f"STRONGLY_T_PERFECT: {str(report.strongly_t_perfect).lower()}\n")
        out.write(f"PERFECT_WITHOUT_K4: {str(report.perfect_without_k4).lower()}\n")
        out.write(f"NO_LOOSE_ODD_WHEEL_NO_C7BAR: {str(no_low_c7).lower()}\n")
        out.write(f"PERFECT: {str(report.perfect).lower()}\n")
        out.write(f"EULERIAN: {str(report.eulerian).lower()}\n")
        out.write(f"NICE: {str(report.nice).lower()}\n")
        out.write(f"V: {report.vertices}\nE: {report.edges}\n")
        for c in report.certificates():
            out.write(_cert_line(c) + "\n")
    return EXIT_OK if report.t_perfect else EXIT_IMPERFECT


def _finish_move(g: EmbeddedGraph, steps: Sequence[Step], args: argparse.Namespace, out: TextIO) -> int:
    _emit(write_pprs(g), args.output, out)
    _append_log(args.log, steps)
    return EXIT_OK


def cmd_contract(args: argparse.Namespace, out: TextIO) -> int:
    g = _read_graph(args.input)
    x, b, b2 = _ints(args.site, 3, "--site")
    g2, step = even_contract(g, site_at(g, x, b, b2))
    return _finish_move(g2, [step], args, out)


def cmd_split(args: argparse.Namespace, out: TextIO) -> int:
    g = _read_graph(args.input)
    a, a2 = _ints(args.gate, 2, "--gate")
    g2, step = even_split(g, args.at, a, a2)
    return _finish_move(g2, [step], args, out)


def cmd_octa(args: argparse.Namespace, out: TextIO) -> int:
    g = _read_graph(args.input)
    if args.attach:
        g2, step = attach_octahedron(g, _ints(args.attach, 3, "--attach"))
    else:
        g2, step = delete_octahedron(g, _ints(args.delete, 3, "--delete"))
    return _finish_move(g2, [step], args, out)


def cmd_reduce(args: argparse.Namespace, out: TextIO) -> int:
    g = _read_graph(args.input)
    g2, log = reduce_to_irreducible(g)
    if args.log is None:
        print(f"reduced in {len(log)} steps", file=sys.stderr)
    return _finish_move(g2, log.steps, args, out)


def cmd_replay(args: argparse.Namespace, out: TextIO) -> int:
    g = _read_graph(args.input)
    try:
        text = Path(args.log).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.log}: {exc.strerror}") from None
    g2 = TransformLog.parse(text).replay(g)
    _emit(write_pprs(g2), args.output, out)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace, out: TextIO) -> int:
    spec = FamilySpec.parse(args.family, args.params)
    entry = build_family(spec)
    _emit(write_pprs(entry.graph, comment=entry.name), args.output, out)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace, out: TextIO) -> int:
    g = _read_graph(args.input)
    embedded_ok = validate(g, triangulation=True).ok
    report = classify(g) if embedded_ok else None
    if args.question == "tperfect":
        verdict = is_t_perfect_bruteforce(g, cap=args.cap or TSTAB_CAP)
        value = verdict.t_perfect
        lines = [f"T_PERFECT: {str(value).lower()}"]
        if verdict.witness is not None:
            lines.append(f"WITNESS: {format_point(verdict.witness)}")
        if verdict.fractional_vertex is not None:
            lines.append(f"FRACTIONAL_VERTEX: {format_point(verdict.fractional_vertex)}")
        theirs = None if report is None else report.t_perfect
    else:
        value = is_perfect_bruteforce(g, cap=args.cap)
        lines = [f"PERFECT: {str(value).lower()}"]
        theirs = None if report is None else report.perfect
    if theirs is None:
        lines.append("AGREEMENT: n/a (not a projective-plane triangulation)")
    else:
        lines.append(f"AGREEMENT: {'agree' if theirs == value else 'DISAGREE'} (classify says {str(theirs).lower()})")
    if args.json:
        out.write(json.dumps({"question": args.question, "value": value, "classify": theirs,
                              "witness": None if args.question != "tperfect" or verdict.witness is None
                              else [str(v) for v in verdict.witness]}) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return EXIT_OK if value else EXIT_IMPERFECT


def to_dot(g: EmbeddedGraph, certs: Sequence[Certificate] = ()) -> str:
    """DOT text; vertices and edges of each certificate get a ``class`` attribute naming its kind."""
    vclass: dict[int, list[str]] = {}
    eclass: dict[tuple[int, int], list[str]] = {}
    for c in certs:
        tag = c.kind.value.lower()
        vs = list(c.vertices)
        for v in vs + ([c.hub] if c.hub is not None else []):
            vclass.setdefault(v, []).append(tag)
        if c.kind in (CertKind.ODD_HOLE, CertKind.LOOSE_ODD_WHEEL):
            pairs = [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]
            if c.hub is not None and c.odd:
                pairs += [(c.hub, v) for v in c.odd]
        elif c.kind is CertKind.K4:
            pairs = [(u, v) for i, u in enumerate(vs) for v in vs[i + 1:]]
        else:
            pairs = []
        for u, v in pairs:
            eclass.setdefault((min(u, v), max(u, v)), []).append(tag)
    lines = ["graph G {"]
    for v in range(g.n):
        attr = f' [class="{" ".join(vclass[v])}"]' if v in vclass else ""
        lines.append(f"  {v}{attr};")
    for u, v in g.graph.edges():
        attrs = [f'signature="{g.sig(u, v)}"']
        if (u, v) in eclass:
            attrs.append(f'class="{" ".join(eclass[(u, v)])}"')
        lines.append(f"  {u} -- {v} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args: argparse.Namespace, out: TextIO) -> int:
    g = _read_graph(args.input)
    certs = classify(g).certificates() if validate(g, triangulation=True).ok else []
    _emit(to_dot(g, certs), args.output, out)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tperfect", description="t-perfection of Eulerian projective-plane triangulations")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, func, help_text: str, output: bool = True, log: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--input", "-i", help="signed rotation system file (default: stdin)")
        if output:
            p.add_argument("--output", "-o", help="output file (default: stdout)")
        if log:
            p.add_argument("--log", help="append transform steps to this file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = command("validate", cmd_validate, "check a rotation system is a projective-plane embedding", output=False)
    p.add_argument("--triangulation", action="store_true", help="also require every face to be a triangle")
    command("classify", cmd_classify, "decide t-perfection with certificates", output=False)
    p = command("contract", cmd_contract, "even-contract at a site", log=True)
    p.add_argument("--site", required=True, help="x,b,b' with x of degree 4 and b, b' opposite on its link")
    p = command("split", cmd_split, "even-split a vertex", log=True)
    p.add_argument("--at", type=int, required=True, help="vertex to split")
    p.add_argument("--gate", required=True, help="a,a' the two neighbours that stay shared")
    p = command("octa", cmd_octa, "attach or delete an octahedron", log=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--attach", help="face u,v,w to fill")
    group.add_argument("--delete", help="triangle u,v,w whose interior is removed")
    command("reduce", cmd_reduce, "reduce to an irreducible triangulation", log=True)
    p = command("gen", cmd_gen, "generate a family member")
    p.add_argument("family", choices=["i16", "i18", "i19", "I16", "I18", "I19"])
    p.add_argument("params", help="comma-separated parameters, e.g. 1,2,3")
    p = command("oracle", cmd_oracle, "brute-force polytope and perfection checks", output=False)
    p.add_argument("question", choices=["tperfect", "perfect"])
    p.add_argument("--cap", type=int, help=f"vertex limit (default {TSTAB_CAP} for tperfect, "
                                           f"{PERFECT_SPGT_CAP} for perfect)")
    command("export-dot", cmd_export_dot, "write Graphviz DOT with certificate annotations")
    p = command("replay", cmd_replay, "apply a transform log")
    p.set_defaults(log=None)
    p.add_argument("--log", required=True, help="transform log to apply")
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (PprsError, TransformError, InvalidFamilyParams, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())
