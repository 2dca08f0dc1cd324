from __future__ import annotations

import io
import json
import subprocess
import sys

from builders import K6_PPRS, W5_PPRS, family, tetrahedron
from tperfect.cli import EXIT_CAP, EXIT_IMPERFECT, EXIT_INVALID, EXIT_OK, run
from tperfect.detectors import Certificate, verify
from tperfect.surface import link_cycle, parse_pprs, same_embedding, write_pprs


def cli(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_gen_then_classify_i18(tmp_path):
    code, text = cli("gen", "i18", "1")
    assert code == EXIT_OK and text.startswith("pprs 1")
    path = write(tmp_path, "i18.pprs", text)
    code, report = cli("classify", "-i", path)
    assert code == EXIT_IMPERFECT
    assert "T_PERFECT: false" in report
    line = next(l for l in report.splitlines() if l.startswith("CERT LOOSE_ODD_WHEEL"))
    cert = Certificate.from_json(line.split(": ", 1)[1])
    assert verify(parse_pprs(text), cert)


def test_classify_t_perfect_and_json(tmp_path):
    path = write(tmp_path, "g.pprs", write_pprs(family("I16", 1, 1).graph))
    code, report = cli("classify", "-i", path)
    assert code == EXIT_OK and "T_PERFECT: true" in report and "PERFECT_WITHOUT_K4: true" in report
    code, report = cli("classify", "-i", path, "--json")
    assert json.loads(report)["t_perfect"] is True


def test_validate(tmp_path, capsys):
    code, report = cli("validate", "--triangulation", "-i", write(tmp_path, "k6.pprs", K6_PPRS))
    assert code == EXIT_OK and "EULER: 1" in report
    code, report = cli("validate", "-i", write(tmp_path, "s.pprs", write_pprs(tetrahedron())))
    assert code == EXIT_INVALID
    assert "χ = 2" in report and "χ = 2" in capsys.readouterr().err


def test_bad_input_exit_codes(tmp_path):
    assert cli("validate", "-i", write(tmp_path, "bad.pprs", "pprs 1\nvertices 6\nrot 0: 7+\n"))[0] == EXIT_INVALID
    assert cli("validate", "-i", str(tmp_path / "missing.pprs"))[0] == EXIT_INVALID
    assert cli("gen", "i16", "2,2")[0] == EXIT_INVALID
    assert cli("nonsense")[0] == EXIT_INVALID


def test_oracle_on_w5(tmp_path):
    code, report = cli("oracle", "tperfect", "-i", write(tmp_path, "w5.pprs", W5_PPRS))
    assert code == EXIT_IMPERFECT
    assert "T_PERFECT: false" in report
    assert "WITNESS: 1/3 1/3 1/3 1/3 1/3 1/3" in report
    assert "AGREEMENT: n/a" in report


def test_oracle_agreement_and_cap(tmp_path):
    path = write(tmp_path, "i16.pprs", write_pprs(family("I16", 1, 1).graph))
    code, report = cli("oracle", "tperfect", "-i", path)
    assert code == EXIT_OK and "AGREEMENT: agree" in report
    code, report = cli("oracle", "perfect", "-i", path)
    assert code == EXIT_OK and "AGREEMENT: agree" in report
    assert cli("oracle", "tperfect", "-i", path, "--cap", "5")[0] == EXIT_CAP


def test_split_contract_reduce_replay(tmp_path):
    g = family("I18", 1).graph
    src = write(tmp_path, "g.pprs", write_pprs(g))
    rot = link_cycle(g, 0).vertices
    log = tmp_path / "moves.log"
    big = tmp_path / "big.pprs"
    code, _ = cli("split", "-i", src, "--at", "0", "--gate", f"{rot[0]},{rot[2]}", "-o", str(big), "--log", str(log))
    assert code == EXIT_OK
    code, text = cli("contract", "-i", str(big), "--site", f"{g.n},0,{g.n + 1}")
    assert code == EXIT_OK and same_embedding(parse_pprs(text), g)
    reduced_log = tmp_path / "reduce.log"
    code, text = cli("reduce", "-i", str(big), "--log", str(reduced_log))
    assert code == EXIT_OK and parse_pprs(text).n == g.n
    code, replayed = cli("replay", "-i", str(big), "--log", str(reduced_log))
    assert code == EXIT_OK and replayed == text
    code, again = cli("replay", "-i", src, "--log", str(log))
    assert code == EXIT_OK and parse_pprs(again) == parse_pprs(big.read_text())


def test_octa_round_trip(tmp_path):
    g = family("I16", 1).graph
    face = ",".join(map(str, g.faces[0]))
    code, text = cli("octa", "-i", write(tmp_path, "g.pprs", write_pprs(g)), "--attach", face)
    assert code == EXIT_OK
    code, back = cli("octa", "-i", write(tmp_path, "big.pprs", text), "--delete", face)
    assert code == EXIT_OK and same_embedding(parse_pprs(back), g)
    assert cli("octa", "-i", str(tmp_path / "g.pprs"), "--delete", face)[0] == EXIT_INVALID


def test_export_dot(tmp_path):
    code, dot = cli("export-dot", "-i", write(tmp_path, "g.pprs", write_pprs(family("I18", 1).graph)))
    assert code == EXIT_OK and dot.startswith("graph G {")
    assert 'class="k4 loose_odd_wheel"' in dot


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "tperfect", "gen", "i16", "1,1"], capture_output=True, text=True)
    assert proc.returncode == 0
    proc2 = subprocess.run([sys.executable, "-m", "tperfect", "classify"], input=proc.stdout,
                           capture_output=True, text=True)
    assert proc2.returncode == 0 and "T_PERFECT: true" in proc2.stdout
