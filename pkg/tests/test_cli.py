import json
import subprocess
import sys

import pytest

from conftest import BY_GATE_EXAMPLE, BY_PROTEINOID_EXAMPLE
from proteinoid_qr.cli import main
from proteinoid_qr.grammar import message_to_json, parse
from proteinoid_qr.qr import encode_numeric, encode_bytes, write_pbm
from proteinoid_qr.signal_model import ProteinoidKind


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def five_gate_csv(tmp_path, capsys):
    path = tmp_path / "five.csv"
    assert run(capsys, "synth", "--gates", "AND,OR,XOR,NAND,NOR", "--proteinoid", "35", "-o", path)[0] == 0
    return path


def test_synth_then_analyze(tmp_path, capsys):
    path = tmp_path / "or.csv"
    assert run(capsys, "synth", "--gates", "44", "-o", path)[0] == 0
    code, out, _ = run(capsys, "analyze", path)
    assert code == 0
    (line,) = out.splitlines()
    assert json.loads(line) == {"index": 0, "truth_row": "0111", "gate": "44", "spike_counts": [0, 1, 1, 1]}


def test_synth_to_stdout(capsys):
    code, out, _ = run(capsys, "synth", "--gates", "XOR")
    assert code == 0 and out.startswith("time_s,voltage_mv\n") and len(out.splitlines()) == 3001


def test_analyze_program(tmp_path, capsys):
    path = tmp_path / "p.csv"
    run(capsys, "synth", "--gates", "AND,XNOR,NO_GATE", "--rate", "2", "-o", path)
    code, out, _ = run(capsys, "analyze", path)
    assert code == 0
    assert [json.loads(x)["gate"] for x in out.splitlines()] == ["42", "66", "26"]


def test_analyze_non_uniform_csv(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("time_s,voltage_mv\n0,1\n1,1\n3,1\n")
    assert run(capsys, "analyze", path)[0] == 2


def test_analyze_short_trace(tmp_path, capsys):
    path = tmp_path / "short.csv"
    path.write_text("time_s,voltage_mv\n" + "".join(f"{t},0.0\n" for t in range(100)))
    assert run(capsys, "analyze", path)[0] == 3


def test_synth_unknown_gate(capsys):
    assert run(capsys, "synth", "--gates", "MAYBE")[0] == 2


def test_encode_decode_by_gate(tmp_path, capsys):
    pbm = tmp_path / "g.pbm"
    code, out, _ = run(capsys, "encode", BY_GATE_EXAMPLE, "--out", pbm)
    assert code == 0 and out.startswith("version=1 ec=M mask=")
    code, out, _ = run(capsys, "decode", pbm, "--schema", "by_gate", "--subject", "42")
    lines = out.splitlines()
    assert code == 0 and lines[0] == BY_GATE_EXAMPLE
    assert json.loads(lines[1]) == {
        "schema": "by_gate",
        "subject": "42",
        "blocks": [{"light": "10", "proteinoid": "37"}, {"light": "01", "proteinoid": "37"}],
    }


def test_encode_message_json(tmp_path, capsys):
    msg = parse(BY_PROTEINOID_EXAMPLE, subject=ProteinoidKind.GLU_PHE_HIS)
    (tmp_path / "m.json").write_text(json.dumps(message_to_json(msg)))
    pbm, png = tmp_path / "m.pbm", tmp_path / "m.png"
    pytest.importorskip("PIL")
    code, out, _ = run(capsys, "encode", "--message", tmp_path / "m.json", "--out", pbm, "--png", png, "--ec", "Q")
    assert code == 0 and out.strip().endswith(f"digits={BY_PROTEINOID_EXAMPLE}")
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    code, out, _ = run(capsys, "decode", pbm)
    assert out.splitlines()[0] == BY_PROTEINOID_EXAMPLE
    assert json.loads(out.splitlines()[1])["schema"] == "by_proteinoid"


@pytest.mark.parametrize("payload, exit_code", [("", 4), ("12x", 4), ("1" * 700, 4)])
def test_encode_payload_errors(tmp_path, capsys, payload, exit_code):
    assert run(capsys, "encode", payload, "--out", tmp_path / "x.pbm")[0] == exit_code


def test_decode_corrupted(tmp_path, capsys):
    qr = encode_numeric(BY_GATE_EXAMPLE)
    m = qr.modules.copy()
    m[9:, 9:] = ~m[9:, 9:]
    write_pbm(m, tmp_path / "c.pbm")
    assert run(capsys, "decode", tmp_path / "c.pbm")[0] == 5


def test_decode_malformed_pbm(tmp_path, capsys):
    (tmp_path / "x.pbm").write_text("P1\n3 3\n01")
    assert run(capsys, "decode", tmp_path / "x.pbm")[0] == 2


def test_decode_grammar_violation_prints_digits(tmp_path, capsys):
    write_pbm(encode_numeric("999999"), tmp_path / "n.pbm")
    code, out, _ = run(capsys, "decode", tmp_path / "n.pbm")
    assert code == 6 and out.splitlines() == ["999999"]


def test_decode_byte_payload(tmp_path, capsys):
    write_pbm(encode_bytes("hello"), tmp_path / "b.pbm")
    code, out, _ = run(capsys, "decode", tmp_path / "b.pbm")
    assert code == 6 and out.splitlines() == ["hello"]


def test_reconstruct(tmp_path, capsys):
    code, out, _ = run(
        capsys, "reconstruct", "--digits", BY_PROTEINOID_EXAMPLE, "--subject", "33", "--out-dir", tmp_path / "r"
    )
    assert code == 0 and len(out.splitlines()) == 3
    assert sorted(p.name for p in (tmp_path / "r").iterdir()) == [
        "by_proteinoid_33_01_33.csv",
        "by_proteinoid_33_10_33.csv",
        "by_proteinoid_33_11_33.csv",
    ]


def test_reconstruct_by_gate_rejected(tmp_path, capsys):
    assert run(capsys, "reconstruct", "--digits", BY_GATE_EXAMPLE, "--out-dir", tmp_path)[0] == 6


def test_reconstruct_from_pbm(tmp_path, capsys):
    write_pbm(encode_numeric("3344"), tmp_path / "s.pbm")
    code, out, _ = run(capsys, "reconstruct", "--pbm", tmp_path / "s.pbm", "--out-dir", tmp_path / "o")
    assert code == 0 and out.strip().endswith("by_light_none_none_33.csv")


def test_roundtrip_identical(five_gate_csv, tmp_path, capsys):
    code, out, _ = run(capsys, "roundtrip", five_gate_csv, "--pbm-out", tmp_path / "rt.pbm")
    lines = out.splitlines()
    assert code == 0 and lines[-1] == "IDENTICAL"
    assert lines[0] == "analyzed: 42 44 24 64 62"
    assert lines[1] == "digits: 354244246462"
    assert (tmp_path / "rt.pbm").read_text().startswith("P1\n")


def test_roundtrip_by_proteinoid(five_gate_csv, capsys):
    code, out, _ = run(capsys, "roundtrip", five_gate_csv, "--schema", "by_proteinoid", "--ec", "H")
    assert code == 0
    assert "digits: 104244246462" in out and out.splitlines()[-1] == "IDENTICAL"


def test_roundtrip_noisy_seeds(tmp_path, capsys):
    passed = 0
    for seed in range(50):
        path = tmp_path / f"n{seed}.csv"
        run(capsys, "synth", "--gates", "AND,OR,XOR,NAND,NOR", "--noise", "0.05", "--seed", seed, "-o", path)
        code, out, _ = run(capsys, "roundtrip", path)
        passed += code == 0 and out.splitlines()[-1] == "IDENTICAL"
    assert passed >= 48


def test_cli_output_is_deterministic(tmp_path, capsys):
    outs = []
    for name in ("a", "b"):
        run(capsys, "synth", "--gates", "OR,NOT", "--noise", "0.1", "--seed", 3, "-o", tmp_path / f"{name}.csv")
        run(capsys, "encode", BY_PROTEINOID_EXAMPLE, "--out", tmp_path / f"{name}.pbm")
        outs.append(((tmp_path / f"{name}.csv").read_bytes(), (tmp_path / f"{name}.pbm").read_bytes()))
    assert outs[0] == outs[1]


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "proteinoid_qr", "encode", "10370137", "--out", str(tmp_path / "e.pbm")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("version=1")
