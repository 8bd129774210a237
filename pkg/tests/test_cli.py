import json

from synthtop.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_passes_and_emits_json_lines(capsys):
    code, out, err = run(capsys, "verify",
                         "--laws", "enumeration-crosscheck,figure1-chain",
                         "--max-size", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    for line in lines:
        doc = json.loads(line)
        assert doc["passed"] is True
        assert doc["counterexample"] is None
        assert "wall_ms" not in doc  # timings live on stderr only
    assert "pass" in err


def test_verify_reports_are_byte_stable(capsys):
    args = ("verify", "--laws", "figure1-chain,galois-roundtrip",
            "--max-size", "2", "--seed", "13")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_verify_all_laws_small(capsys):
    code, out, err = run(capsys, "verify", "--laws", "all", "--max-size", "1",
                         "--fuel", "100000")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 8
    assert all(json.loads(l)["passed"] for l in lines)


def test_verify_unknown_law_exits_2(capsys):
    code, out, err = run(capsys, "verify", "--laws", "bogus")
    assert code == 2
    assert "unknown law" in err


def test_verify_oversize_exits_2(capsys):
    code, out, err = run(capsys, "verify", "--laws", "enumeration-crosscheck",
                         "--max-size", "9")
    assert code == 2


def test_repair_output_shape(capsys):
    code, out, err = run(capsys, "repair", "0.3(3)", "--bits", "8")
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == "1/3"
    assert len(doc["levels"]) == 8
    assert len(doc["delta"]) == 8
    assert "fuel_exhausted_after_level" not in doc


def test_repair_parse_failure_exits_2(capsys):
    code, out, err = run(capsys, "repair", "zz")
    assert code == 2


def test_repair_fuel_exhaustion_is_partial(capsys):
    code, out, err = run(capsys, "repair", "0.3(3)", "--bits", "20",
                         "--fuel", "40")
    assert code == 1
    doc = json.loads(out)
    assert doc["fuel_exhausted_after_level"] == len(doc["levels"])
    assert len(doc["levels"]) < 20


def test_spaces_t0_and_order(tmp_path, capsys):
    f = tmp_path / "sierp.json"
    f.write_text(json.dumps({"n": 2, "opens": [[], [1], [0, 1]]}))
    code, out, _ = run(capsys, "spaces", str(f), "--query", "t0")
    assert code == 0 and json.loads(out) == {"t0": True}
    code, out, _ = run(capsys, "spaces", str(f), "--query", "order")
    assert code == 0
    assert [0, 1] in json.loads(out)["order"]

    g = tmp_path / "indiscrete.json"
    g.write_text(json.dumps({"n": 2, "opens": [[], [0, 1]]}))
    code, out, _ = run(capsys, "spaces", str(g), "--query", "t0")
    assert code == 0 and json.loads(out) == {"t0": False}


def test_spaces_tauk_matches_hand_computation(tmp_path, capsys):
    f = tmp_path / "chain.json"
    f.write_text(json.dumps({"n": 2, "sets": [[1], [0, 1]],
                             "index_order": [[0, 1]]}))
    code, out, _ = run(capsys, "spaces", str(f), "--query", "tauk")
    assert code == 0
    assert json.loads(out)["tauk"] == {"n": 2, "opens": [[], [1], [0, 1]]}


def test_spaces_decode_demo(tmp_path, capsys):
    f = tmp_path / "chain.json"
    f.write_text(json.dumps({"n": 2, "sets": [[1], [0, 1]],
                             "index_order": [[0, 1]]}))
    code, out, _ = run(capsys, "spaces", str(f), "--query", "decode-demo")
    assert code == 0
    doc = json.loads(out)["decode"]
    assert doc["1"][-1]["candidates"] == [1]
    assert doc["0"][-1]["candidates"] == [0, 1]  # the up-set of the bottom point


def test_spaces_schema_violation_exits_2(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"n": 2, "opens": [[1], [0, 1]]}))
    code, out, err = run(capsys, "spaces", str(f), "--query", "t0")
    assert code == 2
    assert "opens" in err

    g = tmp_path / "notjson.json"
    g.write_text("{nope")
    code, out, err = run(capsys, "spaces", str(g), "--query", "t0")
    assert code == 2
    assert "line" in err
