import json
import subprocess
import sys

from superbases.cli import main

D2 = ["--family", "d-2", "--m", "1", "--n", "1"]
ODD = ["--family", "a-2m1-2n1-2", "--m", "2", "--n", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enum_level_zero(capsys):
    code, out, _ = run(capsys, "enum", *D2, "--kmax", "0")
    assert code == 0
    roots = {ln.split("\t")[0] for ln in out.splitlines()}
    for r in ("0", "e1", "-e1", "d1", "-d1", "2*d1", "-2*d1"):
        assert r in roots
    # the table also lists the nonsingular pairs at even levels
    assert "e1 + d1" in roots and len(roots) == 11


def test_enum_jsonl_round_trip(capsys):
    code, out, _ = run(capsys, "enum", *D2, "--kmax", "1", "--format", "jsonl")
    recs = [json.loads(ln) for ln in out.splitlines()]
    assert all(set(r) == {"root", "class"} for r in recs)
    assert json.loads(json.dumps(recs)) == recs


def test_check_pi1(tmp_path, capsys):
    f = tmp_path / "pi1.txt"
    f.write_text("D - e1 - d1\n-e1 + d1\ne1 - e2\ne1 + e2\n")
    code, out, _ = run(capsys, "check", *ODD, str(f))
    assert code == 0
    assert "status: certified" in out and "form: B1" in out


def test_check_rejects_twice_root(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(["D - e1", "e1 - d1", {"eps": [0], "del": [2], "delta": 0}]))
    code, out, _ = run(capsys, "check", *D2, str(f), "--format", "json")
    assert code == 2
    rec = json.loads(out)
    assert rec["status"] == "rejected"
    assert rec["witness"] == {"eps": [0], "del": [1], "delta": 0}


def test_check_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO('{"base": ["D - e1", "e1 - d1", "d1"]}'))
    code, out, _ = run(capsys, "check", *D2, "-")
    assert code == 0 and "T2-D2" in out


def test_classify(tmp_path, capsys):
    f = tmp_path / "b.txt"
    f.write_text("-2*d1  # long\n-e1 + d1\ne1 - e2\n2*e2 + D\n")
    code, out, _ = run(capsys, "classify", *ODD, str(f), "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["params"]["form"] == "B4"
    assert rec["params"]["ks"] == [0, 0, 0]


def test_conjugate(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text("-2*d1\n-e1 + d1\ne1 - e2\n2*e2 + D\n")
    b.write_text("-2*d1\n-e2 + d1\ne2 - e1\n2*e1 + D\n")
    code, out, _ = run(capsys, "conjugate", *ODD, str(a), str(b))
    assert code == 0 and out.strip() == "r*[e1 - e2]"
    c = tmp_path / "c.txt"
    c.write_text("D - e1 - d1\n-e1 + d1\ne1 - e2\ne1 + e2\n")
    code, out, _ = run(capsys, "conjugate", *ODD, str(a), str(c))
    assert code == 1 and out.strip() == "not conjugate"


def test_posroots(capsys):
    params = json.dumps(
        {"form": "B4", "zetas": [{"kind": "d", "idx": 1, "sign": 1}, {"kind": "e", "idx": 1, "sign": 1}, {"kind": "e", "idx": 2, "sign": 1}], "ks": [0, 0, 0], "sign": 1}
    )
    code, out, _ = run(capsys, "posroots", *ODD, params, "--kmax", "0")
    assert code == 0
    got = set(out.splitlines())
    assert "-2*d1" in got and "-e1 - e2" in got and "e1 + e2" not in got


def test_posroots_system_mismatch(capsys):
    params = '{"form": "T2-D2", "zetas": [{"kind": "e", "idx": 1, "sign": 1}, {"kind": "d", "idx": 1, "sign": 1}], "ks": [0, 0]}'
    code, _, err = run(capsys, "posroots", "--family", "d-2", "--m", "2", "--n", "1", params)
    assert code == 65
    assert json.loads(err)["error"]["type"] == "ValueError"


def test_search_and_props(capsys):
    code, out, _ = run(capsys, "search", "--family", "a-2m-2n-4", "--m", "0", "--n", "1", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 4
    code, out, _ = run(capsys, "props", *ODD, "--kmax", "1", "--format", "json")
    assert code == 0 and json.loads(out)["counterexamples"] == 0


def test_usage_errors(capsys):
    assert run(capsys, "enum", "--family", "x-1")[0] == 64
    assert run(capsys, "frobnicate")[0] == 64
    assert run(capsys, "enum", *D2, "--kmax", "two")[0] == 64
    assert run(capsys, "--help")[0] == 0
    code, _, err = run(capsys, "enum", "--kmax", "1")
    assert code == 64 and "--family" in err


def test_domain_errors(tmp_path, capsys):
    code, _, err = run(capsys, "enum", "--family", "a-2m1-2n1-2", "--m", "1", "--n", "1")
    assert code == 65
    assert "error" in json.loads(err)
    f = tmp_path / "short.txt"
    f.write_text("e1\n")
    assert run(capsys, "check", *D2, str(f))[0] == 65


def test_config_defaults(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "d-2", "m": 1, "n": 1}))
    code, out, _ = run(capsys, "enum", "--config", str(cfg), "--kmax", "0")
    assert code == 0 and len(out.splitlines()) == 11


def test_byte_identical_output(capsys):
    first = run(capsys, "search", *D2, "--format", "jsonl")
    second = run(capsys, "search", *D2, "--format", "jsonl")
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "superbases", "enum", *D2, "--kmax", "0"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "2*d1" in proc.stdout
