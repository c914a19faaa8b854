import io
import json
import subprocess
import sys

import pytest

from hopf2.catalog import builtin
from hopf2.cli import UsageError, main, parse_element
from hopf2.formats import dumps, to_json


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_check_sweedler_passes():
    code, text = run("check", "builtin:sweedler", "--level", "hopf")
    assert code == 0 and text.endswith("verdict: pass\n")
    assert "PASS  hopf.antipode-left" in text


def test_check_groupoid_counterexample_fails_condition_ii(tmp_path):
    path = tmp_path / "r.json"
    code, text = run("check", "builtin:remark-scenario1", "--level", "hopf2", "--witness", "--json-report", str(path))
    assert code == 1
    fails = [line.split()[1] for line in text.splitlines() if line.startswith("FAIL")]
    assert fails[0] == "hopf2.counit-coalgebra-map"
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert doc["verdict"] == "fail" and doc["level"] == "hopf2"
    entry = next(e for e in doc["entries"] if e["id"] == "hopf2.counit-coalgebra-map")
    assert entry["status"] == "fail" and entry["witness"]["basis"] == [0]
    assert doc["entries"][0]["id"] == "bialgebroid.source-multiplicative"


def test_witness_only_on_request(tmp_path):
    path = tmp_path / "r.json"
    run("check", "builtin:remark-scenario1", "--level", "hopf2", "--json-report", str(path))
    assert all("witness" not in e for e in json.loads(path.read_text())["entries"])


def test_mirror_h4_lacks_only_the_full_antipode():
    code, text = run("check", "builtin:mirror-h4", "--level", "hopf2")
    fails = [line for line in text.splitlines() if line.startswith("FAIL")]
    assert code == 1
    assert fails == ["FAIL  full-antipode.invertible  (no full antipode supplied)"]
    assert run("check", "builtin:mirror-h4", "--level", "hopf-algebroid")[0] == 0


def test_bicrossed_module_levels():
    assert run("check", "builtin:bicrossed-h4", "--level", "hopf")[0] == 0
    assert run("check", "builtin:bicrossed-h4", "--level", "hopf-algebroid")[0] == 0
    assert run("check", "builtin:bicrossed-h4-trivial-phi", "--level", "hopf")[0] == 1


@pytest.mark.parametrize("argv", [
    ("check", "builtin:nope"),
    ("check", "/nonexistent/file.json"),
    ("check", "builtin:sweedler", "--level", "hopf2"),
    ("check", "builtin:sweedler", "--level", "bogus"),
    ("frobnicate",),
    (),
    ("table", "builtin:sweedler", "antipode", "y"),
    ("table", "builtin:mirror-h4", "full-antipode", "g⊗g"),
    ("table", "builtin:sweedler", "algebroid-coproduct", "x"),
    ("build", "mirror", "builtin:crossed-z2z2", "--out", "/tmp/never.json"),
])
def test_input_errors_exit_2(argv, capsys):
    assert run(*argv)[0] == 2
    assert capsys.readouterr().err.startswith("error:")


def test_malformed_file_names_section(tmp_path, capsys):
    doc = to_json(builtin("sweedler"))
    doc["comult"].append([0, 0, 17, "1"])
    path = tmp_path / "bad.json"
    path.write_text(dumps(doc), encoding="utf-8")
    assert run("check", str(path))[0] == 2
    assert "comult" in capsys.readouterr().err
    path.write_text("{not json", encoding="utf-8")
    assert run("check", str(path))[0] == 2


def test_axiom_failure_in_file_exits_1(tmp_path):
    doc = to_json(builtin("sweedler"))
    doc["antipode"] = [[0, 0, "1"], [1, 1, "1"], [2, 3, "-1"], [3, 2, "-1"]]
    path = tmp_path / "s.json"
    path.write_text(dumps(doc), encoding="utf-8")
    code, text = run("check", str(path), "--witness")
    assert code == 1 and "FAIL  hopf.antipode-left" in text and "witness basis=[2]" in text


def test_build_mirror_of_sweedler(tmp_path):
    out = tmp_path / "m.json"
    code, text = run("build", "mirror", "builtin:sweedler", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["kind"] == "hopf2" and len(doc["basis"]) == 16 and len(doc["base"]["basis"]) == 4


def test_build_mirror_of_kz2_and_check_file(tmp_path):
    out = tmp_path / "z.json"
    assert run("build", "mirror", "builtin:group-z2", "--out", str(out))[0] == 0
    assert len(json.loads(out.read_text())["basis"]) == 4
    assert run("check", str(out), "--level", "hopf2")[0] == 0


def test_build_bicrossproduct_prerequisite_failure(tmp_path):
    out = tmp_path / "b.json"
    code, text = run("build", "bicrossproduct", "builtin:bicross-h4-trivial-coaction", "--out", str(out))
    assert code == 1 and "bicross.compat-iii" in text
    assert not out.exists()
    assert run("build", "bicrossproduct", "builtin:bicross-h4", "--out", str(out))[0] == 0


def test_build_two_group(tmp_path):
    out = tmp_path / "t.json"
    assert run("build", "two-group", "builtin:crossed-z2z2", "--out", str(out))[0] == 0
    assert run("check", str(out), "--level", "hopf2")[0] == 0


def test_table_full_antipode_text_and_json():
    code, text = run("table", "builtin:mirror-z2", "full-antipode", "1⊗σ", "σ@σ")
    assert code == 0
    assert text.splitlines()[:2] == ["S(1⊗σ) = σ⊗σ", "S(σ⊗σ) = 1⊗σ"]
    code, text = run("table", "builtin:sweedler", "antipode", "x", "gx", "--format", "json")
    doc = json.loads(text)
    assert [r["output"] for r in doc["rows"]] == ["gx", "−x"]
    assert doc["note"] == "reduced to canonical basis using x²=0, g²=1, xg+gx=0"


def test_table_algebroid_coproduct_uses_quotient_labels():
    code, text = run("table", "builtin:two-group-z2z2", "algebroid-coproduct", "f_(1,1)")
    assert code == 0 and text.startswith("▲(f_(1,1)) = ")


def test_parse_element():
    labels = builtin("mirror-h4").hopf.labels
    v = parse_element("2·(1⊗gx) + x⊗g", labels)
    assert v == {labels.index("1⊗gx"): 2, labels.index("x⊗g"): 1}
    assert parse_element("-x@1 + x@x", labels) == {labels.index("x⊗1"): -1, labels.index("x⊗x"): 1}
    assert parse_element("1/2 gx⊗1 − g⊗g", labels) == {labels.index("gx⊗1"): 0.5, labels.index("g⊗g"): -1}
    with pytest.raises(UsageError):
        parse_element("y⊗y", labels)


COMMANDS = [
    ("check", "builtin:remark-scenario1", "--level", "hopf2", "--witness"),
    ("check", "builtin:mirror-h4", "--level", "hopf2", "--witness"),
    ("table", "builtin:mirror-h4", "algebroid-coproduct", "x⊗g", "g⊗x", "--format", "json"),
    ("table", "builtin:sweedler", "coproduct", "gx"),
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:3]))
def test_outputs_byte_identical(argv):
    assert run(*argv) == run(*argv)


def test_files_byte_identical(tmp_path):
    a, b, ra, rb = (tmp_path / n for n in ("a.json", "b.json", "ra.json", "rb.json"))
    run("build", "mirror", "builtin:sweedler", "--out", str(a))
    run("build", "mirror", "builtin:sweedler", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    run("check", str(a), "--level", "hopf2", "--witness", "--json-report", str(ra))
    run("check", str(a), "--level", "hopf2", "--witness", "--json-report", str(rb))
    assert ra.read_bytes() == rb.read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hopf2", "check", "builtin:group-z3"],
                          capture_output=True, text=True, encoding="utf-8")
    assert proc.returncode == 0 and "verdict: pass" in proc.stdout
