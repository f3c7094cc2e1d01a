import json
import subprocess
import sys

import pytest

from lrtwist.catalog import build_entry, perturbed_triple
from lrtwist.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, run
from lrtwist.serialize import algebra_json, dumps, load


def export(tmp_path, *ids, name="doc.json"):
    path = tmp_path / name
    assert main(["catalog", "export", *ids, "--out", str(path)]) == EXIT_OK
    return str(path)


def code(argv):
    return run(argv)[0].exit_code


def test_check_exported_entry(tmp_path, capsys):
    path = export(tmp_path, "kC2")
    assert main(["check", path]) == EXIT_OK
    out = capsys.readouterr().out
    assert "[PASS] (coassoc)" in out and out.rstrip().endswith("exit 0 (ALL PASS)")


def test_check_broken_algebra_reports_witness(tmp_path, capsys):
    data = algebra_json(build_entry("trunc-2").payload)
    data["mult"][0][1] = [0, 0]  # 1·x = 0
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    assert main(["check", str(path)]) == EXIT_FAIL
    out = capsys.readouterr().out
    assert "[FAIL] (unit)" in out and "fails at j=e1" in out


def test_field_override(tmp_path):
    data = algebra_json(build_entry("sign-alg").payload)
    path = tmp_path / "sign.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    assert code(["check", str(path), "--field", "F3"]) == EXIT_OK
    assert code(["check", str(path), "--field", "F4"]) == EXIT_USAGE


def test_json_syntax_error_is_usage_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{\n  \"field\": \"Q\",\n  ]", encoding="utf-8")
    report, _ = run(["check", str(path)])
    assert report.exit_code == EXIT_USAGE
    assert "line 3, column 3" in report.error


def test_missing_file_is_usage_error(tmp_path):
    assert code(["check", str(tmp_path / "nope.json")]) == EXIT_USAGE


def test_twistdata_check(tmp_path):
    path = export(tmp_path, "twistdata-bichar")
    report, _ = run(["check", path])
    assert report.exit_code == EXIT_OK
    labels = [r.label for rep in report.reports for r in rep.results]
    assert "sup4" in labels and "extra14" in labels


@pytest.mark.parametrize("entry,product,dim", [("diag-2-2", "lr", 4), ("diag-2-2", "twisted", 4),
                                               ("diag-2-2", "q", 4), ("triple-trivial", "iterated", 8),
                                               ("hit-H4", "smash", 16), ("twistdata-bichar", "bullet", 4)])
def test_build_outputs_pass_check(tmp_path, entry, product, dim):
    path = export(tmp_path, entry)
    out = tmp_path / "product.json"
    report, _ = run(["build", path, "--product", product, "--out", str(out)])
    assert report.exit_code == EXIT_OK, report.text()
    assert load(out).get().dim == dim
    table = out.with_suffix(".txt").read_text(encoding="utf-8").splitlines()
    assert table[0].endswith(f"dimension {dim}")
    assert len(table) == 1 + 2 + dim
    assert code(["check", str(out)]) == EXIT_OK


def test_build_refuses_failing_hypotheses(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(dumps(perturbed_triple(), "t"), encoding="utf-8")
    report, _ = run(["iterate", str(path)])
    assert report.exit_code == EXIT_FAIL
    assert any("comb3" in n for n in report.notes)
    report, _ = run(["iterate", str(path), "--force"])
    assert report.exit_code == EXIT_FAIL
    assert "coincide" in report.reports[0].failed


def test_iterate_and_smash_commands(tmp_path):
    assert code(["iterate", export(tmp_path, "triple-diagonal")]) == EXIT_OK
    assert code(["smash", export(tmp_path, "hit-H4", name="h.json")]) == EXIT_OK
    both = export(tmp_path, "ydl-kC2", "sign-kC2", name="y.json")
    assert code(["smash", both, "--iterated"]) == EXIT_OK
    assert code(["smash", export(tmp_path, "ydl-kC2", name="only.json"), "--iterated"]) == EXIT_USAGE


def test_invariance_and_detwist(tmp_path):
    pair = export(tmp_path, "hit-kC2xC2", "bichar-C2xC2", name="inv.json")
    assert code(["invariance", pair]) == EXIT_OK
    assert code(["invariance", export(tmp_path, "twistdata-H4-gauge", name="td.json")]) == EXIT_OK
    out = tmp_path / "P.json"
    assert code(["detwist", export(tmp_path, "smash-kC2", name="s.json"), "--twistors",
                 "--out", str(out)]) == EXIT_OK
    assert code(["check", str(out)]) == EXIT_OK


def test_search_files_are_deterministic(tmp_path):
    outs = [tmp_path / f"census{k}.json" for k in range(2)]
    for out in outs:
        assert code(["search", "--dims", "2,2", "--mode", "random", "--seed", "5", "--budget", "50",
                     "--out", str(out)]) == EXIT_OK
    assert outs[0].read_bytes() == outs[1].read_bytes()
    census = json.loads(outs[0].read_text(encoding="utf-8"))
    assert census["field"] == "F2" and census["seed"] == 5


def test_search_limits_are_usage_errors():
    report, _ = run(["search", "--dims", "5,2"])
    assert report.exit_code == EXIT_USAGE and "bound" in report.error
    assert code(["search", "--dims", "4,4", "--field", "F5"]) == EXIT_USAGE
    assert code(["search", "--algebras", "trunc2,sign", "--field", "F3"]) == EXIT_OK
    assert code(["search"]) == EXIT_USAGE


def test_catalog_negative_json(capsys):
    assert main(["catalog", "negative", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["exit_code"] == 0
    results = data["reports"][0]["checks"]
    assert [r["label"] for r in results] == ["broken-unit", "transposed-coaction", "F-for-F^-1",
                                            "perturbed-hexagon"]
    assert all(r["passed"] for r in results)


def test_catalog_list_and_unknown(capsys):
    assert main(["catalog", "list"]) == EXIT_OK
    assert "diag-2-2" in capsys.readouterr().out
    assert code(["catalog", "check", "no-such-entry"]) == EXIT_USAGE
    assert code(["catalog", "check", "kC2", "diag-2-2"]) == EXIT_OK


def test_timing_flag(capsys):
    assert main(["catalog", "check", "kC2", "--json", "--timing"]) == EXIT_OK
    assert "timing" in json.loads(capsys.readouterr().out)


def test_module_entry_point(tmp_path):
    path = export(tmp_path, "kC2")
    proc = subprocess.run([sys.executable, "-m", "lrtwist", "check", path], capture_output=True, text=True)
    assert proc.returncode == EXIT_OK
    assert "exit 0" in proc.stdout
