import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from bicatkit.cli import CHECKS, EXIT_ERROR, EXIT_FALSE, EXIT_LIMIT, EXIT_TRUE, main
from bicatkit.fixtures import FIXTURES, fixture_document
from bicatkit.serialize import decode, dumps, loads

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("BICATKIT_UPDATE_GOLDEN") == "1"


def fx(name: str) -> str:
    return str(GOLDEN / "fixtures" / f"{name}.json")


def run(argv, stdin=None):
    out = io.StringIO()
    old = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        code = main(argv, out)
    finally:
        sys.stdin = old
    return code, out.getvalue()


def golden(path: Path, text: str):
    if UPDATE:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    assert path.read_text(encoding="utf-8") == text, f"golden mismatch: {path.name}"


# (golden name, argv, expected exit status)
REPORT_RUNS = [
    ("enriched-lifting__subcategory-lifting", ["check", "enriched-lifting", "--input", fx("subcategory-lifting")], 1),
    ("enriched-lifting__subcategory-lifting.text",
     ["check", "enriched-lifting", "--input", fx("subcategory-lifting"), "--report", "text"], 1),
    ("absolute-lifting-2cat__subcategory-lifting",
     ["check", "absolute-lifting-2cat", "--input", fx("subcategory-lifting")], 0),
    ("absolute-lifting-2cat__subcategory-lifting-invertible",
     ["check", "absolute-lifting-2cat", "--input", fx("subcategory-lifting-invertible"), "--probes", "1,C1"], 0),
    ("semicartesian__semicartesian-min", ["check", "semicartesian", "--input", fx("semicartesian-min")], 0),
    ("semicartesian__semicartesian-max", ["check", "semicartesian", "--input", fx("semicartesian-max")], 1),
    ("strict-2category__twisted-2group", ["check", "strict-2category", "--input", fx("twisted-2group")], 1),
    ("2-equivalence__codiscrete-equivalence", ["check", "2-equivalence", "--input", fx("codiscrete-equivalence")], 1),
    ("icon-equivalence__codiscrete-equivalence",
     ["check", "icon-equivalence", "--input", fx("codiscrete-equivalence")], 1),
    ("equifibration__codiscrete-equivalence", ["check", "equifibration", "--input", fx("codiscrete-equivalence")], 1),
    ("icon-terminal__free-cell-0", ["check", "icon-terminal", "--input", fx("free-cell-0")], 0),
    ("2-terminal__free-cell-2", ["check", "2-terminal", "--input", fx("free-cell-2"), "--param", "object=1"], 1),
    ("validate__all", ["validate"] + sum((["--input", fx(n)] for n in sorted(FIXTURES)), []), 0),
] + [(f"request__{n}", ["check", "request", "--input", fx(n)], 0 if v else 1)
     for n, (_, v) in sorted(FIXTURES.items()) if v is not None]


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_shipped_fixture_matches_golden(name):
    golden(GOLDEN / "fixtures" / f"{name}.json", dumps(fixture_document(name)))


def test_fixtures_command_writes_golden_files(tmp_path):
    code, out = run(["fixtures", str(tmp_path)])
    assert code == EXIT_TRUE
    assert sorted(out.split()) == sorted(f"{n}.json" for n in FIXTURES)
    for n in FIXTURES:
        text = (tmp_path / f"{n}.json").read_text(encoding="utf-8")
        assert text == Path(fx(n)).read_text(encoding="utf-8")
        assert dumps(loads(text)) == text


def test_named_counterexample_fixtures_are_shipped():
    assert {"subcategory-lifting", "product-not-2product"} <= set(FIXTURES)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_shipped_fixtures_validate(name):
    code, out = run(["validate", "--input", fx(name), "--no-timing"])
    assert code == EXIT_TRUE and json.loads(out)["verdict"] is True


@pytest.mark.parametrize("label,argv,status", REPORT_RUNS, ids=[r[0] for r in REPORT_RUNS])
def test_report_goldens(label, argv, status):
    code, out = run(argv + ["--no-timing"])
    assert code == status
    suffix = "" if label.endswith(".text") else ".json"
    golden(GOLDEN / "reports" / f"{label}{suffix}", out)


def test_list_checks_golden():
    code, out = run(["list-checks"])
    assert code == EXIT_TRUE
    assert len(out.splitlines()) == len(CHECKS)
    assert any(line.startswith("icon-absolute-lifting\t") for line in out.splitlines())
    golden(GOLDEN / "list-checks.txt", out)


def test_counterexample_reports():
    code, out = run(["check", "enriched-lifting", "--input", fx("subcategory-lifting"), "--no-timing"])
    r = json.loads(out)
    assert code == EXIT_FALSE and r["verdict"] is False and r["witness"]["2-cell"] == "alpha"
    code, out = run(["check", "request", "--input", fx("product-not-2product"), "--no-timing"])
    r = json.loads(out)
    assert code == EXIT_FALSE and r["check"] == "2-limit" and r["witness"]
    code, out = run(["check", "request", "--input", fx("semicartesian-min-terminal"), "--no-timing"])
    assert code == EXIT_TRUE and json.loads(out)["check"] == "icon-terminal"


def test_report_schema():
    code, out = run(["check", "absolute-lifting-2cat", "--input", fx("subcategory-lifting")])
    r = json.loads(out)
    assert set(r) <= {"check", "verdict", "witness", "probes", "citations", "elapsed_ms", "reason"}
    assert {"check", "verdict", "citations", "elapsed_ms"} <= set(r)
    assert isinstance(r["elapsed_ms"], float) and r["probes"] == ["1", "C1", "C2", "I", "Sigma2"]


# -- exit statuses -------------------------------------------------------------------

def test_error_exit_statuses(tmp_path):
    code, out = run(["validate", "--input", str(tmp_path / "missing.json")])
    assert code == EXIT_ERROR and json.loads(out)["exit_status"] == 2
    code, out = run(["check", "no-such-check", "--input", fx("free-cell-0")])
    assert code == EXIT_ERROR
    code, out = run(["check", "icon-terminal", "--input", fx("codiscrete-equivalence")])
    assert code == EXIT_ERROR
    code, out = run(["check", "request", "--input", fx("free-cell-0")])
    assert code == EXIT_ERROR
    code, out = run(["check", "absolute-lifting-2cat", "--input", fx("subcategory-lifting"), "--probes", "X9"])
    assert code == EXIT_ERROR and "X9" in json.loads(out)["message"]
    code, out = run(["validate"])
    assert code == EXIT_ERROR


def test_bad_document_on_stdin_names_the_field():
    doc = json.loads(dumps(fixture_document("free-cell-1")))
    doc["payload"]["bogus"] = []
    code, out = run(["validate", "--input", "-"], stdin=json.dumps(doc))
    err = json.loads(out)
    assert code == EXIT_ERROR and "bogus" in err["message"] and err["error"] == "DocumentError"


def test_size_guard_exit_status():
    code, out = run(["check", "absolute-lifting-2cat", "--input", fx("subcategory-lifting"),
                     "--max-search", "3", "--no-timing"])
    err = json.loads(out)
    assert code == EXIT_LIMIT and err["exit_status"] == 3 and err["error"] == "size guard"


def test_param_overrides_request():
    doc = decode(loads(Path(fx("semicartesian-max-terminal")).read_text()))
    assert doc.check == "icon-terminal"
    code, _ = run(["check", "icon-terminal", "--input", fx("semicartesian-min"), "--param", "object=\"*\""])
    assert code == EXIT_TRUE


# -- determinism --------------------------------------------------------------------

def _subprocess(argv):
    p = subprocess.run([sys.executable, "-m", "bicatkit.cli"] + argv, capture_output=True, text=True)
    return p.returncode, p.stdout


@pytest.mark.parametrize("argv", [
    ["check", "enriched-lifting", "--input", fx("subcategory-lifting"), "--no-timing"],
    ["check", "request", "--input", fx("product-not-2product"), "--no-timing"],
    ["validate", "--input", fx("twisted-2group"), "--no-timing", "--report", "text"],
])
def test_reports_are_byte_identical_across_runs(argv):
    first, second = _subprocess(argv), _subprocess(argv)
    assert first == second
    assert first[0] in (EXIT_TRUE, EXIT_FALSE)
    assert first[1] == run(argv)[1]
