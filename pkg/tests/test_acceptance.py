"""Acceptance gate: one pass/fail line per criterion.

The lines are printed in pytest's terminal summary (see conftest.py), or
directly when this file is run as a script.
"""

import io
import json
import subprocess
import sys
from pathlib import Path

from bicatkit.cli import main
from bicatkit.fixtures import FIXTURES, fixture_document
from bicatkit.formal2cat import (check_2limit, check_2terminal, check_enriched_lifting, cone_problem,
                                 fixture_product_not_2product, fixture_subcategory_lifting,
                                 probe_absolute_lifting_2cat)
from bicatkit.formalicon import check_icon_terminal, fixture_semicartesian_poset, is_semicartesian
from bicatkit.probes import DEFAULT_PROBES
from bicatkit.serialize import dumps, loads

from suites import (currying_counts, mutation_suite, suite_2adjunction, suite_2terminal,
                    suite_cotensor_iso, suite_counit_enriched, suite_counit_lifting,
                    suite_enriched_implies_plain, suite_icon_adjunction, suite_icon_counit,
                    suite_icon_equivalence, suite_icon_lifting, suite_icon_limit,
                    suite_icon_terminal, suite_stability, suite_suspension)

RESULTS: dict[int, str] = {}
GOLDEN = Path(__file__).parent / "golden"


def record(n: int, passed: bool, detail: str):
    RESULTS[n] = f"criterion {n}: {'PASS' if passed else 'FAIL'}  {detail}"
    assert passed, RESULTS[n]


def _tallies(n: int, tallies, extra_ok=True, extra=""):
    bad = [t.line() for t in tallies if not t.passed]
    summary = "; ".join(t.line() for t in tallies)
    record(n, extra_ok and not bad, (extra + " " if extra else "") + (summary if not bad else "failing: " + "; ".join(bad)))


def test_criterion_1_equivalence_suites():
    adj = suite_2adjunction(400)
    tallies = [adj, suite_2terminal(), suite_icon_equivalence(300), suite_icon_adjunction(400),
               suite_icon_terminal(), suite_icon_lifting(300), suite_icon_limit(400)]
    _tallies(1, tallies, extra_ok=adj.total >= 200)


def test_criterion_2_counterexamples():
    checks = []
    _, _, p = fixture_subcategory_lifting()
    probe = probe_absolute_lifting_2cat(p)
    checks.append(("subcategory probe", bool(probe) and probe.probes == DEFAULT_PROBES))
    e = check_enriched_lifting(p)
    checks.append(("subcategory enriched", not e and e.witness.get("2-cell") == "alpha"))
    A, J, cot, D, lam = fixture_product_not_2product()
    checks.append(("product probe", bool(probe_absolute_lifting_2cat(cone_problem(A, J, D, "p", lam, cot=cot)))))
    checks.append(("product 2-limit", not check_2limit(A, J, D, "p", lam, cot=cot)))
    checks.append(("product 2-terminal", not check_2terminal(A, "p")))
    failed = [n for n, ok in checks if not ok]
    record(2, not failed, "exact verdicts: " + (", ".join(n for n, _ in checks) if not failed
                                                else "wrong: " + ", ".join(failed)))


def test_criterion_3_lemma_suites():
    _tallies(3, [suite_stability(), suite_counit_lifting(250), suite_counit_enriched(250),
                 suite_enriched_implies_plain(250), suite_icon_counit(250)])


def test_criterion_4_universal_properties():
    counts = currying_counts()
    curry_ok = all(a == b for a, b in counts.values()) and counts[("C1", "C1", "C2")] == (10, 10)
    _tallies(4, [suite_suspension(), suite_cotensor_iso()], extra_ok=curry_ok,
             extra=f"currying {len(counts)} triples {'equal' if curry_ok else 'UNEQUAL'};")


def test_criterion_5_mutation():
    r = mutation_suite()
    record(5, r.passed, r.line())


def test_criterion_6_semicartesian():
    lo, hi = fixture_semicartesian_poset("1"), fixture_semicartesian_poset("0")
    verdicts = [bool(check_icon_terminal(lo, "*")), bool(is_semicartesian(lo)),
                bool(check_icon_terminal(hi, "*")), bool(is_semicartesian(hi))]
    record(6, verdicts == [True, True, False, False],
           f"min/unit 1: terminal={verdicts[0]} semicartesian={verdicts[1]}; "
           f"max/unit 0: terminal={verdicts[2]} semicartesian={verdicts[3]}")


def _cli(argv):
    out = io.StringIO()
    return main(argv, out), out.getvalue()


def test_criterion_7_cli():
    fx = lambda n: str(GOLDEN / "fixtures" / f"{n}.json")
    golden_ok = all((GOLDEN / "fixtures" / f"{n}.json").read_text(encoding="utf-8") == dumps(fixture_document(n))
                    and dumps(loads(Path(fx(n)).read_text(encoding="utf-8"))) == dumps(fixture_document(n))
                    for n in FIXTURES)
    statuses = {
        0: _cli(["check", "semicartesian", "--input", fx("semicartesian-min")])[0],
        1: _cli(["check", "enriched-lifting", "--input", fx("subcategory-lifting")])[0],
        2: _cli(["validate", "--input", fx("no-such-fixture")])[0],
        3: _cli(["check", "absolute-lifting-2cat", "--input", fx("subcategory-lifting"), "--max-search", "3"])[0],
    }
    exit_ok = all(k == v for k, v in statuses.items())
    argv = [sys.executable, "-m", "bicatkit.cli", "check", "request", "--input", fx("product-not-2product"),
            "--no-timing"]
    runs = [subprocess.run(argv, capture_output=True, text=True) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and runs[0].returncode == runs[1].returncode == 1
    same = same and json.loads(runs[0].stdout)["verdict"] is False
    record(7, golden_ok and exit_ok and same,
           f"goldens {len(FIXTURES)}/{len(FIXTURES) if golden_ok else '?'} round-trip; "
           f"exit statuses {sorted(statuses.values())}; byte-identical reports: {same}")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    for n in sorted(RESULTS):
        print(RESULTS[n])
    sys.exit(0 if all("PASS" in line for line in RESULTS.values()) and len(RESULTS) == 7 else 1)
