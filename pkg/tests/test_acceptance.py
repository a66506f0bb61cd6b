"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""
import pytest

from ffcenter.suites import acceptance_items, run_items

CRITERIA = {
    1: "Main Theorem, type B",
    2: "Main Theorem, type D and Pfaffian image",
    3: "Main Theorem, type C and vanishing symmetrizers",
    4: "type A images of both symmetrizer traces",
    5: "current-algebra form on sound coefficients",
    6: "symmetrizer suite",
    7: "W-algebra suite",
    8: "character suite",
    9: "harmonic bases",
    10: "Casimir images",
    11: "commutativity of phi coefficients",
}


@pytest.fixture(scope="module")
def results():
    return run_items(acceptance_items(seed=0))


@pytest.mark.parametrize("criterion", sorted(CRITERIA))
def test_criterion(criterion, results, capsys):
    rows = [r for r in results if r["criterion"] == criterion]
    failed = [r for r in rows if not r["ok"]]
    secs = sum(r["seconds"] for r in rows)
    line = (f"criterion {criterion:>2} [{'PASS' if rows and not failed else 'FAIL'}] "
            f"{CRITERIA[criterion]}: {len(rows) - len(failed)}/{len(rows)} items, {secs:.2f}s")
    with capsys.disabled():
        print("\n" + line)
        for r in failed:
            print(f"    failed: {r['suite']} {r['label']} {r['error'] or ''}")
    assert rows, "no items registered"
    assert not failed
