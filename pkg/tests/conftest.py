"""Shared test helpers and the acceptance summary block.

The terminal summary prints one line per acceptance criterion, read off
the actual pytest outcomes of tests/test_acceptance.py, so the block
can never disagree with the run itself.
"""

import re

from typemonoid.congruence import Budget

CRITERIA = {
    1: "type addition/order/measure laws over the generated corpus",
    2: "equality decisions match the independent completion oracle",
    3: "measure synthesis succeeds exactly off the paradoxical sets",
    4: "parity space: idempotent diamond and N^2 type monoid",
    5: "collapse space: null atom, ideal, measure, exact factorization",
    6: "scale decomposition: embedding, quantity groups, distributivity",
    7: "continuity laws: monotone, subadditive, limits below and above",
    8: "infinite certificates verify; all twenty mutations rejected",
    9: "partial-bijection representation faithful; I(2)=7, I(3)=34",
    10: "soundness audit: every definite verdict re-verifies",
}


def engine_equal(eng, p, q, fast_cap: int = 24):
    """Engine equality with a small pinned cap, falling back to the
    default budget when the pinned search is inconclusive.  A pinned cap
    can only widen the Unknown band, never flip a definite verdict, so
    this is a speedup and nothing else."""
    d = eng.decide_equal(eng.abar(p), eng.abar(q), Budget(coordinate_cap=fast_cap))
    if not d.is_definite():
        d = eng.decide_equal(eng.abar(p), eng.abar(q))
    return d


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = {}
    for outcome in ("failed", "error", "passed"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", rep.nodeid)
            if m:
                results.setdefault(
                    int(m.group(1)), "PASS" if outcome == "passed" else "FAIL"
                )
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(
            f"criterion {k:>2}  {CRITERIA.get(k, ''):<60} {results[k]}"
        )
