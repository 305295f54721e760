"""Shared fixtures and the acceptance-criterion summary hook."""

import pytest

# criterion number -> (description, passed, detail); filled by test_acceptance
_RESULTS: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def criterion():
    """Record a pass/fail verdict for one acceptance criterion.

    Each acceptance test calls this exactly once, then asserts on the same
    boolean, so the terminal summary always carries one line per criterion
    even when the run is red.
    """

    def record(number: int, description: str, passed: bool, detail: str = "") -> bool:
        _RESULTS[int(number)] = (description, bool(passed), detail)
        return bool(passed)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        description, passed, detail = _RESULTS[number]
        verdict = "PASS" if passed else "FAIL"
        line = f"criterion {number:>2}: {verdict}  {description}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
