import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import acceptance_log  # noqa: E402

SUITE_BUDGET_SECONDS = 300.0
_started = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    # Criterion 11 concerns the whole run, so it is judged once every test has finished.
    if not acceptance_log.RESULTS:
        return
    elapsed = time.perf_counter() - _started
    ok = acceptance_log.record(11, "suite runtime", elapsed < SUITE_BUDGET_SECONDS,
                               f"{elapsed:.1f} s against a {SUITE_BUDGET_SECONDS:.0f} s budget", echo=False)
    if not ok and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance_log.RESULTS):
        terminalreporter.write_line(acceptance_log.RESULTS[number])
