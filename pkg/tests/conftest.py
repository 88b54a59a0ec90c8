import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# seven papers, no ties
SEVEN_COUNTS = [10, 7, 4, 3, 2, 1, 0]
SEVEN_PRINTED = [100, 83, 66.4, 49.8, 33.2, 16.6, 0]

# eighteen papers over eight distinct values
EIGHTEEN_COUNTS = [130, 90, 90, 90, 90, 40, 38, 32, 32, 32, 7, 4, 4, 4, 0, 0, 0, 0]
EIGHTEEN_PRINTED = {130: 100, 90: 85.8, 40: 71.5, 38: 57.2, 32: 42.9, 7: 28.6, 4: 14.3, 0: 0}

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(ACCEPTANCE_RESULTS, key=lambda r: int(r[0].split()[1].rstrip(":"))):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name} {detail}")
