import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion."""
    rows = []
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            if getattr(rep, "when", "call") != "call":
                continue
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            m = re.match(r"test_criterion_(\d+)", name)
            if m:
                rows.append((int(m.group(1)), name, "PASS" if status == "passed" else "FAIL"))
    if not rows:
        return
    tw = terminalreporter
    tw.section("acceptance criteria")
    for num, name, outcome in sorted(rows):
        tw.write_line(f"criterion {num:>2} {name[len(f'test_criterion_{num}_'):]:<38} {outcome}")
