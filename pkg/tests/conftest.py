import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def pytest_addoption(parser):
    parser.addoption("--run-expensive", action="store_true", default=False,
                     help="run tests marked expensive")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-expensive"):
        return
    skip = pytest.mark.skip(reason="needs --run-expensive")
    for item in items:
        if "expensive" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "skipped"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion" in nodeid and rep.when in ("call", "setup"):
                if outcome == "skipped" or rep.when == "call":
                    name = nodeid.split("::")[-1]
                    lines.append((name, outcome.upper(), getattr(rep, "duration", 0.0)))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, outcome, dur in sorted(lines, key=lambda x: int(x[0].split("_")[2])):
            terminalreporter.write_line(f"{name:60s} {outcome:8s} {dur:8.2f}s")
