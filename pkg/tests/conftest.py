import random

import pytest

# Published example strings, one per schema (line wraps removed).
BY_LIGHT_EXAMPLE = "334422642626242635442264262624263744262666422626554426642626242677442664262624" "26"
BY_PROTEINOID_EXAMPLE = "104422642626242611442264262624260144226426262426"
BY_GATE_EXAMPLE = "10370137"

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = marker.args
        _ACCEPTANCE.append((number, title, item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, name, outcome in sorted(_ACCEPTANCE):
        status = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        terminalreporter.write_line(f"[{status}] criterion {number}: {title} ({name})")


@pytest.fixture
def rng():
    return random.Random(1234)
