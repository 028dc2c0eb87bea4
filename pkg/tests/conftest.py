import pytest

from slabfso.scenarios import builtin_scenario

_criteria: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    marker = next((m for m in getattr(report, "_criterion", [])), None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = report.outcome.upper()
        _criteria.setdefault(marker, []).append((report.nodeid.split("::")[-1], outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep._criterion = [m.args[0]]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        results = _criteria[n]
        status = "PASS"
        if any(o == "FAILED" for _, o in results):
            status = "FAIL"
        elif all(o == "SKIPPED" for _, o in results):
            status = "SKIPPED"
        names = ", ".join(name for name, _ in results)
        terminalreporter.write_line(f"criterion {n}: {status}  ({names})")


@pytest.fixture(params=[1, 2, 3, 4, 5], ids=lambda i: f"S{i}")
def scenario_id(request):
    return request.param


@pytest.fixture
def paper_profile(scenario_id):
    return builtin_scenario(scenario_id, "paper").profile


@pytest.fixture
def physical_profile(scenario_id):
    return builtin_scenario(scenario_id, "physical").profile
