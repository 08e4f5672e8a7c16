from pathlib import Path

import pytest

from frobcat.scenario import load

SCENARIOS = Path(__file__).resolve().parents[1] / "src" / "frobcat" / "scenarios"

ACCEPTANCE_LINES = {}


def scenario_path(name):
    return SCENARIOS / f"{name}.json"


@pytest.fixture(scope="session")
def dual():
    return load(scenario_path("dual_numbers"))


@pytest.fixture(scope="session")
def path_a2():
    return load(scenario_path("path_a2"))


@pytest.fixture(scope="session")
def gp_scenario():
    return load(scenario_path("gp"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
