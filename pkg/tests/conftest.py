import sys
from pathlib import Path

import pytest

HERE = Path(__file__).resolve().parent
FIXTURES = HERE.parent / "fixtures"
sys.path.insert(0, str(HERE))

from evstruct import parse  # noqa: E402


def load(name: str):
    return parse((FIXTURES / f"{name}.model").read_text())


def fixture_names(include_invalid: bool = False) -> list[str]:
    names = sorted(p.stem for p in FIXTURES.glob("*.model"))
    if include_invalid:
        names += sorted(f"invalid/{p.stem}" for p in (FIXTURES / "invalid").glob("*.model"))
    return names


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


# Acceptance reporting: every test marked `criterion(n)` counts toward
# criterion n; the acceptance module runs last and prints one line each.

_outcomes: dict[int, list[tuple[str, bool]]] = {}


def criterion_results(n: int) -> list[tuple[str, bool]]:
    return list(_outcomes.get(n, []))


def pytest_collection_modifyitems(items):
    items.sort(key=lambda item: item.module.__name__ == "test_acceptance")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    _outcomes.setdefault(marker.args[0], []).append((item.nodeid, call.excinfo is None))


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    lines = test_acceptance.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
