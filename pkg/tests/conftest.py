import pytest

from disparity import deflate, fixture_panel_path, load_panel

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def fixture_panel():
    with fixture_panel_path().open(encoding="utf-8") as fh:
        return load_panel(fh)


@pytest.fixture(scope="session")
def deflated_panel(fixture_panel):
    return deflate(fixture_panel, 1978)


@pytest.fixture
def record():
    """Collects one PASS/FAIL/SKIP line per acceptance criterion for the terminal summary."""

    def _record(criterion: str, ok: bool | None, detail: str = "") -> None:
        status = "SKIP" if ok is None else "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append(f"{status}  {criterion}" + (f"  ({detail})" if detail else ""))

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
