import pytest

from tlft.cli import load_panel, panel_cases

_ACCEPTANCE = {}


@pytest.fixture(scope="session")
def panel():
    return load_panel()


@pytest.fixture(scope="session")
def cases():
    return panel_cases()


@pytest.fixture
def acceptance():
    """record(number, title, passed, detail) for the acceptance summary."""
    def record(number, title, passed, detail):
        _ACCEPTANCE[number] = (title, bool(passed), detail)
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}  {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, passed, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{number:2d}. {'PASS' if passed else 'FAIL'}  {title}  [{detail}]")
