import pytest

_ACCEPTANCE = {}


@pytest.fixture
def record():
    def _record(key, ok, detail):
        _ACCEPTANCE[key] = (ok, detail)
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: (int(k.split("-")[0]), k)):
        ok, detail = _ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:<10} {'PASS' if ok else 'FAIL'}  {detail}")
