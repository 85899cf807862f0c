import pytest

from szpiro import fixtures
from szpiro.io import problem_from_dict
from szpiro.poly import PolyRing


@pytest.fixture
def R():
    return PolyRing(["x", "y", "z", "w"])


def load(name):
    return problem_from_dict(fixtures.get(name))


# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
