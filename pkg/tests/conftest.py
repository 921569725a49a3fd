import pytest
from hypothesis import HealthCheck, settings

from weakmonads import GF, QQ

settings.register_profile(
    "default", deadline=None, max_examples=20,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def F7():
    return GF(7)


@pytest.fixture(params=["F7", "Q"])
def field(request):
    return GF(7) if request.param == "F7" else QQ


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
