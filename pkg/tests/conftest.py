import pytest
from golden import model


@pytest.fixture(scope="session")
def prelude():
    return model("prelude")


@pytest.fixture(scope="session")
def delay_model():
    return model("delay")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
