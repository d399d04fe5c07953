import pytest
from hypothesis import HealthCheck, settings

from chssrigid.models import build_model

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIVE = ("G(2,5)", "S10", "SEG_P2xP2", "G(2,6)_AP2", "OP2")


@pytest.fixture(params=FIVE)
def model(request):
    return build_model(request.param)


@pytest.fixture
def g25():
    return build_model("G(2,5)")


@pytest.fixture
def s10():
    return build_model("S10")


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(criterion, ok, detail=""):
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
