import pytest
from hypothesis import HealthCheck, settings

from polyspan import lp

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True)
def check_lp_certificates(request):
    """Verify every LP certificate, except in tests that time the pipeline."""
    old = lp.CHECK_OUTCOMES
    lp.CHECK_OUTCOMES = "timed" not in request.keywords
    yield
    lp.CHECK_OUTCOMES = old


def pytest_configure(config):
    config.addinivalue_line("markers", "timed: wall-clock budget test; LP self-checks off")


CRITERIA = {}


class _Criterion:
    def __init__(self, number, title):
        self.number, self.title, self.detail = number, title, ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        detail = self.detail if exc_type is None else f"{self.detail} {exc}".strip()
        line = f"criterion {self.number:2d} {status}: {self.title}" + (f" ({detail})" if detail else "")
        CRITERIA[self.number] = line
        print(line)
        return False


@pytest.fixture
def criterion():
    """``with criterion(n, title) as c:`` records one PASS/FAIL line."""
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[k])
