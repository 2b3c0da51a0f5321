"""Shared fixtures, plus a one-line-per-criterion acceptance summary."""
import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from telemix import numerics

settings.register_profile(
    "telemix", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("telemix")

_ACCEPTANCE = {}


@pytest.fixture(params=sorted(numerics.KERNELS))
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_runtest_logreport(report):
    marker = getattr(report, "acceptance", None)
    if marker is None:
        return
    number, title = marker
    already_failed = _ACCEPTANCE.get(number, (title, False))[1]
    _ACCEPTANCE[number] = (title, already_failed or report.failed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is not None:
        report.acceptance = (mark.args[0], mark.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, failed = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'FAIL' if failed else 'PASS'}  {title}")
