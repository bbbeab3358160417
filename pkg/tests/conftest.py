import pytest

from _acceptance_log import ACCEPTANCE_LINES
from netmatch import _kernels


@pytest.fixture(params=sorted(_kernels.available_backends()))
def backend(request, monkeypatch):
    """Run a test once per available kernel backend."""
    impl = _kernels.available_backends()[request.param]
    for name in ("hopcroft_karp", "triangles_per_node", "alternating_classes"):
        monkeypatch.setattr(_kernels, name, getattr(impl, name))
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
