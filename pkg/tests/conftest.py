import os

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(params=["compiled", "python"])
def core_impl(request):
    """Each numeric core in turn; the compiled one is skipped if not built."""
    if request.param == "compiled":
        kernels = pytest.importorskip("betaflow._kernels")
        return kernels
    from betaflow import _fallback
    return _fallback


@pytest.fixture(scope="session")
def acceptance_log(pytestconfig):
    """Lines collected here are echoed in the terminal summary, so they show without -s."""
    if not hasattr(pytestconfig, "_acceptance_lines"):
        pytestconfig._acceptance_lines = []
    return pytestconfig._acceptance_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
