import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from cmreg.ring import RingContext  # noqa: E402


@pytest.fixture
def P2():
    return RingContext(3)


@pytest.fixture
def P3():
    return RingContext(4)


def pytest_collection_modifyitems(config, items):
    # acceptance last, so criterion 6 sees every resolution built in the session
    items.sort(key=lambda it: it.get_closest_marker("acceptance") is not None)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
