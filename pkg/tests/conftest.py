import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def example_T():
    from triet.catalog import example_iet

    return example_iet()


@pytest.fixture(scope="session")
def eta():
    from triet.catalog import ETA_EXAMPLE
    from triet.morph import parse_morphism

    return parse_morphism(ETA_EXAMPLE)


@pytest.fixture(scope="session")
def labbe():
    from triet.catalog import LABBE_XI
    from triet.morph import parse_morphism

    return parse_morphism(LABBE_XI)


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE

    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
