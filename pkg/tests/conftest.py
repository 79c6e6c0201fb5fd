import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture(scope="session")
def report7():
    from asmgroups import classify
    return classify(7, jobs=1)


@pytest.fixture(scope="session")
def report6():
    from asmgroups import classify
    return classify(6, jobs=1)


@pytest.fixture(scope="session")
def atlas7(report7):
    from asmgroups import group_atlas
    return group_atlas(7, jobs=1)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
