import numpy as np
import pytest

from conicpoly.cone import sample_panel


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=[2, 3], ids=["d2", "d3"])
def d(request):
    return request.param


@pytest.fixture
def panel(d):
    return sample_panel(d)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import VERDICTS
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS.values():
            terminalreporter.write_line(line)
