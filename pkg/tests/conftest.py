import pytest

from tguard.game import MovingFrameState, make_params


@pytest.fixture
def fig_params():
    return make_params(0.6, 0.35, 1.0)


@pytest.fixture
def s1():
    # attacker above the target, mirrored internally
    return MovingFrameState(0.5, 0.0, 0.15)


@pytest.fixture
def s2():
    return MovingFrameState(0.5, 0.75, -0.2)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
