import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from argvoi.ach import AchMatrix, Evidence, Hypothesis
from argvoi.framework import make_framework
from argvoi.praf import make_praf
from cases import AEGEAN_ARG_PROB, AEGEAN_ATT_PROB, EX1_ARGS, EX1_ATTACKS, EX2_ARG_PROB, EX2_ATT_PROB

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def ex1():
    return make_framework(EX1_ARGS, EX1_ATTACKS)


@pytest.fixture
def ex2():
    return make_praf(EX2_ARG_PROB, EX2_ATT_PROB)


@pytest.fixture
def aegean_matrix():
    return AchMatrix(
        (Hypothesis("h1", "hijacked by pirates"), Hypothesis("h2", "seized by local police")),
        (Evidence("e1", "likely"), Evidence("e2", "certain"), Evidence("e3", "likely")),
        {("e1", "h1"): "II", ("e1", "h2"): "C",
         ("e2", "h1"): "C", ("e2", "h2"): "I",
         ("e3", "h1"): "II", ("e3", "h2"): "CC"},
    )


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def aegean():
    return make_praf(AEGEAN_ARG_PROB, AEGEAN_ATT_PROB)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(mod.RESULTS.items()):
        terminalreporter.write_line(line)
