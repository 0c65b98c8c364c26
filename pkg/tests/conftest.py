import pytest

from evlogic.model import EvidenceModel, GeneralModel
from evlogic.validity import chain_model, counterexample_model


@pytest.fixture
def m_cb():
    return counterexample_model()


@pytest.fixture
def m_sp():
    return chain_model()


@pytest.fixture
def one_point():
    base = EvidenceModel.build([1], {1: [[1]]})
    return GeneralModel.build(base, [(1, 1)], [(1, 1)])


@pytest.fixture
def chain3():
    """1 <= 2 <= 3, trivial evidence, belief on the top world."""
    base = EvidenceModel.build([1, 2, 3], uniform_evidence=[[1, 2, 3]])
    order = [(a, b) for a in (1, 2, 3) for b in (1, 2, 3) if a <= b]
    return GeneralModel.build(base, [(w, 3) for w in (1, 2, 3)], order)


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance verdicts, one line per criterion."""
    import sys
    lines = []
    for name, mod in list(sys.modules.items()):
        if name.endswith("test_acceptance"):
            lines = getattr(mod, "LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
