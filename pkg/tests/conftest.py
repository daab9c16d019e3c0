import pytest

from cospanlab import graph_interface
from cospanlab.laws import edge_grammar, loop_grammar


@pytest.fixture(scope="session")
def iface():
    return graph_interface()


@pytest.fixture(scope="session")
def loops():
    return loop_grammar()


@pytest.fixture(scope="session")
def edges():
    return edge_grammar()
