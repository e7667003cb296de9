import pytest

from isgkit.constructors import builtin
from isgkit.order import NaturalOrder

CORPUS_NAMES = [
    "trivial", "i1", "i2", "i3", "b2", "b3", "c2", "c3", "c2z",
    "chain2", "chain3", "square", "n5", "m3", "i4gap",
]
NON_DISTRIBUTIVE = ["n5", "m3", "i4gap"]
DISTRIBUTIVE = [n for n in CORPUS_NAMES if n not in NON_DISTRIBUTIVE]


@pytest.fixture(scope="session")
def corpus():
    return {name: builtin(name) for name in CORPUS_NAMES}


@pytest.fixture(scope="session")
def orders(corpus):
    return {name: NaturalOrder(S) for name, S in corpus.items()}


@pytest.fixture(scope="session")
def i2(corpus):
    return corpus["i2"]


@pytest.fixture(scope="session")
def i2_order(orders):
    return orders["i2"]


class Names:
    """Label lookup for the I2 fixture: ``e0`` is the identity on {0}, etc."""

    zero = "[- -]"
    e0 = "[0 -]"
    e1 = "[- 1]"
    one = "[0 1]"
    swap = "[1 0]"
    a01 = "[1 -]"  # 0 -> 1
    a10 = "[- 0]"  # 1 -> 0


@pytest.fixture(scope="session")
def I2(i2):
    return {k: i2.index(v) for k, v in vars(Names).items() if not k.startswith("_")}


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
