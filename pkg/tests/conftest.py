import pytest

from wbck.corpus import corpus_entry
from wbck.table import OpTable


@pytest.fixture
def n5_1():
    return corpus_entry("n5_1").table


@pytest.fixture
def om6():
    return corpus_entry("om6").table


@pytest.fixture
def chain3():
    # 0 < a < b, the discrete algebra on a chain
    return OpTable(((0, 0, 0), (1, 0, 0), (2, 2, 0)))
