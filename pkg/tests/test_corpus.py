import pytest

from wbck.classify import classify
from wbck.corpus import corpus_entries, corpus_entry, self_test
from wbck.table import validate_wbck


def test_self_test_passes():
    failures = [r for r in self_test() if not r[2]]
    assert not failures


@pytest.mark.parametrize("entry", [e for e in corpus_entries() if e.table])
def test_tables_are_wbck(entry):
    assert validate_wbck(entry.table).holds


@pytest.mark.parametrize("name, cls, value", [
    ("om6", "implicative", True),
    ("om6", "qbck", False),
    ("posim", "qbck", True),
    ("posim", "positive_implicative", False),
    ("n5_2", "wbck", True),
    ("n5_2", "commutative", False),
])
def test_expectations(name, cls, value):
    assert classify(corpus_entry(name).table)[cls] is value


def test_unknown_entry():
    assert corpus_entry("nope") is None


def test_sizes():
    sizes = {e.name: (e.table.size if e.table else e.sections.order.size)
             for e in corpus_entries()}
    assert sizes == {"n5_1": 5, "n5_2": 5, "posim": 7, "om6": 6, "oinoti": 12,
                     "five_sections": 5}


def test_self_test_flags_wrong_expectation():
    e = corpus_entry("om6")
    e.expected["qbck"] = True
    results = self_test([e])
    assert any(check == "qbck=True" and not ok for _, check, ok, _ in results)
