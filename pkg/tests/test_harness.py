import pytest

from wbck.harness import (check_meetnear_converse,
                          corpus_triggers, m_complementations,
                          mutated_basis_case, registry, theorem, verify_all)
from wbck.enumeration import enumerate_posets
from wbck.table import parse_table


def test_registry_names():
    names = [c.name for c in registry() if not c.extra]
    assert names == [f"T{i}" for i in range(1, 24)]
    assert all(c.title for c in registry())


def test_lookup():
    assert "commutativity" in theorem("T11").title
    assert theorem("T19").sectional
    assert theorem("T99") is None


def test_two_element_universe():
    report = verify_all(2)
    assert report.ok and report.universe == {1: 1, 2: 1}
    for r in report.results.values():
        assert r.instances <= 2 and not r.counterexamples


def test_distributive_subtraction_forces_bck():
    report = verify_all(5, selection=["T2"])
    r = report.results["T2"]
    assert list(report.results) == ["T2"]
    assert r.instances > 0 and not r.counterexamples


def test_report_json():
    report = verify_all(3, selection=["T1", "T6"])
    d = report.as_dict()
    assert d["counterexamples"] == 0
    assert d["theorems"]["T6"]["assignments"] > 0
    assert "at most 3 elements" in d["note"]
    assert report.to_json() == verify_all(3, selection=["T1", "T6"]).to_json()


def test_size_cap():
    with pytest.raises(ValueError):
        verify_all(8)


def test_mutation_is_caught(tmp_path):
    report = verify_all(4, cases=[mutated_basis_case()], out_dir=tmp_path)
    assert not report.ok
    files = list(tmp_path.glob("T22-mutant_*.tbl"))
    assert files
    text = files[0].read_text()
    assert "counterexample to T22-mutant" in text
    parse_table(text)


def test_false_statement_is_refuted():
    # "every wBCK-algebra is BCK" must fail somewhere at n <= 4
    from wbck.harness import TheoremCase, law
    bogus = TheoremCase("bogus", "all BCK", lambda f: True, law("mAnti"))
    report = verify_all(4, cases=[bogus])
    assert report.counterexample_count() > 0


def test_m_complementations_of_square():
    square = enumerate_posets(4)
    diamond = next(o for o in square if o.le(1, 3) and o.le(2, 3)
                   and not o.le(1, 2) and not o.le(2, 1))
    comps = m_complementations(diamond, 3)
    # a, b fixed (De Morgan, not ortho) or swapped (Boolean)
    assert comps == [(3, 1, 2, 0), (3, 2, 1, 0)]


def test_meetnear_converse():
    instances, semilattices, bad = check_meetnear_converse(5)
    assert not bad
    assert 0 < semilattices < instances


def test_corpus_triggers():
    assert all(ok for _, _, ok in corpus_triggers())
