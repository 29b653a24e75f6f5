import json

import numpy as np
import pytest

from oracles import WBCK_AXIOMS, model_search
from wbck.enumeration import (EnumSpec, algebras_on, automorphisms,
                              budget_from_env, enumerate_posets,
                              enumerate_wbck, forced_entry, orbit_minimal,
                              search_counterexample)
from wbck.errors import BudgetExhausted, UnknownName
from wbck.laws import eval_law, law_named
from wbck.order import meet_table
from wbck.table import OpTable, canonical_form, format_table, parse_table


@pytest.fixture(scope="module")
def labelled4():
    """Every labelled wBCK table on four points, from the constraint search."""
    return model_search(4, WBCK_AXIOMS)


def test_small_counts():
    assert [enumerate_wbck(EnumSpec(n, mode="count")).count
            for n in range(1, 6)] == [1, 1, 3, 18, 203]


def test_rows_match_constraint_search(labelled4):
    for order in enumerate_posets(4):
        m = order.matrix
        expected = {t for t in labelled4 if ((np.array(t) == 0) == m).all()}
        got = {tuple(map(tuple, t)) for t in algebras_on(order)}
        assert got == expected


def test_forced_entries_are_sound(labelled4):
    for t in labelled4:
        arr = np.array(t)
        m = arr == 0
        from wbck.table import DerivedOrder
        mt = meet_table(DerivedOrder.from_matrix(m))
        for x in range(4):
            for y in range(4):
                f = forced_entry(m, mt, x, y)
                assert f is None or f == t[x][y]


def test_orbit_minimal_keeps_one_per_class():
    for order in enumerate_posets(4):
        tables = algebras_on(order)
        kept = tables[orbit_minimal(tables, order)]
        keys = {canonical_form(OpTable.from_array(t)).sub for t in tables}
        assert len(kept) == len(keys)


def test_automorphism_group_sizes():
    sizes = sorted(len(automorphisms(o)[0]) for o in enumerate_posets(4))
    # two rigid posets, two with one swap, and the three-point antichain
    assert sizes == [1, 1, 2, 2, 6]


def test_filter_equals_post_filter():
    full = enumerate_wbck(EnumSpec(5)).tables
    for require, forbid in [(("mcommut",), ()), (("miso",), ("mAnti",)),
                            ((), ("mcontr_rule",))]:
        got = enumerate_wbck(EnumSpec(5, require, forbid)).tables
        want = [a for a in full
                if all(eval_law(a, law_named(r)).holds for r in require)
                and not any(eval_law(a, law_named(f)).holds for f in forbid)]
        assert got == want


def test_count_mode_class_counts():
    res = enumerate_wbck(EnumSpec(5, mode="count"))
    assert res.class_counts["wbck"] == 203
    assert res.class_counts["commutative"] == 16
    assert res.class_counts["implicative"] == 2


def test_first_match():
    res = enumerate_wbck(EnumSpec(4, ("mcommut",), ("mAnti",), "first-match"))
    assert len(res.tables) == 1
    a = res.tables[0]
    assert eval_law(a, law_named("mcommut")).holds
    assert not eval_law(a, law_named("mAnti")).holds


def test_emit_writes_tables_and_manifest(tmp_path):
    res = enumerate_wbck(EnumSpec(4, ("mcommut",)), out_dir=tmp_path)
    files = sorted(tmp_path.glob("*.tbl"))
    assert len(files) == len(res.tables) == 6
    assert {parse_table(f.read_text()) for f in files} == set(res.tables)
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["total"] == 6 and manifest["class_counts"]["commutative"] == 6


def test_budget(monkeypatch):
    res = enumerate_wbck(EnumSpec(5, mode="count", budget=20))
    assert res.partial
    monkeypatch.setenv("WBCK_BUDGET", "7")
    assert budget_from_env() == 7
    with pytest.raises(BudgetExhausted):
        search_counterexample(["mcommut"], ["mAnti"], 5)


def test_spec_validation():
    with pytest.raises(UnknownName):
        EnumSpec(3, require=("nope",))
    with pytest.raises(ValueError):
        EnumSpec(0)
    with pytest.raises(ValueError):
        enumerate_posets(8)


def test_search_counterexample():
    assert search_counterexample(["pierce"], ["mcommut"], 6) is None
    a = search_counterexample(["mcontr_rule"], ["mcontr"], 7)
    assert a.size == 6
    assert "elements:" in format_table(a)
    n5 = search_counterexample(["mcommut"], ["mAnti"], 5)
    assert n5.size == 4


def test_parallel_workers_agree():
    serial = enumerate_wbck(EnumSpec(5))
    parallel = enumerate_wbck(EnumSpec(5), workers=2)
    assert parallel.tables == serial.tables and parallel.count == 203
