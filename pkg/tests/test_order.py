import itertools

import numpy as np

from oracles import brute_posets
from wbck.corpus import FIVE_SECTIONS, corpus_entry
from wbck.enumeration import enumerate_posets
from wbck.order import (join, join_table, meet, meet_matches_subtraction,
                        meet_table, profile, zero_distributive)
from wbck.sections import parse_sections
from wbck.table import DerivedOrder, derive_order


def naive_meet(order, x, y):
    lower = [z for z in range(order.size) if order.le(z, x) and order.le(z, y)]
    top = [g for g in lower if all(order.le(z, g) for z in lower)]
    return top[0] if top else None


def test_meet_and_join_tables_match_definition():
    for n in range(1, 6):
        for order in enumerate_posets(n):
            dual_up = [[order.le(y, x) for y in range(n)] for x in range(n)]
            for x, y in itertools.product(range(n), repeat=2):
                assert meet(order, x, y) == naive_meet(order, x, y)
                ups = [z for z in range(n) if dual_up[z][x] and dual_up[z][y]]
                least = [g for g in ups if all(order.le(g, z) for z in ups)]
                assert join(order, x, y) == (least[0] if least else None)


def test_n5_profile(n5_1):
    p = profile(derive_order(n5_1))
    assert p.is_lattice and p.is_bounded and p.is_nearlattice
    assert p.is_distributive is False


def test_mo2_profile(om6):
    p = profile(derive_order(om6))
    assert p.is_lattice and p.is_distributive is False
    assert not p.is_0_distributive


def test_chain_is_distributive(chain3):
    p = profile(derive_order(chain3))
    assert p.is_distributive and p.is_0_distributive


def test_non_semilattice():
    order = parse_sections(FIVE_SECTIONS).order
    p = profile(order)
    assert not p.is_meet_semilattice and not p.is_lattice
    assert p.is_distributive is None
    assert (meet_table(order) < 0).sum() == 2
    assert (join_table(order) < 0).sum() == 4  # a|b and c|d


def test_vee_poset_is_nearlattice_not_lattice():
    # 0 < a, 0 < b with no upper bound: meets exist, no pair needs a join
    order = DerivedOrder.from_matrix(np.array(
        [[1, 1, 1], [0, 1, 0], [0, 0, 1]], dtype=bool))
    p = profile(order)
    assert p.is_meet_semilattice and p.is_nearlattice and not p.is_lattice
    assert not p.is_bounded


def test_zero_distributive_on_boolean_square():
    order = DerivedOrder.from_matrix(np.array(
        [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]], dtype=bool))
    assert zero_distributive(order)


def test_meet_formula(n5_1):
    assert meet_matches_subtraction(n5_1).holds
    n52 = corpus_entry("n5_2").table
    assert not meet_matches_subtraction(n52).holds


def test_poset_generation_matches_brute_force():
    for n in range(1, 5):
        assert len(enumerate_posets(n)) == len(brute_posets(n))
    assert [len(enumerate_posets(n)) for n in range(1, 6)] == [1, 1, 2, 5, 16]
