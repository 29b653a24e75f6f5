import numpy as np
import pytest

from wbck.corpus import FIVE_SECTIONS, corpus_entry
from wbck.enumeration import EnumSpec, enumerate_wbck
from wbck.errors import (GstarViolation, NotLattice, ReconstructionFailure,
                         TableFormatError)
from wbck.sections import (check_ippo, check_ippo_prime, format_sections,
                           is_strongly_sectionally_bstar, parse_sections,
                           poset_profiles, reconstruct_subtraction,
                           section_lattice_kind, section_profiles,
                           sectioned_poset)
from wbck.table import DerivedOrder, discrete_wbck


def test_om6_sections_orthomodular(om6):
    profiles = section_profiles(om6)
    assert all(p.flags["o"] for p in profiles)
    top = profiles[om6.index("1")]
    kind = section_lattice_kind(top)
    assert kind["orthomodular"] and not kind["boolean"]
    assert top.mapping()[om6.index("a")] == om6.index("b")


def test_n5_sections_are_de_morgan_only(n5_1):
    top = section_profiles(n5_1)[n5_1.index("1")]
    assert top.flags["m"] and not top.flags["s"] and not top.flags["o"]
    assert section_lattice_kind(top) == {
        "de_morgan": True, "ortholattice": False, "orthomodular": False,
        "boolean": False}


def test_oinoti_top_section_not_orthomodular():
    a = corpus_entry("oinoti").table
    top = section_profiles(a)[a.index("1")]
    assert top.flags["o"]
    assert section_lattice_kind(top)["ortholattice"]
    assert not section_lattice_kind(top)["orthomodular"]
    assert not check_ippo(a).holds and not check_ippo_prime(a).holds


def test_strongly_bstar_failure(n5_1):
    v = is_strongly_sectionally_bstar(n5_1)
    assert v.witness(n5_1.names) == {"x": "a", "p": "1"}


def test_discrete_chain_is_strongly_bstar(chain3):
    assert is_strongly_sectionally_bstar(chain3).holds


def test_square_sections_of_the_five_element_poset():
    sp = parse_sections(FIVE_SECTIONS)
    profiles = poset_profiles(sp)
    assert all(p.flags["gstar"] for p in profiles)
    # [0,c] is the four-element Boolean square with a and b swapped
    c = sp.names.index("c")
    assert section_lattice_kind(profiles[c])["boolean"]


def test_section_lattice_kind_requires_lattice():
    # 0 < a, b < c, d < 1: the top section is not a lattice
    order = DerivedOrder.from_matrix(np.array([
        [1, 1, 1, 1, 1, 1],
        [0, 1, 0, 1, 1, 1],
        [0, 0, 1, 1, 1, 1],
        [0, 0, 0, 1, 0, 1],
        [0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 0, 1]], dtype=bool))
    a = discrete_wbck(order)
    top = section_profiles(a)[5]
    assert top.lattice_kind is None
    with pytest.raises(NotLattice):
        section_lattice_kind(top)


def test_round_trip_small():
    for n in range(1, 5):
        for a in enumerate_wbck(EnumSpec(n)).tables:
            assert reconstruct_subtraction(sectioned_poset(a)) == a


def test_five_element_failure():
    with pytest.raises(ReconstructionFailure) as e:
        reconstruct_subtraction(parse_sections(FIVE_SECTIONS))
    assert e.value.pairs == [("c", "d"), ("d", "c")]


def test_gstar_violation():
    text = FIVE_SECTIONS.replace("a -> b\nb -> a\nc -> 0", "a -> a\nb -> a\nc -> 0")
    with pytest.raises(GstarViolation):
        reconstruct_subtraction(parse_sections(text))


def test_format_round_trip(n5_1):
    sp = sectioned_poset(n5_1)
    again = parse_sections(format_sections(sp))
    assert again.comps == sp.comps and again.order.leq == sp.order.leq


@pytest.mark.parametrize("text, fragment", [
    ("wbck-sections v2\n", "header"),
    ("wbck-sections v1\nelements: 0 a\nleq:\na <= 0\n", "antisymmetric"),
    ("wbck-sections v1\nelements: 0 a\nleq:\nsection a:\n0 -> a\n", "lacks entries"),
    ("wbck-sections v1\nelements: 0 a\nleq:\nsection a:\n0 -> q\na -> 0\n", "unknown"),
])
def test_sections_format_errors(text, fragment):
    with pytest.raises(TableFormatError, match=fragment):
        parse_sections(text)
