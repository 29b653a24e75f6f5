"""Operation tables printed in the literature, with their expected verdicts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

from .classify import classify
from .errors import ReconstructionFailure
from .laws import holds_at, law_named
from .order import join_table, profile
from .sections import SectionedPoset, parse_sections, reconstruct_subtraction
from .table import OpTable, derive_order, parse_table, validate_wbck

N5_1 = """\
wbck-table v1
elements: 0 a b c 1
0: 0 0 0 0 0
a: a 0 a a 0
b: b b 0 0 0
c: c c b 0 0
1: 1 a c b 0
"""

# N5^1 with the last row replaced by 1-a = b, 1-b = a, 1-c = a
N5_2 = """\
wbck-table v1
elements: 0 a b c 1
0: 0 0 0 0 0
a: a 0 a a 0
b: b b 0 0 0
c: c c b 0 0
1: 1 b a a 0
"""

# The printed table has c - e = c, which violates x - (x - y) <= y at (c, b);
# c - e = b is the only single-entry repair giving a wBCK-algebra.
POSIM = """\
wbck-table v1
elements: 0 a b c d e f
0: 0 0 0 0 0 0 0
a: a 0 0 0 a a a
b: b f 0 0 a b a
c: c c e 0 b b c
d: d d d d 0 d d
e: e e e 0 0 0 e
f: f f 0 0 0 f 0
"""

OM6 = """\
wbck-table v1
elements: 0 a b c d 1
0: 0 0 0 0 0 0
a: a 0 a a a 0
b: b b 0 b b 0
c: c c c 0 c 0
d: d d d d 0 0
1: 1 b a d c 0
"""

OINOTI = """\
wbck-table v1
elements: 0 a b c d e f g h i j 1
0: 0 0 0 0 0 0 0 0 0 0 0 0
a: a 0 a a a a a a a 0 0 0
b: b b 0 b b b b b 0 b 0 0
c: c c c 0 c c c 0 c 0 c 0
d: d d d d 0 d 0 d 0 d d 0
e: e e e e e 0 0 0 e e e 0
f: f f f f e d 0 d e f f 0
g: g g g e g c c 0 g e g 0
h: h h d h b h b h 0 h d 0
i: i c i a i i i a i 0 c 0
j: j b a j j j j j a b 0 0
1: 1 f g h i j a b c d e 0
"""

FIVE_SECTIONS = """\
wbck-sections v1
elements: 0 a b c d
leq:
a <= c
a <= d
b <= c
b <= d
section 0:
0 -> 0
section a:
0 -> a
a -> 0
section b:
0 -> b
b -> 0
section c:
0 -> c
a -> b
b -> a
c -> 0
section d:
0 -> d
a -> b
b -> a
d -> 0
"""


@dataclass
class CorpusEntry:
    name: str
    table: Optional[OpTable]
    expected: dict
    provenance: str
    witnesses: list = field(default_factory=list)  # (law, {var: label})
    prose: Optional[Callable] = None
    sections: Optional[SectionedPoset] = None


def _hasse_names(a):
    order = derive_order(a)
    return {(a.names[x], a.names[y]) for x, y in order.hasse}


def _covers(text):
    return {tuple(p.split("<")) for p in text.split()}


def _check_n5(a):
    return _hasse_names(a) == _covers("0<a a<1 0<b b<c c<1")


def _check_om6(a):
    return _hasse_names(a) == _covers("0<a 0<b 0<c 0<d a<1 b<1 c<1 d<1")


def _check_posim(a):
    return _hasse_names(a) == _covers(
        "0<a 0<f 0<e a<b f<b b<c e<c e<d f<d")


def _check_oinoti(a):
    order = derive_order(a)
    prof = profile(order)
    if not (prof.is_lattice and prof.is_bounded):
        return False
    idx = {nm: i for i, nm in enumerate(a.names)}
    atoms = set("abcde")
    coatoms = set("fghij")
    covers = _hasse_names(a)
    if {x for (z, x) in covers if z == "0"} != atoms:
        return False
    if {x for (x, t) in covers if t == "1"} != coatoms:
        return False
    named = {("e", "d"): "f", ("c", "e"): "g", ("b", "d"): "h",
             ("a", "c"): "i", ("a", "b"): "j"}
    jt = join_table(order)
    for x, y in itertools.combinations(a.names, 2):
        i, j = idx[x], idx[y]
        if order.le(i, j) or order.le(j, i):
            continue
        want = named.get((x, y)) or named.get((y, x)) or "1"
        if a.names[jt[i, j]] != want:
            return False
    return True


def corpus_entries():
    return [
        CorpusEntry(
            "n5_1", parse_table(N5_1),
            {"wbck": True, "commutative": True, "bck": False, "qbck": False},
            "five-element lattice N5 with two maximal chains",
            [("mAnti", {"x": "a", "y": "c", "z": "1"})], _check_n5),
        CorpusEntry(
            "n5_2", parse_table(N5_2),
            {"wbck": True, "commutative": False},
            "N5^1 with last row 1-a=b, 1-b=a, 1-c=a",
            [("midem", {"x": "c", "y": "1"})], _check_n5),
        CorpusEntry(
            "posim", parse_table(POSIM),
            {"wbck": True, "qbck": True, "contraction_rule": True,
             "positive_implicative": False, "bck": False},
            "seven-element qBCK-algebra; printed entry c-e=c repaired to c-e=b",
            [("mcontr", {"x": "c", "y": "d"})], _check_posim),
        CorpusEntry(
            "om6", parse_table(OM6),
            {"wbck": True, "commutative": True, "orthoimplicative": True,
             "implicative": True, "uniform": True, "qbck": False, "bck": False},
            "bounded lattice 0 < a,b,c,d < 1 (MO2); transcribed as given, "
            "including the entry 1-c=d",
            [("miso", {"x": "b", "y": "1", "z": "c"})], _check_om6),
        CorpusEntry(
            "oinoti", parse_table(OINOTI),
            {"wbck": True, "orthoimplicative": True, "semi_implicative": False,
             "implicative": False},
            "twelve-element lattice with five atoms and five coatoms",
            [("ippo_half", {"x": "a", "p": "j", "q": "1"})], _check_oinoti),
        CorpusEntry(
            "five_sections", None,
            {"reconstruction_failure": [("c", "d"), ("d", "c")]},
            "sectionally g*-complemented poset 0 < a,b < c,d that supports "
            "no subtraction",
            sections=parse_sections(FIVE_SECTIONS)),
    ]


def corpus_entry(name):
    for e in corpus_entries():
        if e.name == name:
            return e
    return None


def self_test(entries=None):
    """Check every entry; returns a list of (entry, check, ok, detail)."""
    results = []
    for e in entries or corpus_entries():
        if e.table is None:
            try:
                reconstruct_subtraction(e.sections)
                results.append((e.name, "reconstruction fails", False,
                                "reconstruction succeeded"))
            except ReconstructionFailure as err:
                want = e.expected["reconstruction_failure"]
                results.append((e.name, "reconstruction fails", err.pairs == want,
                                f"pairs {err.pairs}"))
            continue
        a = e.table
        results.append((e.name, "wbck", validate_wbck(a).holds, ""))
        report = classify(a)
        for cls, want in e.expected.items():
            got = report.classes[cls]
            results.append((e.name, f"{cls}={want}", got == want, f"got {got}"))
        for law, wit in e.witnesses:
            lw = law_named(law)
            assignment = {v: a.index(wit[v]) for v in lw.universals}
            results.append((e.name, f"{law} fails at {wit}",
                            not holds_at(a, lw, assignment), ""))
        crit = report.critical()
        results.append((e.name, "cross-validation", not crit,
                        "; ".join(c.pair for c in crit)))
        if e.prose:
            results.append((e.name, "order matches prose", e.prose(a), ""))
    return results
