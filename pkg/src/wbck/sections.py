"""Sectional complementations x -> p - x on the initial segments [0, p].

A wBCK-algebra is determined by its sections: subtraction is recovered as
``x - y = min{comp_x(z) : z <= x, y}``.  This module extracts and classifies
the section complementations, tests the relative conditions between nested
sections, and rebuilds a table from a sectioned poset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (GstarViolation, InternalConsistencyError, NotLattice,
                     ReconstructionFailure, TableFormatError)
from .order import join_table, meet_table, profile
from .table import (LABEL_RE, PASS, DerivedOrder, OpTable, Verdict,
                    default_names, derive_order, validate_wbck)

FLAGS = ("gstar", "s", "bstar", "m", "o")
KINDS = ("de_morgan", "ortholattice", "orthomodular", "boolean")


@dataclass(frozen=True)
class SectionedPoset:
    order: DerivedOrder
    comps: tuple[tuple[int, ...], ...]  # comps[p][i] = image of down(p)[i]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", default_names(self.order.size))

    def comp(self, p):
        return dict(zip(self.order.down(p), self.comps[p]))


@dataclass(frozen=True)
class SectionProfile:
    top: int
    members: tuple[int, ...]
    comp: tuple[int, ...]  # aligned with members
    flags: dict
    lattice_kind: Optional[dict]
    suborder: DerivedOrder = field(repr=False, compare=False)

    def mapping(self):
        return dict(zip(self.members, self.comp))

    def as_dict(self, names):
        return {
            "top": names[self.top],
            "members": [names[x] for x in self.members],
            "comp": {names[x]: names[y] for x, y in zip(self.members, self.comp)},
            "flags": {k: self.flags[k] for k in FLAGS},
            "lattice_kind": (None if self.lattice_kind is None
                             else {k: self.lattice_kind[k] for k in KINDS}),
        }


def _induced(order, members):
    m = order.matrix[np.ix_(members, members)]
    return DerivedOrder.from_matrix(m)


def complementation_flags(order, p, comp):
    """Classify ``comp`` (a dict on [0,p]) as a complementation of the section."""
    members = order.down(p)
    le = order.le
    mt = meet_table(order)
    inside = all(comp.get(x) is not None and le(comp[x], p) for x in members)
    gstar = inside and comp[0] == p and all(
        le(comp[comp[x]], x) for x in members) and all(
        le(comp[y], comp[x]) for x in members for y in members if le(x, y))
    if not inside:
        return dict.fromkeys(FLAGS, False)
    s = all(mt[x, comp[x]] == 0 for x in members) and all(
        x == p for x in members if comp[x] == 0)

    def section_join_is_top(x):
        return not any(u != p and le(x, u) and le(comp[x], u) for u in members)

    bstar = gstar and all(section_join_is_top(x) for x in members)
    involutive = all(comp[comp[x]] == x for x in members)
    m = gstar and involutive
    o = m and s
    if o != (bstar and involutive):
        raise InternalConsistencyError(
            f"section {p}: m-and-s disagrees with idempotent b*")
    return {"gstar": gstar, "s": s, "bstar": bstar, "m": m, "o": o}


def _lattice_kind(sub, comp_local, flags):
    prof = profile(sub)
    if not prof.is_lattice:
        return None
    mt, jt = meet_table(sub), join_table(sub)
    k = sub.size
    ortho = flags["o"]
    om = om2 = False
    if ortho:
        pairs = [(x, y) for x in range(k) for y in range(k) if sub.le(x, y)]
        om = all(y == jt[x, mt[y, comp_local[x]]] for x, y in pairs)
        om2 = all(x == y for x, y in pairs if mt[comp_local[x], y] == 0)
        if om != om2:
            raise InternalConsistencyError(
                "the two orthomodularity tests disagree")
    return {"de_morgan": flags["m"], "ortholattice": ortho,
            "orthomodular": om, "boolean": ortho and bool(prof.is_distributive)}


def _profile(order, p, comp):
    members = order.down(p)
    flags = complementation_flags(order, p, comp)
    sub = _induced(order, list(members))
    local = {x: i for i, x in enumerate(members)}
    comp_local = None
    if all(comp.get(x) in local for x in members):
        comp_local = [local[comp[x]] for x in members]
    kind = _lattice_kind(sub, comp_local, flags) if comp_local else None
    return SectionProfile(p, members, tuple(comp[x] for x in members), flags,
                          kind, sub)


def sectioned_poset(a):
    order = derive_order(a)
    comps = tuple(tuple(a.sub[p][x] for x in order.down(p))
                  for p in range(a.size))
    return SectionedPoset(order, comps, a.names)


def section_profiles(a):
    validate_wbck(a)
    sp = sectioned_poset(a)
    return [_profile(sp.order, p, sp.comp(p)) for p in range(a.size)]


def poset_profiles(sp):
    return [_profile(sp.order, p, sp.comp(p)) for p in range(sp.order.size)]


def section_lattice_kind(prof):
    if prof.lattice_kind is None:
        raise NotLattice(f"section [0,{prof.top}] is not a lattice")
    return dict(prof.lattice_kind)


def all_sections(profiles, flag):
    return all(p.flags[flag] for p in profiles)


def all_kinds(profiles, kind):
    return all(p.lattice_kind is not None and p.lattice_kind[kind]
               for p in profiles)


def is_strongly_sectionally_bstar(a):
    """x ∨ (p - x) exists in the whole algebra and equals p for all x <= p."""
    validate_wbck(a)
    order = derive_order(a)
    jt = join_table(order)
    for x, p in itertools.product(range(a.size), repeat=2):
        if order.le(x, p) and jt[x, a.sub[p][x]] != p:
            return Verdict(False, (("x", x), ("p", p)), "x | (p - x) = p")
    return PASS


def _relative(sp, ok, atom):
    order = sp.order
    n = order.size
    for x, p, q in itertools.product(range(n), repeat=3):
        if order.le(x, p) and order.le(p, q):
            if not ok(sp.comp(p)[x], sp.comp(q)[x], p):
                return Verdict(False, (("x", x), ("p", p), ("q", q)), atom)
    return PASS


def check_ippo_sections(sp):
    mt = meet_table(sp.order)
    return _relative(sp, lambda cp, cq, p: mt[p, cq] == cp,
                     "comp_p(x) = p & comp_q(x)")


def check_ippo_prime_sections(sp):
    return _relative(sp, lambda cp, cq, p: sp.order.le(cp, cq),
                     "comp_p(x) <= comp_q(x)")


def check_ippo(a):
    validate_wbck(a)
    return check_ippo_sections(sectioned_poset(a))


def check_ippo_prime(a):
    validate_wbck(a)
    return check_ippo_prime_sections(sectioned_poset(a))


def _check_gstar(sp):
    order = sp.order
    for p in range(order.size):
        comp = sp.comp(p)
        members = order.down(p)
        for x in members:
            if not order.le(comp[x], p):
                raise GstarViolation(sp.names[p], sp.names[x],
                                     "image outside the section")
        if comp[0] != p:
            raise GstarViolation(sp.names[p], sp.names[0], "0 is not sent to the top")
        for x in members:
            if not order.le(comp[comp[x]], x):
                raise GstarViolation(sp.names[p], sp.names[x], "x++ is not below x")
            for y in members:
                if order.le(x, y) and not order.le(comp[y], comp[x]):
                    raise GstarViolation(sp.names[p], sp.names[x], "not antitone")


def reconstruct_subtraction(sp):
    """Rebuild subtraction as x - y = min{comp_x(z) : z <= x, y}.

    Raises ``ReconstructionFailure`` naming every pair whose candidate set
    has no least element.
    """
    _check_gstar(sp)
    order = sp.order
    n = order.size
    le = order.le
    sub = [[0] * n for _ in range(n)]
    failed = []
    for x, y in itertools.product(range(n), repeat=2):
        comp = sp.comp(x)
        cands = {comp[z] for z in range(n) if le(z, x) and le(z, y)}
        least = [c for c in cands if all(le(c, d) for d in cands)]
        if least:
            sub[x][y] = least[0]
        else:
            failed.append((sp.names[x], sp.names[y]))
    if failed:
        raise ReconstructionFailure(failed)
    a = OpTable(tuple(map(tuple, sub)), sp.names)
    if not validate_wbck(a).holds or sectioned_poset(a).comps != sp.comps \
            or derive_order(a).leq != order.leq:
        raise InternalConsistencyError("reconstructed table does not reproduce "
                                       "its sectioned poset")
    return a


# ---------------------------------------------------------------- text format

SECTIONS_HEADER = "wbck-sections v1"


def parse_sections(text):
    lines = [(no, raw.strip()) for no, raw in enumerate(text.splitlines(), 1)
             if raw.strip() and not raw.strip().startswith("#")]
    if not lines or lines[0][1] != SECTIONS_HEADER:
        raise TableFormatError(f"malformed header, expected '{SECTIONS_HEADER}'",
                               lines[0][0] if lines else 1)
    if len(lines) < 2 or not lines[1][1].startswith("elements:"):
        raise TableFormatError("expected 'elements:' line")
    no, s = lines[1]
    names = s[len("elements:"):].split()
    if not names or any(not LABEL_RE.match(x) for x in names):
        raise TableFormatError("bad element labels", no)
    if len(set(names)) != len(names):
        raise TableFormatError("duplicate names", no)
    pos = {x: i for i, x in enumerate(names)}
    n = len(names)

    def element(tok, no):
        if tok not in pos:
            raise TableFormatError(f"unknown element token {tok!r}", no)
        return pos[tok]

    if len(lines) < 3 or lines[2][1] != "leq:":
        raise TableFormatError("expected 'leq:' line",
                               lines[2][0] if len(lines) > 2 else None)
    rel = np.eye(n, dtype=bool)
    rel[0, :] = True
    i = 3
    while i < len(lines) and not lines[i][1].startswith("section "):
        no, s = lines[i]
        left, sep, right = s.partition("<=")
        if not sep:
            raise TableFormatError(f"expected 'x <= y', got {s!r}", no)
        rel[element(left.strip(), no), element(right.strip(), no)] = True
        i += 1
    for k in range(n):
        rel |= rel[:, [k]] & rel[[k], :]
    if ((rel & rel.T) & ~np.eye(n, dtype=bool)).any():
        raise TableFormatError("leq relation is not antisymmetric")
    order = DerivedOrder.from_matrix(rel)
    comps = {}
    while i < len(lines):
        no, s = lines[i]
        if not (s.startswith("section ") and s.endswith(":")):
            raise TableFormatError(f"expected 'section p:', got {s!r}", no)
        p = element(s[len("section "):-1].strip(), no)
        if p in comps:
            raise TableFormatError(f"duplicate section {names[p]}", no)
        mapping = {}
        i += 1
        while i < len(lines) and not lines[i][1].startswith("section "):
            no, s = lines[i]
            left, sep, right = s.partition("->")
            if not sep:
                raise TableFormatError(f"expected 'x -> y', got {s!r}", no)
            x = element(left.strip(), no)
            if not order.le(x, p):
                raise TableFormatError(f"{names[x]} is not in section {names[p]}", no)
            if x in mapping:
                raise TableFormatError(f"duplicate entry for {names[x]}", no)
            mapping[x] = element(right.strip(), no)
            i += 1
        missing = [names[x] for x in order.down(p) if x not in mapping]
        if missing:
            raise TableFormatError(
                f"section {names[p]} lacks entries for {', '.join(missing)}")
        comps[p] = tuple(mapping[x] for x in order.down(p))
    comps.setdefault(0, (0,))
    missing = [names[p] for p in range(n) if p not in comps]
    if missing:
        raise TableFormatError(f"missing sections for {', '.join(missing)}")
    return SectionedPoset(order, tuple(comps[p] for p in range(n)), tuple(names))


def format_sections(sp):
    names = sp.names
    order = sp.order
    out = [SECTIONS_HEADER, "elements: " + " ".join(names), "leq:"]
    out += [f"{names[x]} <= {names[y]}" for x, y in order.hasse if x != 0]
    for p in range(order.size):
        out.append(f"section {names[p]}:")
        out += [f"{names[x]} -> {names[c]}"
                for x, c in zip(order.down(p), sp.comps[p])]
    return "\n".join(out) + "\n"
