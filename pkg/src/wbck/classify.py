"""Class membership across the wBCK hierarchy, with cross-characterizations."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import NotWbck, OrderError
from .laws import check_basis, eval_law, law_named
from .order import meet_table, profile
from .sections import (all_kinds, all_sections, check_ippo, check_ippo_prime,
                       is_strongly_sectionally_bstar, section_profiles)
from .table import derive_order, discrete_wbck, validate_wbck

CLASSES = ("wbck", "qbck", "bck", "commutative", "positive_implicative",
           "contraction_rule", "orthoimplicative", "semi_implicative",
           "implicative", "uniform", "discrete")

NA = "n/a"


@dataclass
class Agreement:
    pair: str
    agreed: bool
    witness: list = field(default_factory=list)

    def as_dict(self):
        return {"pair": self.pair, "agreed": self.agreed,
                "witness": self.witness}


@dataclass
class ClassReport:
    classes: dict
    agreements: list
    sections: list
    witnesses: dict = field(default_factory=dict)

    def __getitem__(self, name):
        return self.classes[name]

    def critical(self):
        return [ag for ag in self.agreements if not ag.agreed]

    def as_dict(self):
        return {"classes": {k: self.classes[k] for k in CLASSES},
                "agreements": [ag.as_dict() for ag in self.agreements],
                "sections": self.sections}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False)


class Facts:
    """Lazily computed, memoized verdicts about one validated algebra."""

    def __init__(self, a):
        self.a = a
        self._laws = {}
        self._cache = {}

    def law(self, name):
        if name not in self._laws:
            self._laws[name] = eval_law(self.a, law_named(name))
        return self._laws[name]

    def __call__(self, name):
        return self.law(name).holds

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def order(self):
        return self._memo("order", lambda: derive_order(self.a))

    @property
    def order_profile(self):
        return self._memo("oprof", lambda: profile(self.order))

    @property
    def meet_semilattice(self):
        return self._memo("msl", lambda: bool((meet_table(self.order) >= 0).all()))

    @property
    def sections(self):
        return self._memo("sections", lambda: section_profiles(self.a))

    def sectionally(self, flag):
        return all_sections(self.sections, flag)

    def sections_are(self, kind):
        return all_kinds(self.sections, kind)

    @property
    def strongly_bstar(self):
        return self._memo("sbstar", lambda: is_strongly_sectionally_bstar(self.a))

    @property
    def ippo(self):
        return self._memo("ippo", lambda: check_ippo(self.a))

    @property
    def ippo_prime(self):
        return self._memo("ippo'", lambda: check_ippo_prime(self.a))

    def basis(self, name):
        return self._memo(("basis", name), lambda: check_basis(self.a, name))

    @property
    def discrete(self):
        return self._memo("discrete",
                          lambda: discrete_wbck(self.order).sub == self.a.sub)

    @property
    def commutative(self):
        return self("mcommut")

    @property
    def orthoimplicative(self):
        return self("pierce")

    @property
    def implicative(self):
        return self("compm")

    @property
    def semi_implicative(self):
        return self.sections_are("orthomodular")


def _names(facts, verdict):
    if verdict.holds:
        return []
    return [[v, facts.a.names[i]] for v, i in verdict.assignment]


def cross_validate(a, facts=None):
    facts = facts or Facts(validated(a))
    f = facts
    out = []

    def add(pair, left, right, *verdicts):
        wit = next((_names(f, v) for v in verdicts if v is not None and not v.holds), [])
        out.append(Agreement(pair, bool(left) == bool(right), wit))

    add("commutative <=> sectionally m", f.commutative, f.sectionally("m"),
        f.law("mcommut"))
    add("orthoimplicative <=> sectionally s", f.orthoimplicative,
        f.sectionally("s"), f.law("pierce"))
    add("sectionally s <=> sectionally o", f.sectionally("s"), f.sectionally("o"))
    add("contraction_rule <=> strongly sectionally b*", f("mcontr_rule"),
        f.strongly_bstar.holds, f.law("mcontr_rule"), f.strongly_bstar)
    add("implicative <=> sectionally m + ippo", f.implicative,
        f.sectionally("m") and f.ippo.holds, f.law("compm"), f.ippo)
    add("implicative <=> sectionally s + ippo'", f.implicative,
        f.sectionally("s") and f.ippo_prime.holds, f.law("compm"), f.ippo_prime)
    for half in ("ippo_half", "compm_half", "contr_half", "abb_half"):
        add(f"implicative <=> orthoimplicative + {half}", f.implicative,
            f.orthoimplicative and f(half), f.law("compm"), f.law(half))
    for basis in ("COMM4", "COMM3a", "COMM3b"):
        add(f"commutative <=> {basis}", f.commutative, f.basis(basis).holds,
            f.law("mcommut"), f.basis(basis))
    add("orthoimplicative <=> OI3", f.orthoimplicative, f.basis("OI3").holds,
        f.law("pierce"), f.basis("OI3"))
    add("implicative <=> IMPL4", f.implicative, f.basis("IMPL4").holds,
        f.law("compm"), f.basis("IMPL4"))
    add("pierce <=> commutative + positive_implicative", f("pierce"),
        f.commutative and f("mcontr"), f.law("pierce"), f.law("mcommut"),
        f.law("mcontr"))
    return out


def validated(a):
    try:
        v = validate_wbck(a)
    except OrderError as e:
        raise NotWbck(f"derived relation is not a poset with least 0: {e}") from e
    if not v.holds:
        raise NotWbck(f"not a wBCK-algebra: {v.atom} fails at "
                      f"{v.witness(a.names)}")
    return a


def classify(a, facts=None):
    validated(a)
    f = facts or Facts(a)
    commutative = f.commutative
    classes = {
        "wbck": True,
        "qbck": f("miso"),
        "bck": f("mAnti"),
        "commutative": commutative,
        "positive_implicative": f("mcontr"),
        "contraction_rule": f("mcontr_rule"),
        "orthoimplicative": f.orthoimplicative,
        "semi_implicative": f.semi_implicative,
        "implicative": f.implicative,
        "uniform": f("abb") if commutative else NA,
        "discrete": f.discrete,
    }
    witnesses = {}
    for cls, law in (("qbck", "miso"), ("bck", "mAnti"),
                     ("commutative", "mcommut"),
                     ("positive_implicative", "mcontr"),
                     ("contraction_rule", "mcontr_rule"),
                     ("orthoimplicative", "pierce"), ("implicative", "compm")):
        if not classes[cls]:
            witnesses[cls] = {"law": law, "witness": f.law(law).witness(a.names)}
    return ClassReport(classes, cross_validate(a, f),
                       [p.as_dict(a.names) for p in f.sections], witnesses)
