"""Declarative theorem registry, checked over every algebra up to a size cap.

Every case is a property of one algebra: ``hypothesis`` selects the
algebras it speaks about and ``conclusion`` must hold on each of them.
``exercised`` counts the instances where the statement has content (the
antecedent of an implication, or the true side of an equivalence), so a
sweep where nothing was tested shows up as vacuous instead of green.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from .classify import Facts
from .enumeration import SIZE_CAP, EnumSpec, enumerate_posets, enumerate_wbck
from .errors import BudgetExhausted, ReconstructionFailure
from .laws import BASES, check_basis, law_named, parse_law
from .order import meet_matches_subtraction, meet_table
from .sections import SectionedPoset, reconstruct_subtraction
from .table import format_table, table_hash

HALVES = ("ippo_half", "compm_half", "contr_half", "abb_half")
BASIS_CLASS = {"COMM4": "mcommut", "COMM3a": "mcommut", "COMM3b": "mcommut",
               "OI3": "pierce", "IMPL4": "compm"}


def _true(f):
    return True


@dataclass(frozen=True)
class TheoremCase:
    name: str
    title: str
    hypothesis: Callable
    conclusion: Callable  # returns bool or a Verdict
    scope: str = "per-algebra"
    exercised: Callable = _true
    sectional: bool = False
    extra: bool = False


def implies(name, title, hyp, concl, context=_true, **kw):
    return TheoremCase(name, title, lambda f: context(f) and hyp(f), concl,
                       exercised=_true, **kw)


def equiv(name, title, sides, context=_true, **kw):
    def same(f):
        vals = [bool(s(f)) for s in sides]
        return all(vals) or not any(vals)
    return TheoremCase(name, title, context, same,
                       exercised=lambda f: bool(sides[0](f)), **kw)


def law(name):
    return lambda f: f(name)


def both(*ps):
    return lambda f: all(p(f) for p in ps)


def _near(f):
    return f.order_profile.is_nearlattice


def _msl(f):
    return f.meet_semilattice


def _sect(flag):
    return lambda f: f.sectionally(flag)


def _kinds(kind):
    return lambda f: f.sections_are(kind)


def _t3(f):
    return (not f("pierce") or f("mcontr")) and (not f("mcontr") or f("mcontr_rule"))


def _t13(f):
    if any(f.implicative != (f.orthoimplicative and f(h)) for h in HALVES):
        return False
    return not f.orthoimplicative or len({f(h) for h in HALVES}) == 1


def _t20(f):
    if f.implicative != (f.sectionally("m") and f.ippo.holds):
        return False
    return not f.implicative or (_near(f) and f.sections_are("orthomodular"))


def _t22(f):
    return all(f.basis(b).holds == f(cls) for b, cls in BASIS_CLASS.items())


def _t23(f):
    return (not f.implicative or f.semi_implicative) and \
        (not f.semi_implicative or f.orthoimplicative)


def _t24(f):
    boolean = f.sections_are("boolean")
    return boolean == f.order_profile.is_0_distributive and (not boolean or f("mAnti"))


def registry():
    commutative = law("mcommut")
    pierce = law("pierce")
    compm = law("compm")
    return [
        equiv("T1", "BCK iff isotone with exchange",
              [law("mAnti"), both(law("miso"), law("exch"))]),
        implies("T2", "distributive subtraction forces BCK",
                law("mdistr"), law("mAnti")),
        TheoremCase("T3", "Pierce => contraction law => contraction rule",
                    _true, _t3, exercised=law("mcontr_rule")),
        equiv("T4", "Pierce law, Pierce rule and x & (y - x) = 0",
              [pierce, law("pierce_rule"), law("wm0")]),
        equiv("T5", "four characterizations of commutativity",
              [commutative, law("midem"), law("leq_iff_residual"),
               law("leq_iff_exists")]),
        implies("T6", "meets are x - (x - y) in commutative algebras",
                commutative, lambda f: meet_matches_subtraction(f.a),
                scope="per-assignment"),
        equiv("T7", "isotonicity variants agree on commutative algebras",
              [law("miso"), law("miso_pp"), law("miso_p")], context=commutative),
        implies("T8", "(x | y) - x <= y on commutative qBCK-algebras",
                both(commutative, law("miso")), lambda f: f.law("join_minus"),
                scope="per-assignment"),
        equiv("T9", "uniformity conditions agree on commutative algebras",
              [law("ippo_back"), compm, law("contr_full"), law("abb")],
              context=commutative),
        equiv("T10", "Pierce, contraction law and rule agree when commutative",
              [pierce, law("mcontr"), law("mcontr_rule")], context=commutative),
        implies("T11", "Pierce law implies commutativity", pierce, commutative),
        implies("T12", "orthoimplicative qBCK-algebras are BCK",
                both(pierce, law("miso")), law("mAnti")),
        TheoremCase("T13", "implicative iff orthoimplicative plus any half "
                    "condition; the halves agree under Pierce",
                    _true, _t13, exercised=compm),
        implies("T14", "orthoimplicative with the isotone half is implicative",
                both(pierce, law("ippo_half")), compm),
        equiv("T15", "contraction rule iff strongly sectionally b*",
              [law("mcontr_rule"), lambda f: f.strongly_bstar.holds],
              sectional=True),
        implies("T16", "sectionally m meet semilattices are nearlattices",
                both(_msl, _sect("m")), _near),
        equiv("T17", "commutative iff sectionally m iff nearlattice with "
              "De Morgan sections",
              [commutative, _sect("m"), both(_near, _kinds("de_morgan"))],
              sectional=True),
        equiv("T18", "orthoimplicative iff sectionally s iff nearlattice with "
              "ortholattice sections",
              [pierce, _sect("s"), both(_near, _kinds("ortholattice"))],
              sectional=True),
        equiv("T19", "sectionally s iff sectionally o", [_sect("s"), _sect("o")],
              sectional=True),
        TheoremCase("T20", "implicative iff sectionally m with ippo; "
                    "implicative sections are orthomodular",
                    _true, _t20, exercised=compm, sectional=True),
        equiv("T21", "implicative iff sectionally s with ippo'",
              [compm, both(_sect("s"), lambda f: f.ippo_prime.holds)],
              sectional=True),
        TheoremCase("T22", "the equational bases define their classes",
                    _true, _t22, exercised=commutative),
        TheoremCase("T23", "implicative => semi-implicative => orthoimplicative",
                    _true, _t23, exercised=lambda f: f.semi_implicative),
        TheoremCase("T24", "orthoimplicative: Boolean sections iff 0-distributive, "
                    "and then BCK", pierce, _t24,
                    exercised=_kinds("boolean"), extra=True),
    ]


def theorem(name) -> Optional[TheoremCase]:
    return next((c for c in registry() if c.name == name), None)


def _holds(value):
    return value.holds if hasattr(value, "holds") else bool(value)


@dataclass
class CaseResult:
    instances: int = 0
    exercised: int = 0
    assignments: int = 0
    counterexamples: list = field(default_factory=list)
    error: Optional[str] = None

    @property
    def vacuous(self):
        return self.exercised == 0

    def as_dict(self):
        d = {"instances": self.instances, "exercised": self.exercised,
             "vacuous": self.vacuous, "counterexamples": self.counterexamples}
        if self.assignments:
            d["assignments"] = self.assignments
        if self.error:
            d["error"] = self.error
        return d


@dataclass
class HarnessReport:
    max_n: int
    universe: dict
    results: dict
    sectional: list = field(default_factory=list)

    @property
    def ok(self):
        return all(not r.counterexamples and r.error is None
                   for r in self.results.values())

    def counterexample_count(self):
        return sum(len(r.counterexamples) for r in self.results.values())

    def as_dict(self):
        return {
            "max_n": self.max_n,
            "universe": {str(k): v for k, v in self.universe.items()},
            "theorems": {k: r.as_dict() for k, r in self.results.items()},
            "sectional_equivalences": self.sectional,
            "counterexamples": self.counterexample_count(),
            "note": f"checked on all wBCK-algebras with at most {self.max_n} "
                    "elements only",
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2)


def universe(max_n, budget=None):
    """All wBCK-algebras with at most ``max_n`` elements, one per iso class."""
    out = []
    for n in range(1, max_n + 1):
        spec = EnumSpec(n) if budget is None else EnumSpec(n, budget=budget)
        res = enumerate_wbck(spec)
        if res.partial:
            raise BudgetExhausted(f"budget exhausted enumerating size {n}")
        out.extend(res.tables)
    return out


def verify_all(max_n, selection=None, out_dir=None, cases=None, budget=None):
    """Check the selected cases over every algebra of size <= ``max_n``.

    ``selection`` is an iterable of case names (None means all).  Any
    counterexample is written to ``out_dir`` as a wbck-table file.
    """
    if max_n > SIZE_CAP:
        raise ValueError(f"max_n must be at most {SIZE_CAP}")
    cases = list(cases) if cases is not None else registry()
    if selection is not None:
        wanted = set(selection)
        cases = [c for c in cases if c.name in wanted]
    results = {c.name: CaseResult() for c in cases}
    try:
        algebras = universe(max_n, budget)
    except BudgetExhausted as e:
        for r in results.values():
            r.error = str(e)
        return HarnessReport(max_n, {}, results)
    sizes = {}
    for a in algebras:
        sizes[a.size] = sizes.get(a.size, 0) + 1
        f = Facts(a)
        for c in cases:
            if not c.hypothesis(f):
                continue
            r = results[c.name]
            r.instances += 1
            if c.scope == "per-assignment":
                r.assignments += a.size ** 2
            if not _holds(c.conclusion(f)):
                r.counterexamples.append(_emit(c, a, out_dir))
            elif c.exercised(f):
                r.exercised += 1
    sectional = [c.name for c in cases if c.sectional]
    return HarnessReport(max_n, sizes, results, sectional)


def _emit(case, a, out_dir):
    label = f"{case.name}_{table_hash(a)}"
    if out_dir is not None:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / f"{label}.tbl").write_text(
            format_table(a, comment=f"counterexample to {case.name}: {case.title}"))
    return label


# ---------------------------------------------------------------- mutation

C2_DROPPED = "forall x y z: (z - y) - (z - x) = 0"


def mutated_basis_case():
    """T22 for COMM4 with c2 corrupted: y - (y - x) replaced by plain x."""
    corrupt = parse_law(C2_DROPPED, "c2_mutated")
    laws = [law_named(nm) for nm in BASES["COMM4"] if nm != "c2"] + [corrupt]

    def agree(f):
        return check_basis(f.a, laws).holds == f("mcommut")
    return TheoremCase("T22-mutant", "COMM4 with a corrupted c2", _true, agree,
                       exercised=law("mcommut"))


# ---------------------------------------------------------------- sectioned posets

def m_complementations(order, p):
    """Involutive antitone maps of [0,p] sending 0 to p (as tuples on down(p))."""
    members = order.down(p)
    le = order.le
    out = []
    for img in itertools.permutations(members):
        comp = dict(zip(members, img))
        if comp[0] != p:
            continue
        if any(comp[comp[x]] != x for x in members):
            continue
        if all(le(comp[y], comp[x]) for x in members for y in members if le(x, y)):
            out.append(img)
    return out


def sectionally_m_posets(n):
    for order in enumerate_posets(n):
        choices = [m_complementations(order, p) for p in range(n)]
        for comps in itertools.product(*choices):
            yield SectionedPoset(order, comps)


def check_meetnear_converse(max_n):
    """A sectionally m-complemented poset is a meet semilattice exactly when
    its reconstructed subtraction exists (and is then a wBCK-algebra).

    Returns (instances, semilattices, counterexample descriptions).
    """
    instances = semilattices = 0
    bad = []
    for n in range(1, max_n + 1):
        for sp in sectionally_m_posets(n):
            instances += 1
            msl = bool((meet_table(sp.order) >= 0).all())
            semilattices += msl
            try:
                reconstruct_subtraction(sp)
                ok = True
            except ReconstructionFailure:
                ok = False
            if ok != msl:
                bad.append(f"n={n} leq={sp.order.leq} comps={sp.comps}")
    return instances, semilattices, bad


# ---------------------------------------------------------------- corpus triggers

def corpus_triggers():
    """The corpus algebras separate the classes the way the theorems need.

    Returns (entry, case, ok) triples.
    """
    from .corpus import corpus_entry

    def facts(name):
        return Facts(corpus_entry(name).table)
    n5, posim, om6, oinoti = (facts(x) for x in ("n5_1", "posim", "om6", "oinoti"))
    return [
        ("n5_1", "T1", not n5("mAnti") and not (n5("miso") and n5("exch"))),
        ("posim", "T3", posim("mcontr_rule") and not posim("mcontr")),
        ("om6", "T12", om6("pierce") and not om6("miso")),
        ("oinoti", "T13", oinoti("pierce") and not oinoti("ippo_half")
         and not oinoti("compm")),
    ]
