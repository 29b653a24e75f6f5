"""Terms, (quasi-)identities and their exhaustive evaluation on finite tables.

Law syntax::

    law        := [forall VARS ":"] body
    body       := atom "<=>" conclusion
                | [atom ("," atom)* "=>"] conclusion
    conclusion := ["exists" VAR ":"] atom
    atom       := term ("=" | "<=") term
    term       := primary [("-" | "&" | "|") primary]
    primary    := VAR | "0" | "(" term ")"

Variables are single lower-case letters.  Grouping needs explicit
parentheses: ``x - y - z`` is rejected.  ``&`` is meet and ``|`` is join in
the derived order; ``s <= t`` abbreviates ``s - t = 0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import LawSyntaxError, NotMeetSemilattice, UnknownName
from .table import PASS, Verdict, derive_order


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Bin:
    op: str  # "-", "&" (meet) or "|" (join)
    left: "Term"
    right: "Term"

    def __str__(self):
        return f"{_wrap(self.left)} {self.op} {_wrap(self.right)}"


Term = Union[Var, Zero, Bin]
ZERO = Zero()


def _wrap(t):
    return f"({t})" if isinstance(t, Bin) else str(t)


def sub(a, b):
    return Bin("-", a, b)


def meet(a, b):
    return Bin("&", a, b)


def variables_of(t):
    if isinstance(t, Var):
        return [t.name]
    if isinstance(t, Bin):
        return variables_of(t.left) + variables_of(t.right)
    return []


def uses_op(t, op):
    return isinstance(t, Bin) and (t.op == op or uses_op(t.left, op)
                                   or uses_op(t.right, op))


@dataclass(frozen=True)
class Atom:
    kind: str  # "eq" or "le"
    left: Term
    right: Term

    def desugar(self):
        if self.kind == "le":
            return Atom("eq", sub(self.left, self.right), ZERO)
        return self

    def terms(self):
        return (self.left, self.right)

    def __str__(self):
        rel = "=" if self.kind == "eq" else "<="
        return f"{self.left} {rel} {self.right}"


@dataclass(frozen=True)
class Law:
    universals: tuple[str, ...]
    premises: tuple[Atom, ...]
    conclusion: Atom
    exists: Optional[str] = None
    iff: bool = False
    meet_guarded: bool = False
    name: str = field(default="", compare=False)

    def atoms(self):
        return self.premises + (self.conclusion,)

    def mentions(self, op):
        return any(uses_op(t, op) for at in self.atoms() for t in at.terms())

    def __str__(self):
        head = f"forall {' '.join(self.universals)}: " if self.universals else ""
        concl = str(self.conclusion)
        if self.exists:
            concl = f"exists {self.exists}: {concl}"
        if self.iff:
            return f"{head}{self.premises[0]} <=> {concl}"
        if self.premises:
            return f"{head}{', '.join(map(str, self.premises))} => {concl}"
        return head + concl


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(r"\s*(?:(<=>|=>|<=|[-&|=,():0])|(forall|exists)\b|([a-z])\b)")


def _tokenize(text):
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise LawSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = "sym" if m.group(1) else "kw" if m.group(2) else "var"
        val = m.group(1) or m.group(2) or m.group(3)
        toks.append((kind, val, m.start(m.lastindex)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.var_pos = {}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, val):
        kind, v, pos = self.take()
        if v != val:
            raise LawSyntaxError(f"expected {val!r}, found {v or 'end'!r}", pos)

    def primary(self):
        kind, v, pos = self.take()
        if kind == "var":
            self.var_pos.setdefault(v, pos)
            return Var(v)
        if v == "0":
            return ZERO
        if v == "(":
            t = self.term()
            self.expect(")")
            return t
        raise LawSyntaxError(f"expected a term, found {v or 'end'!r}", pos)

    def term(self):
        left = self.primary()
        kind, v, pos = self.peek()
        if v in ("-", "&", "|"):
            self.take()
            left = Bin(v, left, self.primary())
            kind, v, pos = self.peek()
            if v in ("-", "&", "|"):
                raise LawSyntaxError("ambiguous grouping, add parentheses", pos)
        return left

    def atom(self):
        left = self.term()
        kind, v, pos = self.take()
        if v == "=":
            return Atom("eq", left, self.term())
        if v == "<=":
            return Atom("le", left, self.term())
        raise LawSyntaxError(f"expected '=' or '<=', found {v or 'end'!r}", pos)

    def conclusion(self):
        kind, v, pos = self.peek()
        if v == "exists":
            self.take()
            kind, var, vpos = self.take()
            if kind != "var":
                raise LawSyntaxError("expected a variable after 'exists'", vpos)
            self.expect(":")
            return var, vpos, self.atom()
        return None, None, self.atom()

    def law(self):
        declared = None
        if self.peek()[1] == "forall":
            self.take()
            declared = []
            while self.peek()[0] == "var":
                declared.append(self.take()[1])
            if not declared:
                raise LawSyntaxError("expected variables after 'forall'",
                                     self.peek()[2])
            self.expect(":")
        premises = []
        iff = False
        exists, epos, concl = self.conclusion()
        kind, v, pos = self.peek()
        if exists is None and v in (",", "=>", "<=>"):
            premises.append(concl)
            if v == "<=>":
                self.take()
                iff = True
            else:
                while self.peek()[1] == ",":
                    self.take()
                    premises.append(self.atom())
                self.expect("=>")
            exists, epos, concl = self.conclusion()
        kind, v, pos = self.peek()
        if kind != "end":
            raise LawSyntaxError(f"unexpected {v!r}", pos)
        return declared, tuple(premises), concl, exists, epos, iff


def parse_law(text, name="", meet_guarded=False):
    parser = _Parser(text)
    declared, premises, concl, exists, epos, iff = parser.law()
    seen = []
    for at in premises:
        for t in at.terms():
            for v in variables_of(t):
                if v == exists:
                    raise LawSyntaxError(
                        f"unbound variable {v!r} outside its 'exists'", epos)
                if v not in seen:
                    seen.append(v)
    for t in concl.terms():
        for v in variables_of(t):
            if v != exists and v not in seen:
                seen.append(v)
    if declared is not None:
        for v in seen:
            if v not in declared:
                raise LawSyntaxError(f"unbound variable {v!r}",
                                     parser.var_pos[v])
        if exists in declared:
            raise LawSyntaxError(f"variable {exists!r} bound twice", epos)
        universals = tuple(declared)
    else:
        universals = tuple(seen)
    law = Law(universals, premises, concl, exists, iff, meet_guarded, name)
    if law.mentions("|") and not meet_guarded:
        law = Law(universals, premises, concl, exists, iff, True, name)
    return law


# ---------------------------------------------------------------- evaluation

class _Context:
    def __init__(self, s, law, order=None):
        self.s = s  # (batch, n, n)
        batch = s.shape[0]
        self.k = len(law.universals) + (1 if law.exists else 0)
        self.b = np.arange(batch, dtype=np.intp).reshape((batch,) + (1,) * self.k)
        self.meet = self.join = None
        if law.mentions("&") or law.mentions("|"):
            from .order import join_table, meet_table
            self.meet = meet_table(order)
            self.join = join_table(order)
            if law.mentions("&") and not law.meet_guarded and (self.meet < 0).any():
                raise NotMeetSemilattice(
                    f"law {law.name or law} needs meets, the order has none for some pair")

    def term(self, t, env):
        """Return (values, undefined-mask) broadcast over the assignment grid."""
        if isinstance(t, Var):
            return env[t.name], False
        if isinstance(t, Zero):
            return np.intp(0), False
        lv, lu = self.term(t.left, env)
        rv, ru = self.term(t.right, env)
        if t.op == "-":
            return self.s[self.b, lv, rv], lu | ru
        tab = self.meet if t.op == "&" else self.join
        v = tab[lv, rv]
        undef = v < 0
        return np.where(undef, 0, v), lu | ru | undef

    def atom(self, at, env):
        at = at.desugar()
        lv, lu = self.term(at.left, env)
        rv, ru = self.term(at.right, env)
        return lv == rv, lu | ru


def _grid(law, n):
    k = len(law.universals) + (1 if law.exists else 0)
    env = {}
    names = list(law.universals) + ([law.exists] if law.exists else [])
    for i, v in enumerate(names):
        shape = [1] * (k + 1)
        shape[i + 1] = n
        env[v] = np.arange(n, dtype=np.intp).reshape(shape)
    return env, k


def batch_violations(s, law, order=None):
    """Violation masks for a stack of tables ``s`` of shape (batch, n, n).

    All tables must share the derived ``order`` when the law uses meets or
    joins.  The result has shape (batch,) + (n,) * len(law.universals).
    """
    s = np.asarray(s, dtype=np.intp)
    ctx = _Context(s, law, order)
    env, k = _grid(law, s.shape[1])
    full = (s.shape[0],) + (s.shape[1],) * k
    pre = np.ones(full, dtype=bool)
    undef = np.zeros(full, dtype=bool)
    for at in law.premises:
        v, u = ctx.atom(at, env)
        pre = pre & v
        undef = undef | u
    cv, cu = ctx.atom(law.conclusion, env)
    cv = np.broadcast_to(cv, full)
    if law.exists:
        # an undefined instance never witnesses the existential
        cv = np.any(cv & ~np.broadcast_to(cu, full), axis=-1)
        pre, undef = pre[..., 0], undef[..., 0]
    else:
        undef = undef | cu
    bad = (pre != cv) if law.iff else (pre & ~cv)
    if law.meet_guarded:
        bad = bad & ~undef
    return bad


def batch_holds(s, law, order=None):
    bad = batch_violations(s, law, order)
    return ~bad.reshape(bad.shape[0], -1).any(axis=1)


def violations(a, law):
    """Boolean mask over universal assignments where ``law`` fails."""
    order = None
    if law.mentions("&") or law.mentions("|"):
        order = derive_order(a)
    return batch_violations(a.array[None], law, order)[0]


def eval_law(a, law):
    bad = violations(a, law)
    if not bad.any():
        return PASS
    if bad.ndim == 0:
        return Verdict(False, (), str(law.conclusion))
    idx = np.unravel_index(int(np.argmax(bad.ravel())), bad.shape)
    return Verdict(False, tuple(zip(law.universals, (int(i) for i in idx))),
                   str(law.conclusion))


def holds_at(a, law, assignment):
    """Replay one instance; ``assignment`` maps universal variables to indices."""
    assignment = dict(assignment)
    bad = violations(a, law)
    if bad.ndim == 0:
        return not bool(bad)
    return not bool(bad[tuple(assignment[v] for v in law.universals)])


# ---------------------------------------------------------------- catalog

_CATALOG = [
    ("salg", "x <= y <=> x - y = 0"),
    ("sgalois", "x - y <= z => x - z <= y"),
    ("mdi2", "x - (x - y) <= y"),
    ("manti", "forall x y z: x <= y => z - y <= z - x"),
    ("mtri", "x - (x - (x - y)) = x - y"),
    ("xx0", "x - x = 0"),
    ("xyx", "x - y <= x"),
    ("mdi1", "x - (x - y) <= x"),
    ("x0x", "x - 0 = x"),
    ("0x0", "0 - x = 0"),
    ("x.0yx", "x - (0 - y) = x"),
    ("mAnti", "forall x y z: (z - y) - (z - x) <= x - y"),
    ("miso", "x <= y => x - z <= y - z"),
    ("exch", "(x - y) - z = (x - z) - y"),
    ("mcontr", "(x - y) - y = x - y"),
    ("mcontr_rule", "x - y <= y => x <= y"),
    ("mdistr", "(x - z) - (y - z) = (x - y) - z"),
    ("pierce", "x - (y - x) = x"),
    ("pierce_rule", "x <= y - x => x = 0"),
    ("wm0", "x & (y - x) = 0"),
    ("mcommut", "x - (x - y) = y - (y - x)"),
    ("midem", "x <= y => x <= y - (y - x)"),
    ("leq_iff_residual", "x <= y <=> y - (y - x) = x"),
    ("leq_iff_exists", "x <= y <=> exists z: x = y - z"),
    ("c2", "forall x y z: (z - y) - (z - (y - (y - x))) = 0"),
    ("pw", "x - ((x - y) - x) = x"),
    ("miso_pp", "forall x y z: (y - (y - x)) - z <= y - z"),
    ("miso_p", "forall y u z: (y - u) - z <= y - z"),
    ("join_minus", "(x | y) - x <= y"),
    ("ippo_back", "x <= p, p <= q => p - x = p - (p - (q - x))"),
    ("compm", "x <= p, p <= q => p - (q - x) = x"),
    ("contr_full", "forall x y z: z <= y => (x - z) - y = x - y"),
    ("abb", "(x - (y - z)) - y = x - y"),
    ("ippo_half", "x <= p, p <= q => p - x <= q - x"),
    ("compm_half", "x <= p, p <= q => p - (q - x) <= x"),
    ("contr_half", "forall x y z: z <= y => (x - z) - y <= x - y"),
    ("abb_half", "(x - (y - z)) - y <= x - y"),
    ("meet_minus_zero", "(x & y) - x = 0"),
    ("meet_antitone", "forall x y z: z - y <= z - (x & y)"),
]

_GUARDED = {"wm0", "join_minus"}


def _build_catalog():
    return {name: parse_law(text, name, meet_guarded=name in _GUARDED)
            for name, text in _CATALOG}


_LAWS = _build_catalog()


def builtin_laws():
    return dict(_LAWS)


def law_named(name):
    try:
        return _LAWS[name]
    except KeyError:
        raise UnknownName(f"unknown law {name!r}") from None


BASES = {
    "COMM4": ("xx0", "x0x", "mcommut", "c2"),
    "COMM3a": ("mcommut", "c2", "x.0yx"),
    "COMM3b": ("mcommut", "c2", "pw"),
    "OI3": ("pierce", "mcommut", "c2"),
    "IMPL4": ("xx0", "pierce", "mcommut", "abb"),
}


def check_basis(a, basis):
    """Evaluate the equations of a named basis on the bare table."""
    if isinstance(basis, str):
        try:
            names = BASES[basis]
        except KeyError:
            raise UnknownName(f"unknown basis {basis!r}") from None
        laws = [_LAWS[nm] for nm in names]
    else:
        laws = list(basis)
    for law in laws:
        v = eval_law(a, law)
        if not v.holds:
            return v
    return PASS
