"""Finite algebras (A, -, 0) given by their subtraction tables.

Elements are the dense indices ``0..n-1``; index 0 is the constant.  Labels
are presentation only and do not take part in equality.
"""

from __future__ import annotations

import hashlib
import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional

import numpy as np

from .errors import (InternalConsistencyError, NoLeastZero, NotAntisymmetric,
                     NotReflexive, NotTransitive, OrderError, TableFormatError)

LABEL_RE = re.compile(r"[A-Za-z0-9_]+\Z")
HEADER = "wbck-table v1"


def default_names(n):
    letters = "abcdefghijklmnopqrstuvwxyz"
    names = ["0"]
    for i in range(1, n):
        names.append(letters[i - 1] if i <= len(letters) else f"e{i}")
    return tuple(names)


@dataclass(frozen=True)
class OpTable:
    sub: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        sub = tuple(tuple(int(v) for v in row) for row in self.sub)
        n = len(sub)
        if n == 0:
            raise ValueError("empty carrier")
        for row in sub:
            if len(row) != n:
                raise ValueError("table is not square")
            for v in row:
                if not 0 <= v < n:
                    raise ValueError(f"entry {v} out of range 0..{n - 1}")
        names = tuple(self.names) if self.names else default_names(n)
        if len(names) != n or len(set(names)) != n:
            raise ValueError("names must be n distinct labels")
        object.__setattr__(self, "sub", sub)
        object.__setattr__(self, "names", names)

    @classmethod
    def from_array(cls, arr, names=()):
        return cls(tuple(map(tuple, np.asarray(arr).tolist())), tuple(names))

    @property
    def size(self):
        return len(self.sub)

    @cached_property
    def array(self):
        return np.array(self.sub, dtype=np.intp)

    @cached_property
    def flat(self):
        return tuple(v for row in self.sub for v in row)

    def index(self, label):
        return self.names.index(label)

    def __call__(self, x, y):
        return self.sub[x][y]

    def __repr__(self):
        return f"OpTable(n={self.size}, names={' '.join(self.names)})"


@dataclass(frozen=True)
class Verdict:
    """Outcome of checking a law; a failing verdict carries its counterwitness.

    ``assignment`` is a tuple of ``(variable, element index)`` pairs.
    """
    holds: bool
    assignment: Optional[tuple[tuple[str, int], ...]] = None
    atom: Optional[str] = None

    def __post_init__(self):
        if self.holds != (self.assignment is None):
            raise ValueError("counterwitness present iff the verdict fails")

    def __bool__(self):
        return self.holds

    def witness(self, names=None):
        if self.assignment is None:
            return None
        return {v: (names[i] if names else i) for v, i in self.assignment}


PASS = Verdict(True)


# ---------------------------------------------------------------- text format

def parse_table(text):
    lines = []
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        lines.append((no, s))
    if not lines or lines[0][1] != HEADER:
        raise TableFormatError(f"malformed header, expected '{HEADER}'",
                               lines[0][0] if lines else 1)
    if len(lines) < 2 or not lines[1][1].startswith("elements:"):
        raise TableFormatError("malformed header, expected 'elements:' line",
                               lines[1][0] if len(lines) > 1 else None)
    no, s = lines[1]
    names = s[len("elements:"):].split()
    if not names:
        raise TableFormatError("no elements", no)
    for lab in names:
        if not LABEL_RE.match(lab):
            raise TableFormatError(f"bad label {lab!r}", no)
    if len(set(names)) != len(names):
        dup = next(x for x in names if names.count(x) > 1)
        raise TableFormatError(f"duplicate name {dup!r}", no)
    pos = {lab: i for i, lab in enumerate(names)}
    n = len(names)
    rows = {}
    for no, s in lines[2:]:
        head, sep, rest = s.partition(":")
        head = head.strip()
        if not sep or head not in pos:
            raise TableFormatError(f"unknown element token {head!r}", no)
        if head in rows:
            raise TableFormatError(f"duplicate row {head!r}", no)
        toks = rest.split()
        if len(toks) != n:
            raise TableFormatError(
                f"row length mismatch: {len(toks)} entries, expected {n}", no)
        for t in toks:
            if t not in pos:
                raise TableFormatError(f"unknown element token {t!r}", no)
        rows[head] = tuple(pos[t] for t in toks)
    missing = [lab for lab in names if lab not in rows]
    if missing:
        raise TableFormatError(f"missing rows for {', '.join(missing)}")
    return OpTable(tuple(rows[lab] for lab in names), tuple(names))


def format_table(a, comment=None):
    out = [HEADER]
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append("elements: " + " ".join(a.names))
    w = max(map(len, a.names))
    for i, row in enumerate(a.sub):
        cells = " ".join(a.names[v].ljust(w) for v in row).rstrip()
        out.append(f"{a.names[i]}: {cells}")
    return "\n".join(out) + "\n"


def table_hash(a):
    return hashlib.sha256(bytes(a.flat)).hexdigest()[:16]


# ---------------------------------------------------------------- order

@dataclass(frozen=True)
class DerivedOrder:
    leq: tuple[tuple[bool, ...], ...]
    hasse: tuple[tuple[int, int], ...]
    least: int = 0

    @classmethod
    def from_matrix(cls, leq):
        """Build from a relation already known to be a partial order with 0."""
        m = np.asarray(leq, dtype=bool)
        return cls(tuple(map(tuple, m.tolist())), transitive_reduction(m), 0)

    @property
    def size(self):
        return len(self.leq)

    @cached_property
    def matrix(self):
        return np.array(self.leq, dtype=bool)

    def le(self, x, y):
        return self.leq[x][y]

    def lt(self, x, y):
        return x != y and self.leq[x][y]

    def down(self, p):
        return tuple(x for x in range(self.size) if self.leq[x][p])

    def up(self, p):
        return tuple(x for x in range(self.size) if self.leq[p][x])


def transitive_reduction(m):
    m = np.asarray(m, dtype=bool)
    n = len(m)
    strict = m & ~np.eye(n, dtype=bool)
    # composite pairs: x < z < y for some z
    composite = (strict.astype(np.int32) @ strict.astype(np.int32)) > 0
    cover = strict & ~composite
    return tuple((int(x), int(y)) for x, y in zip(*np.nonzero(cover)))


def derive_order(a):
    s = a.array
    n = a.size
    leq = s == 0
    for x in range(n):
        if not leq[x, x]:
            raise NotReflexive(a.names[x])
    for x in range(n):
        if not leq[0, x]:
            raise NoLeastZero(a.names[x])
    both = leq & leq.T
    for x, y in zip(*np.nonzero(both)):
        if x != y:
            raise NotAntisymmetric(a.names[x], a.names[y])
    li = leq.astype(np.int32)
    closed = (li @ li) > 0
    bad = closed & ~leq
    if bad.any():
        x, z = (int(v) for v in np.argwhere(bad)[0])
        y = next(y for y in range(n) if leq[x, y] and leq[y, z])
        raise NotTransitive(a.names[x], a.names[y], a.names[z])
    return DerivedOrder.from_matrix(leq)


def order_or_none(a):
    try:
        return derive_order(a)
    except OrderError:
        return None


# ---------------------------------------------------------------- validation

def _first(mask, variables, atom):
    """Verdict from a boolean violation mask over the assignment grid."""
    if not mask.any():
        return PASS
    idx = np.unravel_index(int(np.argmax(mask.ravel())), mask.shape)
    return Verdict(False, tuple(zip(variables, (int(i) for i in idx))), atom)


def _reduced_base(s):
    n = len(s)
    x, y, z = np.ix_(range(n), range(n), range(n))
    x2, y2 = np.ix_(range(n), range(n))
    yield _first(s[np.arange(n), 0] != np.arange(n), ("x",), "x - 0 = x")
    yield _first(s[s[x2, s[x2, y2]], y2] != 0, ("x", "y"),
                 "x - (x - y) <= y")
    le = s[x, y] == 0
    yield _first(le & (s[s[z, y], s[z, x]] != 0), ("x", "y", "z"),
                 "x <= y => z - y <= z - x")


def _definition(s):
    n = len(s)
    x, y, z = np.ix_(range(n), range(n), range(n))
    # (-1) is the definition of the derived order; it only needs the poset
    # check already done by derive_order
    yield _first((s[s[x, y], z] == 0) & (s[s[x, z], y] != 0), ("x", "y", "z"),
                 "x - y <= z => x - z <= y")


def validate_wbck(a):
    """Decide whether ``a`` is a wBCK-algebra.

    Raises an ``OrderError`` when the derived relation is not a partial order
    with least element 0.  The reduced base ``x - 0 = x``, ``x - (x - y) <= y``
    and antitonicity decides; the defining Galois axiom is evaluated as well
    and must agree.
    """
    derive_order(a)
    s = a.array
    primary = next((v for v in _reduced_base(s) if not v.holds), PASS)
    check = next((v for v in _definition(s) if not v.holds), PASS)
    if primary.holds != check.holds:
        raise InternalConsistencyError(
            f"reduced base says {primary.holds}, definition says {check.holds}")
    return primary


def is_wbck(a):
    try:
        return validate_wbck(a).holds
    except OrderError:
        return False


def discrete_wbck(order, names=()):
    n = order.size
    sub = tuple(tuple(0 if order.le(x, y) else x for y in range(n))
                for x in range(n))
    return OpTable(sub, tuple(names))


# ---------------------------------------------------------------- isomorphism

@lru_cache(maxsize=None)
def zero_fixing_perms(n):
    """All permutations fixing 0 as arrays (perm, inverse)."""
    rest = list(itertools.permutations(range(1, n)))
    perm = np.array([(0,) + p for p in rest], dtype=np.intp).reshape(len(rest), n)
    inv = np.argsort(perm, axis=1)
    return perm, inv


def permute(a, perm, names=None):
    """Relabel ``a`` so that element i becomes ``perm[i]`` (perm[0] == 0)."""
    perm = list(perm)
    n = a.size
    if perm[0] != 0 or sorted(perm) != list(range(n)):
        raise ValueError("perm must be a permutation fixing 0")
    new = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            new[perm[i]][perm[j]] = perm[a.sub[i][j]]
    if names is None:
        names = [None] * n
        for i in range(n):
            names[perm[i]] = a.names[i]
    return OpTable(tuple(map(tuple, new)), tuple(names))


def _all_relabelings(a):
    perm, inv = zero_fixing_perms(a.size)
    s = a.array
    n = a.size
    vals = s[inv[:, :, None], inv[:, None, :]].reshape(len(perm), n * n)
    return perm, np.take_along_axis(perm, vals, axis=1)


def _canonical(a):
    perm, flats = _all_relabelings(a)
    k = int(np.lexsort(flats.T[::-1])[0])
    return perm[k], flats[k]


def canonical_form(a):
    """Lexicographically least flattened table over zero-fixing relabelings."""
    perm, _ = _canonical(a)
    return permute(a, perm.tolist())


def canonical_key(a):
    return tuple(int(v) for v in _canonical(a)[1])


def is_isomorphic(a, b):
    """A zero-fixing bijection f with f(x - y) = f(x) - f(y), or None."""
    if a.size != b.size:
        return None
    pa, fa = _canonical(a)
    pb, fb = _canonical(b)
    if not np.array_equal(fa, fb):
        return None
    inv_b = np.argsort(pb)
    return tuple(int(inv_b[pa[i]]) for i in range(a.size))
