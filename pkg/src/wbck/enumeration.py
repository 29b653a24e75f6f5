"""Exhaustive generation of finite wBCK-algebras up to isomorphism.

Posets with a least element are generated first.  On a fixed poset the row
``x - .`` of a wBCK table only refers to entries of the same row (every value
lies in [0, x]), so rows are filled independently by backtracking under the
forced entries

* ``x - y = 0`` iff ``x <= y`` and ``x - 0 = x``,
* ``x - y <= x`` and ``x - y = x`` whenever ``x & y = 0``,

with antitonicity in ``y`` and ``x - (x - y) <= y`` checked incrementally.
The algebras on one poset are the product of its row sets; isomorphic copies
are rejected with the poset's automorphism group.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .errors import BudgetExhausted, InternalConsistencyError
from .laws import batch_holds, law_named
from .order import _bound_table
from .table import (DerivedOrder, OpTable, canonical_key, format_table,
                    table_hash, zero_fixing_perms)

DEFAULT_BUDGET = 10 ** 8
SIZE_CAP = 7
CHUNK = 4096


def budget_from_env(default=DEFAULT_BUDGET):
    raw = os.environ.get("WBCK_BUDGET")
    return int(raw) if raw else default


@dataclass(frozen=True)
class EnumSpec:
    size: int
    require: tuple[str, ...] = ()
    forbid: tuple[str, ...] = ()
    mode: str = "emit"  # "count", "emit" or "first-match"
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("size must be at least 1")
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.mode not in ("count", "emit", "first-match"):
            raise ValueError(f"unknown mode {self.mode!r}")
        for name in self.require + self.forbid:
            law_named(name)


@dataclass
class EnumResult:
    size: int
    count: int = 0
    tables: list = field(default_factory=list)
    class_counts: dict = field(default_factory=dict)
    partial: bool = False
    nodes: int = 0


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self, k=1):
        self.used += k
        if self.used > self.limit:
            raise BudgetExhausted(f"node budget {self.limit} exhausted")


# ---------------------------------------------------------------- posets

def _poset_key(m):
    n = len(m)
    perm, inv = zero_fixing_perms(n)
    rel = m[inv[:, :, None], inv[:, None, :]].reshape(len(perm), n * n)
    return min(bytes(row) for row in rel.astype(np.uint8))


def _downsets(m):
    k = len(m)
    for bits in range(1 << k):
        d = [i for i in range(k) if bits >> i & 1]
        if all(m[j, i] <= (bits >> j & 1) for i in d for j in range(k)):
            yield d


def enumerate_posets(n, cap=SIZE_CAP):
    """One poset per isomorphism class on n points, least element at 0.

    Every representative is naturally labelled: x <= y implies x <= y as
    indices.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > cap:
        raise ValueError(f"n={n} exceeds the enumeration cap {cap}")
    # posets on the n - 1 non-zero points, grown by adding a maximal point
    layer = [np.zeros((0, 0), dtype=bool)]
    for k in range(n - 1):
        seen = set()
        nxt = []
        for m in layer:
            for d in _downsets(m):
                new = np.zeros((k + 1, k + 1), dtype=bool)
                new[:k, :k] = m
                new[d, k] = True
                new[k, k] = True
                with_bottom = np.ones((k + 2, k + 2), dtype=bool)
                with_bottom[1:, 1:] = new
                with_bottom[1:, 0] = False
                key = _poset_key(with_bottom)
                if key not in seen:
                    seen.add(key)
                    nxt.append(new)
        layer = nxt
    out = []
    for m in layer:
        full = np.ones((n, n), dtype=bool)
        full[1:, 1:] = m
        full[1:, 0] = False
        out.append(DerivedOrder.from_matrix(full))
    return out


def automorphisms(order):
    m = order.matrix
    perm, inv = zero_fixing_perms(order.size)
    rel = m[inv[:, :, None], inv[:, None, :]]
    ok = (rel == m[None]).all(axis=(1, 2))
    return perm[ok], inv[ok]


# ---------------------------------------------------------------- rows

def forced_entry(m, mt, x, y):
    """The value forced by the order alone, or None when there is a choice."""
    if m[x, y]:
        return 0
    if mt[x, y] == 0:
        return x
    return None


def row_candidates(order, x):
    m = order.matrix
    mt = _bound_table(m)
    n = order.size
    out = []
    for y in range(n):
        f = forced_entry(m, mt, x, y)
        out.append([f] if f is not None else
                   [z for z in range(1, n) if m[z, x]])
    return out


def valid_rows(order, x, budget=None):
    """All rows ``x - .`` compatible with the wBCK axioms on ``order``."""
    m = order.matrix
    n = order.size
    cands = row_candidates(order, x)
    row = [None] * n
    found = []

    def consistent(y):
        v = row[y]
        for y2 in range(y):
            w = row[y2]
            if m[y2, y] and not m[v, w]:
                return False
            if m[y, y2] and not m[w, v]:
                return False
        # x - (x - y) <= y wherever both entries are known
        for y2 in range(y + 1):
            r = row[y2]
            if r <= y and not m[row[r], y2]:
                return False
        return True

    def fill(y):
        if budget:
            budget.spend()
        if y == n:
            found.append(tuple(row))
            return
        for v in cands[y]:
            row[y] = v
            if consistent(y):
                fill(y + 1)
        row[y] = None

    fill(0)
    return found


def algebras_on(order, budget=None):
    """Stack of all wBCK tables on ``order`` (shape (count, n, n))."""
    n = order.size
    rows = [np.array(valid_rows(order, x, budget), dtype=np.intp).reshape(-1, n)
            for x in range(n)]
    total = int(np.prod([len(r) for r in rows]))
    if budget:
        budget.spend(total)
    if total == 0:
        return np.zeros((0, n, n), dtype=np.intp)
    idx = np.indices([len(r) for r in rows]).reshape(n, -1).T
    return np.stack([rows[x][idx[:, x]] for x in range(n)], axis=1)


def _lex_le(a, b):
    """Row-wise a <= b lexicographically for 2-d integer arrays."""
    diff = a != b
    first = np.argmax(diff, axis=1)
    rows = np.arange(len(a))
    return ~diff.any(axis=1) | (a[rows, first] < b[rows, first])


def orbit_minimal(tables, order):
    """Mask of tables that are lexicographically least in their Aut-orbit."""
    perm, inv = automorphisms(order)
    count, n = tables.shape[0], tables.shape[1]
    flat = tables.reshape(count, n * n)
    keep = np.ones(count, dtype=bool)
    for p, q in zip(perm[1:], inv[1:]):
        img = p[tables[:, q[:, None], q[None, :]]].reshape(count, n * n)
        keep &= _lex_le(flat, img)
    return keep


def _filter(tables, order, require, forbid):
    keep = np.ones(len(tables), dtype=bool)
    for start in range(0, len(tables), CHUNK):
        part = tables[start:start + CHUNK]
        k = keep[start:start + CHUNK]
        for name in require:
            k &= batch_holds(part, law_named(name), order)
        for name in forbid:
            k &= ~batch_holds(part, law_named(name), order)
    return keep


_SANITY = ("x0x", "mdi2", "manti")


def _check_leaves(tables, order):
    if not len(tables):
        return
    if not ((tables == 0) == order.matrix[None]).all():
        raise InternalConsistencyError("generated table disagrees with its poset")
    for start in range(0, len(tables), CHUNK):
        part = tables[start:start + CHUNK]
        for name in _SANITY:
            if not batch_holds(part, law_named(name), order).all():
                raise InternalConsistencyError(f"generated table violates {name}")


def _work(args):
    order, require, forbid, limit = args
    budget = _Budget(limit)
    try:
        tables = algebras_on(order, budget)
    except BudgetExhausted:
        return None, budget.used
    tables = tables[orbit_minimal(tables, order)]
    _check_leaves(tables, order)
    tables = tables[_filter(tables, order, require, forbid)]
    return tables, budget.used


def class_masks(tables, order):
    """Per-class membership masks for a stack of tables on one poset."""
    from .classify import Facts

    def law(name):
        out = np.zeros(len(tables), dtype=bool)
        for start in range(0, len(tables), CHUNK):
            out[start:start + CHUNK] = batch_holds(
                tables[start:start + CHUNK], law_named(name), order)
        return out

    n = order.size
    commutative = law("mcommut")
    ortho = law("pierce")
    disc = np.array([[0 if order.le(x, y) else x for y in range(n)]
                     for x in range(n)])
    semi = np.zeros(len(tables), dtype=bool)
    for i in np.nonzero(_sections_involutive(tables, order))[0]:
        semi[i] = Facts(OpTable.from_array(tables[i])).semi_implicative
    return {
        "wbck": np.ones(len(tables), dtype=bool),
        "qbck": law("miso"),
        "bck": law("mAnti"),
        "commutative": commutative,
        "positive_implicative": law("mcontr"),
        "contraction_rule": law("mcontr_rule"),
        "orthoimplicative": ortho,
        "semi_implicative": semi,
        "implicative": law("compm"),
        "uniform": commutative & law("abb"),
        "discrete": (tables == disc[None]).all(axis=(1, 2)),
    }


def _sections_involutive(tables, order):
    # orthomodular sections need involutive complementations p - (p - x) = x
    p, x = np.nonzero(order.matrix.T)
    b = np.arange(len(tables))[:, None]
    px = tables[b, p[None], x[None]]
    return (tables[b, p[None], px] == x[None]).all(axis=1)


def enumerate_wbck(spec, posets: Optional[Iterable[DerivedOrder]] = None,
                   workers: int = 1, out_dir=None):
    """Run an enumeration; see ``EnumSpec`` for the modes.

    ``posets`` overrides the generated poset stream (any labelling with 0
    least is accepted).  Emitted tables are canonical forms, sorted.
    """
    n = spec.size
    stream = list(posets) if posets is not None else enumerate_posets(n)
    result = EnumResult(n)
    jobs = [(p, spec.require, spec.forbid, spec.budget) for p in stream]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            outputs = list(ex.map(_work, jobs))
    else:
        outputs = map(_work, jobs)
    keys = set()
    counts = {}
    for order, (tables, used) in zip(stream, outputs):
        result.nodes += used
        if result.nodes > spec.budget or tables is None:
            result.partial = True
            break
        result.count += len(tables)
        if spec.mode == "count":
            for cls, mask in class_masks(tables, order).items():
                counts[cls] = counts.get(cls, 0) + int(mask.sum())
            continue
        names = None
        for t in tables:
            a = OpTable.from_array(t, names or ())
            names = a.names
            key = canonical_key(a)
            if key in keys:
                raise InternalConsistencyError("isomorphic tables emitted twice")
            keys.add(key)
    if spec.mode != "count":
        result.tables = [_from_key(k, n) for k in sorted(keys)]
        if spec.mode == "first-match":
            result.tables = result.tables[:1]
    result.class_counts = counts
    if out_dir is not None:
        write_emitted(result, out_dir, spec)
    return result


def _from_key(key, n):
    return OpTable(tuple(tuple(key[i * n:(i + 1) * n]) for i in range(n)))


def write_emitted(result, out_dir, spec):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    from .classify import classify
    counts = {}
    for a in result.tables:
        (out / f"{table_hash(a)}.tbl").write_text(format_table(a))
        for cls, v in classify(a).classes.items():
            if v is True:
                counts[cls] = counts.get(cls, 0) + 1
    manifest = {
        "size": result.size,
        "require": list(spec.require),
        "forbid": list(spec.forbid),
        "total": len(result.tables),
        "partial": result.partial,
        "class_counts": counts,
        "note": "counts derived by this workbench, not taken from the literature",
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def search_counterexample(satisfies, violates, max_n, budget=None):
    """Smallest algebra (by size, then canonical order) satisfying every law
    in ``satisfies`` and violating every law in ``violates``; None if absent.
    """
    budget = budget or budget_from_env()
    for n in range(1, max_n + 1):
        res = enumerate_wbck(EnumSpec(n, tuple(satisfies), tuple(violates),
                                      "first-match", budget))
        if res.tables:
            return res.tables[0]
        if res.partial:
            raise BudgetExhausted(f"budget exhausted at size {n}")
    return None
