"""Meets, joins and lattice-type recognition on finite posets with 0."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .table import PASS, Verdict, derive_order


def _bound_table(m):
    """Greatest element of {z : m[z,x] and m[z,y]} for each pair, -1 if none."""
    n = len(m)
    common = m.T[:, None, :] & m.T[None, :, :]          # [x, y, z]
    # g is greatest iff every common z lies below g
    outside = common[:, :, :, None] & ~m[None, None, :, :]  # [x, y, z, g]
    ok = common & ~outside.any(axis=2)
    table = np.full((n, n), -1, dtype=np.intp)
    xs, ys, gs = np.nonzero(ok)
    table[xs, ys] = gs
    return table


@lru_cache(maxsize=8192)
def _meet_cached(leq):
    t = _bound_table(np.array(leq, dtype=bool))
    t.setflags(write=False)
    return t


@lru_cache(maxsize=8192)
def _join_cached(leq):
    t = _bound_table(np.array(leq, dtype=bool).T)
    t.setflags(write=False)
    return t


def meet_table(order):
    return _meet_cached(order.leq)


def join_table(order):
    return _join_cached(order.leq)


def meet(order, x, y) -> Optional[int]:
    v = int(meet_table(order)[x, y])
    return None if v < 0 else v


def join(order, x, y) -> Optional[int]:
    v = int(join_table(order)[x, y])
    return None if v < 0 else v


@dataclass(frozen=True)
class OrderProfile:
    is_meet_semilattice: bool
    is_nearlattice: bool
    is_lattice: bool
    is_bounded: bool
    is_distributive: Optional[bool]
    is_0_distributive: bool
    meets: tuple
    joins: tuple

    def as_dict(self):
        return {
            "meet_semilattice": self.is_meet_semilattice,
            "nearlattice": self.is_nearlattice,
            "lattice": self.is_lattice,
            "bounded": self.is_bounded,
            "distributive": self.is_distributive,
            "0_distributive": self.is_0_distributive,
        }


def _partial(t):
    return tuple(tuple(None if v < 0 else int(v) for v in row) for row in t)


def _distributive_identity(mt, jt, members):
    for x, y, z in itertools.product(members, repeat=3):
        if mt[x, jt[y, z]] != jt[mt[x, y], mt[x, z]]:
            return False
    return True


def has_m3_or_n5(mt, jt, m, members):
    """Search for a 5-element sublattice shaped like M3 or N5."""
    for bot, top in itertools.product(members, repeat=2):
        if bot == top or not m[bot, top]:
            continue
        inner = [x for x in members if x not in (bot, top)
                 and m[bot, x] and m[x, top]]
        for a, b, c in itertools.permutations(inner, 3):
            pairs = ((a, b), (a, c), (b, c))
            # M3: three pairwise incomparable, all meets bot, all joins top
            if a < b < c and all(mt[p, q] == bot and jt[p, q] == top
                                 and not m[p, q] and not m[q, p]
                                 for p, q in pairs):
                return True
            # N5: a < b, c incomparable to both, a∧c = b∧c = bot, a∨c = b∨c = top
            if (m[a, b] and a != b and not m[a, c] and not m[c, a]
                    and not m[b, c] and not m[c, b]
                    and mt[a, c] == bot and mt[b, c] == bot
                    and jt[a, c] == top and jt[b, c] == top):
                return True
    return False


def profile(order):
    m = order.matrix
    n = order.size
    mt, jt = meet_table(order), join_table(order)
    msl = bool((mt >= 0).all())
    bounded_above = np.array([[bool((m[x] & m[y]).any()) for y in range(n)]
                              for x in range(n)])
    has_join = jt >= 0
    near = msl and bool((has_join | ~bounded_above).all())
    lattice = msl and bool(has_join.all())
    tops = [t for t in range(n) if m[:, t].all()]
    bounded = bool(tops)
    distributive = None
    if lattice:
        members = range(n)
        distributive = _distributive_identity(mt, jt, members)
        if distributive == has_m3_or_n5(mt, jt, m, members):
            from .errors import InternalConsistencyError
            raise InternalConsistencyError(
                "distributive identity disagrees with the M3/N5 test")
    return OrderProfile(msl, near, lattice, bounded, distributive,
                        zero_distributive(order), _partial(mt), _partial(jt))


def zero_distributive(order):
    """x∧y = 0 and x∧z = 0 imply x∧(y∨z) = 0 whenever y∨z exists.

    A premise meet that does not exist is not 0; a missing conclusion meet
    is a failure.
    """
    mt, jt = meet_table(order), join_table(order)
    n = order.size
    for x, y, z in itertools.product(range(n), repeat=3):
        if mt[x, y] != 0 or mt[x, z] != 0 or jt[y, z] < 0:
            continue
        if mt[x, jt[y, z]] != 0:
            return False
    return True


def meet_matches_subtraction(a):
    """x - (x - y) is the meet of x and y for every pair."""
    order = derive_order(a)
    mt = meet_table(order)
    s = a.array
    n = a.size
    x, y = np.ix_(range(n), range(n))
    bad = s[x, s[x, y]] != mt
    if not bad.any():
        return PASS
    i, j = (int(v) for v in np.argwhere(bad)[0])
    return Verdict(False, (("x", i), ("y", j)), "x - (x - y) = x & y")
