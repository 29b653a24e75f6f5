"""Slow, independent reference implementations used to cross-check the package.

Nothing here touches the numpy evaluator or the enumerator: laws are
evaluated term by term on plain lists, and tables are found by a small
Mace4-style search that fills cells and prunes on every ground instance
that has become decidable.
"""

import itertools

from wbck.laws import Bin, Var, Zero, parse_law

WBCK_AXIOMS = [
    "x - x = 0",
    "0 - x = 0",
    "x - y = 0, y - x = 0 => x = y",
    "x - y = 0, y - z = 0 => x - z = 0",
    "x - y <= z => x - z <= y",
]


def term_value(t, env, tab):
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Zero):
        return 0
    assert isinstance(t, Bin) and t.op == "-", "oracle handles subtraction only"
    left = term_value(t.left, env, tab)
    if left is None:
        return None
    right = term_value(t.right, env, tab)
    if right is None:
        return None
    return tab[left][right]


def atom_value(at, env, tab):
    """True/False, or None while a cell it needs is still empty."""
    left = term_value(at.left, env, tab)
    right = term_value(at.right, env, tab)
    if left is None or right is None:
        return None
    if at.kind == "eq":
        return left == right
    v = tab[left][right]
    return None if v is None else v == 0


def instance_status(law, env, tab):
    """False if this ground instance is already violated, else True/None."""
    if law.iff:
        p = atom_value(law.premises[0], env, tab)
        c = atom_value(law.conclusion, env, tab)
        return None if p is None or c is None else p == c
    undecided = False
    for at in law.premises:
        v = atom_value(at, env, tab)
        if v is False:
            return True
        if v is None:
            undecided = True
    c = atom_value(law.conclusion, env, tab)
    if c is True:
        return True
    if c is None or undecided:
        return None
    return False


def naive_holds(tab, law):
    """Full evaluation of a law without existentials on a complete table."""
    assert law.exists is None
    n = len(tab)
    for vals in itertools.product(range(n), repeat=len(law.universals)):
        env = dict(zip(law.universals, vals))
        if instance_status(law, env, tab) is False:
            return False
    return True


def naive_violations(tab, law):
    n = len(tab)
    return [vals for vals in itertools.product(range(n), repeat=len(law.universals))
            if instance_status(law, dict(zip(law.universals, vals)), tab) is False]


def model_search(n, laws):
    """Every n x n table (0 = element 0) satisfying all ``laws``."""
    laws = [parse_law(x) if isinstance(x, str) else x for x in laws]
    instances = [(law, dict(zip(law.universals, vals)))
                 for law in laws
                 for vals in itertools.product(range(n), repeat=len(law.universals))]
    tab = [[None] * n for _ in range(n)]
    cells = [(x, y) for x in range(n) for y in range(n)]
    out = []

    def consistent():
        return all(instance_status(law, env, tab) is not False
                   for law, env in instances)

    def fill(k):
        if k == len(cells):
            out.append(tuple(tuple(r) for r in tab))
            return
        x, y = cells[k]
        for v in range(n):
            tab[x][y] = v
            if consistent():
                fill(k + 1)
        tab[x][y] = None

    fill(0)
    return out


def all_tables(n):
    for flat in itertools.product(range(n), repeat=n * n):
        yield tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


def relabel(tab, perm):
    """Image of ``tab`` under the bijection i -> perm[i]."""
    n = len(tab)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(tuple(perm[tab[inv[x]][inv[y]]] for y in range(n))
                 for x in range(n))


def zero_fixing(n):
    for rest in itertools.permutations(range(1, n)):
        yield (0,) + rest


def brute_canonical(tab):
    return min(relabel(tab, p) for p in zero_fixing(len(tab)))


def orbit(tab):
    return {relabel(tab, p) for p in zero_fixing(len(tab))}


def brute_posets(n):
    """Posets on {0..n-1} with least element 0, up to isomorphism."""
    pairs = [(x, y) for x in range(1, n) for y in range(1, n) if x != y]
    seen = set()
    for bits in itertools.product((False, True), repeat=len(pairs)):
        le = [[x == y or x == 0 for y in range(n)] for x in range(n)]
        for (x, y), b in zip(pairs, bits):
            le[x][y] = b
        if any(le[x][y] and le[y][x] for x, y in pairs):
            continue
        if any(le[x][y] and le[y][z] and not le[x][z]
               for x in range(n) for y in range(n) for z in range(n)):
            continue
        key = min(tuple(le[p.index(x)][p.index(y)] for x in range(n) for y in range(n))
                  for p in zero_fixing(n))
        seen.add(key)
    return seen
