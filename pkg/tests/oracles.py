"""Brute-force reference implementations built straight from the definitions.

Nothing here touches the package's bitmask machinery; sets are plain Python
sets and quantifiers are literal loops over itertools enumerations.
"""
from itertools import chain, combinations, permutations, product


def powerset(items):
    items = sorted(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))]


# --- contexts ---------------------------------------------------------------

def extent(rows, attrs):
    return frozenset(o for o, row in enumerate(rows) if all(row[a] for a in attrs))


def intent(rows, n_attrs, objs):
    return frozenset(a for a in range(n_attrs) if all(rows[o][a] for o in objs))


def closure(rows, n_attrs, attrs):
    return intent(rows, n_attrs, extent(rows, attrs))


def closed_sets(rows, n_attrs):
    return {closure(rows, n_attrs, s) for s in powerset(range(n_attrs))}


# --- kernels and selections -------------------------------------------------

def bracket(rows, n_attrs, tau, b):
    return tau(closure(rows, n_attrs, b))


def ca1_literal(rows, n_attrs, tau, sel):
    """Every M inside a bracket sits in the bracket of a member inside that bracket."""
    br = {f: bracket(rows, n_attrs, tau, f) for f in sel}
    for f in sel:
        for m in powerset(br[f]):
            if not any(m <= br[g] and g <= br[f] for g in sel):
                return False
    return True


def ca2_literal(rows, n_attrs, tau, sel, q):
    br = [bracket(rows, n_attrs, tau, f) for f in sel]
    return all(any(m <= b <= q for b in br) for m in powerset(q))


def fc_literal(rows, n_attrs, sel):
    for f in sel:
        c = closure(rows, n_attrs, f)
        for m in powerset(c):
            if not any(m <= g <= c for g in sel):
                return False
    return True


# --- posets -------------------------------------------------------------------

def leq_pairs(le):
    n = len(le)
    return {(i, j) for i in range(n) for j in range(n) if le[i][j]}


def sup(le, s):
    n = len(le)
    ubs = [u for u in range(n) if all(le[x][u] for x in s)]
    least = [u for u in ubs if all(le[u][v] for v in ubs)]
    return least[0] if least else None


def inf(le, s):
    n = len(le)
    lbs = [u for u in range(n) if all(le[u][x] for x in s)]
    great = [u for u in lbs if all(le[v][u] for v in lbs)]
    return great[0] if great else None


def directed(le, s):
    if not s:
        return False
    return all(any(le[x][z] and le[y][z] for z in s) for x in s for y in s)


def way_below(le):
    """Literal: x << y iff every directed set with a sup above y has a member above x."""
    n = len(le)
    dirs = [s for s in powerset(range(n)) if directed(le, s)]
    out = [[True] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            for d in dirs:
                s = sup(le, d)
                if s is not None and le[y][s] and not any(le[x][e] for e in d):
                    out[x][y] = False
                    break
    return out


def monotone_maps(le_p, le_q):
    n, m = len(le_p), len(le_q)
    return [f for f in product(range(m), repeat=n)
            if all(le_q[f[x]][f[y]] for x in range(n) for y in range(n) if le_p[x][y])]


def isomorphic(le_p, le_q):
    n = len(le_p)
    if n != len(le_q):
        return False
    return any(all(le_p[x][y] == le_q[p[x]][p[y]] for x in range(n) for y in range(n))
               for p in permutations(range(n)))


def all_posets_up_to_iso(n):
    """Every partial order on ``n`` points, deduplicated by trying all relabelings."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    reps = []
    for bits in product((False, True), repeat=len(pairs)):
        le = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), on in zip(pairs, bits):
            le[i][j] = on
        if any(le[i][j] and le[j][i] for i, j in pairs):
            continue
        if any(le[i][k] and le[k][j] and not le[i][j]
               for i in range(n) for j in range(n) for k in range(n)):
            continue
        if not any(isomorphic(le, r) for r in reps):
            reps.append(le)
    return reps
