"""Explicit finite posets and brute-force order theory.

This module is the oracle side of the theorem checks, so everything here is
computed from the literal definitions (directed sets, suprema, bases) by
enumeration. Sets of elements are ``int`` bitmasks over element indices.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

from .errors import InputError, SizeLimitError

DIRECTED_LIMIT = 12
CLASSIFY_LIMIT = 16
MONOTONE_LIMIT = 10**6


def _bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class FinitePoset:
    elements: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "leq", tuple(tuple(bool(v) for v in r) for r in self.leq))
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise InputError("poset element labels must be distinct")
        if len(self.leq) != n or any(len(r) != n for r in self.leq):
            raise InputError("order matrix must be square with one row per element")
        le = self.leq
        for i in range(n):
            if not le[i][i]:
                raise InputError(f"order is not reflexive at {self.elements[i]!r}")
            for j in range(n):
                if i != j and le[i][j] and le[j][i]:
                    raise InputError(
                        f"order is not antisymmetric: {self.elements[i]!r}, {self.elements[j]!r}"
                    )
                if le[i][j]:
                    for k in range(n):
                        if le[j][k] and not le[i][k]:
                            raise InputError("order is not transitive")

    @classmethod
    def from_relation(cls, elements: Sequence[str], pairs: Iterable[tuple[int, int]],
                      transitive_closure: bool = True) -> "FinitePoset":
        """Build from ``(i, j)`` pairs meaning ``i <= j``; reflexivity is added."""
        n = len(elements)
        le = [[i == j for j in range(n)] for i in range(n)]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"order pair {(i, j)} out of range")
            le[i][j] = True
        if transitive_closure:
            for k in range(n):
                for i in range(n):
                    if le[i][k]:
                        for j in range(n):
                            if le[k][j]:
                                le[i][j] = True
        return cls(tuple(elements), tuple(map(tuple, le)))

    @classmethod
    def chain(cls, n: int, prefix: str = "c") -> "FinitePoset":
        return cls.from_relation([f"{prefix}{i}" for i in range(n)],
                                 [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def antichain(cls, n: int, prefix: str = "a") -> "FinitePoset":
        return cls.from_relation([f"{prefix}{i}" for i in range(n)], [])

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise InputError(f"unknown poset element {label!r}") from None

    @cached_property
    def up(self) -> tuple[int, ...]:
        """Bitmask of ``{y | x <= y}`` for each ``x``."""
        n = len(self.elements)
        return tuple(sum(1 << j for j in range(n) if self.leq[i][j]) for i in range(n))

    @cached_property
    def down(self) -> tuple[int, ...]:
        n = len(self.elements)
        return tuple(sum(1 << i for i in range(n) if self.leq[i][j]) for j in range(n))

    @cached_property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def upper_bounds(self, mask: int) -> int:
        out = self.full
        for i in _bits(mask):
            out &= self.up[i]
        return out

    def lower_bounds(self, mask: int) -> int:
        out = self.full
        for i in _bits(mask):
            out &= self.down[i]
        return out

    def sup(self, mask: int) -> int | None:
        """Index of the least upper bound of ``mask``, or ``None``."""
        ub = self.upper_bounds(mask)
        for u in _bits(ub):
            if ub & ~self.up[u] == 0:
                return u
        return None

    def inf(self, mask: int) -> int | None:
        lb = self.lower_bounds(mask)
        for u in _bits(lb):
            if lb & ~self.down[u] == 0:
                return u
        return None

    def least(self) -> int | None:
        return self.inf(self.full) if self.elements else None

    def greatest(self) -> int | None:
        return self.sup(self.full) if self.elements else None

    def is_directed(self, mask: int) -> bool:
        """Nonempty, and every pair has an upper bound inside the set."""
        if mask == 0:
            return False
        members = list(_bits(mask))
        for a in members:
            for b in members:
                if b > a and self.up[a] & self.up[b] & mask == 0:
                    return False
        return True

    def relabel(self, labels: Sequence[str]) -> "FinitePoset":
        return FinitePoset(tuple(labels), self.leq)

    def permuted(self, perm: Sequence[int]) -> "FinitePoset":
        """Poset whose element ``perm[i]`` is this poset's element ``i``."""
        n = len(self.elements)
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        return FinitePoset(
            tuple(self.elements[inv[k]] for k in range(n)),
            tuple(tuple(self.leq[inv[a]][inv[b]] for b in range(n)) for a in range(n)),
        )

    def covers(self) -> list[tuple[int, int]]:
        n = len(self.elements)
        out = []
        for i in range(n):
            for j in range(n):
                if i != j and self.leq[i][j]:
                    between = self.up[i] & self.down[j] & ~(1 << i) & ~(1 << j)
                    if between == 0:
                        out.append((i, j))
        return out


def directed_subsets(p: FinitePoset, limit: int = DIRECTED_LIMIT) -> list[int]:
    if len(p) > limit:
        raise SizeLimitError(f"directed-set enumeration limited to {limit} elements")
    return [m for m in range(1, 1 << len(p)) if p.is_directed(m)]


def way_below_matrix(p: FinitePoset, shortcut: bool = False,
                     limit: int = DIRECTED_LIMIT) -> tuple[tuple[bool, ...], ...]:
    """The way-below relation as a boolean matrix.

    The literal route enumerates every directed subset. ``shortcut=True``
    returns the order itself, which is what the literal route produces on
    any finite poset.
    """
    n = len(p)
    if shortcut:
        return p.leq
    dirs = directed_subsets(p, limit)
    below = [[True] * n for _ in range(n)]
    for d in dirs:
        s = p.sup(d)
        if s is None:
            continue
        dominated = 0
        for e in _bits(d):
            dominated |= p.down[e]
        for y in _bits(p.down[s]):
            for x in range(n):
                if below[x][y] and not dominated >> x & 1:
                    below[x][y] = False
    return tuple(map(tuple, below))


def way_below_bruteforce(p: FinitePoset, x: int, y: int, shortcut: bool = False) -> bool:
    n = len(p)
    if not (0 <= x < n and 0 <= y < n):
        raise InputError("element index out of range")
    if shortcut:
        return p.leq[x][y]
    if len(p) > DIRECTED_LIMIT:
        raise SizeLimitError(
            f"literal way-below limited to {DIRECTED_LIMIT} elements; pass shortcut=True"
        )
    for d in directed_subsets(p):
        s = p.sup(d)
        if s is not None and p.leq[y][s]:
            if not any(p.leq[x][e] for e in _bits(d)):
                return False
    return True


def _wb(p: FinitePoset) -> tuple[tuple[bool, ...], ...]:
    return way_below_matrix(p, shortcut=len(p) > DIRECTED_LIMIT)


def way_below_down(p: FinitePoset, x: int, wb=None) -> int:
    """Bitmask of elements way below ``x``."""
    wb = wb or _wb(p)
    return sum(1 << u for u in range(len(p)) if wb[u][x])


@dataclass(frozen=True)
class DomainClass:
    is_dcpo: bool
    is_continuous: bool
    is_algebraic: bool
    is_pointed: bool
    has_top: bool
    is_bounded_complete: bool
    is_semilattice: bool
    waybelow_multiplicative: bool
    is_complete_lattice: bool
    empty_is_bounded: bool = field(default=True, repr=False)

    def as_dict(self) -> dict:
        return {
            "is_dcpo": self.is_dcpo,
            "is_continuous": self.is_continuous,
            "is_algebraic": self.is_algebraic,
            "is_pointed": self.is_pointed,
            "has_top": self.has_top,
            "is_bounded_complete": self.is_bounded_complete,
            "is_semilattice": self.is_semilattice,
            "waybelow_multiplicative": self.waybelow_multiplicative,
            "is_complete_lattice": self.is_complete_lattice,
        }


def _is_basis(p: FinitePoset, basis: int, wb) -> bool:
    for x in range(len(p)):
        approx = basis & way_below_down(p, x, wb)
        if not p.is_directed(approx) or p.sup(approx) != x:
            return False
    return True


def is_complete_lattice(p: FinitePoset) -> bool:
    """Every subset, the empty one included, has a supremum."""
    if len(p) > CLASSIFY_LIMIT:
        raise SizeLimitError(f"lattice check limited to {CLASSIFY_LIMIT} elements")
    return all(p.sup(m) is not None for m in range(1 << len(p)))


def is_bounded_complete(p: FinitePoset, empty_is_bounded: bool = True) -> bool:
    """Every bounded-above subset has a supremum (continuity not included).

    With ``empty_is_bounded`` the empty set counts as bounded whenever the
    poset is nonempty, so a bounded complete poset must have a bottom.
    """
    start = 0 if empty_is_bounded else 1
    for m in range(start, 1 << len(p)):
        if m == 0 and not p.elements:
            continue
        if p.upper_bounds(m) and p.sup(m) is None:
            return False
    return True


def meet(p: FinitePoset, x: int, y: int) -> int | None:
    return p.inf(1 << x | 1 << y)


def domain_classify(p: FinitePoset, empty_is_bounded: bool = True) -> DomainClass:
    n = len(p)
    if n > CLASSIFY_LIMIT:
        raise SizeLimitError(f"classification limited to {CLASSIFY_LIMIT} elements")
    wb = _wb(p)
    if n <= DIRECTED_LIMIT:
        dcpo = all(p.sup(d) is not None for d in directed_subsets(p))
    else:
        dcpo = all(p.sup(d) is not None for d in range(1, 1 << n) if p.is_directed(d))
    continuous = dcpo and _is_basis(p, p.full, wb)
    compact = sum(1 << x for x in range(n) if wb[x][x])
    algebraic = dcpo and _is_basis(p, compact, wb)
    semilattice = all(meet(p, x, y) is not None for x in range(n) for y in range(x + 1, n))
    multiplicative = True
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if wb[x][y] and wb[x][z]:
                    m = meet(p, y, z)
                    if m is None or not wb[x][m]:
                        multiplicative = False
    return DomainClass(
        is_dcpo=dcpo,
        is_continuous=continuous,
        is_algebraic=algebraic,
        is_pointed=p.least() is not None,
        has_top=p.greatest() is not None,
        is_bounded_complete=continuous and is_bounded_complete(p, empty_is_bounded),
        is_semilattice=semilattice,
        waybelow_multiplicative=multiplicative,
        is_complete_lattice=is_complete_lattice(p),
        empty_is_bounded=empty_is_bounded,
    )


def interpolation_check(p: FinitePoset) -> bool:
    """For every finite ``M`` way below ``y`` some ``z`` sits between them."""
    n = len(p)
    if n > DIRECTED_LIMIT:
        raise SizeLimitError(f"interpolation check limited to {DIRECTED_LIMIT} elements")
    wb = way_below_matrix(p)
    below = [way_below_down(p, y, wb) for y in range(n)]
    for m in range(1 << n):
        for y in range(n):
            if m & ~below[y]:
                continue
            if not any(m & ~below[z] == 0 and wb[z][y] for z in range(n)):
                return False
    return True


@dataclass(frozen=True)
class MonotoneMap:
    source: FinitePoset
    target: FinitePoset
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if len(self.mapping) != len(self.source):
            raise InputError("mapping must assign one target element per source element")
        if any(not (0 <= v < len(self.target)) for v in self.mapping):
            raise InputError("mapping value out of range")
        if not is_monotone(self.source, self.target, self.mapping):
            raise InputError("map is not order-preserving")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def compose(self, other: "MonotoneMap") -> "MonotoneMap":
        """``self`` after ``other``."""
        return MonotoneMap(other.source, self.target,
                           tuple(self.mapping[v] for v in other.mapping))

    @classmethod
    def identity(cls, p: FinitePoset) -> "MonotoneMap":
        return cls(p, p, tuple(range(len(p))))


def is_monotone(p: FinitePoset, q: FinitePoset, mapping: Sequence[int]) -> bool:
    n = len(p)
    return all(q.leq[mapping[x]][mapping[y]]
               for x in range(n) for y in range(n) if p.leq[x][y])


def preserves_directed_sups(p: FinitePoset, q: FinitePoset, mapping: Sequence[int],
                            dirs: Sequence[int] | None = None) -> bool:
    if dirs is None:
        dirs = directed_subsets(p)
    for d in dirs:
        s = p.sup(d)
        if s is None:
            continue
        image = 0
        for e in _bits(d):
            image |= 1 << mapping[e]
        if q.sup(image) != mapping[s]:
            return False
    return True


def _linear_extension(p: FinitePoset) -> list[int]:
    n = len(p)
    return sorted(range(n), key=lambda i: _popcount(p.down[i]))


def enumerate_monotone_maps(p: FinitePoset, q: FinitePoset, limit: int = MONOTONE_LIMIT,
                            verify_scott: bool = True) -> list[MonotoneMap]:
    """All order-preserving maps ``p -> q`` in lexicographic order of the mapping.

    With ``verify_scott`` each map is also checked to preserve suprema of all
    directed subsets; on finite posets that never rejects a monotone map, and
    an ``AssertionError`` is raised if it does.
    """
    n, m = len(p), len(q)
    if m ** n > limit:
        raise SizeLimitError(f"{m}^{n} candidate maps exceeds the limit {limit}")
    order = _linear_extension(p)
    preds = {x: [y for y in range(n) if y != x and p.leq[y][x]] for x in range(n)}
    assign = [-1] * n
    found: list[tuple[int, ...]] = []

    def backtrack(k: int):
        if k == n:
            found.append(tuple(assign))
            return
        x = order[k]
        for v in range(m):
            if all(q.leq[assign[y]][v] for y in preds[x]):
                assign[x] = v
                backtrack(k + 1)
        assign[x] = -1

    backtrack(0)
    found.sort()
    dirs = directed_subsets(p) if verify_scott and n <= DIRECTED_LIMIT else None
    out = []
    for mp in found:
        if dirs is not None:
            assert preserves_directed_sups(p, q, mp, dirs), "monotone map fails Scott-continuity"
        out.append(MonotoneMap(p, q, mp))
    return out


def find_isomorphism(p: FinitePoset, q: FinitePoset) -> MonotoneMap | None:
    """Backtracking search for an order isomorphism ``p -> q``."""
    n = len(p)
    if len(q) != n:
        return None

    def signature(poset, i):
        return (_popcount(poset.up[i]), _popcount(poset.down[i]))

    sp = [signature(p, i) for i in range(n)]
    sq = [signature(q, i) for i in range(n)]
    if sorted(sp) != sorted(sq):
        return None
    order = sorted(range(n), key=lambda i: sp[i])
    assign = [-1] * n
    used = [False] * n

    def consistent(x: int, v: int) -> bool:
        for y in range(n):
            w = assign[y]
            if w < 0:
                continue
            if p.leq[x][y] != q.leq[v][w] or p.leq[y][x] != q.leq[w][v]:
                return False
        return True

    def backtrack(k: int) -> bool:
        if k == n:
            return True
        x = order[k]
        for v in range(n):
            if not used[v] and sq[v] == sp[x] and consistent(x, v):
                assign[x], used[v] = v, True
                if backtrack(k + 1):
                    return True
                assign[x], used[v] = -1, False
        return False

    if not backtrack(0):
        return None
    return MonotoneMap(p, q, tuple(assign))


# --- catalogue and random posets -------------------------------------------

def _canonical_form(n: int, le: Sequence[Sequence[bool]]) -> tuple:
    best = None
    for perm in permutations(range(n)):
        code = tuple(le[perm[i]][perm[j]] for i in range(n) for j in range(n))
        if best is None or code < best:
            best = code
    return best


@lru_cache(maxsize=None)
def poset_catalog(n: int) -> tuple[FinitePoset, ...]:
    """All posets on ``n`` elements up to isomorphism.

    Every poset has a linear extension, so it is enough to enumerate the
    transitive relations that only go from lower to higher index and then
    deduplicate by canonical form.
    """
    if n > 6:
        raise SizeLimitError("catalogue generation limited to 6 elements")
    upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen: dict[tuple, FinitePoset] = {}
    for bits in product((False, True), repeat=len(upper)):
        le = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), b in zip(upper, bits):
            le[i][j] = b
        if any(le[i][k] and le[k][j] and not le[i][j]
               for i in range(n) for k in range(n) for j in range(n)):
            continue
        key = _canonical_form(n, le)
        if key not in seen:
            seen[key] = FinitePoset(tuple(f"e{i}" for i in range(n)), tuple(map(tuple, le)))
    return tuple(seen[k] for k in sorted(seen))


def random_poset(n: int, rng: random.Random, density: float = 0.4) -> FinitePoset:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    p = FinitePoset.from_relation([f"e{i}" for i in range(n)], pairs)
    perm = list(range(n))
    rng.shuffle(perm)
    return p.permuted(perm).relabel([f"e{i}" for i in range(n)])


def diamond() -> FinitePoset:
    return FinitePoset.from_relation(["bot", "a", "b", "top"], [(0, 1), (0, 2), (1, 3), (2, 3)])


# --- poset JSON ------------------------------------------------------------

def poset_to_json(p: FinitePoset) -> dict:
    n = len(p)
    return {"elements": list(p.elements),
            "leq": [[i, j] for i in range(n) for j in range(n) if p.leq[i][j]]}


def poset_from_json(doc: dict) -> FinitePoset:
    try:
        elements = [str(e) for e in doc["elements"]]
    except (KeyError, TypeError):
        raise InputError("poset JSON needs an 'elements' list") from None
    if "leq" in doc:
        pairs = [tuple(p) for p in doc["leq"]]
        return FinitePoset.from_relation(elements, pairs, transitive_closure=False)
    if "covers" in doc:
        return FinitePoset.from_relation(elements, [tuple(p) for p in doc["covers"]])
    raise InputError("poset JSON needs 'leq' or 'covers'")
