"""The representing context of a finite continuous domain and its isomorphism."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .concepts import ConceptPoset, ContinuousConcept, enumerate_concepts, is_continuous_concept
from .context import FormalContext, enumerate_formal_concepts, from_mask, subsets, to_mask
from .errors import InputError, SizeLimitError
from .kernel import AcfContext, KernelOperator, Selection, build_acf
from .order import (
    CLASSIFY_LIMIT,
    DIRECTED_LIMIT,
    FinitePoset,
    find_isomorphism,
    way_below_down,
    way_below_matrix,
)


@dataclass(frozen=True)
class RepContext:
    domain: FinitePoset
    basis: frozenset
    acf: AcfContext
    waybelow: tuple[tuple[bool, ...], ...]

    def wb_down(self, x: int) -> frozenset:
        """Basis elements way below ``x``."""
        return from_mask(way_below_down(self.domain, x, self.waybelow)) & self.basis

    @cached_property
    def concepts(self) -> ConceptPoset:
        return enumerate_concepts(self.acf)


def _max_of(domain: FinitePoset, f: frozenset) -> int | None:
    for m in f:
        if all(domain.leq[x][m] for x in f):
            return m
    return None


def rep(domain: FinitePoset, basis: Iterable[int] | None = None) -> RepContext:
    """Objects and attributes are the elements; ``x`` has ``b`` iff ``b <= x``.

    The kernel sends a closed set to the basis elements way below it and the
    selection is every nonempty basis subset containing its own maximum.
    """
    n = len(domain)
    if n == 0:
        raise InputError("cannot represent an empty poset")
    if n > CLASSIFY_LIMIT:
        raise SizeLimitError(f"representation limited to {CLASSIFY_LIMIT} elements")
    basis = frozenset(range(n)) if basis is None else frozenset(basis)
    if basis != frozenset(range(n)):
        raise InputError("a finite domain has only one basis: all of its elements")
    wb = way_below_matrix(domain, shortcut=n > DIRECTED_LIMIT)
    ctx = FormalContext(
        domain.elements, domain.elements,
        tuple(tuple(domain.leq[b][x] for b in range(n)) for x in range(n)),
    )
    table = {}
    for c in enumerate_formal_concepts(ctx, method="closure"):
        table[c] = frozenset(u for u in range(n) if any(wb[u][x] for x in c))
    members = [f for f in subsets(range(n)) if f and _max_of(domain, f) is not None]
    acf = build_acf(ctx, KernelOperator.from_table(table), Selection(tuple(members)))
    return RepContext(domain, basis, acf, wb)


def check_brackets_are_way_below(rc: RepContext) -> bool:
    """Every bracket equals the basis elements way below the member's maximum."""
    return all(b == rc.wb_down(_max_of(rc.domain, f))
               for f, b in zip(rc.acf.selection, rc.acf.brackets))


def check_r1_r2(rc: RepContext, q: Iterable[int]) -> bool:
    q = frozenset(q)
    if not q <= rc.basis:
        raise InputError("set must lie inside the basis")
    wb = rc.waybelow
    for v in q:
        for u in rc.basis:
            if wb[u][v] and u not in q:
                return False
    for m in subsets(q):
        if not any(all(wb[x][u] for x in m) for u in q):
            return False
    return True


def iso_forward(rc: RepContext, x: int | str) -> ContinuousConcept:
    if isinstance(x, str):
        x = rc.domain.index(x)
    if not 0 <= x < len(rc.domain):
        raise InputError(f"unknown element {x!r}")
    q = rc.wb_down(x)
    assert is_continuous_concept(rc.acf, q)
    return rc.concepts.get(q)


def iso_backward(rc: RepContext, q) -> int:
    c = rc.concepts.get(q)
    s = rc.domain.sup(to_mask(c.attrs))
    assert s is not None, "concept without a supremum"
    return s


@dataclass(frozen=True)
class RoundtripReport:
    passed: bool
    counterexample: str | None = None


def verify_roundtrip(rc: RepContext) -> RoundtripReport:
    d = rc.domain
    cp = rc.concepts
    n = len(d)
    f = [cp.index(iso_forward(rc, x)) for x in range(n)]
    g = [iso_backward(rc, c) for c in cp.concepts]
    for x in range(n):
        if g[f[x]] != x:
            return RoundtripReport(False, f"g(f({d.elements[x]})) != {d.elements[x]}")
    for i in range(len(cp)):
        if f[g[i]] != i:
            return RoundtripReport(False, f"f(g({cp.label(i)})) != {cp.label(i)}")
    for x in range(n):
        for y in range(n):
            if d.leq[x][y] and not cp.leq[f[x]][f[y]]:
                return RoundtripReport(False, f"f not monotone at {d.elements[x]}, {d.elements[y]}")
    for i in range(len(cp)):
        for j in range(len(cp)):
            if cp.leq[i][j] and not d.leq[g[i]][g[j]]:
                return RoundtripReport(False, f"g not monotone at {cp.label(i)}, {cp.label(j)}")
    if find_isomorphism(d, cp.poset) is None:
        return RoundtripReport(False, "no order isomorphism found between domain and concepts")
    return RoundtripReport(True)

