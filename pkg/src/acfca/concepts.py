"""Continuous formal concepts and the poset they form."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .context import EXHAUSTIVE_LIMIT, canonical_key, check_attr_set, subsets
from .errors import ForeignConceptError, InputError, NotDirectedError, SizeLimitError
from .kernel import AcfContext
from .order import FinitePoset


@dataclass(frozen=True)
class ContinuousConcept:
    attrs: frozenset
    witnesses: tuple[int, ...]

    def __post_init__(self):
        if not self.attrs:
            raise InputError("a continuous concept is never empty")


def _attrs(q) -> frozenset:
    return q.attrs if isinstance(q, ContinuousConcept) else frozenset(q)


def is_continuous_concept(acf: AcfContext, q: Iterable[int], exhaustive: bool = False) -> bool:
    """Every finite ``M`` inside ``q`` lies in some bracket that stays inside ``q``.

    On a finite context this holds exactly when ``q`` is one of the brackets.
    """
    q = check_attr_set(acf.context, _attrs(q))
    if not exhaustive:
        return q in set(acf.brackets)
    if len(q) > EXHAUSTIVE_LIMIT:
        raise SizeLimitError(f"exhaustive concept check limited to {EXHAUSTIVE_LIMIT} attributes")
    inside = [b for b in acf.brackets if b <= q]
    return all(any(m <= b for b in inside) for m in subsets(q))


@dataclass(frozen=True)
class ConceptPoset:
    acf: AcfContext
    concepts: tuple[ContinuousConcept, ...]
    leq: tuple[tuple[bool, ...], ...]
    waybelow: tuple[tuple[bool, ...], ...]

    def __len__(self) -> int:
        return len(self.concepts)

    @cached_property
    def _index(self) -> dict[frozenset, int]:
        return {c.attrs: i for i, c in enumerate(self.concepts)}

    def index(self, q) -> int:
        try:
            return self._index[_attrs(q)]
        except KeyError:
            raise ForeignConceptError(f"{sorted(_attrs(q))} is not a concept of this context") from None

    def get(self, q) -> ContinuousConcept:
        return self.concepts[self.index(q)]

    def __contains__(self, q) -> bool:
        return _attrs(q) in self._index

    def label(self, i: int) -> str:
        labels = self.acf.context.attr_labels(self.concepts[i].attrs)
        return "{" + ",".join(labels) + "}"

    @cached_property
    def poset(self) -> FinitePoset:
        return FinitePoset(tuple(self.label(i) for i in range(len(self))), self.leq)


def _way_below_sets(acf: AcfContext, q1: frozenset, q2: frozenset) -> bool:
    return any(q1 <= b and f <= q2 for f, b in zip(acf.selection, acf.brackets))


def enumerate_concepts(acf: AcfContext) -> ConceptPoset:
    witnesses: dict[frozenset, list[int]] = {}
    for i, b in enumerate(acf.brackets):
        witnesses.setdefault(b, []).append(i)
    order = sorted(witnesses, key=canonical_key)
    concepts = tuple(ContinuousConcept(q, tuple(witnesses[q])) for q in order)
    qs = [c.attrs for c in concepts]
    leq = tuple(tuple(a <= b for b in qs) for a in qs)
    wb = tuple(tuple(_way_below_sets(acf, a, b) for b in qs) for a in qs)
    return ConceptPoset(acf, concepts, leq, wb)


def _require_concept(acf: AcfContext, q) -> frozenset:
    q = _attrs(q)
    if q not in set(acf.brackets):
        raise ForeignConceptError(f"{sorted(q)} is not a concept of this context")
    return q


def way_below(acf: AcfContext, q1, q2) -> bool:
    """Some member ``F`` has ``q1`` inside its bracket and itself lies inside ``q2``."""
    return _way_below_sets(acf, _require_concept(acf, q1), _require_concept(acf, q2))


def is_compact(acf: AcfContext, q) -> bool:
    q = _require_concept(acf, q)
    return any(b == q and g <= b for g, b in zip(acf.selection, acf.brackets))


def _is_directed_family(family: Sequence[frozenset]) -> bool:
    if not family:
        return False
    for a in family:
        for b in family:
            if not any(a <= c and b <= c for c in family):
                return False
    return True


def decompose(acf: AcfContext, q) -> list[frozenset]:
    """Brackets of the members inside ``q``; directed, with union ``q``."""
    q = _require_concept(acf, q)
    family = sorted({b for f, b in zip(acf.selection, acf.brackets) if f <= q}, key=canonical_key)
    assert _is_directed_family(family), f"decomposition of {sorted(q)} is not directed"
    assert frozenset().union(*family) == q, f"decomposition of {sorted(q)} does not cover it"
    return family


def directed_sup(acf: AcfContext, qs: Sequence) -> ContinuousConcept:
    family = [_require_concept(acf, q) for q in qs]
    if not _is_directed_family(family):
        raise NotDirectedError("family has a pair without an upper bound in the family")
    union = frozenset().union(*family)
    assert is_continuous_concept(acf, union), "union of a directed family is not a concept"
    return ContinuousConcept(union, tuple(i for i, b in enumerate(acf.brackets) if b == union))


def to_dot(cp: ConceptPoset, name: str = "concepts") -> str:
    """Graphviz source: solid edges for covers, dashed for extra way-below pairs."""
    poset = cp.poset
    covers = set(poset.covers())
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i in range(len(cp)):
        lines.append(f'  n{i} [label="{cp.label(i)}"];')
    for i, j in sorted(covers):
        lines.append(f"  n{i} -> n{j};")
    for i in range(len(cp)):
        for j in range(len(cp)):
            if i != j and cp.waybelow[i][j] and (i, j) not in covers:
                lines.append(f"  n{i} -> n{j} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
