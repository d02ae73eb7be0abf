"""Morphisms between validated contexts and the Scott-continuous maps they encode.

A morphism relates selection members of the source to target attributes. It
is stored as one image set per source member; ``F H M`` for a finite ``M``
means ``M`` lies inside the image of ``F``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .concepts import ConceptPoset
from .context import EXHAUSTIVE_LIMIT, check_attr_set, subsets, to_mask
from .errors import ContextMismatchError, InputError, SizeLimitError, ValidationError
from .kernel import AcfContext
from .order import MonotoneMap, enumerate_monotone_maps, is_monotone, preserves_directed_sups
from .representation import RepContext, _max_of


@dataclass(frozen=True)
class FMorphism:
    source: AcfContext
    target: AcfContext
    rel: tuple[frozenset, ...]

    def __post_init__(self):
        rel = tuple(frozenset(r) for r in self.rel)
        object.__setattr__(self, "rel", rel)
        if len(rel) != len(self.source.selection):
            raise InputError("morphism needs one image set per source selection member")
        for r in rel:
            check_attr_set(self.target.context, r)

    def pairs(self) -> frozenset:
        return frozenset((i, x) for i, r in enumerate(self.rel) for x in r)

    @classmethod
    def from_pairs(cls, source: AcfContext, target: AcfContext,
                   pairs: Iterable[tuple[int, int]]) -> "FMorphism":
        rel: list[set] = [set() for _ in source.selection]
        for i, x in pairs:
            if not 0 <= i < len(rel):
                raise InputError(f"selection index {i} out of range")
            rel[i].add(x)
        return cls(source, target, tuple(frozenset(r) for r in rel))


@dataclass(frozen=True)
class MorphismReport:
    """Outcome of each condition; ``counterexamples`` maps a failing name to its witness."""

    ar1: bool
    ar2: bool
    ar3: bool
    ar4: bool
    ar5: bool
    counterexamples: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.ar1 and self.ar2 and self.ar5

    @property
    def equivalence_holds(self) -> bool:
        """Given AR1 and AR2, AR3 with AR4 should match AR5."""
        if not (self.ar1 and self.ar2):
            return True
        return (self.ar3 and self.ar4) == self.ar5

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "AR1": self.ar1, "AR2": self.ar2, "AR3": self.ar3, "AR4": self.ar4, "AR5": self.ar5,
            "AR3_AR4_equivalent_to_AR5": self.equivalence_holds,
            "counterexamples": {k: [sorted(v) if isinstance(v, frozenset) else v for v in ce]
                                for k, ce in self.counterexamples.items()},
        }


def _images(h: FMorphism, exhaustive: bool):
    """The sets ``M`` with ``F H M`` worth testing for member ``i``.

    Both existence conditions are monotone in ``M``, so the full image is the
    hardest case; ``exhaustive`` lists every subset anyway.
    """
    for i, r in enumerate(h.rel):
        if exhaustive:
            if len(r) > EXHAUSTIVE_LIMIT:
                raise SizeLimitError(f"exhaustive morphism check limited to images of {EXHAUSTIVE_LIMIT}")
            for m in subsets(r):
                yield i, m
        else:
            yield i, r


def validate(h: FMorphism, exhaustive: bool = False) -> MorphismReport:
    src, tgt = h.source, h.target
    sel, br = src.selection, src.brackets
    tsel, tbr = tgt.selection, tgt.brackets
    rel = h.rel
    ce: dict = {}

    def fail(name, *witness):
        ce.setdefault(name, witness)
        return False

    ar1 = True
    for i, r in enumerate(rel):
        for j, g in enumerate(tsel):
            if g <= r and not tbr[j] <= r:
                ar1 = fail("AR1", i, j, min(tbr[j] - r))
                break
        if not ar1:
            break

    ar2 = True
    for i, b in enumerate(br):
        for k, g in enumerate(sel):
            if g <= b and not rel[k] <= rel[i]:
                ar2 = fail("AR2", k, i, min(rel[k] - rel[i]))
                break
        if not ar2:
            break

    ar3 = True
    for i, m in _images(h, exhaustive):
        if not any(m <= g <= rel[i] for g in tsel):
            ar3 = fail("AR3", i, m)
            break

    ar4 = True
    for i, r in enumerate(rel):
        inside = [k for k, g in enumerate(sel) if g <= br[i]]
        for x in sorted(r):
            if not any(x in tbr[j] and tsel[j] <= rel[k] for k in inside for j in range(len(tsel))):
                ar4 = fail("AR4", i, x)
                break
        if not ar4:
            break

    ar5 = True
    for i, m in _images(h, exhaustive):
        inside = [k for k, g in enumerate(sel) if g <= br[i]]
        if not any(m <= tbr[j] and tsel[j] <= rel[k] for k in inside for j in range(len(tsel))):
            ar5 = fail("AR5", i, m)
            break

    return MorphismReport(ar1, ar2, ar3, ar4, ar5, ce)


def apply(h: FMorphism, x: Iterable[int]) -> frozenset:
    """Union of the images of the members inside ``x``."""
    x = check_attr_set(h.source.context, x)
    out: set = set()
    for f, r in zip(h.source.selection, h.rel):
        if f <= x:
            out |= r
    return frozenset(out)


@dataclass(frozen=True)
class ConceptFunction:
    source: ConceptPoset
    target: ConceptPoset
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if len(self.mapping) != len(self.source):
            raise InputError("concept function needs one image per source concept")
        if any(not 0 <= v < len(self.target) for v in self.mapping):
            raise InputError("concept function image out of range")
        if not is_monotone(self.source.poset, self.target.poset, self.mapping):
            raise InputError("concept function is not monotone")

    def __call__(self, q) -> frozenset:
        return self.target.concepts[self.mapping[self.source.index(q)]].attrs

    def as_monotone_map(self) -> MonotoneMap:
        return MonotoneMap(self.source.poset, self.target.poset, self.mapping)

    def compose(self, other: "ConceptFunction") -> "ConceptFunction":
        """``self`` after ``other``."""
        if other.target.acf != self.source.acf:
            raise ContextMismatchError("functions are not composable")
        return ConceptFunction(other.source, self.target,
                               tuple(self.mapping[v] for v in other.mapping))

    @classmethod
    def identity(cls, cp: ConceptPoset) -> "ConceptFunction":
        return cls(cp, cp, tuple(range(len(cp))))


def to_function(h: FMorphism) -> ConceptFunction:
    src, tgt = h.source.concepts, h.target.concepts
    mapping = []
    for c in src.concepts:
        image = apply(h, c.attrs)
        if image not in tgt:
            raise ValidationError(f"image of {sorted(c.attrs)} is not a concept of the target")
        mapping.append(tgt.index(image))
    fn = ConceptFunction(src, tgt, mapping)
    assert preserves_directed_sups(src.poset, tgt.poset, fn.mapping), "image map not Scott-continuous"
    return fn


def from_function(phi: ConceptFunction) -> FMorphism:
    """Each member is related to the image of its bracket."""
    src = phi.source.acf
    rel = tuple(phi.target.concepts[phi.mapping[phi.source.index(b)]].attrs for b in src.brackets)
    return FMorphism(src, phi.target.acf, rel)


def identity_morphism(acf: AcfContext) -> FMorphism:
    return FMorphism(acf, acf, acf.brackets)


def compose(h2: FMorphism, h1: FMorphism) -> FMorphism:
    """``h2`` after ``h1``: ``F`` reaches ``x`` through any middle member inside its image."""
    if h1.target != h2.source:
        raise ContextMismatchError("target of the first morphism is not the source of the second")
    mid = h2.source.selection
    rel = []
    for r in h1.rel:
        out: set = set()
        for g, r2 in zip(mid, h2.rel):
            if g <= r:
                out |= r2
        rel.append(frozenset(out))
    return FMorphism(h1.source, h2.target, tuple(rel))


def hom_set(a: AcfContext, b: AcfContext) -> list[FMorphism]:
    """Every morphism ``a -> b``, one per monotone map of the concept posets."""
    ca, cb = a.concepts, b.concepts
    return [from_function(ConceptFunction(ca, cb, m.mapping))
            for m in enumerate_monotone_maps(ca.poset, cb.poset)]


# --- representing contexts -------------------------------------------------

def _check_rep_map(rc_d: RepContext, rc_e: RepContext, f: MonotoneMap) -> None:
    if f.source != rc_d.domain or f.target != rc_e.domain:
        raise ContextMismatchError("map does not run between the two represented domains")


def from_scott(rc_d: RepContext, rc_e: RepContext, f: MonotoneMap) -> FMorphism:
    """Relate ``F`` to every basis element way below the image of its maximum."""
    _check_rep_map(rc_d, rc_e, f)
    rel = tuple(rc_e.wb_down(f(_max_of(rc_d.domain, m))) for m in rc_d.acf.selection)
    return FMorphism(rc_d.acf, rc_e.acf, rel)


def to_scott(rc_d: RepContext, rc_e: RepContext, g: FMorphism) -> MonotoneMap:
    """Send ``x`` to the supremum of everything related to members way below it."""
    if g.source != rc_d.acf or g.target != rc_e.acf:
        raise ContextMismatchError("morphism does not run between the two represented contexts")
    d, e = rc_d.domain, rc_e.domain
    mapping = []
    for x in range(len(d)):
        below = rc_d.wb_down(x)
        reached: set = set()
        for m, r in zip(g.source.selection, g.rel):
            if m <= below:
                reached |= r
        s = e.sup(to_mask(reached))
        if s is None:
            raise ValidationError(f"no supremum for the image of {d.elements[x]}")
        mapping.append(s)
    return MonotoneMap(d, e, tuple(mapping))


def interpolated_image_check(rc_d: RepContext, rc_e: RepContext, f: MonotoneMap) -> bool:
    """``wb_down(f(x))`` equals the elements way below ``f(y)`` for some ``y`` way below ``x``."""
    _check_rep_map(rc_d, rc_e, f)
    for x in range(len(rc_d.domain)):
        via: set = set()
        for y in rc_d.wb_down(x):
            via |= rc_e.wb_down(f(y))
        if rc_e.wb_down(f(x)) != via:
            return False
    return True


# --- functor laws ----------------------------------------------------------

@dataclass(frozen=True)
class FunctorReport:
    passed: bool
    identities: int
    compositions: int
    hom_sizes: dict
    failures: list

    def as_dict(self) -> dict:
        return {"passed": self.passed, "identities_checked": self.identities,
                "compositions_checked": self.compositions,
                "hom_sizes": {f"{i}->{j}": n for (i, j), n in sorted(self.hom_sizes.items())},
                "failures": self.failures}


def functor_check(acfs: Sequence[AcfContext]) -> FunctorReport:
    """Identity and composition preservation plus hom-set bijectivity on a sample."""
    failures: list = []
    homs: dict = {}
    fns: dict = {}
    for i, a in enumerate(acfs):
        for j, b in enumerate(acfs):
            ms = enumerate_monotone_maps(a.concepts.poset, b.concepts.poset)
            hs = [from_function(ConceptFunction(a.concepts, b.concepts, m.mapping)) for m in ms]
            homs[i, j] = hs
            fns[i, j] = [to_function(h).mapping for h in hs]
            if len(set(h.pairs() for h in hs)) != len(ms):
                failures.append({"law": "hom-set injective", "pair": [i, j]})
            for m, h, fm in zip(ms, hs, fns[i, j]):
                if fm != m.mapping:
                    failures.append({"law": "function round trip", "pair": [i, j],
                                     "map": list(m.mapping)})
                    break
                if from_function(to_function(h)) != h:
                    failures.append({"law": "morphism round trip", "pair": [i, j]})
                    break
    for i, a in enumerate(acfs):
        if to_function(identity_morphism(a)).mapping != tuple(range(len(a.concepts))):
            failures.append({"law": "identity", "context": i})
    count = 0
    n = len(acfs)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for h1, f1 in zip(homs[i, j], fns[i, j]):
                    for h2, f2 in zip(homs[j, k], fns[j, k]):
                        count += 1
                        got = to_function(compose(h2, h1)).mapping
                        if got != tuple(f2[v] for v in f1):
                            failures.append({"law": "composition", "triple": [i, j, k]})
    return FunctorReport(not failures, n, count,
                         {key: len(v) for key, v in homs.items()}, failures)
