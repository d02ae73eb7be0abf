"""Finite formal contexts, the two derivation operators and their closure.

Attribute and object subsets are plain ``frozenset`` objects of indices.
Internally every set is also handled as an ``int`` bitmask, which keeps the
closure computation cheap enough to run over all subsets of small contexts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import InputError, InvalidSubsetError, SizeLimitError

AttrSet = frozenset
ObjSet = frozenset

DEFAULT_ENUMERATION_LIMIT = 20
EXHAUSTIVE_LIMIT = 12


def to_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def from_mask(mask: int) -> frozenset:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def canonical_key(s: Iterable[int]) -> tuple:
    """Sort key for index sets: smaller sets first, ties broken lexicographically."""
    t = tuple(sorted(s))
    return (len(t), t)


def canonical_sorted(sets: Iterable[frozenset]) -> list[frozenset]:
    return sorted(sets, key=canonical_key)


def subsets(s: Iterable[int]) -> Iterator[frozenset]:
    """All subsets of ``s`` in canonical order."""
    items = sorted(s)
    for r in range(len(items) + 1):
        for c in combinations(items, r):
            yield frozenset(c)


@dataclass(frozen=True)
class FormalContext:
    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    incidence: tuple[tuple[bool, ...], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(
            self, "incidence", tuple(tuple(bool(v) for v in row) for row in self.incidence)
        )
        if len(set(self.objects)) != len(self.objects):
            raise InputError("object labels must be pairwise distinct")
        if len(set(self.attributes)) != len(self.attributes):
            raise InputError("attribute labels must be pairwise distinct")
        if len(self.incidence) != len(self.objects):
            raise InputError(
                f"incidence has {len(self.incidence)} rows, expected {len(self.objects)}"
            )
        for row in self.incidence:
            if len(row) != len(self.attributes):
                raise InputError(
                    f"incidence row has {len(row)} entries, expected {len(self.attributes)}"
                )

    @classmethod
    def from_pairs(cls, objects: Sequence[str], attributes: Sequence[str],
                   pairs: Iterable[tuple[int, int]], name: str | None = None) -> "FormalContext":
        rows = [[False] * len(attributes) for _ in objects]
        for o, a in pairs:
            if not (0 <= o < len(objects)) or not (0 <= a < len(attributes)):
                raise InputError(f"incidence pair {(o, a)} out of range")
            rows[o][a] = True
        return cls(tuple(objects), tuple(attributes), tuple(map(tuple, rows)), name)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @cached_property
    def _rows(self) -> tuple[int, ...]:
        return tuple(to_mask(j for j, v in enumerate(row) if v) for row in self.incidence)

    @cached_property
    def _all_attrs(self) -> int:
        return (1 << self.n_attributes) - 1

    @cached_property
    def _all_objs(self) -> int:
        return (1 << self.n_objects) - 1

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.incidence) for j, v in enumerate(row) if v]

    def attr_set(self, labels: Iterable[str]) -> frozenset:
        """Translate attribute labels into an index set."""
        index = {a: i for i, a in enumerate(self.attributes)}
        try:
            return frozenset(index[x] for x in labels)
        except KeyError as exc:
            raise InvalidSubsetError(f"unknown attribute {exc.args[0]!r}") from None

    def attr_labels(self, s: Iterable[int]) -> list[str]:
        return [self.attributes[i] for i in sorted(s)]

    # mask-level primitives, no validation

    def _extent_mask(self, bmask: int) -> int:
        out = 0
        for i, row in enumerate(self._rows):
            if row & bmask == bmask:
                out |= 1 << i
        return out

    def _intent_mask(self, amask: int) -> int:
        out = self._all_attrs
        i = 0
        rows = self._rows
        while amask:
            if amask & 1:
                out &= rows[i]
            amask >>= 1
            i += 1
        return out

    def _closure_mask(self, bmask: int) -> int:
        out = self._all_attrs
        for row in self._rows:
            if row & bmask == bmask:
                out &= row
        return out


def check_attr_set(ctx: FormalContext, b: Iterable[int]) -> frozenset:
    b = frozenset(b)
    for i in b:
        if not isinstance(i, int) or not (0 <= i < ctx.n_attributes):
            raise InvalidSubsetError(f"attribute index {i!r} out of range")
    return b


def check_obj_set(ctx: FormalContext, a: Iterable[int]) -> frozenset:
    a = frozenset(a)
    for i in a:
        if not isinstance(i, int) or not (0 <= i < ctx.n_objects):
            raise InvalidSubsetError(f"object index {i!r} out of range")
    return a


def extent(ctx: FormalContext, b: Iterable[int]) -> frozenset:
    """Objects having every attribute in ``b``."""
    b = check_attr_set(ctx, b)
    return from_mask(ctx._extent_mask(to_mask(b)))


def intent(ctx: FormalContext, a: Iterable[int]) -> frozenset:
    """Attributes shared by every object in ``a``."""
    a = check_obj_set(ctx, a)
    return from_mask(ctx._intent_mask(to_mask(a)))


def attr_closure(ctx: FormalContext, b: Iterable[int]) -> frozenset:
    b = check_attr_set(ctx, b)
    return from_mask(ctx._closure_mask(to_mask(b)))


def is_formal_concept(ctx: FormalContext, b: Iterable[int]) -> bool:
    b = check_attr_set(ctx, b)
    m = to_mask(b)
    return ctx._closure_mask(m) == m


def _closed_masks_by_subsets(ctx: FormalContext) -> set[int]:
    return {ctx._closure_mask(m) for m in range(1 << ctx.n_attributes)}


def _closed_masks_by_closure(ctx: FormalContext) -> set[int]:
    n = ctx.n_attributes
    start = ctx._closure_mask(0)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for c in frontier:
            for j in range(n):
                if not c >> j & 1:
                    d = ctx._closure_mask(c | 1 << j)
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
        frontier = nxt
    return seen


def enumerate_formal_concepts(ctx: FormalContext, limit: int = DEFAULT_ENUMERATION_LIMIT,
                              method: str = "subsets") -> list[frozenset]:
    """All closed attribute sets, canonically sorted.

    ``method="subsets"`` closes every subset and refuses contexts with more
    than ``limit`` attributes. ``method="closure"`` grows closed sets from the
    closure of the empty set by single-attribute augmentation and has no limit.
    """
    if method == "subsets":
        if ctx.n_attributes > limit:
            raise SizeLimitError(
                f"{ctx.n_attributes} attributes exceeds the enumeration limit {limit}"
            )
        masks = _closed_masks_by_subsets(ctx)
    elif method == "closure":
        masks = _closed_masks_by_closure(ctx)
    else:
        raise ValueError(f"unknown method {method!r}")
    return canonical_sorted(from_mask(m) for m in masks)


def is_approximable_concept(ctx: FormalContext, q: Iterable[int], exhaustive: bool = False) -> bool:
    """Every finite subset of ``q`` closes inside ``q``.

    For a finite attribute set this is the same as ``q`` being closed; the
    ``exhaustive`` flag runs the literal quantifier over all subsets instead.
    """
    q = check_attr_set(ctx, q)
    qm = to_mask(q)
    if not exhaustive:
        return ctx._closure_mask(qm) == qm
    if len(q) > EXHAUSTIVE_LIMIT:
        raise SizeLimitError(f"exhaustive check limited to {EXHAUSTIVE_LIMIT} attributes")
    return all(ctx._closure_mask(to_mask(m)) & ~qm == 0 for m in subsets(q))


# --- Burmeister .cxt -------------------------------------------------------

def parse_cxt(text: str) -> FormalContext:
    """Parse a Burmeister ``.cxt`` document.

    The optional name line is recognised when the line after ``B`` is not an
    integer; an empty name line is kept as ``""`` so writing reproduces it.
    """
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    pos = 0

    def take() -> str:
        nonlocal pos
        if pos >= len(lines):
            raise InputError("unexpected end of .cxt input")
        line = lines[pos]
        pos += 1
        return line

    if take().strip() != "B":
        raise InputError(".cxt input must start with a line containing 'B'")
    name = None
    line = take()
    if not line.strip().isdigit():
        name = line
        line = take()
    try:
        n_obj = int(line.strip())
        n_att = int(take().strip())
    except ValueError:
        raise InputError("bad object/attribute counts in .cxt header") from None
    line = take()
    if line.strip():
        raise InputError("expected a blank line after the .cxt counts")
    objects = [take() for _ in range(n_obj)]
    attributes = [take() for _ in range(n_att)]
    rows = []
    for k in range(n_obj):
        row = take().rstrip()
        if len(row) != n_att or any(ch not in "Xx." for ch in row):
            raise InputError(f"bad incidence row {k + 1}: {row!r}")
        rows.append(tuple(ch in "Xx" for ch in row))
    return FormalContext(tuple(objects), tuple(attributes), tuple(rows), name)


def format_cxt(ctx: FormalContext) -> str:
    out = ["B"]
    if ctx.name is not None:
        out.append(ctx.name)
    out += [str(ctx.n_objects), str(ctx.n_attributes), ""]
    out += list(ctx.objects)
    out += list(ctx.attributes)
    out += ["".join("X" if v else "." for v in row) for row in ctx.incidence]
    return "\n".join(out) + "\n"
