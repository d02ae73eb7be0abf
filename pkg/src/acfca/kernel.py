"""Kernel attribute operators, consistent selections and validated contexts.

A kernel operator only matters through its values on closed attribute sets,
so table kernels are keyed by closed sets. The bracket of ``B`` is the kernel
applied to the closure of ``B``.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .context import (
    EXHAUSTIVE_LIMIT,
    FormalContext,
    attr_closure,
    canonical_sorted,
    check_attr_set,
    enumerate_formal_concepts,
    is_formal_concept,
    subsets,
)
from .errors import EmptyAttributeError, InputError, SizeLimitError, ValidationError

INDUCED_LIMIT = 15

# mutation hook for the test harness; see ``mutate_bracket``
_MUTATION: str | None = None


@dataclass(frozen=True)
class KernelOperator:
    kind: str = "identity"
    table: Mapping[frozenset, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("identity", "table"):
            raise InputError(f"unknown kernel kind {self.kind!r}")
        object.__setattr__(
            self, "table", {frozenset(k): frozenset(v) for k, v in dict(self.table).items()}
        )

    def __hash__(self):
        return hash((self.kind, frozenset(self.table.items())))

    @classmethod
    def identity(cls) -> "KernelOperator":
        return cls("identity")

    @classmethod
    def from_table(cls, table: Mapping[Iterable[int], Iterable[int]]) -> "KernelOperator":
        return cls("table", {frozenset(k): frozenset(v) for k, v in table.items()})

    def defined_on(self, s: frozenset) -> bool:
        return self.kind == "identity" or s in self.table

    def __call__(self, closed: frozenset) -> frozenset:
        if self.kind == "identity":
            return closed
        try:
            return self.table[closed]
        except KeyError:
            raise ValidationError(
                f"kernel table has no entry for closed set {sorted(closed)}"
            ) from None


def _raw_bracket(ctx: FormalContext, kernel: KernelOperator, b: frozenset) -> frozenset:
    c = attr_closure(ctx, b)
    if _MUTATION == "skip_kernel":
        return c
    if _MUTATION == "identity_bracket":
        return frozenset(b)
    return kernel(c)


def bracket(ctx: FormalContext, kernel: KernelOperator, b: Iterable[int]) -> frozenset:
    """Kernel of the closure of ``b``."""
    return _raw_bracket(ctx, kernel, check_attr_set(ctx, b))


@contextmanager
def mutate_bracket(mode: str = "skip_kernel"):
    """Temporarily corrupt the bracket operator.

    ``skip_kernel`` drops the kernel and returns the bare closure;
    ``identity_bracket`` returns its argument unchanged. Only contexts built
    inside the block see the corruption.
    """
    global _MUTATION
    if mode not in ("skip_kernel", "identity_bracket"):
        raise ValueError(f"unknown mutation {mode!r}")
    previous, _MUTATION = _MUTATION, mode
    try:
        yield
    finally:
        _MUTATION = previous


@dataclass(frozen=True)
class AxiomResult:
    name: str
    passed: bool | None
    counterexample: tuple | None = None
    note: str = ""

    def as_dict(self) -> dict:
        ce = None
        if self.counterexample is not None:
            ce = [sorted(x) if isinstance(x, frozenset) else x for x in self.counterexample]
        return {"axiom": self.name, "passed": self.passed, "counterexample": ce,
                "note": self.note}


@dataclass(frozen=True)
class KernelReport:
    a1: AxiomResult
    a2: AxiomResult
    a2_literal: AxiomResult
    a3: AxiomResult

    @property
    def passed(self) -> bool:
        return bool(self.a1.passed and self.a2.passed and self.a3.passed)

    @property
    def a2_readings_diverge(self) -> bool:
        return self.a2_literal.passed is not None and self.a2_literal.passed != self.a2.passed

    def as_dict(self) -> dict:
        return {"passed": self.passed,
                "axioms": [r.as_dict() for r in (self.a1, self.a2, self.a2_literal, self.a3)],
                "a2_readings_diverge": self.a2_readings_diverge}


def check_kernel_axioms(ctx: FormalContext, kernel: KernelOperator,
                        closed_sets: Sequence[frozenset] | None = None) -> KernelReport:
    """Check contraction, idempotence and monotonicity over all closed sets.

    ``a2`` reads idempotence through the closure, ``tau(cl(tau(C))) == tau(C)``;
    ``a2_literal`` is ``tau(tau(C)) == tau(C)`` and is undetermined (``None``)
    when ``tau(C)`` is not closed and the table has no entry for it.
    """
    if closed_sets is None:
        closed_sets = enumerate_formal_concepts(ctx, method="closure")
    if kernel.kind == "table":
        for k in kernel.table:
            check_attr_set(ctx, k)
            if not is_formal_concept(ctx, k):
                raise InputError(f"kernel table key {sorted(k)} is not a closed set")
        missing = [c for c in closed_sets if c not in kernel.table]
        if missing:
            raise ValidationError(
                f"kernel table does not cover closed set {sorted(missing[0])}"
            )
    images = {c: kernel(c) for c in closed_sets}

    a1 = AxiomResult("A1", True)
    for c in closed_sets:
        if not images[c] <= c:
            a1 = AxiomResult("A1", False, (c, images[c]))
            break

    a2 = AxiomResult("A2", True)
    a2_lit = AxiomResult("A2-literal", True)
    undetermined = []
    for c in closed_sets:
        t = images[c]
        if kernel(attr_closure(ctx, t)) != t and a2.passed:
            a2 = AxiomResult("A2", False, (c, t, kernel(attr_closure(ctx, t))))
        if kernel.defined_on(t):
            if kernel(t) != t and a2_lit.passed:
                a2_lit = AxiomResult("A2-literal", False, (c, t, kernel(t)))
        else:
            undetermined.append(t)
    if undetermined and a2_lit.passed:
        a2_lit = AxiomResult(
            "A2-literal", None,
            note=f"{len(undetermined)} kernel images are not closed and have no table entry",
        )

    a3 = AxiomResult("A3", True)
    for c in closed_sets:
        for d in closed_sets:
            if c <= d and not images[c] <= images[d]:
                a3 = AxiomResult("A3", False, (c, d))
                break
        if not a3.passed:
            break
    return KernelReport(a1, a2, a2_lit, a3)


@dataclass(frozen=True)
class Selection:
    members: tuple[frozenset, ...]

    def __post_init__(self):
        members = tuple(frozenset(m) for m in self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise InputError("a selection must be nonempty")
        if any(not m for m in members):
            raise InputError("selection members must be nonempty")
        if len(set(members)) != len(members):
            raise InputError("selection members must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> frozenset:
        return self.members[i]

    def index(self, f: Iterable[int]) -> int:
        return self.members.index(frozenset(f))


@dataclass(frozen=True)
class Ca1Report:
    passed: bool
    member: int | None = None
    m: frozenset | None = None

    def as_dict(self) -> dict:
        return {"passed": self.passed, "member": self.member,
                "M": None if self.m is None else sorted(self.m)}


def _brackets(ctx: FormalContext, kernel: KernelOperator, sel: Selection) -> tuple[frozenset, ...]:
    return tuple(_raw_bracket(ctx, kernel, f) for f in sel)


def check_ca1(ctx: FormalContext, kernel: KernelOperator, sel: Selection,
              exhaustive: bool = False, brackets: Sequence[frozenset] | None = None) -> Ca1Report:
    """Every finite ``M`` inside a bracket ``[F]`` sits in some ``[G]`` with ``G`` inside ``[F]``.

    The default checks the equivalent finite form: some member ``G`` inside
    ``[F]`` has ``[G] == [F]``. ``exhaustive`` enumerates every ``M``.
    """
    for f in sel:
        check_attr_set(ctx, f)
    br = tuple(brackets) if brackets is not None else _brackets(ctx, kernel, sel)
    for i, top in enumerate(br):
        inside = [j for j, g in enumerate(sel) if g <= top]
        if not exhaustive:
            if not any(br[j] == top for j in inside):
                return Ca1Report(False, i, top)
            continue
        if len(top) > EXHAUSTIVE_LIMIT:
            raise SizeLimitError(f"exhaustive CA1 limited to brackets of {EXHAUSTIVE_LIMIT}")
        for m in subsets(top):
            if not any(m <= br[j] for j in inside):
                return Ca1Report(False, i, m)
    return Ca1Report(True)


@dataclass(frozen=True)
class AcfContext:
    """A formal context with a kernel and a consistent selection.

    Build instances with :func:`build_acf`; it refuses invalid input, so an
    ``AcfContext`` that exists has passed every check.
    """

    context: FormalContext
    kernel: KernelOperator
    selection: Selection
    brackets: tuple[frozenset, ...]

    def bracket(self, b: Iterable[int]) -> frozenset:
        return bracket(self.context, self.kernel, b)

    @property
    def n_attributes(self) -> int:
        return self.context.n_attributes

    @cached_property
    def concepts(self):
        """The concept poset, computed once per context."""
        from .concepts import enumerate_concepts

        return enumerate_concepts(self)


def build_acf(ctx: FormalContext, kernel: KernelOperator, sel: Selection | Sequence) -> AcfContext:
    if ctx.n_attributes == 0:
        raise EmptyAttributeError("a context without attributes admits no nonempty selection")
    if not isinstance(sel, Selection):
        sel = Selection(tuple(frozenset(m) for m in sel))
    for f in sel:
        check_attr_set(ctx, f)
    kreport = check_kernel_axioms(ctx, kernel)
    if not kreport.passed:
        raise ValidationError("kernel operator fails its axioms", kernel=kreport)
    br = _brackets(ctx, kernel, sel)
    creport = check_ca1(ctx, kernel, sel, brackets=br)
    if not creport.passed:
        raise ValidationError("selection is not consistent (CA1)", kernel=kreport, ca1=creport)
    return AcfContext(ctx, kernel, sel, br)


def nonempty_subsets(n: int) -> list[frozenset]:
    return [s for s in canonical_sorted(subsets(range(n))) if s]


def induced_acf(ctx: FormalContext, limit: int = INDUCED_LIMIT) -> AcfContext:
    """Identity kernel with every nonempty attribute subset selected."""
    if ctx.n_attributes == 0:
        raise EmptyAttributeError("a context without attributes has no induced selection")
    if ctx.n_attributes > limit:
        raise SizeLimitError(
            f"induced selection would have 2^{ctx.n_attributes}-1 members (limit {limit} attributes)"
        )
    return build_acf(ctx, KernelOperator.identity(), Selection(tuple(nonempty_subsets(ctx.n_attributes))))


def check_fc(ctx: FormalContext, sel: Selection, exhaustive: bool = False) -> bool:
    """Conditional-context condition on a selection.

    Finite form: the closure of every member is itself a member. With
    ``exhaustive`` every ``M`` inside each closure is tried.
    """
    members = set(sel)
    for f in sel:
        c = attr_closure(ctx, f)
        if not exhaustive:
            if c not in members:
                return False
            continue
        inside = [g for g in sel if g <= c]
        for m in subsets(c):
            if not any(m <= g for g in inside):
                return False
    return True


def is_f_approximable(ctx: FormalContext, sel: Selection, q: Iterable[int],
                      exhaustive: bool = False) -> bool:
    q = check_attr_set(ctx, q)
    if exhaustive:
        fa1 = all(any(m <= f <= q for f in sel) for m in subsets(q))
    else:
        # M = q is the hardest instance of FA1
        fa1 = q in set(sel)
    if not fa1:
        return False
    return all(attr_closure(ctx, f) <= q for f in sel if f <= q)

