"""Seeded random instances for property checks."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .context import FormalContext, attr_closure, enumerate_formal_concepts
from .errors import AcfError, InputError
from .kernel import AcfContext, KernelOperator, Selection, build_acf, check_ca1, check_kernel_axioms, induced_acf, nonempty_subsets


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_context(seed, n_objects: int = 4, n_attributes: int = 4,
                   density: float = 0.5) -> FormalContext:
    """Same seed and sizes give the same context."""
    if n_objects < 0 or n_attributes < 0:
        raise InputError("sizes must be non-negative")
    if not 0.0 <= density <= 1.0:
        raise InputError("density must lie in [0, 1]")
    rng = _rng(seed)
    rows = tuple(tuple(rng.random() < density for _ in range(n_attributes))
                 for _ in range(n_objects))
    return FormalContext(tuple(f"o{i + 1}" for i in range(n_objects)),
                         tuple(f"m{j + 1}" for j in range(n_attributes)), rows)


def random_sized_context(seed, max_objects: int, max_attributes: int) -> FormalContext:
    rng = _rng(seed)
    n_obj = rng.randint(1, max_objects)
    n_attr = rng.randint(1, max_attributes)
    return random_context(rng, n_obj, n_attr, rng.choice((0.3, 0.5, 0.7)))


@dataclass(frozen=True)
class GeneratedAcf:
    acf: AcfContext
    rejections: int
    fallback: bool


def _repair(ctx: FormalContext, kernel: KernelOperator, members: list) -> list:
    """Drop members failing CA1 until none do."""
    while members:
        report = check_ca1(ctx, kernel, Selection(tuple(members)))
        if report.passed:
            break
        del members[report.member]
    return members


def random_valid_acf(seed, max_objects: int = 4, max_attributes: int = 4,
                     attempts: int = 20, fallback: bool = True) -> GeneratedAcf:
    """A random kernel ``C -> C & S`` (or the identity) with a repaired random selection.

    Each attempt draws a context, a kernel and a selection; members violating
    CA1 are dropped. An attempt is rejected when nothing survives. After
    ``attempts`` rejections the induced context of the last draw is returned,
    or ``AcfError`` is raised when ``fallback`` is off.
    """
    rng = _rng(seed)
    ctx = None
    for rejections in range(attempts):
        ctx = random_sized_context(rng, max_objects, max_attributes)
        closed = enumerate_formal_concepts(ctx, method="closure")
        if rng.random() < 0.3:
            kernel = KernelOperator.identity()
        else:
            s = frozenset(j for j in range(ctx.n_attributes) if rng.random() < 0.7)
            kernel = KernelOperator.from_table({c: c & s for c in closed})
        if not check_kernel_axioms(ctx, kernel, closed).passed:
            continue
        p = rng.choice((0.3, 0.6, 1.0))
        members = [f for f in nonempty_subsets(ctx.n_attributes) if rng.random() < p]
        if rng.random() < 0.5:
            # also add closures, which tends to keep more members consistent
            members += [c for c in (attr_closure(ctx, f) for f in list(members))
                        if c and c not in members]
        members = list(dict.fromkeys(members))
        members = _repair(ctx, kernel, members)
        if members:
            return GeneratedAcf(build_acf(ctx, kernel, Selection(tuple(members))), rejections, False)
    if not fallback:
        raise AcfError(f"no valid context after {attempts} attempts")
    if ctx is None:
        ctx = random_sized_context(rng, max_objects, max_attributes)
    return GeneratedAcf(induced_acf(ctx), attempts, True)


def fc_selection(ctx: FormalContext, seed, p: float = 0.4) -> Selection:
    """Random nonempty members plus their closures, so every closure is a member."""
    rng = _rng(seed)
    members = [f for f in nonempty_subsets(ctx.n_attributes) if rng.random() < p]
    if not members:
        members = [frozenset({0})]
    closed = [attr_closure(ctx, f) for f in members]
    return Selection(tuple(dict.fromkeys(members + closed)))
