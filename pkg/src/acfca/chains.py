"""Two infinite posets built around an ascending chain, handled symbolically.

``L1``: a bottom, a chain ``a1 < a2 < ...``, a side element ``b`` and a top;
the chain's supremum is the top itself. ``L2`` inserts ``top1`` between the
chain and the top, so the chain has its own limit below the top.

Order and way-below are closed forms; claims about the infinite posets are
checked up to a depth ``N`` and every report says so.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .context import from_mask, to_mask
from .errors import InputError
from .order import FinitePoset

FAMILIES = ("L1", "L2")
TAGS = ("bot", "a", "b", "top1", "top")
DEFAULT_DEPTH = 32
ORACLE_DEPTH = 6

CAVEAT = ("finite evidence only: checks run on a depth-bounded truncation plus the "
          "symbolic chain tail, not a proof about the infinite poset")


@dataclass(frozen=True, order=True)
class ChainElement:
    family: str
    tag: str
    i: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}")
        if self.tag not in TAGS:
            raise InputError(f"unknown element tag {self.tag!r}")
        if self.tag == "top1" and self.family != "L2":
            raise InputError("top1 exists only in L2")
        if self.tag == "a":
            if self.i < 1:
                raise InputError("chain indices start at 1")
        elif self.i != 0:
            raise InputError(f"{self.tag} takes no index")

    def __str__(self) -> str:
        return f"a{self.i}" if self.tag == "a" else self.tag


def bot(family: str) -> ChainElement:
    return ChainElement(family, "bot")


def a(family: str, i: int) -> ChainElement:
    return ChainElement(family, "a", i)


def b(family: str) -> ChainElement:
    return ChainElement(family, "b")


def top1() -> ChainElement:
    return ChainElement("L2", "top1")


def top(family: str) -> ChainElement:
    return ChainElement(family, "top")


def leq(family: str, x: ChainElement, y: ChainElement) -> bool:
    if x.family != family or y.family != family:
        raise InputError("elements belong to a different family")
    if x == y or x.tag == "bot" or y.tag == "top":
        return True
    if x.tag == "a":
        if y.tag == "a":
            return x.i <= y.i
        return y.tag == "top1"
    return False


def way_below(family: str, x: ChainElement, y: ChainElement) -> bool:
    """Closed form: in L1 only ``b`` and ``top`` fail to be compact; in L2 only ``top1``.

    In L1 the chain climbs to the top, so neither the top nor ``b`` (which the
    top dominates) is reached at a finite stage. In L2 the chain's limit is
    ``top1``, which is therefore the only element not way below itself, and it
    stays way below ``top`` since every directed set reaching the top contains it.
    """
    if not leq(family, x, y):
        return False
    if family == "L1":
        return x.tag not in ("b", "top")
    return not (x.tag == "top1" and y.tag == "top1")


def is_compact(family: str, x: ChainElement) -> bool:
    return way_below(family, x, x)


def chain_sup(family: str) -> ChainElement:
    """Supremum of the whole chain (and of any tail of it)."""
    return top(family) if family == "L1" else top1()


def truncation(family: str, depth: int) -> tuple[list[ChainElement], FinitePoset]:
    """Elements with chain indices up to ``depth`` and the induced finite order."""
    if depth < 1:
        raise InputError("depth must be positive")
    elems = [bot(family)] + [a(family, i) for i in range(1, depth + 1)] + [b(family)]
    if family == "L2":
        elems.append(top1())
    elems.append(top(family))
    leqm = tuple(tuple(leq(family, x, y) for y in elems) for x in elems)
    return elems, FinitePoset(tuple(str(e) for e in elems), leqm)


# --- named attribute sets ----------------------------------------------------

@dataclass(frozen=True)
class SymbolicContext:
    """The induced context on a family: ``x`` has attribute ``y`` iff ``y <= x``."""

    family: str
    depth: int = DEFAULT_DEPTH

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}")
        if self.depth < 1:
            raise InputError("depth must be positive")


@dataclass(frozen=True)
class QSpec:
    kind: str
    point: ChainElement | None = None

    def __post_init__(self):
        if self.kind not in ("AChainWithBot", "PrincipalDown", "Full"):
            raise InputError(f"unknown set specification {self.kind!r}")
        if (self.kind == "PrincipalDown") != (self.point is not None):
            raise InputError("PrincipalDown needs exactly one point")


def membership(ctx: SymbolicContext, spec: QSpec, x: ChainElement) -> bool:
    if x.family != ctx.family:
        raise InputError("element belongs to a different family")
    if spec.kind == "Full":
        return True
    if spec.kind == "AChainWithBot":
        return x.tag in ("bot", "a")
    return leq(ctx.family, x, spec.point)


def _is_upper_bound_of_chain(family: str, x: ChainElement) -> bool:
    return x.tag in ("top1", "top")


def closure_of_chain(family: str) -> list[ChainElement]:
    """Non-chain elements of the closure of the chain plus bottom.

    The objects having every chain element are its upper bounds; the closure
    is what lies below all of them. Upper bounds are decided in closed form.
    """
    candidates = [e for e in (b(family), top1() if family == "L2" else None, top(family)) if e]
    ubs = [u for u in candidates if _is_upper_bound_of_chain(family, u)]
    return [y for y in candidates if all(leq(family, y, u) for u in ubs)]


@dataclass(frozen=True)
class ChainConceptReport:
    family: str
    depth: int
    continuous_concept: bool
    not_formal_concept: bool
    closure_extra: tuple[str, ...]
    caveat: str = field(default=CAVEAT)

    @property
    def passed(self) -> bool:
        return self.continuous_concept and self.not_formal_concept

    def as_dict(self) -> dict:
        return {"family": self.family, "depth": self.depth,
                "continuous_concept": self.continuous_concept,
                "not_formal_concept": self.not_formal_concept,
                "closure_extra": list(self.closure_extra),
                "passed": self.passed, "caveat": self.caveat}


def _closure_in(p: FinitePoset, mask: int) -> int:
    """Closure in the induced context of a finite poset: below every upper bound."""
    return p.lower_bounds(p.upper_bounds(mask))


def verify_chain_concept(family: str, depth: int = DEFAULT_DEPTH) -> ChainConceptReport:
    """Bottom plus the chain is a continuous concept of the induced context but not a formal one.

    Continuity: for every prefix ``M_k = {bot, a1..ak}`` with ``k <= depth`` the
    member ``{ak}`` (or ``{bot}``) has ``M_k`` inside its bracket and its
    bracket inside the set. Any finite ``M`` in the set lies in some prefix.
    Brackets are closures computed in the depth-``depth`` truncation.
    """
    if depth < 3:
        raise InputError("depth must be at least 3")
    ctx = SymbolicContext(family, depth)
    q = QSpec("AChainWithBot")
    elems, p = truncation(family, depth)
    ok = True
    for k in range(0, depth + 1):
        f = 1 << k  # element k is a_k, element 0 is bot
        m = to_mask(range(k + 1))
        br = _closure_in(p, f)
        inside = all(membership(ctx, q, elems[i]) for i in from_mask(br))
        if not (m & ~br == 0 and inside):
            ok = False
            break
    extra = closure_of_chain(family)
    return ChainConceptReport(family, depth, ok, bool(extra), tuple(str(e) for e in extra))


# alias kept for callers using the older name
verify_example39 = verify_chain_concept


# --- non-continuity of L1 ----------------------------------------------------

def _directed(family: str, s: list[ChainElement], tail: bool) -> bool:
    """Is ``s``, optionally joined with a chain tail, directed?"""
    def below_chain(u):
        return u.tag in ("bot", "a")

    def has_ub(u, v):
        if any(leq(family, u, w) and leq(family, v, w) for w in s):
            return True
        return tail and below_chain(u) and below_chain(v)

    def meets_tail(u):
        # u and arbitrarily late chain elements need a common bound in the set
        return below_chain(u) or any(
            leq(family, u, w) and _is_upper_bound_of_chain(family, w) for w in s)

    if not s:
        return tail
    if tail and not all(meets_tail(u) for u in s):
        return False
    return all(has_ub(u, v) for u, v in combinations(s, 2))


def way_below_oracle(family: str, depth: int = ORACLE_DEPTH) -> dict:
    """Way-below on the truncation, from the definition.

    Directed sets are the directed subsets of the truncation, each optionally
    joined with a tail ``{a_i : i >= k}`` of the chain (whose supremum is the
    chain's supremum and which dominates every bottom or chain element).
    """
    elems, p = truncation(family, depth)
    n = len(elems)
    limit = elems.index(chain_sup(family))
    table = {(x, y): True for x in range(n) for y in range(n)}
    for mask in range(1 << n):
        s = [elems[i] for i in from_mask(mask)]
        for tail in (False, True):
            if not _directed(family, s, tail):
                continue
            sup = p.sup(mask | (1 << limit if tail else 0))
            if sup is None:
                continue
            for x in range(n):
                reached = any(leq(family, elems[x], d) for d in s) or (
                    tail and elems[x].tag in ("bot", "a"))
                if reached:
                    continue
                for y in range(n):
                    if p.leq[y][sup]:
                        table[x, y] = False
    return {(str(elems[x]), str(elems[y])): v for (x, y), v in table.items()}


def closed_form_table(family: str, depth: int = ORACLE_DEPTH) -> dict:
    elems, _ = truncation(family, depth)
    return {(str(x), str(y)): way_below(family, x, y) for x in elems for y in elems}


@dataclass(frozen=True)
class DiscontinuityReport:
    waybelow_b: tuple[str, ...]
    sup_waybelow_b: str
    l1_continuous: bool
    table_matches_oracle: dict
    noncompact: dict
    caveat: str = field(default=CAVEAT)

    @property
    def passed(self) -> bool:
        return (self.waybelow_b == ("bot",) and self.sup_waybelow_b == "bot"
                and not self.l1_continuous and all(self.table_matches_oracle.values()))

    def as_dict(self) -> dict:
        return {"waybelow_b": list(self.waybelow_b), "sup_waybelow_b": self.sup_waybelow_b,
                "l1_continuous": self.l1_continuous,
                "table_matches_oracle": self.table_matches_oracle,
                "noncompact": {k: list(v) for k, v in self.noncompact.items()},
                "passed": self.passed, "caveat": self.caveat}


def l1_discontinuity_witness(depth: int = ORACLE_DEPTH) -> DiscontinuityReport:
    """Only the bottom is way below ``b`` in L1, so ``b`` is not a directed sup of such elements."""
    elems, p = truncation("L1", depth)
    below_b = [e for e in elems if way_below("L1", e, b("L1"))]
    sup = p.sup(to_mask(elems.index(e) for e in below_b))
    matches = {fam: closed_form_table(fam, depth) == way_below_oracle(fam, depth)
               for fam in FAMILIES}
    noncompact = {}
    for fam in FAMILIES:
        fe, _ = truncation(fam, depth)
        noncompact[fam] = tuple(str(e) for e in fe if not is_compact(fam, e))
    return DiscontinuityReport(
        waybelow_b=tuple(str(e) for e in below_b),
        sup_waybelow_b=p.elements[sup],
        l1_continuous=sup == elems.index(b("L1")),
        table_matches_oracle=matches,
        noncompact=noncompact,
    )


def format_chain_report(family: str, depth: int) -> str:
    r = verify_chain_concept(family, depth)
    w = l1_discontinuity_witness(min(depth, ORACLE_DEPTH))
    lines = [
        f"family {family}, depth {depth}",
        f"  bottom plus chain is a continuous concept: {r.continuous_concept}",
        f"  ... but not a formal concept: {r.not_formal_concept} "
        f"(closure adds {', '.join(r.closure_extra)})",
        f"  non-compact elements: {', '.join(w.noncompact[family])}",
        f"  closed-form way-below matches oracle: {w.table_matches_oracle[family]}",
    ]
    if family == "L1":
        lines.append(f"  elements way below b: {', '.join(w.waybelow_b)}; "
                     f"their sup is {w.sup_waybelow_b}, so L1 is not continuous")
    lines.append(f"  note: {CAVEAT}")
    return "\n".join(lines) + "\n"
