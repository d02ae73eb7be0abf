"""Syntactic conditions for subclasses of continuous domains.

Each checker inspects only the selection and its brackets; ``classify``
pairs the results with the order-theoretic classification of the concept
poset so the two sides can be compared. Counterexamples are the first found
in selection order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .concepts import enumerate_concepts
from .context import EXHAUSTIVE_LIMIT, canonical_key, subsets
from .errors import SizeLimitError
from .kernel import AcfContext
from .order import DomainClass, domain_classify


@dataclass(frozen=True)
class Check:
    passed: bool
    counterexample: Any = None

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        return {"passed": self.passed, "counterexample": _jsonable(self.counterexample)}


def _jsonable(x):
    if isinstance(x, frozenset):
        return sorted(x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    return x


def _pairs(acf: AcfContext):
    return list(zip(acf.selection, acf.brackets))


def check_ad(acf: AcfContext) -> Check:
    """Below every bracket, each member is covered by a self-contained member."""
    pairs = _pairs(acf)
    for i, (f1, b1) in enumerate(pairs):
        covers = [b for f, b in pairs if f <= b and f <= b1]
        for j, (f2, _) in enumerate(pairs):
            if f2 <= b1 and not any(f2 <= b for b in covers):
                return Check(False, {"F1": i, "F2": j})
    return Check(True)


def check_pointed(acf: AcfContext) -> Check:
    common = frozenset.intersection(*acf.brackets)
    for g in acf.selection:
        if g <= common:
            return Check(True, None)
    return Check(False, {"intersection_of_brackets": common})


def check_topped(acf: AcfContext) -> Check:
    union = frozenset().union(*acf.brackets)
    if union in set(acf.brackets):
        return Check(True)
    return Check(False, {"union_of_brackets": union})


def check_bc(acf: AcfContext) -> Check:
    members = set(acf.selection)
    seen = set()
    for i, b in enumerate(acf.brackets):
        if b in seen:
            continue
        seen.add(b)
        for x in subsets(b):
            if x and x not in members:
                return Check(False, {"F": i, "X": x})
    return Check(True)


def check_ss1(acf: AcfContext, exhaustive: bool = False) -> Check:
    """Every finite ``M`` in an intersection of two brackets sits in a bracket of a member inside it.

    The existence claim only gets harder as ``M`` grows, so by default ``M`` is
    the whole intersection; ``exhaustive`` tries every ``M``.
    """
    pairs = _pairs(acf)
    concepts = sorted(set(acf.brackets), key=canonical_key)
    for i, q1 in enumerate(concepts):
        for q2 in concepts[i:]:
            inter = q1 & q2
            inside = [b for f, b in pairs if f <= inter]
            if exhaustive:
                if len(inter) > EXHAUSTIVE_LIMIT:
                    raise SizeLimitError("exhaustive SS1 limited to small intersections")
                ms = list(subsets(inter))
            else:
                ms = [inter]
            for m in ms:
                if not any(m <= b for b in inside):
                    return Check(False, {"Q1": q1, "Q2": q2, "M": m})
    return Check(True)


def check_ss2(acf: AcfContext) -> Check:
    pairs = _pairs(acf)
    concepts = sorted(set(acf.brackets), key=canonical_key)
    below = {q: sorted({b for f, b in pairs if f <= q}, key=canonical_key) for q in concepts}
    for i, q1 in enumerate(concepts):
        for q2 in concepts[i:]:
            inter = q1 & q2
            # brackets of members G lying inside some bracket [F] contained in inter
            targets = {bg for fq in concepts if fq <= inter for g, bg in pairs if g <= fq}
            for g1 in below[q1]:
                for g2 in below[q2]:
                    x = g1 & g2
                    if not any(x <= t for t in targets):
                        return Check(False, {"Q1": q1, "Q2": q2, "G1": g1, "G2": g2})
    return Check(True)


def check_ss(acf: AcfContext) -> tuple[Check, Check]:
    return check_ss1(acf), check_ss2(acf)


@dataclass(frozen=True)
class SubclassReport:
    ad: Check
    pointed_cond: Check
    topped_cond: Check
    bc: Check
    ss1: Check
    ss2: Check
    semantic: DomainClass
    semantic_nonempty_bc: bool

    def as_dict(self) -> dict:
        sem = self.semantic.as_dict()
        sem["is_bounded_complete_nonempty_subsets"] = self.semantic_nonempty_bc
        return {
            "AD": self.ad.as_dict(),
            "pointed": self.pointed_cond.as_dict(),
            "topped": self.topped_cond.as_dict(),
            "BC": self.bc.as_dict(),
            "SS1": self.ss1.as_dict(),
            "SS2": self.ss2.as_dict(),
            "semantic": sem,
        }

    def exploratory_notes(self) -> list[str]:
        """Cases where the order-theoretic property holds but the sufficient condition fails."""
        notes = []
        s = self.semantic
        if s.is_semilattice and s.waybelow_multiplicative and not (self.ss1 and self.ss2):
            notes.append("stably continuous semilattice without SS1/SS2")
        if self.semantic_nonempty_bc and not self.bc:
            notes.append("bounded complete (nonempty subsets) without BC")
        return notes


def classify(acf: AcfContext) -> SubclassReport:
    poset = enumerate_concepts(acf).poset
    ss1, ss2 = check_ss(acf)
    return SubclassReport(
        ad=check_ad(acf),
        pointed_cond=check_pointed(acf),
        topped_cond=check_topped(acf),
        bc=check_bc(acf),
        ss1=ss1,
        ss2=ss2,
        semantic=domain_classify(poset),
        semantic_nonempty_bc=domain_classify(poset, empty_is_bounded=False).is_bounded_complete,
    )


def format_report(report: SubclassReport) -> str:
    rows = [
        ("AD (algebraic)", report.ad.passed, report.semantic.is_algebraic),
        ("pointed", report.pointed_cond.passed, report.semantic.is_pointed),
        ("topped", report.topped_cond.passed, report.semantic.has_top),
        ("BC (bounded complete)", report.bc.passed, report.semantic_nonempty_bc),
        ("SS1", report.ss1.passed, report.semantic.is_semilattice),
        ("SS2", report.ss2.passed, report.semantic.waybelow_multiplicative),
    ]
    width = max(len(r[0]) for r in rows)
    lines = [f"{'condition'.ljust(width)}  syntactic  semantic"]
    for name, syn, sem in rows:
        lines.append(f"{name.ljust(width)}  {str(syn).ljust(9)}  {sem}")
    for note in report.exploratory_notes():
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"
