"""The theorem suite: named checks over seeded random and catalog instances.

Every check returns a ``CheckResult``; exceptions raised inside a check are
caught and reported as failures so one broken layer does not hide the rest.
"""
from __future__ import annotations

import random
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from . import chains
from .concepts import enumerate_concepts, is_continuous_concept
from .context import (
    FormalContext,
    enumerate_formal_concepts,
    is_approximable_concept,
    is_formal_concept,
    subsets,
)
from .errors import InputError
from .generators import fc_selection, random_sized_context, random_valid_acf
from .kernel import build_acf, check_fc, induced_acf, is_f_approximable, KernelOperator, mutate_bracket
from .morphisms import (
    ConceptFunction,
    from_function,
    from_scott,
    functor_check,
    hom_set,
    interpolated_image_check,
    to_function,
    to_scott,
    validate,
)
from .order import (
    FinitePoset,
    diamond,
    domain_classify,
    enumerate_monotone_maps,
    poset_catalog,
    random_poset,
    way_below_matrix,
)
from .representation import check_brackets_are_way_below, rep, verify_roundtrip
from .subclasses import classify

CHECKS = (
    "basic", "induced", "rep", "waybelow", "subclasses",
    "morphism_bijection", "functor", "rep_morphisms", "symbolic", "mutation",
)
WAYBELOW_MAX_CONCEPTS = 12


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    count: int = 200
    max_attrs: int = 6
    max_objects: int = 6
    max_poset: int = 5
    random_posets: int = 100
    random_poset_size: int = 6
    subclass_count: int = 100
    rep_morphism_max: int = 4
    checks: frozenset = frozenset(CHECKS)

    def __post_init__(self):
        object.__setattr__(self, "checks", frozenset(self.checks))
        unknown = self.checks - set(CHECKS)
        if unknown:
            raise InputError(f"unknown checks: {', '.join(sorted(unknown))}")
        for name in ("count", "max_attrs", "max_objects", "max_poset", "random_poset_size",
                     "rep_morphism_max"):
            if getattr(self, name) < 1:
                raise InputError(f"{name} must be at least 1")
        if self.random_posets < 0 or self.subclass_count < 0:
            raise InputError("instance counts must be non-negative")


@dataclass
class CheckResult:
    name: str
    passed: bool
    instances: int = 0
    counterexample: object = None
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "instances": self.instances,
                "counterexample": self.counterexample, "seconds": round(self.seconds, 3)}


@dataclass
class SuiteReport:
    results: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def as_dict(self, timings: bool = False) -> dict:
        out = {"passed": self.passed, "checks": []}
        for name in CHECKS:
            if name in self.results:
                d = self.results[name].as_dict()
                if not timings:
                    d.pop("seconds")
                out["checks"].append(d)
        return out


class _Fail(Exception):
    def __init__(self, payload):
        super().__init__(str(payload))
        self.payload = payload


def _require(cond: bool, payload) -> None:
    if not cond:
        raise _Fail(payload)


# --- instance pools -----------------------------------------------------------

def sample_contexts(cfg: SuiteConfig) -> list[FormalContext]:
    return [random_sized_context(random.Random(f"{cfg.seed}:ctx:{k}"), cfg.max_objects, cfg.max_attrs)
            for k in range(cfg.count)]


def sample_posets(cfg: SuiteConfig) -> list[FinitePoset]:
    out = [p for n in range(1, cfg.max_poset + 1) for p in poset_catalog(n)]
    for k in range(cfg.random_posets):
        rng = random.Random(f"{cfg.seed}:poset:{k}")
        out.append(random_poset(cfg.random_poset_size, rng, rng.choice((0.2, 0.4, 0.6))))
    return out


def morphism_sample():
    c0 = FormalContext.from_pairs(["o1", "o2", "o3"], ["m1", "m2", "m3"],
                                  [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)])
    return [induced_acf(c0), rep(FinitePoset.chain(2)).acf, rep(diamond()).acf,
            rep(FinitePoset.antichain(2)).acf]


# --- checks -------------------------------------------------------------------

def _lattice(p: FinitePoset) -> bool:
    n = len(p)
    if p.least() is None or p.greatest() is None:
        return False
    return all(p.sup(1 << i | 1 << j) is not None and p.inf(1 << i | 1 << j) is not None
               for i in range(n) for j in range(i + 1, n))


def check_basic(cfg: SuiteConfig) -> int:
    ctxs = sample_contexts(cfg)
    for k, ctx in enumerate(ctxs):
        closed = enumerate_formal_concepts(ctx)
        p = FinitePoset(tuple(str(sorted(c)) for c in closed),
                        tuple(tuple(a <= b for b in closed) for a in closed))
        _require(_lattice(p), {"context": k, "reason": "concepts do not form a lattice"})
        for q in subsets(range(ctx.n_attributes)):
            _require(is_approximable_concept(ctx, q, exhaustive=True) == is_formal_concept(ctx, q),
                     {"context": k, "set": sorted(q)})
    return len(ctxs)


def check_induced(cfg: SuiteConfig) -> int:
    ctxs = sample_contexts(cfg)
    for k, ctx in enumerate(ctxs):
        acf = induced_acf(ctx)
        concepts = {c.attrs for c in enumerate_concepts(acf).concepts}
        approx = {q for q in subsets(range(ctx.n_attributes))
                  if q and is_approximable_concept(ctx, q, exhaustive=True)}
        _require(concepts == approx, {"context": k, "reason": "induced concepts differ"})
        sel = fc_selection(ctx, random.Random(f"{cfg.seed}:fc:{k}"))
        if not check_fc(ctx, sel, exhaustive=True):
            continue
        acf2 = build_acf(ctx, KernelOperator.identity(), sel)
        for q in subsets(range(ctx.n_attributes)):
            _require(is_f_approximable(ctx, sel, q, exhaustive=True)
                     == is_continuous_concept(acf2, q, exhaustive=True),
                     {"context": k, "set": sorted(q)})
    return len(ctxs)


def check_rep(cfg: SuiteConfig) -> int:
    posets = sample_posets(cfg)
    for k, d in enumerate(posets):
        rc = rep(d)
        _require(check_brackets_are_way_below(rc), {"poset": k, "reason": "bracket is not the way-below set"})
        report = verify_roundtrip(rc)
        _require(report.passed, {"poset": k, "reason": report.counterexample})
    return len(posets)


def check_waybelow(cfg: SuiteConfig) -> int:
    pools = [induced_acf(c) for c in sample_contexts(cfg)] + [rep(d).acf for d in sample_posets(cfg)]
    n = 0
    for k, acf in enumerate(pools):
        cp = enumerate_concepts(acf)
        if len(cp) > WAYBELOW_MAX_CONCEPTS:
            continue
        n += 1
        _require(cp.waybelow == way_below_matrix(cp.poset), {"instance": k})
    return n


def check_subclasses(cfg: SuiteConfig) -> int:
    """Every law is checked on every instance; the first counterexample per law is kept."""
    failures: dict = {}

    def law(name, cond, where):
        if not cond and name not in failures:
            failures[name] = where

    acfs = [random_valid_acf(random.Random(f"{cfg.seed}:acf:{k}"), min(cfg.max_objects, 5),
                             min(cfg.max_attrs, 5)).acf for k in range(cfg.subclass_count)]
    posets = sample_posets(cfg)
    reports = [classify(acf) for acf in acfs] + [classify(rep(d).acf) for d in posets]
    for k, r in enumerate(reports):
        s = r.semantic
        where = {"instance": k}
        law("pointed", r.pointed_cond.passed == s.is_pointed, where)
        law("topped", r.topped_cond.passed == s.has_top, where)
        law("AD", not r.ad.passed or s.is_algebraic, where)
        law("BC", not r.bc.passed or r.semantic_nonempty_bc, where)
        law("SS", not (r.ss1.passed and r.ss2.passed)
            or (s.is_semilattice and s.waybelow_multiplicative), where)
    for k, d in enumerate(posets):
        r = reports[len(acfs) + k]
        s = domain_classify(d, empty_is_bounded=False)
        where = {"poset": k, "elements": list(d.elements),
                 "leq": [[i, j] for i in range(len(d)) for j in range(len(d)) if d.leq[i][j]]}
        law("rep pointed", not s.is_pointed or r.pointed_cond.passed, where)
        law("rep topped", not s.has_top or r.topped_cond.passed, where)
        law("rep BC", not s.is_bounded_complete or r.bc.passed, where)
        law("rep SS", not s.is_semilattice or (r.ss1.passed and r.ss2.passed), where)
    _require(not failures, failures)
    return len(reports)


def check_morphism_bijection(cfg: SuiteConfig) -> int:
    acfs = morphism_sample()
    n = 0
    for i, a in enumerate(acfs):
        for j, b in enumerate(acfs):
            ca, cb = a.concepts, b.concepts
            for m in enumerate_monotone_maps(ca.poset, cb.poset):
                n += 1
                phi = ConceptFunction(ca, cb, m.mapping)
                h = from_function(phi)
                report = validate(h)
                where = {"pair": [i, j], "map": list(m.mapping)}
                _require(report.passed, {**where, "report": report.as_dict()})
                _require(to_function(h) == phi, {**where, "law": "to_function(from_function)"})
                _require(from_function(to_function(h)) == h,
                         {**where, "law": "from_function(to_function)"})
    return n


def check_functor(cfg: SuiteConfig) -> int:
    acfs = morphism_sample()
    report = functor_check(acfs)
    _require(report.passed, report.failures[:5])
    for (i, j), size in report.hom_sizes.items():
        valid = sum(validate(h).passed for h in hom_set(acfs[i], acfs[j]))
        maps = len(enumerate_monotone_maps(acfs[i].concepts.poset, acfs[j].concepts.poset))
        _require(size == valid == maps, {"pair": [i, j], "morphisms": valid, "maps": maps})
    return report.compositions


def check_rep_morphisms(cfg: SuiteConfig) -> int:
    posets = [p for n in range(1, cfg.rep_morphism_max + 1) for p in poset_catalog(n)]
    reps = [rep(p) for p in posets]
    n = 0
    for i, rd in enumerate(reps):
        for j, re in enumerate(reps):
            maps = enumerate_monotone_maps(rd.domain, re.domain)
            for f in maps:
                n += 1
                g = from_scott(rd, re, f)
                where = {"pair": [i, j], "map": list(f.mapping)}
                _require(validate(g).passed, {**where, "law": "from_scott validates"})
                _require(to_scott(rd, re, g) == f, {**where, "law": "f = f_G_f"})
                _require(interpolated_image_check(rd, re, f), {**where, "law": "interpolation"})
            for h in hom_set(rd.acf, re.acf):
                _require(from_scott(rd, re, to_scott(rd, re, h)) == h,
                         {"pair": [i, j], "law": "G = G_f_G", "pairs": sorted(h.pairs())})
    return n


def check_symbolic(cfg: SuiteConfig) -> int:
    n = 0
    for fam in chains.FAMILIES:
        for depth in (3, 10, 32):
            n += 1
            r = chains.verify_chain_concept(fam, depth)
            _require(r.passed, r.as_dict())
    w = chains.l1_discontinuity_witness()
    _require(w.passed, w.as_dict())
    return n + 1


MUTATION_TARGETS = ("rep", "waybelow", "morphism_bijection")


def check_mutation(cfg: SuiteConfig) -> int:
    """With the kernel skipped, the rep, way-below and morphism checks must all fail."""
    still_passing = []
    with mutate_bracket("skip_kernel"):
        for name in MUTATION_TARGETS:
            if _run_one(name, cfg).passed:
                still_passing.append(name)
    _require(not still_passing, {"mutation": "skip_kernel", "still_passing": still_passing})
    return len(MUTATION_TARGETS)


RUNNERS: dict[str, Callable[[SuiteConfig], int]] = {
    "basic": check_basic,
    "induced": check_induced,
    "rep": check_rep,
    "waybelow": check_waybelow,
    "subclasses": check_subclasses,
    "morphism_bijection": check_morphism_bijection,
    "functor": check_functor,
    "rep_morphisms": check_rep_morphisms,
    "symbolic": check_symbolic,
    "mutation": check_mutation,
}


def _run_one(name: str, cfg: SuiteConfig) -> CheckResult:
    start = time.perf_counter()
    try:
        n = RUNNERS[name](cfg)
        return CheckResult(name, True, n, None, time.perf_counter() - start)
    except _Fail as e:
        return CheckResult(name, False, 0, e.payload, time.perf_counter() - start)
    except Exception as e:  # a crash inside a check is a failure of that check
        payload = {"error": type(e).__name__, "message": str(e),
                   "where": traceback.extract_tb(e.__traceback__)[-1].name}
        return CheckResult(name, False, 0, payload, time.perf_counter() - start)


def run_suite(cfg: SuiteConfig, workers: int = 1) -> SuiteReport:
    """Run the configured checks; with ``workers > 1`` they run on a thread pool.

    The mutation check flips a process-wide switch, so it always runs after
    the others have finished.
    """
    names = [n for n in CHECKS if n in cfg.checks]
    plain = [n for n in names if n != "mutation"]
    report = SuiteReport()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            for r in pool.map(lambda n: _run_one(n, cfg), plain):
                report.results[r.name] = r
    else:
        for n in plain:
            report.results[n] = _run_one(n, cfg)
    if "mutation" in names:
        report.results["mutation"] = _run_one("mutation", cfg)
    return report
