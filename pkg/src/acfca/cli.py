"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 input error, 3 size limit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import chains
from .concepts import enumerate_concepts, to_dot
from .context import parse_cxt
from .errors import AcfError, InputError, ValidationError
from .kernel import AcfContext, check_ca1, check_kernel_axioms, induced_acf
from .morphisms import (
    ConceptFunction,
    apply,
    compose,
    from_function,
    to_function,
    validate,
)
from .order import poset_from_json
from .representation import check_brackets_are_way_below, rep, verify_roundtrip
from .serialize import acf_from_json, acf_to_json, dumps, load_json, morphism_from_json, morphism_to_json
from .subclasses import classify, format_report
from .suite import CHECKS, SuiteConfig, run_suite


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None


def load_acf(path: str) -> AcfContext:
    """JSON context documents, or a plain ``.cxt`` context taken with its induced selection."""
    if path.endswith(".cxt"):
        return induced_acf(parse_cxt(_read_text(path)))
    return acf_from_json(load_json(path))


def _labels(acf: AcfContext, s) -> str:
    return "{" + ",".join(acf.context.attr_labels(s)) + "}"


def _emit(args, doc: dict, text: str) -> None:
    sys.stdout.write(dumps(doc) if args.json else text)


def _parse_set(acf: AcfContext, spec: str) -> frozenset:
    """Comma-separated attribute labels or indices; empty string is the empty set."""
    out = set()
    for tok in filter(None, (t.strip() for t in spec.split(","))):
        if tok in acf.context.attributes:
            out.add(acf.context.attributes.index(tok))
        elif tok.isdigit():
            out.add(int(tok))
        else:
            raise InputError(f"unknown attribute {tok!r}")
    return frozenset(out)


# --- commands -----------------------------------------------------------------

def cmd_validate(args) -> int:
    try:
        acf = load_acf(args.file)
    except ValidationError as e:
        doc = {"valid": False, "message": str(e),
               **{k: v.as_dict() for k, v in e.reports.items()}}
        _emit(args, doc, f"invalid: {e}\n")
        return 1
    kr = check_kernel_axioms(acf.context, acf.kernel)
    cr = check_ca1(acf.context, acf.kernel, acf.selection)
    doc = {"valid": True, "kernel": kr.as_dict(), "ca1": cr.as_dict(),
           "selection_size": len(acf.selection), "concepts": len(acf.concepts)}
    lines = ["valid: kernel axioms and CA1 hold",
             f"selection members: {len(acf.selection)}",
             f"continuous concepts: {len(acf.concepts)}"]
    if kr.a2_literal.passed is None:
        lines.append(f"note: literal idempotence undetermined ({kr.a2_literal.note})")
    elif kr.a2_readings_diverge:
        lines.append("note: literal idempotence fails although idempotence through the closure holds")
    _emit(args, doc, "\n".join(lines) + "\n")
    return 0


def cmd_concepts(args) -> int:
    acf = load_acf(args.file)
    cp = enumerate_concepts(acf)
    if args.dot:
        Path(args.dot).write_text(to_dot(cp))
    doc = {
        "concepts": [{"attributes": sorted(c.attrs), "labels": acf.context.attr_labels(c.attrs),
                      "witnesses": list(c.witnesses)} for c in cp.concepts],
        "way_below": [[i, j] for i in range(len(cp)) for j in range(len(cp)) if cp.waybelow[i][j]],
    }
    lines = [f"{i}: {cp.label(i)}  witnesses {list(c.witnesses)}" for i, c in enumerate(cp.concepts)]
    lines.append("way-below: " + " ".join(f"{i}<<{j}" for i, j in doc["way_below"]))
    _emit(args, doc, "\n".join(lines) + "\n")
    return 0


def cmd_classify(args) -> int:
    report = classify(load_acf(args.file))
    _emit(args, report.as_dict(), format_report(report))
    return 0


def cmd_rep(args) -> int:
    d = poset_from_json(load_json(args.file))
    rc = rep(d)
    rt = verify_roundtrip(rc)
    verification = {"brackets_are_way_below_sets": check_brackets_are_way_below(rc), "roundtrip": rt.passed,
                    "counterexample": rt.counterexample, "concepts": len(rc.concepts)}
    ctx_doc = acf_to_json(rc.acf)
    if args.out:
        Path(args.out).write_text(dumps(ctx_doc))
    if args.json:
        doc = {"verification": verification}
        if not args.out:
            doc["context"] = ctx_doc
        sys.stdout.write(dumps(doc))
    else:
        if not args.out:
            sys.stdout.write(dumps(ctx_doc))
        sys.stdout.write(
            f"selection members: {len(rc.acf.selection)}\n"
            f"brackets equal way-below sets: {verification['brackets_are_way_below_sets']}\n"
            f"round trip: {rt.passed}\n")
    return 0 if rt.passed and verification["brackets_are_way_below_sets"] else 1


def _load_morphism(path: str):
    return morphism_from_json(load_json(path), base=Path(path).parent)


def cmd_morphism(args) -> int:
    sub = args.msub
    if sub == "validate":
        h = _load_morphism(args.file)
        r = validate(h, exhaustive=args.exhaustive)
        text = "".join(f"{k}: {r.as_dict()[k]}\n" for k in ("AR1", "AR2", "AR3", "AR4", "AR5"))
        text += f"valid: {r.passed}\n"
        for k, ce in r.as_dict()["counterexamples"].items():
            text += f"counterexample {k}: {ce}\n"
        _emit(args, r.as_dict(), text)
        return 0 if r.passed else 1
    if sub == "apply":
        h = _load_morphism(args.file)
        x = _parse_set(h.source, args.set)
        y = apply(h, x)
        _emit(args, {"input": sorted(x), "image": sorted(y)},
              f"{_labels(h.source, x)} -> {_labels(h.target, y)}\n")
        return 0
    if sub == "to-fn":
        h = _load_morphism(args.file)
        r = validate(h)
        if not r.passed:
            raise ValidationError("morphism is not valid", morphism=r)
        fn = to_function(h)
        src, tgt = fn.source, fn.target
        doc = {"mapping": list(fn.mapping),
               "concepts": [{"source": sorted(src.concepts[i].attrs),
                             "image": sorted(tgt.concepts[v].attrs)} for i, v in enumerate(fn.mapping)]}
        text = "".join(f"{src.label(i)} -> {tgt.label(v)}\n" for i, v in enumerate(fn.mapping))
        _emit(args, doc, text)
        return 0
    if sub == "from-fn":
        src, tgt = load_acf(args.source), load_acf(args.target)
        try:
            mapping = [int(t) for t in args.map.split(",") if t.strip()]
        except ValueError:
            raise InputError("--map takes comma-separated concept indices") from None
        h = from_function(ConceptFunction(src.concepts, tgt.concepts, mapping))
        sys.stdout.write(dumps(morphism_to_json(h, args.source, args.target)))
        return 0
    if sub == "compose":
        h2, h1 = _load_morphism(args.second), _load_morphism(args.first)
        h = compose(h2, h1)
        sys.stdout.write(dumps(morphism_to_json(h)))
        return 0
    raise InputError(f"unknown morphism command {sub!r}")


def cmd_example(args) -> int:
    if args.depth < 3:
        raise InputError("--depth must be at least 3")
    r = chains.verify_chain_concept(args.family, args.depth)
    w = chains.l1_discontinuity_witness(min(args.depth, chains.ORACLE_DEPTH))
    if args.json:
        sys.stdout.write(dumps({"example": r.as_dict(), "witness": w.as_dict()}))
    else:
        sys.stdout.write(chains.format_chain_report(args.family, args.depth))
    return 0 if r.passed and w.passed else 1


def cmd_verify_suite(args) -> int:
    checks = CHECKS if args.checks is None else tuple(
        c for c in (t.strip() for t in args.checks.split(",")) if c)
    cfg = SuiteConfig(seed=args.seed, count=args.count, max_attrs=args.max_attrs,
                      max_objects=args.max_objects, max_poset=args.max_poset,
                      random_posets=args.random_posets, checks=frozenset(checks))
    report = run_suite(cfg, workers=args.workers)
    if args.json:
        sys.stdout.write(dumps(report.as_dict()))
    else:
        for r in report.as_dict()["checks"]:
            status = "PASS" if r["passed"] else "FAIL"
            line = f"{status} {r['name']} ({r['instances']} instances)"
            if not r["passed"]:
                line += f": {json.dumps(r['counterexample'], sort_keys=True)}"
            sys.stdout.write(line + "\n")
    return 0 if report.passed else 1


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="acfca", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a context document")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("concepts", parents=[common], help="list continuous concepts")
    s.add_argument("file")
    s.add_argument("--dot", metavar="PATH", help="also write the concept poset as Graphviz")
    s.set_defaults(func=cmd_concepts)

    s = sub.add_parser("classify", parents=[common], help="subclass conditions and semantics")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("rep", parents=[common], help="representing context of a finite poset")
    s.add_argument("file", help="poset JSON")
    s.add_argument("-o", "--out", help="write the context JSON here")
    s.set_defaults(func=cmd_rep)

    s = sub.add_parser("morphism", help="morphism operations")
    msub = s.add_subparsers(dest="msub", required=True)
    m = msub.add_parser("validate", parents=[common])
    m.add_argument("file")
    m.add_argument("--exhaustive", action="store_true", help="try every subset of each image")
    m = msub.add_parser("apply", parents=[common])
    m.add_argument("file")
    m.add_argument("--set", required=True, help="comma-separated source attributes")
    m = msub.add_parser("to-fn", parents=[common])
    m.add_argument("file")
    m = msub.add_parser("from-fn", parents=[common])
    m.add_argument("--source", required=True)
    m.add_argument("--target", required=True)
    m.add_argument("--map", required=True, help="target concept index per source concept")
    m = msub.add_parser("compose", parents=[common], help="SECOND after FIRST")
    m.add_argument("second")
    m.add_argument("first")
    s.set_defaults(func=cmd_morphism)

    s = sub.add_parser("example", parents=[common], help="symbolic chain examples")
    s.add_argument("name", choices=["fig1"])
    s.add_argument("--family", choices=list(chains.FAMILIES), default="L1")
    s.add_argument("--depth", type=int, default=chains.DEFAULT_DEPTH)
    s.set_defaults(func=cmd_example)

    s = sub.add_parser("verify-suite", parents=[common], help="run the theorem suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=200)
    s.add_argument("--max-attrs", type=int, default=6)
    s.add_argument("--max-objects", type=int, default=6)
    s.add_argument("--max-poset", type=int, default=5)
    s.add_argument("--random-posets", type=int, default=100)
    s.add_argument("--checks", help=f"comma-separated subset of: {', '.join(CHECKS)}")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_verify_suite)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AcfError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
