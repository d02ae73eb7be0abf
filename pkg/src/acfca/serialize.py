"""JSON documents for validated contexts and morphisms.

Indices are 0-based and every set is written sorted ascending, so the same
structure always serializes to the same bytes.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Callable

from .context import FormalContext
from .errors import InputError
from .kernel import AcfContext, KernelOperator, Selection, build_acf
from .morphisms import FMorphism


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def load_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def acf_to_json(acf: AcfContext) -> dict:
    ctx = acf.context
    if acf.kernel.kind == "identity":
        kernel = {"type": "identity"}
    else:
        entries = sorted(acf.kernel.table.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
        kernel = {"type": "table",
                  "entries": [{"closed": sorted(k), "image": sorted(v)} for k, v in entries]}
    return {
        "objects": list(ctx.objects),
        "attributes": list(ctx.attributes),
        "incidence": [list(p) for p in ctx.pairs()],
        "kernel": kernel,
        "selection": [sorted(f) for f in acf.selection],
    }


def _field(doc: dict, name: str):
    try:
        return doc[name]
    except (KeyError, TypeError):
        raise InputError(f"document is missing {name!r}") from None


def _index_list(v, what: str) -> list[int]:
    if not isinstance(v, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in v):
        raise InputError(f"{what} must be a list of integer indices")
    return v


def context_from_json(doc: dict) -> FormalContext:
    objects = [str(o) for o in _field(doc, "objects")]
    attributes = [str(m) for m in _field(doc, "attributes")]
    pairs = []
    for p in _field(doc, "incidence"):
        p = _index_list(p, "incidence entry")
        if len(p) != 2:
            raise InputError("incidence entries are [objectIndex, attributeIndex] pairs")
        pairs.append(tuple(p))
    return FormalContext.from_pairs(objects, attributes, pairs)


def kernel_from_json(doc: dict) -> KernelOperator:
    kind = _field(doc, "type")
    if kind == "identity":
        return KernelOperator.identity()
    if kind == "table":
        table = {}
        for e in _field(doc, "entries"):
            table[frozenset(_index_list(_field(e, "closed"), "closed"))] = frozenset(
                _index_list(_field(e, "image"), "image"))
        return KernelOperator.from_table(table)
    raise InputError(f"unknown kernel type {kind!r}")


def acf_from_json(doc: dict) -> AcfContext:
    ctx = context_from_json(doc)
    kernel = kernel_from_json(_field(doc, "kernel"))
    sel = [frozenset(_index_list(f, "selection member")) for f in _field(doc, "selection")]
    return build_acf(ctx, kernel, Selection(tuple(sel)))


def morphism_to_json(h: FMorphism, source=None, target=None) -> dict:
    """``source``/``target`` may be file references; by default contexts are inlined."""
    return {
        "source": source if source is not None else acf_to_json(h.source),
        "target": target if target is not None else acf_to_json(h.target),
        "pairs": [list(p) for p in sorted(h.pairs())],
    }


def _resolve(ref, loader: Callable[[str], dict]) -> AcfContext:
    if isinstance(ref, str):
        return acf_from_json(loader(ref))
    if isinstance(ref, dict):
        return acf_from_json(ref)
    raise InputError("morphism source/target must be an inline context or a file reference")


def morphism_from_json(doc: dict, base: str | Path | None = None) -> FMorphism:
    """File references are resolved relative to ``base``."""
    root = Path(base) if base is not None else Path(".")
    loader = lambda ref: load_json(root / ref)  # noqa: E731
    src = _resolve(_field(doc, "source"), loader)
    tgt = _resolve(_field(doc, "target"), loader)
    pairs = []
    for p in _field(doc, "pairs"):
        p = _index_list(p, "pair")
        if len(p) != 2:
            raise InputError("pairs are [selectionIndex, targetAttributeIndex]")
        pairs.append(tuple(p))
    return FMorphism.from_pairs(src, tgt, pairs)
