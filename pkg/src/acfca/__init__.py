"""Attribute continuous formal contexts: kernel operators, selections, continuous concepts,
representations of finite continuous domains and the morphisms between them."""

from .concepts import (
    ConceptPoset,
    ContinuousConcept,
    decompose,
    directed_sup,
    enumerate_concepts,
    is_compact,
    is_continuous_concept,
    way_below,
)
from .context import (
    FormalContext,
    attr_closure,
    enumerate_formal_concepts,
    extent,
    format_cxt,
    intent,
    is_approximable_concept,
    is_formal_concept,
    parse_cxt,
)
from .errors import (
    AcfError,
    ContextMismatchError,
    EmptyAttributeError,
    ForeignConceptError,
    InputError,
    InvalidSubsetError,
    NotDirectedError,
    SizeLimitError,
    ValidationError,
)
from .kernel import (
    AcfContext,
    KernelOperator,
    Selection,
    bracket,
    build_acf,
    check_ca1,
    check_fc,
    check_kernel_axioms,
    induced_acf,
    is_f_approximable,
)
from .morphisms import (
    ConceptFunction,
    FMorphism,
    apply,
    compose,
    from_function,
    from_scott,
    functor_check,
    identity_morphism,
    to_function,
    to_scott,
    validate,
)
from .order import FinitePoset, MonotoneMap, domain_classify, way_below_matrix
from .representation import RepContext, rep, verify_roundtrip
from .subclasses import classify

__version__ = "0.1.0"

__all__ = [
    "ConceptPoset",
    "ContinuousConcept",
    "decompose",
    "directed_sup",
    "enumerate_concepts",
    "is_compact",
    "is_continuous_concept",
    "way_below",
    "FormalContext",
    "attr_closure",
    "enumerate_formal_concepts",
    "extent",
    "format_cxt",
    "intent",
    "is_approximable_concept",
    "is_formal_concept",
    "parse_cxt",
    "AcfError",
    "ContextMismatchError",
    "EmptyAttributeError",
    "ForeignConceptError",
    "InputError",
    "InvalidSubsetError",
    "NotDirectedError",
    "SizeLimitError",
    "ValidationError",
    "AcfContext",
    "KernelOperator",
    "Selection",
    "bracket",
    "build_acf",
    "check_ca1",
    "check_fc",
    "check_kernel_axioms",
    "induced_acf",
    "is_f_approximable",
    "ConceptFunction",
    "FMorphism",
    "apply",
    "compose",
    "from_function",
    "from_scott",
    "functor_check",
    "identity_morphism",
    "to_function",
    "to_scott",
    "validate",
    "FinitePoset",
    "MonotoneMap",
    "domain_classify",
    "way_below_matrix",
    "RepContext",
    "rep",
    "verify_roundtrip",
    "classify",
]
