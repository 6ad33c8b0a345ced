"""Bilingual analogical proportions between finite-presented algebras."""

from .algebra import (
    Algebra,
    GroundSpace,
    Universe,
    algebra_from_dict,
    enumerate_ground_space,
    evaluate,
    is_constant_term,
    is_injective_term,
    load_algebra,
    load_pairing,
)
from .errors import (
    ArityMismatch,
    DuplicatePairing,
    EmptySpace,
    HedgePropError,
    InvalidJustification,
    InvalidSubstitution,
    LambdaAtRoot,
    OutOfUniverse,
    ParseError,
    PartialTable,
    PreconditionViolated,
    RankMismatch,
    SizeMismatch,
    UnboundVariable,
    UnknownBuiltin,
    UnknownSymbol,
)
from .justify import (
    Bounds,
    JustificationSet,
    enumerate_hedges,
    is_trivial,
    jus_arrow,
    jus_arrow_pair,
    match_hedge,
)
from .proportion import (
    Case,
    ProportionVerdict,
    UniquenessPart,
    Verdict,
    functional_proportion,
    holds_arrow,
    holds_proportion,
    is_characteristic,
    solve_d,
    uniqueness_lemma,
)
from .terms import (
    LAMBDA,
    App,
    Justification,
    LanguagePair,
    RankedSymbol,
    Side,
    Substitution,
    Var,
    apply_substitution,
    build_language_pair,
    canonical_hedge,
    canonicalize,
    parse_hedge,
    parse_justification,
    parse_term,
    show,
)

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "App",
    "ArityMismatch",
    "Bounds",
    "Case",
    "DuplicatePairing",
    "EmptySpace",
    "GroundSpace",
    "HedgePropError",
    "InvalidJustification",
    "InvalidSubstitution",
    "Justification",
    "JustificationSet",
    "LAMBDA",
    "LambdaAtRoot",
    "LanguagePair",
    "OutOfUniverse",
    "ParseError",
    "PartialTable",
    "PreconditionViolated",
    "ProportionVerdict",
    "RankMismatch",
    "RankedSymbol",
    "Side",
    "SizeMismatch",
    "Substitution",
    "UnboundVariable",
    "UniquenessPart",
    "Universe",
    "UnknownBuiltin",
    "UnknownSymbol",
    "Var",
    "Verdict",
    "algebra_from_dict",
    "apply_substitution",
    "build_language_pair",
    "canonical_hedge",
    "canonicalize",
    "enumerate_ground_space",
    "enumerate_hedges",
    "evaluate",
    "functional_proportion",
    "holds_arrow",
    "holds_proportion",
    "is_characteristic",
    "is_constant_term",
    "is_injective_term",
    "is_trivial",
    "jus_arrow",
    "jus_arrow_pair",
    "load_algebra",
    "load_pairing",
    "match_hedge",
    "parse_hedge",
    "parse_justification",
    "parse_term",
    "show",
    "solve_d",
    "uniqueness_lemma",
]
