"""Lambda-Pi modulo rewriting kernel with two-level and cubical type theory corpora."""

from ._core import (
    FuelExhausted,
    OutOfDomain,
    ParseError,
    Signature,
    Term,
    TheoryConfig,
    TypeCheckError,
    check,
    check_rule_sound,
    check_text,
    convertible,
    critical_pairs,
    extend,
    face_eq,
    infer,
    interval_eq,
    load_theory,
    normalize,
    normalize_traced,
    parse_term,
    run_cli,
    theory_files,
    whnf,
)

__all__ = [
    "FuelExhausted",
    "OutOfDomain",
    "ParseError",
    "Signature",
    "Term",
    "TheoryConfig",
    "TypeCheckError",
    "check",
    "check_rule_sound",
    "check_text",
    "convertible",
    "critical_pairs",
    "extend",
    "face_eq",
    "infer",
    "interval_eq",
    "load_theory",
    "normalize",
    "normalize_traced",
    "parse_term",
    "run_cli",
    "theory_files",
    "whnf",
]
