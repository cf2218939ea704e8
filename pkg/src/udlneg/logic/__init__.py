"""Typed higher-order term language, reducer, and finite-model oracle."""

from .equiv import ac_equivalent, alpha_equivalent, canonical_form
from .model import Model, UnknownPredicate, all_models, model_check
from .reduce import (
    Step, alpha_rename, beta_reduce, eq_eliminate, existential_closure, normalize_names,
    reduction_steps, simplify_true, substitute,
)
from .scope import ScopeReport, atoms_outside_negation, extract_scope
from .terms import (
    EQ, TRUE, And, App, Const, Exists, Forall, IllTyped, Implies, Lam, Not, NotClosable,
    Pred, Proj, Term, TrueT, Var, conj, conjuncts, free_vars, is_closed,
)
from .text import TermSyntaxError, format_term, parse_term, readable, term_from_json, term_to_json
from .types import EdgeType, VT, VT_T, T, V, Fn, SemType, check_type, has_type, infer_type

__all__ = [
    "ac_equivalent", "alpha_equivalent", "canonical_form",
    "Model", "UnknownPredicate", "all_models", "model_check",
    "Step", "alpha_rename", "beta_reduce", "eq_eliminate", "existential_closure",
    "normalize_names", "reduction_steps", "simplify_true", "substitute",
    "ScopeReport", "atoms_outside_negation", "extract_scope",
    "EQ", "TRUE", "And", "App", "Const", "Exists", "Forall", "IllTyped", "Implies", "Lam", "Not",
    "NotClosable", "Pred", "Proj", "Term", "TrueT", "Var", "conj", "conjuncts", "free_vars",
    "is_closed",
    "TermSyntaxError", "format_term", "parse_term", "readable", "term_from_json", "term_to_json",
    "EdgeType", "VT", "VT_T", "T", "V", "Fn", "SemType", "check_type", "has_type", "infer_type",
]
