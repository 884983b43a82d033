"""Proof search and uniform interpolation for multi-agent modal logics.

The package decides sequents of K, KD and KT over any finite set of agents,
computes uniform interpolants ("forgetting" propositional variables) as plain
syntax, eliminates propositional quantifiers through those interpolants, and
cross-checks everything against a bounded Kripke-semantics oracle.
"""

from .calculus import (
    AUDIT, Derivation, Logic, NaiveResult, ProofResult, SearchStats,
    check_derivation, naive_kt_prove, prove, prove_tplus,
)
from .interpolation import (
    InterpolantReport, InterpolationProblem, exists_forget, forget_formula,
    forget_kkd, forget_t, post_interpolant, pre_interpolant, verify_uniform,
)
from .output import render
from .parsing import ParseError, SourceSpan, parse_formula, parse_sequent
from .quantifiers import TranslationTrace, eliminate_quantifiers, replay_trace
from .semantics import KripkeModel, countermodel, eval_formula
from .syntax import (
    CaptureError, Formula, LogicError, Multiset, NotFirstOrderError, Sequent,
    StoreError, TSequent, and_, big_or, bot, box, box_count, diamond, exists,
    flats, forall, free_vars, imp, is_critical, modal_depth, multiset, neg,
    or_, substitute, top, var, weight,
)

__version__ = "0.1.0"

__all__ = [
    "AUDIT", "CaptureError", "Derivation", "Formula", "InterpolantReport",
    "InterpolationProblem", "KripkeModel", "Logic", "LogicError", "Multiset",
    "NaiveResult", "NotFirstOrderError", "ParseError", "ProofResult",
    "SearchStats", "Sequent", "SourceSpan", "StoreError", "TSequent",
    "TranslationTrace", "and_", "big_or", "bot", "box", "box_count",
    "check_derivation", "countermodel", "diamond", "eliminate_quantifiers",
    "eval_formula", "exists", "exists_forget", "flats", "forall",
    "forget_formula", "forget_kkd", "forget_t", "free_vars", "imp",
    "is_critical", "modal_depth", "multiset", "naive_kt_prove", "neg", "or_",
    "parse_formula", "parse_sequent", "post_interpolant", "pre_interpolant",
    "prove", "prove_tplus", "render", "replay_trace", "substitute", "top",
    "var", "verify_uniform", "weight",
]
