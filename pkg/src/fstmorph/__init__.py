"""fstmorph: a finite-state morphology toolkit.

Compiles continuation-class lexicons and context-dependent replacement
rules into transducers, answers bidirectional analysis/generation queries,
and ships a complete Bishnupriya Manipuri analyzer with its evaluation
harness (see :mod:`fstmorph.bpy`).
"""

from fstmorph.fst import (
    Arc,
    Fst,
    FstError,
    PathLimitError,
    SymbolTableMismatch,
    atom,
    compose,
    concat,
    determinize_min,
    fused_paths,
    identity_star,
    invert,
    make_fst,
    paths,
    project,
    reverse,
    star,
    trim,
    union,
)
from fstmorph.lexc import LexcError, LexiconAst, compile_lexicon, parse_lexc, tokenize_lexical
from fstmorph.rules import (
    ReplaceRule,
    RuleError,
    RuleSet,
    apply_rule_oracle,
    apply_ruleset_oracle,
    compile_rule,
    compile_ruleset,
    parse_rules,
)
from fstmorph.runtime import Analysis, Grammar, GrammarError, build_grammar
from fstmorph.scoring import EvalReport, GoldEntry, evaluate, f_score
from fstmorph.symbols import EPSILON, SymbolTable, UnknownSymbolError

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "Arc",
    "EPSILON",
    "EvalReport",
    "Fst",
    "FstError",
    "GoldEntry",
    "Grammar",
    "GrammarError",
    "LexcError",
    "LexiconAst",
    "PathLimitError",
    "ReplaceRule",
    "RuleError",
    "RuleSet",
    "SymbolTable",
    "SymbolTableMismatch",
    "UnknownSymbolError",
    "apply_rule_oracle",
    "apply_ruleset_oracle",
    "atom",
    "build_grammar",
    "compile_lexicon",
    "compile_rule",
    "compile_ruleset",
    "compose",
    "concat",
    "determinize_min",
    "evaluate",
    "f_score",
    "fused_paths",
    "identity_star",
    "invert",
    "make_fst",
    "parse_lexc",
    "parse_rules",
    "paths",
    "project",
    "reverse",
    "star",
    "tokenize_lexical",
    "trim",
    "union",
]
