"""The bundled Bishnupriya Manipuri analyzer.

Grammar data lives in ``fstmorph/data``: a continuation-class lexicon
(``bpy.lexc``), the boundary alternation rules (``bpy.regex``), and gold
word/analysis fixtures (``bpy_gold.tsv``).  The lexicon holds 150 noun and
50 verb roots; roots beyond the attested ones are clearly marked
placeholders (kept in their own LEXICON blocks) that exist to exercise
realistic lexicon sizes and are excluded from gold fixtures.

Noun suffix slots are number (plural, plural/singular definitive, or
singular), then an optional case marker, then an optional emphatic marker.
Verbs inflect for tense x person plus the past-perfect pair; Meitei
(Tibeto-Burman) verb roots never take a suffix directly and are linked
through an Indo-Aryan root first.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from fstmorph import lexc, rules
from fstmorph.runtime import Grammar, GrammarError, build_grammar
from fstmorph.symbols import SymbolTable

TAGSET = frozenset(
    {
        "+Noun", "+Verb", "+Sg", "+Pl", "+CM", "+LCM", "+EM", "+PDM", "+SDM",
        "+Pres", "+Past", "+Fut", "+1P", "+2P", "+3P", "+PsPSg", "+PsPPl",
    }
)

NOUN_BLOCKS = ("Nouns", "NounPlaceholders")
IA_VERB_BLOCKS = ("IAVerbs", "IAVerbPlaceholders")
MEITEI_BLOCKS = ("MeiteiVerbs", "MeiteiVerbPlaceholders")

_NOUN_SEQUENCES = [
    ("+Pl",), ("+PDM",), ("+Sg",), ("+Sg", "+SDM"),
]
_NOUN_TRAILERS = [(), ("+CM",), ("+LCM",)]
_NOUN_EMPH = [(), ("+EM",)]
_VERB_SEQUENCES = [
    (tense, person)
    for tense in ("+Pres", "+Past", "+Fut")
    for person in ("+1P", "+2P", "+3P")
] + [("+PsPSg",), ("+PsPPl",)]


def data_dir() -> Path:
    return Path(resources.files("fstmorph") / "data")


def _read(name: str) -> str:
    return (resources.files("fstmorph") / "data" / name).read_text(encoding="utf-8")


@functools.lru_cache(maxsize=None)
def lexicon_ast() -> lexc.LexiconAst:
    return lexc.parse_lexc(_read("bpy.lexc"), filename="bpy.lexc")


@functools.lru_cache(maxsize=None)
def rule_set() -> rules.RuleSet:
    return rules.parse_rules(_read("bpy.regex"), filename="bpy.regex")


def _roots(block_names) -> tuple[str, ...]:
    ast = lexicon_ast()
    out: list[str] = []
    for block in ast.lexicons:
        if block.name in block_names:
            out.extend(entry.upper for entry in block.entries)
    return tuple(out)


def noun_roots(placeholders: bool = True) -> tuple[str, ...]:
    return _roots(NOUN_BLOCKS if placeholders else NOUN_BLOCKS[:1])


def ia_verb_roots(placeholders: bool = True) -> tuple[str, ...]:
    return _roots(IA_VERB_BLOCKS if placeholders else IA_VERB_BLOCKS[:1])


def meitei_verb_roots(placeholders: bool = True) -> tuple[str, ...]:
    return _roots(MEITEI_BLOCKS if placeholders else MEITEI_BLOCKS[:1])


@functools.lru_cache(maxsize=None)
def load_bundled(determinize: bool = True) -> Grammar:
    """Parse, compile, and compose the bundled lexicon and rules."""
    symtab = SymbolTable()
    lexicon = lexc.compile_lexicon(lexicon_ast(), symtab)
    ruleset = rules.compile_ruleset(rule_set(), symtab)
    return build_grammar(lexicon, ruleset, determinize=determinize)


@dataclass(frozen=True)
class GoldFixture:
    surface: str
    analyses: frozenset[str]
    source: str


@functools.lru_cache(maxsize=None)
def gold_fixtures() -> tuple[GoldFixture, ...]:
    fixtures = []
    for lineno, line in enumerate(_read("bpy_gold.tsv").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3 or not fields[1]:
            raise ValueError(f"bpy_gold.tsv:{lineno}: expected surface<TAB>analyses<TAB>source")
        surface, analyses, source = fields
        fixtures.append(GoldFixture(surface, frozenset(analyses.split(",")), source))
    return tuple(fixtures)


def paradigm(root: str, pos: str) -> list[tuple[tuple[str, ...], frozenset[str]]]:
    """Full generation table for one root: (tag sequence, surface forms)."""
    grammar = load_bundled()
    if pos == "noun":
        if root not in noun_roots():
            raise GrammarError(f"unknown noun root {root!r}")
        sequences = [
            ("+Noun",) + number + case + emph
            for number in _NOUN_SEQUENCES
            for case in _NOUN_TRAILERS
            for emph in _NOUN_EMPH
        ]
    elif pos == "verb":
        if root not in ia_verb_roots() and root not in meitei_verb_roots():
            raise GrammarError(f"unknown verb root {root!r}")
        sequences = [("+Verb",) + seq for seq in _VERB_SEQUENCES]
    else:
        raise ValueError(f"pos must be 'noun' or 'verb', not {pos!r}")
    table = []
    for seq in sequences:
        surfaces = grammar.apply_down(root + "".join(seq))
        table.append((seq, frozenset(surfaces)))
    return table
