"""Precision / recall / F-score over a gold-annotated word list.

Recall is the fraction of input words the analyzer produced any analysis
for; precision is the fraction of produced words whose analysis set
intersects the gold set.  Scoring is per word, not per analysis: one
matching analysis makes the word correct.  Raw counts are kept on the
report so alternative metric readings stay computable.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

from fstmorph.runtime import Grammar


class ScoringError(ValueError):
    pass


@dataclass(frozen=True)
class GoldEntry:
    surface: str
    gold_analyses: frozenset[str]  # empty set means "should not analyze"

    def __post_init__(self):
        if not self.surface:
            raise ScoringError("gold entry with empty surface")


@dataclass(frozen=True)
class EvalReport:
    total: int
    produced: int   # words with at least one analysis
    correct: int    # produced words whose output intersects the gold set
    precision: float
    recall: float
    f_score: float

    def as_block(self) -> str:
        return (
            f"total: {self.total}\n"
            f"produced: {self.produced}\n"
            f"correct: {self.correct}\n"
            f"precision: {self.precision:.2f}\n"
            f"recall: {self.recall:.2f}\n"
            f"f_score: {self.f_score:.2f}\n"
        )

    def as_table(self) -> str:
        header = f"{'Words':>8}  {'Precision':>9}  {'Recall':>7}  {'F-Score':>7}"
        row = (
            f"{self.total:>8}  {self.precision:>9.2f}  {self.recall:>7.2f}"
            f"  {self.f_score:>7.2f}"
        )
        return header + "\n" + row + "\n"


def _round2(value: float) -> float:
    return float(Decimal(repr(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def f_score(p: float, r: float) -> float:
    """Harmonic mean of two percentages, rounded half-up to 2 decimals."""
    if p + r == 0:
        return 0.0
    return _round2(2.0 * p * r / (p + r))


def evaluate(grammar: Grammar, gold: Sequence[GoldEntry]) -> EvalReport:
    if not gold:
        raise ScoringError("empty gold list")
    produced = 0
    correct = 0
    for entry in gold:
        output = {a.rendered for a in grammar.apply_up(entry.surface)}
        if output:
            produced += 1
            if output & entry.gold_analyses:
                correct += 1
    precision = _round2(100.0 * correct / produced) if produced else 0.0
    recall = _round2(100.0 * produced / len(gold))
    return EvalReport(
        total=len(gold),
        produced=produced,
        correct=correct,
        precision=precision,
        recall=recall,
        f_score=f_score(precision, recall),
    )


def parse_gold(source: str) -> list[GoldEntry]:
    """Read ``surface<TAB>analysis[,analysis...]`` lines; an empty second
    field marks a word that should not receive any analysis."""
    entries: list[GoldEntry] = []
    for lineno, raw in enumerate(source.split("\n"), 1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ScoringError(f"line {lineno}: expected 'surface<TAB>analyses'")
        surface, analyses = fields
        if not surface:
            raise ScoringError(f"line {lineno}: empty surface form")
        gold = frozenset(a for a in analyses.split(",") if a) if analyses else frozenset()
        entries.append(GoldEntry(surface, gold))
    return entries
