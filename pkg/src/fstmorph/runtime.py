"""Analyzer runtime: the combined lexical transducer and its lookup API.

A :class:`Grammar` owns a compiled machine whose upper side carries
root+tags and whose lower side carries surface strings.  ``apply_up`` maps a
surface word to its analyses, ``apply_down`` maps a lexical string to its
surface forms.  Both directions run on the selected lookup kernel.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from fstmorph import lexc
from fstmorph.fst import EPSILON, Fst, compose, determinize_min, trim
from fstmorph.interchange import format_fst, format_symbols, parse_fst, parse_symbols
from fstmorph.kernels import Matcher as _KernelMatcher
from fstmorph.symbols import SymbolTable, UnknownSymbolError

FORMAT_VERSION = 1
DEFAULT_MAX_OUTPUT_LEN = 64

NET_FILE = "net.fst"
SYMBOLS_FILE = "net.sym"
MANIFEST_FILE = "manifest.json"


class GrammarError(Exception):
    pass


class FstMatcher:
    """Kernel-backed lookup over one tape of a machine.

    ``side="lower"`` matches the lower tape and emits the upper one
    (analysis); ``side="upper"`` is the generation direction.
    """

    def __init__(self, fst: Fst, side: str) -> None:
        if side == "lower":
            arcs = [(a.source, a.output, a.input, a.target) for a in fst.arcs]
        elif side == "upper":
            arcs = [(a.source, a.input, a.output, a.target) for a in fst.arcs]
        else:
            raise ValueError(f"side must be 'upper' or 'lower', not {side!r}")
        self._impl = _KernelMatcher(fst.state_count, fst.start, fst.finals, arcs)

    def lookup(self, ids, max_out: int = DEFAULT_MAX_OUTPUT_LEN) -> list[tuple[int, ...]]:
        return self._impl.lookup(ids, max_out)


@dataclass(frozen=True, order=True)
class Analysis:
    """A lexical reading: root material plus the ordered suffix tags."""

    root: str
    tags: tuple[str, ...]

    @property
    def rendered(self) -> str:
        return self.root + "".join(self.tags)

    def __str__(self) -> str:
        return self.rendered

    @classmethod
    def from_symbols(cls, symbols: tuple[str, ...], tag_inventory: frozenset[str]) -> "Analysis":
        head = 0
        while head < len(symbols) and symbols[head] not in tag_inventory:
            head += 1
        return cls(root="".join(symbols[:head]), tags=tuple(symbols[head:]))


class Grammar:
    """An immutable compiled analyzer: machine + symbol table + tag inventory."""

    def __init__(self, net: Fst, symtab: SymbolTable, tags: tuple[str, ...]) -> None:
        self.net = net
        self.symtab = symtab
        self.tags = tuple(tags)
        self._tagset = frozenset(self.tags)
        self._up = FstMatcher(net, "lower")
        self._down = FstMatcher(net, "upper")

    def __repr__(self) -> str:
        return f"Grammar({self.net!r}, {len(self.tags)} tags)"

    def surface_ids(self, surface: str) -> list[int] | None:
        """Per-scalar tokenization of a surface word; None if any scalar is
        unknown to the grammar (such a word cannot have an analysis)."""
        ids = []
        for ch in surface:
            sid = self.symtab.get(ch)
            if sid is None:
                return None
            ids.append(sid)
        return ids

    def lexical_ids(self, lexical: str, strict: bool = False) -> list[int] | None:
        """Tokenize a root+tags string with longest-match over multichar tags.

        Unknown symbols yield None (no analysis can match), unless ``strict``
        in which case a GrammarError names the offending symbol.
        """
        try:
            return lexc.tokenize_lexical(lexical, self.symtab)
        except UnknownSymbolError as exc:
            if strict:
                sym = exc.args[0]
                kind = "tag" if sym.startswith("+") else "symbol"
                raise GrammarError(f"unknown {kind} {sym!r} in {lexical!r}") from None
            return None

    def apply_up(self, surface: str, max_output_len: int = DEFAULT_MAX_OUTPUT_LEN) -> list[Analysis]:
        """All analyses of a surface word, sorted; empty list if unknown."""
        ids = self.surface_ids(surface)
        if ids is None:
            return []
        out = self._up.lookup(ids, max_output_len)
        text_of = self.symtab.text_of
        return [
            Analysis.from_symbols(tuple(text_of(i) for i in seq), self._tagset)
            for seq in out
        ]

    def apply_down(self, lexical: str, max_output_len: int = DEFAULT_MAX_OUTPUT_LEN) -> list[str]:
        """All surface realizations of a root+tags string, sorted."""
        ids = self.lexical_ids(lexical)
        if ids is None:
            return []
        out = self._down.lookup(ids, max_output_len)
        text_of = self.symtab.text_of
        return ["".join(text_of(i) for i in seq) for seq in out]

    # -- persistence --------------------------------------------------------

    def save(self, directory: str | Path) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / NET_FILE).write_text(format_fst(self.net), encoding="utf-8", newline="\n")
        (directory / SYMBOLS_FILE).write_text(format_symbols(self.symtab), encoding="utf-8", newline="\n")
        manifest = {
            "format_version": FORMAT_VERSION,
            "start": self.net.start,
            "state_count": self.net.state_count,
            "tags": list(self.tags),
        }
        (directory / MANIFEST_FILE).write_text(
            json.dumps(manifest, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
            newline="\n",
        )

    @classmethod
    def load(cls, directory: str | Path) -> "Grammar":
        directory = Path(directory)
        manifest = json.loads((directory / MANIFEST_FILE).read_text(encoding="utf-8"))
        if manifest.get("format_version") != FORMAT_VERSION:
            raise GrammarError(
                f"unsupported grammar format version {manifest.get('format_version')!r}"
            )
        symtab = parse_symbols((directory / SYMBOLS_FILE).read_text(encoding="utf-8"))
        net = parse_fst((directory / NET_FILE).read_text(encoding="utf-8"), symtab)
        if net.start != manifest["start"] or net.state_count != manifest["state_count"]:
            raise GrammarError("grammar files disagree with their manifest")
        return cls(net, symtab, tuple(manifest["tags"]))


def used_tags(net: Fst, symtab: SymbolTable) -> tuple[str, ...]:
    """Multichar symbols that occur on the upper side of the machine."""
    seen = {a.input for a in net.arcs if a.input != EPSILON}
    return tuple(
        text for sid, text in symtab.symbols() if sid in seen and len(text) > 1 and sid != EPSILON
    )


def build_grammar(lexicon: Fst, rules: Fst, *, determinize: bool = True) -> Grammar:
    """Compose lexicon and rules into one lexical transducer.

    The rule machine must have been compiled against a symbol table already
    containing every surface symbol the lexicon can emit (compile the lexicon
    first).  An empty composition means the rules reject every surface form
    the lexicon generates, which is always a bug in the rule set.
    """
    if lexicon.symtab is not rules.symtab:
        raise GrammarError("lexicon and rules must share one SymbolTable")
    net = trim(compose(lexicon, rules))
    if net.is_empty():
        raise GrammarError("composition is empty: rule set derives no surface form")
    if determinize:
        net = determinize_min(net)
    symtab = lexicon.symtab
    return Grammar(net, symtab, used_tags(net, symtab))
