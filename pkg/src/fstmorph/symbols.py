"""Symbol tables: a bijection between symbol strings and dense integer ids.

A symbol is either a single Unicode scalar (one codepoint) or a
multicharacter tag such as ``+Pl``.  Id 0 is reserved for epsilon, which is
rendered ``@0@`` in interchange files and written as a bare ``0`` in lexicon
entries.
"""

from __future__ import annotations

from typing import Iterator

EPSILON = 0
EPSILON_TEXT = "@0@"


class UnknownSymbolError(KeyError):
    """A symbol string that is not registered in the table."""


class SymbolTable:
    """Bidirectional map between symbol strings and dense integer ids."""

    __slots__ = ("_texts", "_ids", "_multichar_cache", "_version")

    def __init__(self) -> None:
        self._texts: list[str] = [EPSILON_TEXT]
        self._ids: dict[str, int] = {EPSILON_TEXT: EPSILON}
        self._multichar_cache: tuple[int, dict[str, list[str]]] | None = None
        self._version = 0

    def __len__(self) -> int:
        return len(self._texts)

    def __contains__(self, sym: str) -> bool:
        return sym in self._ids

    def __repr__(self) -> str:
        return f"SymbolTable({len(self._texts)} symbols)"

    def add(self, sym: str) -> int:
        """Register ``sym`` (a no-op if already present) and return its id."""
        sid = self._ids.get(sym)
        if sid is not None:
            return sid
        if not sym:
            raise ValueError("symbol strings must be non-empty")
        sid = len(self._texts)
        self._texts.append(sym)
        self._ids[sym] = sid
        self._version += 1
        return sid

    def id_of(self, sym: str) -> int:
        try:
            return self._ids[sym]
        except KeyError:
            raise UnknownSymbolError(sym) from None

    def get(self, sym: str) -> int | None:
        return self._ids.get(sym)

    def text_of(self, sid: int) -> str:
        return self._texts[sid]

    def ids(self) -> range:
        return range(len(self._texts))

    def symbols(self) -> Iterator[tuple[int, str]]:
        """All (id, text) pairs in id order, epsilon included."""
        return iter(enumerate(self._texts))

    def multichar_index(self) -> dict[str, list[str]]:
        """Registered multicharacter symbols grouped by first character.

        Within a group, symbols are ordered longest first so callers can do
        greedy longest-match tokenization.  Epsilon's rendering is excluded.
        """
        if self._multichar_cache is not None and self._multichar_cache[0] == self._version:
            return self._multichar_cache[1]
        index: dict[str, list[str]] = {}
        for sid, text in enumerate(self._texts):
            if sid != EPSILON and len(text) > 1:
                index.setdefault(text[0], []).append(text)
        for group in index.values():
            group.sort(key=len, reverse=True)
        self._multichar_cache = (self._version, index)
        return index
