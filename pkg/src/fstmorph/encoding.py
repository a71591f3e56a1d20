"""Legacy 8-bit font text to UTF-8 conversion, driven by a mapping table.

Mapping files are TSV: ``hex-byte-sequence<TAB>replacement-text`` with ``#``
comments.  Multi-byte sources let a table express glyph-order quirks such as
pre-base vowel signs typed before their consonant; matching is greedy
longest-source-first.  Unmapped bytes in the printable ASCII range (and tab,
LF, CR) pass through so running text keeps its whitespace.
"""

from __future__ import annotations

from dataclasses import dataclass

PASSTHROUGH_LO = 0x09
PASSTHROUGH_HI = 0x7E


class MappingError(ValueError):
    pass


@dataclass(frozen=True)
class MappingTable:
    """Ordered (source bytes, replacement) pairs, longest source first."""

    pairs: tuple[tuple[bytes, str], ...]

    @property
    def max_source_len(self) -> int:
        return max((len(src) for src, _ in self.pairs), default=0)


def load_mapping(source: str) -> MappingTable:
    pairs: list[tuple[bytes, str]] = []
    seen: set[bytes] = set()
    for lineno, raw in enumerate(source.split("\n"), 1):
        line = raw.split("#", 1)[0].rstrip("\r\n")
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise MappingError(f"line {lineno}: expected 'hex-bytes<TAB>text'")
        hex_text, target = fields
        try:
            src = bytes.fromhex(hex_text)
        except ValueError:
            raise MappingError(f"line {lineno}: malformed hex {hex_text!r}") from None
        if not src:
            raise MappingError(f"line {lineno}: empty source byte sequence")
        if src in seen:
            raise MappingError(f"line {lineno}: duplicate source {hex_text}")
        if not target:
            raise MappingError(f"line {lineno}: empty replacement text")
        seen.add(src)
        pairs.append((src, target))
    pairs.sort(key=lambda p: (-len(p[0]), p[0]))
    return MappingTable(tuple(pairs))


def convert(table: MappingTable, data: bytes) -> str:
    """Greedy longest-match conversion of legacy bytes to text.

    Unmapped bytes outside the pass-through range raise MappingError with
    their offset, so broken inputs are caught instead of silently mangled.
    """
    by_first: dict[int, list[tuple[bytes, str]]] = {}
    for src, target in table.pairs:  # pairs are longest-first already
        by_first.setdefault(src[0], []).append((src, target))
    out: list[str] = []
    i, n = 0, len(data)
    while i < n:
        b = data[i]
        for src, target in by_first.get(b, ()):
            if data.startswith(src, i):
                out.append(target)
                i += len(src)
                break
        else:
            if PASSTHROUGH_LO <= b <= PASSTHROUGH_HI:
                out.append(chr(b))
                i += 1
            else:
                raise MappingError(f"unmappable byte 0x{b:02X} at offset {i}")
    return "".join(out)
