"""Continuation-class lexicon sources: parser, printer, and compiler.

The source format::

    Multichar_Symbols
    +Noun +Pl

    LEXICON Root
    মামা N;          ! upper = lower = মামা, continue at N
    LEXICON N
    %+Noun:0 Plural; ! upper +Noun, lower empty
    LEXICON Plural
    +Pl:গুলি #;      ! '#' ends the word

``%`` escapes the next character, ``!`` comments to end of line, a bare
``0`` on either side of the colon is the empty string (write ``%0`` for a
literal zero), and ``#`` is valid only in continuation position.  The first
block is the start network unless a block is literally named ``Root``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import zip_longest

from fstmorph.fst import Arc, Fst, make_fst, trim
from fstmorph.symbols import EPSILON, SymbolTable

_SPECIAL = set("%:;!")


class LexcError(ValueError):
    def __init__(self, message: str, filename: str | None = None, line: int | None = None):
        self.filename = filename
        self.line = line
        prefix = ""
        if filename is not None:
            prefix = f"{filename}:"
        if line is not None:
            prefix += f"{line}: "
        elif prefix:
            prefix += " "
        super().__init__(prefix + message)


@dataclass
class Entry:
    upper: str
    lower: str
    continuation: str
    line: int = field(default=0, compare=False)


@dataclass
class LexiconBlock:
    name: str
    entries: list[Entry]
    line: int = field(default=0, compare=False)


@dataclass
class LexiconAst:
    multichar_symbols: list[str]
    lexicons: list[LexiconBlock]

    def lexicon_names(self) -> set[str]:
        return {b.name for b in self.lexicons}

    def start_name(self) -> str:
        for block in self.lexicons:
            if block.name == "Root":
                return "Root"
        return self.lexicons[0].name


# ---------------------------------------------------------------------------
# scanning and parsing

_KW_MULTICHAR = "Multichar_Symbols"
_KW_LEXICON = "LEXICON"


@dataclass
class _Word:
    chars: list[tuple[str, bool]]  # (character, was-escaped)
    line: int

    @property
    def text(self) -> str:
        return "".join(ch for ch, _ in self.chars)

    def is_keyword(self, kw: str) -> bool:
        return self.text == kw and not any(esc for _, esc in self.chars)


@dataclass
class _Semi:
    line: int


def _scan(source: str, filename: str | None):
    items: list[_Word | _Semi] = []
    cur: list[tuple[str, bool]] = []
    cur_line = 1
    line = 1
    i, n = 0, len(source)

    def flush():
        nonlocal cur
        if cur:
            items.append(_Word(cur, cur_line))
            cur = []

    while i < n:
        ch = source[i]
        if ch == "%":
            if i + 1 >= n:
                raise LexcError("dangling '%' escape at end of file", filename, line)
            if not cur:
                cur_line = line
            cur.append((source[i + 1], True))
            if source[i + 1] == "\n":
                line += 1
            i += 2
        elif ch == "!":
            flush()
            while i < n and source[i] != "\n":
                i += 1
        elif ch == "\n":
            flush()
            line += 1
            i += 1
        elif ch.isspace():
            flush()
            i += 1
        elif ch == ";":
            flush()
            items.append(_Semi(line))
            i += 1
        else:
            if not cur:
                cur_line = line
            cur.append((ch, False))
            i += 1
    flush()
    return items


def _split_pair(word: _Word, filename: str | None) -> tuple[str, str]:
    """Split an entry's morpheme part at its unescaped colon."""
    colons = [k for k, (ch, esc) in enumerate(word.chars) if ch == ":" and not esc]
    if len(colons) > 1:
        raise LexcError("more than one ':' in entry", filename, word.line)
    if colons:
        upper_chars = word.chars[: colons[0]]
        lower_chars = word.chars[colons[0] + 1 :]
        return _side_text(upper_chars), _side_text(lower_chars)
    text = _side_text(word.chars)
    return text, text


def _side_text(chars: list[tuple[str, bool]]) -> str:
    if len(chars) == 1 and chars[0] == ("0", False):
        return ""  # bare 0 is epsilon; %0 is a literal zero
    return "".join(ch for ch, _ in chars)


def _check_upper_tags(word: _Word, upper_len: int, declared: list[str], filename: str | None):
    """Unescaped '+' on the upper side must begin a declared multichar tag."""
    chars = word.chars[:upper_len]
    text = "".join(ch for ch, _ in chars)
    for k, (ch, esc) in enumerate(chars):
        if ch == "+" and not esc:
            if not any(text.startswith(tag, k) for tag in declared):
                raise LexcError(
                    f"tag at {text[k:]!r} is not declared in Multichar_Symbols",
                    filename,
                    word.line,
                )


def parse_lexc(source: str, *, strict: bool = True, filename: str | None = None) -> LexiconAst:
    """Parse lexicon source text.

    ``strict=False`` tolerates entries whose continuation is never declared
    and upper-side ``+``-material that is not a declared tag (both occur in
    abbreviated real-world listings); such entries survive in the AST and
    compile to dead paths.
    """
    items = _scan(source, filename)
    pos = 0
    multichar: list[str] = []

    if pos < len(items) and isinstance(items[pos], _Word) and items[pos].is_keyword(_KW_MULTICHAR):
        pos += 1
        while pos < len(items):
            item = items[pos]
            if isinstance(item, _Semi):
                raise LexcError("unexpected ';' in Multichar_Symbols header", filename, item.line)
            if item.is_keyword(_KW_LEXICON):
                break
            tag = item.text
            if tag in multichar:
                raise LexcError(f"duplicate multichar symbol {tag!r}", filename, item.line)
            multichar.append(tag)
            pos += 1

    blocks: list[LexiconBlock] = []
    names: set[str] = set()
    current: LexiconBlock | None = None
    pending: list[_Word] = []

    def close_block():
        if current is not None and not current.entries:
            raise LexcError(f"lexicon {current.name!r} has no entries", filename, current.line)

    while pos < len(items):
        item = items[pos]
        if isinstance(item, _Word) and item.is_keyword(_KW_LEXICON):
            if pending:
                raise LexcError("entry without terminating ';'", filename, pending[0].line)
            close_block()
            pos += 1
            if pos >= len(items) or not isinstance(items[pos], _Word):
                raise LexcError("LEXICON keyword without a name", filename, item.line)
            name = items[pos].text
            if name in names:
                raise LexcError(f"duplicate lexicon name {name!r}", filename, items[pos].line)
            names.add(name)
            current = LexiconBlock(name, [], line=item.line)
            blocks.append(current)
            pos += 1
        elif isinstance(item, _Semi):
            if current is None:
                raise LexcError("entry outside any LEXICON block", filename, item.line)
            if len(pending) != 2:
                raise LexcError(
                    "entry must be 'upper[:lower] Continuation ;'", filename, item.line
                )
            pair_word, cont_word = pending
            upper, lower = _split_pair(pair_word, filename)
            if strict:
                colons = [k for k, (ch, esc) in enumerate(pair_word.chars) if ch == ":" and not esc]
                upper_len = colons[0] if colons else len(pair_word.chars)
                _check_upper_tags(pair_word, upper_len, multichar, filename)
            current.entries.append(
                Entry(upper, lower, cont_word.text, line=pair_word.line)
            )
            pending = []
            pos += 1
        else:
            if current is None:
                raise LexcError(
                    f"unexpected {item.text!r} before the first LEXICON", filename, item.line
                )
            pending.append(item)
            pos += 1

    if pending:
        raise LexcError("entry without terminating ';'", filename, pending[0].line)
    close_block()

    ast = LexiconAst(multichar, blocks)
    if strict:
        known = ast.lexicon_names()
        for block in blocks:
            for entry in block.entries:
                if entry.continuation != "#" and entry.continuation not in known:
                    raise LexcError(
                        f"unknown continuation {entry.continuation!r}", filename, entry.line
                    )
    return ast


# ---------------------------------------------------------------------------
# printing


def _escape_side(text: str, declared: list[str]) -> str:
    if text == "":
        return "0"
    if text == "0":
        return "%0"
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "+":
            tag = next((t for t in sorted(declared, key=len, reverse=True) if text.startswith(t, i)), None)
            if tag is not None:
                out.append(tag)
                i += len(tag)
                continue
            out.append("%+")
        elif ch in _SPECIAL or ch.isspace():
            out.append("%" + ch)
        else:
            out.append(ch)
        i += 1
    return "".join(out)


def render_lexc(ast: LexiconAst) -> str:
    """Print an AST back to source; parse(render(ast)) == ast."""
    lines: list[str] = []
    if ast.multichar_symbols:
        lines.append(_KW_MULTICHAR)
        lines.append(" ".join(ast.multichar_symbols))
        lines.append("")
    for block in ast.lexicons:
        lines.append(f"{_KW_LEXICON} {block.name}")
        for e in block.entries:
            upper = _escape_side(e.upper, ast.multichar_symbols)
            lower = _escape_side(e.lower, ast.multichar_symbols)
            pair = upper if e.upper == e.lower else f"{upper}:{lower}"
            lines.append(f"{pair} {e.continuation};")
        lines.append("")
    return "\n".join(lines).rstrip("\n") + "\n"


# ---------------------------------------------------------------------------
# tokenization and compilation


def tokenize_lexical(s: str, symtab: SymbolTable, *, register: bool = False) -> list[int]:
    """Split a lexical string into symbol ids.

    Greedy longest-match over the registered multicharacter symbols, falling
    back to one id per Unicode scalar.  With ``register`` unseen scalars are
    added to the table; otherwise they raise
    :class:`~fstmorph.symbols.UnknownSymbolError`.
    """
    index = symtab.multichar_index()
    ids: list[int] = []
    i, n = 0, len(s)
    while i < n:
        ch = s[i]
        for cand in index.get(ch, ()):
            if s.startswith(cand, i):
                ids.append(symtab.id_of(cand))
                i += len(cand)
                break
        else:
            ids.append(symtab.add(ch) if register else symtab.id_of(ch))
            i += 1
    return ids


def compile_lexicon(ast: LexiconAst, symtab: SymbolTable) -> Fst:
    """Compile an AST into a transducer (upper: root+tags, lower: surface).

    Each entry becomes a path pairing its tokenized sides position-wise, the
    shorter side padded with epsilon at the end, followed by an epsilon hop
    to the continuation block (or a final state for ``#``).  Entries with an
    undeclared continuation (lenient parses) are dead paths and are dropped
    by the final trim.
    """
    if not ast.lexicons:
        raise LexcError("empty lexicon: no LEXICON blocks")
    for tag in ast.multichar_symbols:
        symtab.add(tag)

    names = ast.lexicon_names()
    state_count = 0

    def new_state() -> int:
        nonlocal state_count
        state_count += 1
        return state_count - 1

    block_state = {block.name: new_state() for block in ast.lexicons}
    arcs: list[Arc] = []
    finals: set[int] = set()

    for block in ast.lexicons:
        for entry in block.entries:
            if entry.continuation != "#" and entry.continuation not in names:
                continue
            upper = tokenize_lexical(entry.upper, symtab, register=True)
            lower = tokenize_lexical(entry.lower, symtab, register=True)
            cur = block_state[block.name]
            for u, l in zip_longest(upper, lower, fillvalue=EPSILON):
                nxt = new_state()
                arcs.append(Arc(cur, nxt, u, l))
                cur = nxt
            if entry.continuation == "#":
                finals.add(cur)
            else:
                arcs.append(Arc(cur, block_state[entry.continuation], EPSILON, EPSILON))

    raw = make_fst(symtab, state_count, block_state[ast.start_name()], finals, arcs)
    return trim(raw)
