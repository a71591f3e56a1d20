"""Text interchange format for machines and symbol tables.

Machine files carry one arc per line, ``src<TAB>dst<TAB>in_sym<TAB>out_sym``,
followed by one ``state<TAB>`` line per final state.  Epsilon is spelled
``@0@``.  The start state is the source of the first arc line (or the first
final line for arc-free machines).  Files are UTF-8 with LF line endings and
round-trip byte-exactly: write -> read -> write is the identity.

Symbol tables are written as a ``symbol<TAB>id`` sidecar, one line per id in
id order, epsilon included.
"""

from __future__ import annotations

from fstmorph.fst import Arc, Fst, FstError
from fstmorph.symbols import EPSILON, EPSILON_TEXT, SymbolTable


class InterchangeError(FstError):
    pass


def _check_symbol(text: str) -> str:
    if "\t" in text or "\n" in text or "\r" in text:
        raise InterchangeError(f"symbol {text!r} contains tab or newline")
    return text


def format_fst(fst: Fst) -> str:
    symtab = fst.symtab
    lines = []
    for arc in fst.arcs:
        isym = _check_symbol(symtab.text_of(arc.input))
        osym = _check_symbol(symtab.text_of(arc.output))
        lines.append(f"{arc.source}\t{arc.target}\t{isym}\t{osym}\n")
    for state in sorted(fst.finals):
        lines.append(f"{state}\t\n")
    return "".join(lines)


def parse_fst(text: str, symtab: SymbolTable) -> Fst:
    """Rebuild a machine, registering any unknown symbols in ``symtab``."""
    arcs: list[Arc] = []
    finals: list[int] = []
    start: int | None = None
    max_state = -1
    for lineno, line in enumerate(text.split("\n"), 1):
        if not line:
            continue
        fields = line.split("\t")
        try:
            if len(fields) == 4:
                src, dst = int(fields[0]), int(fields[1])
                isym = EPSILON if fields[2] == EPSILON_TEXT else symtab.add(fields[2])
                osym = EPSILON if fields[3] == EPSILON_TEXT else symtab.add(fields[3])
                arcs.append(Arc(src, dst, isym, osym))
                max_state = max(max_state, src, dst)
                if start is None:
                    start = src
            elif len(fields) == 2 and fields[1] == "":
                state = int(fields[0])
                finals.append(state)
                max_state = max(max_state, state)
                if start is None:
                    start = state
            else:
                raise ValueError("expected 4 fields (arc) or 'state<TAB>' (final)")
        except ValueError as exc:
            raise InterchangeError(f"line {lineno}: {exc}") from None
    if start is None:  # no lines at all: the empty-relation machine
        return Fst(symtab, 1, 0, (), ())
    return Fst(symtab, max_state + 1, start, finals, arcs)


def format_symbols(symtab: SymbolTable) -> str:
    return "".join(f"{_check_symbol(text)}\t{sid}\n" for sid, text in symtab.symbols())


def parse_symbols(text: str) -> SymbolTable:
    symtab = SymbolTable()
    for lineno, line in enumerate(text.split("\n"), 1):
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise InterchangeError(f"line {lineno}: expected 'symbol<TAB>id'")
        sym, sid_text = fields
        try:
            sid = int(sid_text)
        except ValueError:
            raise InterchangeError(f"line {lineno}: bad id {sid_text!r}") from None
        if sid == EPSILON:
            if sym != EPSILON_TEXT:
                raise InterchangeError(f"line {lineno}: id 0 must be {EPSILON_TEXT}")
            continue
        if symtab.add(sym) != sid:
            raise InterchangeError(f"line {lineno}: ids must be dense and in order")
    return symtab
