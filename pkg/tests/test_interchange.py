import pytest

from conftest import make_table
from fstmorph.fst import Arc, atom, concat, make_fst, trim, union
from fstmorph.interchange import (
    InterchangeError,
    format_fst,
    format_symbols,
    parse_fst,
    parse_symbols,
)
from fstmorph.symbols import SymbolTable


def test_arc_lines_and_final_lines():
    st = SymbolTable()
    m = atom(st, "+Pl", "0")
    text = format_fst(m)
    assert text == "0\t1\t+Pl\t@0@\n1\t\n"


def test_round_trip_is_byte_identical():
    st = make_table("abc")
    m = union(concat(atom(st, "a", "b"), atom(st, "0", "c")), atom(st, "b", "b"))
    text = format_fst(m)
    st2 = SymbolTable()
    back = parse_fst(text, st2)
    assert format_fst(back) == text
    assert back.start == m.start and back.finals == m.finals


def test_empty_machine_round_trips():
    st = make_table("a")
    empty = trim(make_fst(st, 1, 0, set(), []))
    assert format_fst(empty) == ""
    back = parse_fst("", SymbolTable())
    assert back.is_empty()
    assert format_fst(back) == ""


def test_final_only_machine():
    st = make_table("a")
    m = make_fst(st, 1, 0, {0}, [])
    text = format_fst(m)
    assert text == "0\t\n"
    back = parse_fst(text, st)
    assert back.start == 0 and back.is_final(0)


def test_unknown_symbols_are_registered_on_read():
    st = SymbolTable()
    m = parse_fst("0\t1\tক\tগ\n1\t\n", st)
    assert "ক" in st and "গ" in st
    assert len(m.arcs) == 1


def test_malformed_lines_rejected():
    with pytest.raises(InterchangeError):
        parse_fst("0\t1\tক\n", SymbolTable())  # three fields
    with pytest.raises(InterchangeError):
        parse_fst("zero\t\n", SymbolTable())


def test_symbol_with_tab_is_rejected_on_write():
    st = SymbolTable()
    st.add("a\tb")
    with pytest.raises(InterchangeError):
        format_symbols(st)


def test_symbol_sidecar_round_trip():
    st = SymbolTable()
    for s in ("ক", "+Pl", "গ"):
        st.add(s)
    text = format_symbols(st)
    assert text.splitlines()[0] == "@0@\t0"
    back = parse_symbols(text)
    assert [t for _, t in back.symbols()] == [t for _, t in st.symbols()]
    assert format_symbols(back) == text


def test_sidecar_ids_must_be_dense():
    with pytest.raises(InterchangeError):
        parse_symbols("@0@\t0\nক\t2\n")
    with pytest.raises(InterchangeError):
        parse_symbols("oops\t0\n")
