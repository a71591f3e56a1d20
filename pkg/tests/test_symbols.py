import pytest

from fstmorph.symbols import EPSILON, EPSILON_TEXT, SymbolTable, UnknownSymbolError


def test_epsilon_is_reserved():
    st = SymbolTable()
    assert len(st) == 1
    assert st.id_of(EPSILON_TEXT) == EPSILON
    assert st.text_of(EPSILON) == EPSILON_TEXT


def test_add_is_idempotent_and_bijective():
    st = SymbolTable()
    a = st.add("ক")
    tag = st.add("+Pl")
    assert st.add("ক") == a
    assert a != tag and a != EPSILON and tag != EPSILON
    assert st.text_of(a) == "ক"
    assert st.id_of("+Pl") == tag
    # round-trip over everything registered
    for sid, text in st.symbols():
        assert st.id_of(text) == sid


def test_empty_symbol_rejected():
    st = SymbolTable()
    with pytest.raises(ValueError):
        st.add("")


def test_unknown_symbol_raises():
    st = SymbolTable()
    with pytest.raises(UnknownSymbolError):
        st.id_of("missing")
    assert st.get("missing") is None


def test_literal_zero_character_is_a_normal_symbol():
    st = SymbolTable()
    zid = st.add("0")
    assert zid != EPSILON
    assert st.text_of(zid) == "0"


def test_multichar_index_groups_longest_first():
    st = SymbolTable()
    st.add("+P")
    st.add("+Pl")
    st.add("x")
    index = st.multichar_index()
    assert index["+"] == ["+Pl", "+P"]
    assert "x" not in index  # single scalars are not multichar
    st.add("+Plural")
    assert st.multichar_index()["+"] == ["+Plural", "+Pl", "+P"]
