import random
from itertools import product

import pytest

from conftest import make_table, random_machine, relation
from fstmorph.fst import (
    EPSILON,
    Arc,
    PathLimitError,
    SymbolTableMismatch,
    atom,
    compose,
    concat,
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
from fstmorph.symbols import SymbolTable


def test_atom_identity_pair():
    st = SymbolTable()
    m = atom(st, "ক", "ক")
    assert m.state_count == 2 and len(m.arcs) == 1
    assert paths(m, 1) == [("ক", "ক")]


def test_atom_cross_pair_and_tags():
    st = SymbolTable()
    m = atom(st, "+Pl", "গ")
    arc = m.arcs[0]
    assert st.text_of(arc.input) == "+Pl" and st.text_of(arc.output) == "গ"


def test_atom_epsilon_convention():
    st = SymbolTable()
    m = atom(st, "0", "ই")
    assert m.arcs[0].input == EPSILON
    assert paths(m, 1) == [("", "ই")]


def test_union_accepts_both():
    st = make_table("ab")
    m = union(atom(st, "a", "a"), atom(st, "b", "b"))
    assert relation(m, 2) == {("a", "a"), ("b", "b")}


def test_concat_single_path():
    st = SymbolTable()
    m = concat(atom(st, "ক", "ক"), atom(st, "র", "র"))
    assert relation(m, 2) == {("কর", "কর")}


def test_star_enumeration():
    st = make_table("a")
    m = star(atom(st, "a", "a"))
    assert paths(m, 3) == [("", ""), ("a", "a"), ("aa", "aa"), ("aaa", "aaa")]


def test_symbol_table_mismatch_rejected():
    a = atom(SymbolTable(), "a", "a")
    b = atom(SymbolTable(), "a", "a")
    with pytest.raises(SymbolTableMismatch):
        union(a, b)
    with pytest.raises(SymbolTableMismatch):
        compose(a, b)


def test_compose_chains_single_pairs():
    st = make_table("abc")
    m = compose(atom(st, "a", "b"), atom(st, "b", "c"))
    assert relation(m, 2) == {("a", "c")}


def test_compose_with_identity_is_identity():
    st = make_table("ab")
    t = union(atom(st, "a", "b"), concat(atom(st, "a", "a"), atom(st, "b", "a")))
    left = compose(identity_star(st), t)
    assert relation(left, 4) == relation(t, 4)
    right = compose(t, identity_star(st))
    assert relation(right, 4) == relation(t, 4)


def test_compose_one_sided_epsilons_pair_up():
    st = make_table("ab")
    m = compose(atom(st, "a", "0"), atom(st, "0", "b"))
    assert relation(m, 2) == {("a", "b")}


def _join(rel_a, rel_b):
    return {(x, z) for (x, y1) in rel_a for (y2, z) in rel_b if y1 == y2}


def test_compose_matches_path_join_on_random_dags():
    rng = random.Random(20)
    st = make_table("abc")
    for _ in range(150):
        a = random_machine(rng, st, "abc", dag=True)
        b = random_machine(rng, st, "abc", dag=True)
        want = _join(relation(a, 6), relation(b, 6))
        got = relation(compose(a, b), 6)
        assert got == want


def test_compose_associativity_on_random_dags():
    rng = random.Random(21)
    st = make_table("ab")
    for _ in range(80):
        a, b, c = (random_machine(rng, st, "ab", max_states=4, dag=True) for _ in range(3))
        left = relation(compose(compose(a, b), c), 4)
        right = relation(compose(a, compose(b, c)), 4)
        assert left == right


def test_union_concat_star_match_set_semantics():
    rng = random.Random(22)
    st = make_table("ab")
    for _ in range(120):
        a = random_machine(rng, st, "ab", max_states=4)
        b = random_machine(rng, st, "ab", max_states=4)
        ra, rb = relation(a, 4), relation(b, 4)
        assert relation(union(a, b), 4) == ra | rb
        want_cat = {
            (x1 + x2, y1 + y2)
            for (x1, y1) in ra
            for (x2, y2) in rb
            if len(x1 + x2) <= 4 and len(y1 + y2) <= 4
        }
        assert relation(concat(a, b), 4) == want_cat
        closure = {("", "")}
        while True:
            more = {
                (x1 + x2, y1 + y2)
                for (x1, y1) in closure
                for (x2, y2) in ra
                if len(x1 + x2) <= 4 and len(y1 + y2) <= 4
            }
            if more <= closure:
                break
            closure |= more
        assert relation(star(a), 4) == closure


def test_invert_swaps_sides():
    st = make_table("ab")
    assert relation(invert(atom(st, "a", "b")), 1) == {("b", "a")}


def test_invert_is_an_involution_arc_for_arc():
    rng = random.Random(23)
    st = make_table("ab")
    for _ in range(50):
        m = random_machine(rng, st, "ab")
        assert invert(invert(m)) == m


def test_project_keeps_one_side():
    st = make_table("ab")
    m = atom(st, "a", "b")
    assert relation(project(m, "lower"), 1) == {("b", "b")}
    assert relation(project(m, "upper"), 1) == {("a", "a")}
    with pytest.raises(ValueError):
        project(m, "sideways")


def test_reverse_reverses_pairs():
    st = make_table("ab")
    m = concat(atom(st, "a", "a"), atom(st, "b", "a"))
    assert relation(reverse(m), 2) == {("ba", "aa")}


def test_trim_drops_unreachable_state():
    st = make_table("a")
    arcs = [Arc(0, 1, 1, 1), Arc(2, 1, 1, 1)]  # state 2 unreachable
    m = make_fst(st, 3, 0, {1}, arcs)
    t = trim(m)
    assert t.state_count == 2
    assert relation(t, 2) == relation(m, 2)
    t.validate(require_trim=True)


def test_trim_of_empty_relation_has_no_finals():
    st = make_table("a")
    m = make_fst(st, 2, 0, set(), [Arc(0, 1, 1, 1)])
    t = trim(m)
    assert not t.finals and relation(t, 3) == set()


def test_trim_preserves_relation_on_random_machines():
    rng = random.Random(24)
    st = make_table("ab")
    for _ in range(150):
        m = random_machine(rng, st, "ab")
        t = trim(m)
        assert relation(t, 5) == relation(m, 5)
        t.validate(require_trim=True)


def test_operations_produce_valid_machines():
    rng = random.Random(25)
    st = make_table("ab")
    for _ in range(60):
        a = random_machine(rng, st, "ab")
        b = random_machine(rng, st, "ab")
        for m in (union(a, b), concat(a, b), star(a), compose(a, b), invert(a),
                  project(a, "upper"), project(b, "lower"), trim(a), reverse(b)):
            m.validate()


def test_paths_of_single_atom():
    st = make_table("ab")
    assert paths(atom(st, "a", "b"), 1) == [("a", "b")]


def test_paths_of_empty_machine():
    st = make_table("a")
    empty = trim(make_fst(st, 1, 0, set(), []))
    assert paths(empty, 5) == []


def test_paths_cap_is_enforced():
    st = make_table("a")
    m = atom(st, "a", "a")
    with pytest.raises(PathLimitError):
        paths(m, 13)
    assert paths(m, 13, cap=13)  # explicit cap raises the limit


def test_paths_ordering_is_lexicographic_by_ids():
    st = SymbolTable()
    first = st.add("x")
    second = st.add("y")
    assert first < second
    m = union(atom(st, "y", "y"), atom(st, "x", "x"))
    assert paths(m, 1) == [("x", "x"), ("y", "y")]
