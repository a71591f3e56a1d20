import random

from conftest import make_table, random_machine, relation
from fstmorph.fst import (
    Arc,
    atom,
    concat,
    determinize_min,
    fused_paths,
    make_fst,
    union,
)


def _is_deterministic(machine):
    seen = set()
    for arc in machine.arcs:
        key = (arc.source, arc.input, arc.output)
        if key in seen:
            return False
        seen.add(key)
        if (arc.input, arc.output) == (0, 0):
            return False
    return True


def _equivalent_states(machine, i, j):
    """Pair-walk equivalence over the (deterministic) fused-label graph."""
    step = {}
    for arc in machine.arcs:
        step.setdefault(arc.source, {})[(arc.input, arc.output)] = arc.target
    seen = set()
    queue = [(i, j)]
    while queue:
        p, q = queue.pop()
        if (p, q) in seen:
            continue
        seen.add((p, q))
        if machine.is_final(p) != machine.is_final(q):
            return False
        moves_p = step.get(p, {})
        moves_q = step.get(q, {})
        if set(moves_p) != set(moves_q):
            return False
        for label, tp in moves_p.items():
            queue.append((tp, moves_q[label]))
    return True


def test_already_minimal_dfa_unchanged():
    st = make_table("ab")
    m = concat(atom(st, "a", "a"), atom(st, "b", "b"))
    d = determinize_min(m)
    d2 = determinize_min(d)
    assert d2.state_count == d.state_count
    assert d2 == d


def test_duplicate_branches_collapse():
    st = make_table("")
    word = "মাছ"
    for ch in word:
        st.add(ch)
    def chain():
        m = atom(st, word[0], word[0])
        for ch in word[1:]:
            m = concat(m, atom(st, ch, ch))
        return m
    doubled = union(chain(), chain())
    single = determinize_min(doubled)
    assert single.state_count == len(word) + 1
    assert set(fused_paths(single, 8)) == set(fused_paths(doubled, 8))


def test_random_nfas_keep_their_pair_language():
    rng = random.Random(31)
    st = make_table("ab")
    for _ in range(200):
        m = random_machine(rng, st, "ab")
        d = determinize_min(m)
        d.validate(require_trim=True)
        assert _is_deterministic(d)
        assert set(fused_paths(d, 6)) == set(fused_paths(m, 6))
        assert relation(d, 4) == relation(m, 4)


def test_no_two_equivalent_states_remain():
    rng = random.Random(32)
    st = make_table("ab")
    checked = 0
    while checked < 60:
        m = random_machine(rng, st, "ab", max_states=6)
        d = determinize_min(m)
        if d.state_count > 10 or d.is_empty():
            continue
        checked += 1
        for i in range(d.state_count):
            for j in range(i + 1, d.state_count):
                assert not _equivalent_states(d, i, j), f"states {i} and {j} are equivalent"


def test_epsilon_only_machine_determinizes_to_single_state():
    st = make_table("a")
    m = make_fst(st, 3, 0, {2}, [Arc(0, 1, 0, 0), Arc(1, 2, 0, 0)])
    d = determinize_min(m)
    assert d.state_count == 1 and d.is_final(0) and not d.arcs
