import random

import pytest

from fstmorph import bpy
from fstmorph.fst import Arc, Fst, make_fst, paths
from fstmorph.symbols import SymbolTable


@pytest.fixture(scope="session")
def bundled():
    return bpy.load_bundled()


@pytest.fixture(scope="session")
def bundled_nondet():
    return bpy.load_bundled(determinize=False)


def make_table(symbols="ab"):
    st = SymbolTable()
    for s in symbols:
        st.add(s)
    return st


def random_machine(rng: random.Random, symtab, syms, max_states=6, eps=True, dag=False):
    """A random small machine over the given symbol strings.

    With ``dag`` arcs only go from lower to higher state ids, so the machine
    is acyclic and its relation can be enumerated exactly.
    """
    n = rng.randint(1, max_states)
    ids = [symtab.id_of(s) for s in syms]
    labels = list(ids)
    if eps:
        labels.append(0)
    arcs = []
    for _ in range(rng.randint(0, 2 * n + 2)):
        src = rng.randrange(n)
        if dag:
            if src == n - 1:
                continue
            tgt = rng.randrange(src + 1, n)
        else:
            tgt = rng.randrange(n)
        arcs.append(Arc(src, tgt, rng.choice(labels), rng.choice(labels)))
    finals = {s for s in range(n) if rng.random() < 0.4}
    if not finals:
        finals = {rng.randrange(n)}
    return make_fst(symtab, n, 0, finals, arcs)


def relation(machine: Fst, max_len: int, cap=None):
    return set(paths(machine, max_len, cap if cap is not None else max(max_len, 12)))
