"""Unweighted finite-state transducers and their algebra.

Machines are immutable after construction and may be shared across threads.
Every operation returns a canonical machine: states are renumbered in
breadth-first order from the start state and arcs are sorted by
(source, input, output, target), so structurally equal results compare equal
and diff cleanly in tests.

Symbol ids refer to a shared :class:`~fstmorph.symbols.SymbolTable`; id 0 is
epsilon on either side of an arc.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, NamedTuple, Sequence

from fstmorph.symbols import EPSILON, SymbolTable

DEFAULT_PATH_CAP = 12


class FstError(Exception):
    pass


class SymbolTableMismatch(FstError):
    """Operands of a binary operation do not share one symbol table."""


class PathLimitError(FstError):
    """paths() was asked for longer strings than its cap allows."""


class Arc(NamedTuple):
    source: int
    target: int
    input: int   # upper / lexical side
    output: int  # lower / surface side


def _arc_key(arc: Arc):
    return (arc.source, arc.input, arc.output, arc.target)


class Fst:
    """A finite set of states with arcs labeled (input-id, output-id)."""

    __slots__ = ("symtab", "state_count", "start", "finals", "arcs")

    def __init__(
        self,
        symtab: SymbolTable,
        state_count: int,
        start: int,
        finals: Iterable[int],
        arcs: Iterable[Arc],
    ) -> None:
        self.symtab = symtab
        self.state_count = state_count
        self.start = start
        self.finals = frozenset(finals)
        self.arcs = tuple(arcs)

    def __repr__(self) -> str:
        return (
            f"Fst({self.state_count} states, {len(self.arcs)} arcs, "
            f"{len(self.finals)} final)"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Fst):
            return NotImplemented
        return (
            self.symtab is other.symtab
            and self.state_count == other.state_count
            and self.start == other.start
            and self.finals == other.finals
            and self.arcs == other.arcs
        )

    def __hash__(self):
        return hash((id(self.symtab), self.state_count, self.start, self.finals, self.arcs))

    def is_final(self, state: int) -> bool:
        return state in self.finals

    def is_empty(self) -> bool:
        """True when the machine accepts no string pair at all."""
        return not self.finals

    def out_arcs(self) -> list[list[Arc]]:
        """Adjacency list view, one (sorted) arc list per state."""
        index: list[list[Arc]] = [[] for _ in range(self.state_count)]
        for arc in self.arcs:
            index[arc.source].append(arc)
        return index

    def validate(self, require_trim: bool = False) -> None:
        """Check structural invariants, raising FstError on violation."""
        if self.state_count < 1:
            raise FstError("machine must have at least a start state")
        if not 0 <= self.start < self.state_count:
            raise FstError(f"start state {self.start} out of range")
        for s in self.finals:
            if not 0 <= s < self.state_count:
                raise FstError(f"final state {s} out of range")
        nsyms = len(self.symtab)
        for arc in self.arcs:
            if not (0 <= arc.source < self.state_count and 0 <= arc.target < self.state_count):
                raise FstError(f"arc {arc} references an unknown state")
            if not (0 <= arc.input < nsyms and 0 <= arc.output < nsyms):
                raise FstError(f"arc {arc} references an unregistered symbol")
        if list(self.arcs) != sorted(self.arcs, key=_arc_key):
            raise FstError("arcs are not in canonical order")
        if require_trim:
            useful = _accessible(self) & _coaccessible(self)
            dangling = set(range(self.state_count)) - useful
            # the canonical empty machine keeps its bare start state
            if dangling and not (not self.finals and dangling == {self.start} and self.state_count == 1):
                raise FstError(f"states {sorted(dangling)} are not on any accepting path")


def _empty(symtab: SymbolTable) -> Fst:
    """The canonical empty-relation machine: one start state, no finals."""
    return Fst(symtab, 1, 0, (), ())


def _canonical(
    symtab: SymbolTable,
    state_count: int,
    start: int,
    finals: Iterable[int],
    arcs: Iterable[Arc],
) -> Fst:
    """Renumber states breadth-first from the start and sort arcs."""
    by_state: list[list[Arc]] = [[] for _ in range(state_count)]
    for arc in arcs:
        by_state[arc.source].append(arc)
    for lst in by_state:
        lst.sort(key=_arc_key)

    order: dict[int, int] = {start: 0}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for arc in by_state[s]:
            if arc.target not in order:
                order[arc.target] = len(order)
                queue.append(arc.target)
    for s in range(state_count):  # keep unreachable states (trim removes them)
        if s not in order:
            order[s] = len(order)

    new_arcs = sorted(
        {
            Arc(order[a.source], order[a.target], a.input, a.output)
            for lst in by_state
            for a in lst
        },
        key=_arc_key,
    )
    new_finals = frozenset(order[s] for s in finals)
    return Fst(symtab, state_count, 0, new_finals, new_arcs)


def _check_same_table(a: Fst, b: Fst) -> None:
    if a.symtab is not b.symtab:
        raise SymbolTableMismatch("operands must share one SymbolTable")


def _resolve(symtab: SymbolTable, sym: str) -> int:
    """Map a symbol string to an id, treating bare "0" as epsilon."""
    if sym == "0":
        return EPSILON
    return symtab.add(sym)


# ---------------------------------------------------------------------------
# constructors


def make_fst(
    symtab: SymbolTable,
    state_count: int,
    start: int,
    finals: Iterable[int],
    arcs: Iterable[Arc],
) -> Fst:
    """Build a canonical machine from raw parts (renumbers and sorts)."""
    return _canonical(symtab, state_count, start, finals, arcs)


def atom(symtab: SymbolTable, input_sym: str, output_sym: str) -> Fst:
    """Two-state machine accepting exactly the pair input:output."""
    i = _resolve(symtab, input_sym)
    o = _resolve(symtab, output_sym)
    return Fst(symtab, 2, 0, {1}, (Arc(0, 1, i, o),))


def identity_star(symtab: SymbolTable, ids: Iterable[int] | None = None) -> Fst:
    """One-state machine mapping every string over the alphabet to itself.

    ``ids`` defaults to every registered non-epsilon symbol.
    """
    if ids is None:
        ids = range(1, len(symtab))
    arcs = sorted((Arc(0, 0, i, i) for i in ids), key=_arc_key)
    return Fst(symtab, 1, 0, {0}, arcs)


# ---------------------------------------------------------------------------
# rational operations


def union(a: Fst, b: Fst) -> Fst:
    _check_same_table(a, b)
    off_a, off_b = 1, 1 + a.state_count
    arcs = [Arc(0, off_a + a.start, EPSILON, EPSILON), Arc(0, off_b + b.start, EPSILON, EPSILON)]
    arcs += [Arc(x.source + off_a, x.target + off_a, x.input, x.output) for x in a.arcs]
    arcs += [Arc(x.source + off_b, x.target + off_b, x.input, x.output) for x in b.arcs]
    finals = {s + off_a for s in a.finals} | {s + off_b for s in b.finals}
    return _canonical(a.symtab, 1 + a.state_count + b.state_count, 0, finals, arcs)


def concat(a: Fst, b: Fst) -> Fst:
    _check_same_table(a, b)
    off_b = a.state_count
    arcs = list(a.arcs)
    arcs += [Arc(s, off_b + b.start, EPSILON, EPSILON) for s in sorted(a.finals)]
    arcs += [Arc(x.source + off_b, x.target + off_b, x.input, x.output) for x in b.arcs]
    finals = {s + off_b for s in b.finals}
    return _canonical(a.symtab, a.state_count + b.state_count, a.start, finals, arcs)


def star(a: Fst) -> Fst:
    off = 1
    arcs = [Arc(0, off + a.start, EPSILON, EPSILON)]
    arcs += [Arc(x.source + off, x.target + off, x.input, x.output) for x in a.arcs]
    arcs += [Arc(s + off, 0, EPSILON, EPSILON) for s in sorted(a.finals)]
    return _canonical(a.symtab, 1 + a.state_count, 0, {0}, arcs)


def invert(a: Fst) -> Fst:
    arcs = sorted((Arc(x.source, x.target, x.output, x.input) for x in a.arcs), key=_arc_key)
    return Fst(a.symtab, a.state_count, a.start, a.finals, arcs)


def project(a: Fst, side: str) -> Fst:
    """Keep one side of the relation, producing an acceptor.

    ``side`` is ``"upper"`` (keep inputs) or ``"lower"`` (keep outputs).
    """
    if side == "upper":
        arcs = [Arc(x.source, x.target, x.input, x.input) for x in a.arcs]
    elif side == "lower":
        arcs = [Arc(x.source, x.target, x.output, x.output) for x in a.arcs]
    else:
        raise ValueError(f"side must be 'upper' or 'lower', not {side!r}")
    return Fst(a.symtab, a.state_count, a.start, a.finals, sorted(set(arcs), key=_arc_key))


def reverse(a: Fst) -> Fst:
    """Machine accepting the reversed pairs of ``a``."""
    off = 1  # fresh start state 0 feeding the old finals
    arcs = [Arc(0, s + off, EPSILON, EPSILON) for s in sorted(a.finals)]
    arcs += [Arc(x.target + off, x.source + off, x.input, x.output) for x in a.arcs]
    return _canonical(a.symtab, 1 + a.state_count, 0, {a.start + off}, arcs)


# ---------------------------------------------------------------------------
# reachability and trimming


def _accessible(a: Fst) -> set[int]:
    index = a.out_arcs()
    seen = {a.start}
    queue = deque([a.start])
    while queue:
        s = queue.popleft()
        for arc in index[s]:
            if arc.target not in seen:
                seen.add(arc.target)
                queue.append(arc.target)
    return seen


def _coaccessible(a: Fst) -> set[int]:
    rindex: list[list[int]] = [[] for _ in range(a.state_count)]
    for arc in a.arcs:
        rindex[arc.target].append(arc.source)
    seen = set(a.finals)
    queue = deque(a.finals)
    while queue:
        s = queue.popleft()
        for src in rindex[s]:
            if src not in seen:
                seen.add(src)
                queue.append(src)
    return seen


def trim(a: Fst) -> Fst:
    """Drop states that are not on some start-to-final path."""
    useful = _accessible(a) & _coaccessible(a)
    if a.start not in useful:
        return _empty(a.symtab)
    remap = {old: new for new, old in enumerate(sorted(useful))}
    arcs = [
        Arc(remap[x.source], remap[x.target], x.input, x.output)
        for x in a.arcs
        if x.source in useful and x.target in useful
    ]
    finals = {remap[s] for s in a.finals if s in useful}
    return _canonical(a.symtab, len(useful), remap[a.start], finals, arcs)


# ---------------------------------------------------------------------------
# composition


def compose(a: Fst, b: Fst) -> Fst:
    """Relation composition with an epsilon-coordination filter.

    The three filter states force the canonical interleaving "all a-side
    epsilon moves, then all b-side epsilon moves" between genuine matches, so
    no pairing is produced twice and none is lost.
    """
    _check_same_table(a, b)

    a_index = a.out_arcs()
    b_real: list[dict[int, list[Arc]]] = [dict() for _ in range(b.state_count)]
    b_eps: list[list[Arc]] = [[] for _ in range(b.state_count)]
    for arc in b.arcs:
        if arc.input == EPSILON:
            b_eps[arc.source].append(arc)
        else:
            b_real[arc.source].setdefault(arc.input, []).append(arc)

    start = (a.start, b.start, 0)
    numbering: dict[tuple[int, int, int], int] = {start: 0}
    queue = deque([start])
    arcs: list[Arc] = []
    finals: set[int] = set()

    def state_id(key) -> int:
        sid = numbering.get(key)
        if sid is None:
            sid = len(numbering)
            numbering[key] = sid
            queue.append(key)
        return sid

    while queue:
        key = queue.popleft()
        p, q, f = key
        sid = numbering[key]
        if p in a.finals and q in b.finals:
            finals.add(sid)
        for arc_a in a_index[p]:
            if arc_a.output == EPSILON:
                if f in (0, 1):  # a moves alone
                    arcs.append(Arc(sid, state_id((arc_a.target, q, 1)), arc_a.input, EPSILON))
            else:
                for arc_b in b_real[q].get(arc_a.output, ()):
                    arcs.append(
                        Arc(sid, state_id((arc_a.target, arc_b.target, 0)), arc_a.input, arc_b.output)
                    )
        for arc_b in b_eps[q]:  # b moves alone; allowed from any filter state
            arcs.append(Arc(sid, state_id((p, arc_b.target, 2)), EPSILON, arc_b.output))

    composed = _canonical(a.symtab, len(numbering), 0, finals, arcs)
    return trim(composed)


# ---------------------------------------------------------------------------
# determinization and minimization over fused pair labels


def determinize_min(a: Fst) -> Fst:
    """Determinize and minimize ``a`` as an acceptor over fused pair labels.

    One-sided epsilon labels (``x:0`` and ``0:x``) are treated as ordinary
    pair symbols; only ``0:0`` arcs are epsilon-eliminated.  The fused
    pair-language is preserved exactly, hence so is the relation.
    """
    a = trim(a)
    if a.is_empty():
        return _empty(a.symtab)

    index = a.out_arcs()

    def closure(states: frozenset[int]) -> frozenset[int]:
        seen = set(states)
        queue = deque(states)
        while queue:
            s = queue.popleft()
            for arc in index[s]:
                if arc.input == EPSILON and arc.output == EPSILON and arc.target not in seen:
                    seen.add(arc.target)
                    queue.append(arc.target)
        return frozenset(seen)

    start = closure(frozenset([a.start]))
    subsets: dict[frozenset[int], int] = {start: 0}
    queue = deque([start])
    dfa_arcs: list[tuple[int, tuple[int, int], int]] = []
    dfa_finals: set[int] = set()
    while queue:
        subset = queue.popleft()
        sid = subsets[subset]
        if subset & a.finals:
            dfa_finals.add(sid)
        moves: dict[tuple[int, int], set[int]] = {}
        for s in subset:
            for arc in index[s]:
                label = (arc.input, arc.output)
                if label != (EPSILON, EPSILON):
                    moves.setdefault(label, set()).add(arc.target)
        for label in sorted(moves):
            target = closure(frozenset(moves[label]))
            tid = subsets.get(target)
            if tid is None:
                tid = len(subsets)
                subsets[target] = tid
                queue.append(target)
            dfa_arcs.append((sid, label, tid))

    n = len(subsets)
    block = [0 if s in dfa_finals else 1 for s in range(n)]
    if not dfa_finals or len(dfa_finals) == n:
        block = [0] * n
    out: list[list[tuple[tuple[int, int], int]]] = [[] for _ in range(n)]
    for src, label, tgt in dfa_arcs:
        out[src].append((label, tgt))

    while True:  # Moore refinement to a fixpoint
        signatures = {}
        new_block = [0] * n
        for s in range(n):
            sig = (
                block[s],
                s in dfa_finals,
                tuple(sorted((label, block[t]) for label, t in out[s])),
            )
            bid = signatures.setdefault(sig, len(signatures))
            new_block[s] = bid
        if len(signatures) == len(set(block)):
            break
        block = new_block

    rep_arcs = set()
    for src, label, tgt in dfa_arcs:
        rep_arcs.add(Arc(block[src], block[tgt], label[0], label[1]))
    finals = {block[s] for s in dfa_finals}
    count = len(set(block))
    return _canonical(a.symtab, count, block[0], finals, sorted(rep_arcs, key=_arc_key))


# ---------------------------------------------------------------------------
# bounded path enumeration (the testing oracle)


def paths(a: Fst, max_len: int, cap: int | None = None) -> list[tuple[str, str]]:
    """All accepted (input, output) string pairs with at most ``max_len``
    non-epsilon symbols per side, sorted lexicographically by symbol ids.

    ``cap`` bounds how large ``max_len`` may be (default 12); asking for more
    raises :class:`PathLimitError`.
    """
    pairs = _id_paths(a, max_len, cap)
    symtab = a.symtab
    return [
        ("".join(map(symtab.text_of, ins)), "".join(map(symtab.text_of, outs)))
        for ins, outs in pairs
    ]


def id_paths(a: Fst, max_len: int, cap: int | None = None) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Like :func:`paths` but yields raw symbol-id tuples."""
    return _id_paths(a, max_len, cap)


def _id_paths(a: Fst, max_len: int, cap: int | None):
    if cap is None:
        cap = DEFAULT_PATH_CAP
    if max_len > cap:
        raise PathLimitError(f"max_len {max_len} exceeds cap {cap}")
    index = a.out_arcs()
    results: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    start = (a.start, (), ())
    seen = {start}
    queue = deque([start])
    while queue:
        state, ins, outs = queue.popleft()
        if state in a.finals:
            results.add((ins, outs))
        for arc in index[state]:
            nins = ins if arc.input == EPSILON else ins + (arc.input,)
            nouts = outs if arc.output == EPSILON else outs + (arc.output,)
            if len(nins) > max_len or len(nouts) > max_len:
                continue
            config = (arc.target, nins, nouts)
            if config not in seen:
                seen.add(config)
                queue.append(config)
    return sorted(results)


def fused_paths(a: Fst, max_len: int, cap: int | None = None) -> list[tuple[tuple[int, int], ...]]:
    """Accepted label sequences over fused (input, output) pair symbols.

    ``0:0`` arcs contribute nothing (they are the fused epsilon); one-sided
    epsilon labels count as ordinary symbols.  Used to check that
    determinization preserves the pair-language.
    """
    if cap is None:
        cap = DEFAULT_PATH_CAP
    if max_len > cap:
        raise PathLimitError(f"max_len {max_len} exceeds cap {cap}")
    index = a.out_arcs()
    results: set[tuple[tuple[int, int], ...]] = set()
    start = (a.start, ())
    seen = {start}
    queue = deque([start])
    while queue:
        state, labels = queue.popleft()
        if state in a.finals:
            results.add(labels)
        for arc in index[state]:
            label = (arc.input, arc.output)
            nlabels = labels if label == (EPSILON, EPSILON) else labels + (label,)
            if len(nlabels) > max_len:
                continue
            config = (arc.target, nlabels)
            if config not in seen:
                seen.add(config)
                queue.append(config)
    return sorted(results)
