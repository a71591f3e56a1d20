"""Context-dependent replacement rules: parser, compiler, and oracle.

A rule file holds one rule per line, ``[ A | B -> C | D || L _ R ]``, with
``!`` comments.  The left/right contexts are literal symbol strings; a
whitespace-delimited chunk naming a declared symbol class matches any of its
members.  Classes are declared with ``define Name member member ...``.  On
the right-hand side ``0`` is the empty string (deletion); contexts written
``0`` are empty.

Semantics: obligatory replacement, every position decided on the *input*
string; a symbol is rewritten iff it is a left-hand alternative, the left
context immediately precedes it and the right context immediately follows
it.  Since alternatives are single symbols, matches never overlap and the
relation is a function.  :func:`apply_rule_oracle` is the executable
definition; the compiler is verified against it.

Compilation is a marker construction composed from two deterministic
passes: a reversed pass inserts a marker at every boundary the right
context follows (right context is plain left history in reverse), then a
forward pass tracks the left context, consumes the markers, and rewrites.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from fstmorph.fst import Arc, Fst, compose, determinize_min, identity_star, make_fst, reverse, trim
from fstmorph.symbols import EPSILON, SymbolTable

MARKER_TEXT = "@M@"  # internal to compiled rule machines, never in their relation


class RuleError(ValueError):
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


@dataclass(frozen=True)
class ReplaceRule:
    lhs: tuple[str, ...]          # alternation of single symbols
    rhs: tuple[str, ...]          # parallel to lhs, or length 1; "" deletes
    left_ctx: tuple[str, ...] = ()   # symbols or class names
    right_ctx: tuple[str, ...] = ()

    def rhs_for(self, k: int) -> str:
        return self.rhs[k] if len(self.rhs) > 1 else self.rhs[0]


@dataclass
class RuleSet:
    rules: list[ReplaceRule] = field(default_factory=list)
    classes: dict[str, frozenset[str]] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# parsing


def _parse_context(text: str, classes: dict[str, frozenset[str]]) -> tuple[str, ...]:
    items: list[str] = []
    for chunk in text.split():
        if chunk == "0":
            continue
        if chunk in classes:
            items.append(chunk)
        else:
            items.extend(chunk)
    return tuple(items)


def _single(symbol: str, what: str, filename, lineno) -> str:
    if len(symbol) != 1:
        raise RuleError(f"{what} {symbol!r} must be a single symbol", filename, lineno)
    return symbol


def parse_rules(source: str, *, filename: str | None = None) -> RuleSet:
    rs = RuleSet()
    for lineno, raw in enumerate(source.split("\n"), 1):
        line = raw.split("!", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "define":
            if len(parts) < 3:
                raise RuleError("class definition needs a name and members", filename, lineno)
            name = parts[1]
            if name in rs.classes:
                raise RuleError(f"duplicate class {name!r}", filename, lineno)
            rs.classes[name] = frozenset(parts[2:])
            continue
        if not (line.startswith("[") and line.endswith("]")):
            raise RuleError("rule must be bracketed: [ A -> B || L _ R ]", filename, lineno)
        body = line[1:-1]
        if "[" in body or "]" in body:
            raise RuleError("malformed brackets", filename, lineno)

        ctx_split = body.split("||")
        if len(ctx_split) > 2:
            raise RuleError("at most one '||' clause allowed", filename, lineno)
        change = ctx_split[0]
        left_ctx: tuple[str, ...] = ()
        right_ctx: tuple[str, ...] = ()
        if len(ctx_split) == 2:
            ctx = ctx_split[1]
            if ctx.count("_") != 1:
                raise RuleError("context must be 'L _ R' with one '_'", filename, lineno)
            left_text, right_text = ctx.split("_")
            left_ctx = _parse_context(left_text, rs.classes)
            right_ctx = _parse_context(right_text, rs.classes)

        arrow = "->" if "->" in change else "→"
        sides = change.split(arrow)
        if len(sides) != 2:
            raise RuleError("rule needs exactly one '->'", filename, lineno)
        lhs = tuple(_single(x.strip(), "left-hand symbol", filename, lineno) for x in sides[0].split("|"))
        if not lhs or any(not x for x in lhs):
            raise RuleError("empty left-hand side", filename, lineno)
        if "0" in lhs:
            raise RuleError("epsilon ('0') cannot appear on the left-hand side", filename, lineno)
        if len(set(lhs)) != len(lhs):
            raise RuleError("left-hand alternatives must be distinct", filename, lineno)
        rhs_raw = [x.strip() for x in sides[1].split("|")]
        rhs = tuple("" if x == "0" else _single(x, "right-hand symbol", filename, lineno) for x in rhs_raw)
        if len(rhs) not in (1, len(lhs)):
            raise RuleError(
                f"right-hand side must have 1 or {len(lhs)} alternatives, has {len(rhs)}",
                filename,
                lineno,
            )
        rs.rules.append(ReplaceRule(lhs, rhs, left_ctx, right_ctx))
    return rs


# ---------------------------------------------------------------------------
# the string-rewriting oracle


def apply_rule_oracle(rule: ReplaceRule, s: str, classes: dict[str, frozenset[str]] | None = None) -> str:
    """Single left-to-right scan; the executable definition of a rule."""
    classes = classes or {}
    replacement = {sym: rule.rhs_for(k) for k, sym in enumerate(rule.lhs)}
    left, right = rule.left_ctx, rule.right_ctx

    def matches(item: str, ch: str) -> bool:
        members = classes.get(item)
        return ch in members if members is not None else ch == item

    out: list[str] = []
    n = len(s)
    for i, ch in enumerate(s):
        hit = ch in replacement
        if hit and left:
            hit = i >= len(left) and all(
                matches(item, s[i - len(left) + j]) for j, item in enumerate(left)
            )
        if hit and right:
            hit = i + 1 + len(right) <= n and all(
                matches(item, s[i + 1 + j]) for j, item in enumerate(right)
            )
        out.append(replacement[ch] if hit else ch)
    return "".join(out)


def apply_ruleset_oracle(rs: RuleSet, s: str) -> str:
    for rule in rs.rules:
        s = apply_rule_oracle(rule, s, rs.classes)
    return s


# ---------------------------------------------------------------------------
# compilation


def _register_rule_symbols(rule: ReplaceRule, symtab: SymbolTable, classes) -> None:
    for sym in rule.lhs:
        symtab.add(sym)
    for sym in rule.rhs:
        if sym:
            symtab.add(sym)
    for item in rule.left_ctx + rule.right_ctx:
        if item in classes:
            for member in classes[item]:
                symtab.add(member)
        else:
            symtab.add(item)


def _default_alphabet(symtab: SymbolTable) -> list[int]:
    marker = symtab.get(MARKER_TEXT)
    return [sid for sid in range(1, len(symtab)) if sid != marker]


def _suffix_tracker(alphabet: list[int], items: list[frozenset[int]]):
    """DFA tracking whether the last symbols read match ``items``.

    Returns (state_count, delta, complete) where delta maps (state, symbol)
    to the next state and ``complete`` holds the states whose history ends
    with a full match.  Classes make the naive sliding-window automaton
    nondeterministic, so this is a subset construction over match progress.
    """
    n = len(items)
    start = frozenset([0])
    numbering: dict[frozenset[int], int] = {start: 0}
    queue = [start]
    delta: dict[tuple[int, int], int] = {}
    while queue:
        subset = queue.pop()
        si = numbering[subset]
        for sym in alphabet:
            nxt = {0}
            for p in subset:
                if p < n and sym in items[p]:
                    nxt.add(p + 1)
            key = frozenset(nxt)
            ti = numbering.get(key)
            if ti is None:
                ti = numbering[key] = len(numbering)
                queue.append(key)
            delta[(si, sym)] = ti
    complete = {si for subset, si in numbering.items() if n in subset}
    return len(numbering), delta, complete


def _right_marker_pass(symtab, alphabet: list[int], marker: int, right_items) -> Fst:
    """Transducer inserting the marker at every boundary the right context
    follows.  Built as the reverse of a deterministic left-history inserter
    running over the reversed string."""
    nstates, delta, complete = _suffix_tracker(alphabet, list(reversed(right_items)))
    plain = lambda q: 2 * q
    marked = lambda q: 2 * q + 1
    arcs: list[Arc] = []
    finals: set[int] = set()
    for q in range(nstates):
        if q in complete:
            arcs.append(Arc(plain(q), marked(q), EPSILON, marker))
        else:
            finals.add(plain(q))
        finals.add(marked(q))
        for sym in alphabet:
            t = delta[(q, sym)]
            if q not in complete:
                arcs.append(Arc(plain(q), plain(t), sym, sym))
            arcs.append(Arc(marked(q), plain(t), sym, sym))
    inserter = make_fst(symtab, 2 * nstates, plain(0), finals, arcs)
    return reverse(inserter)


def _forward_rewrite_pass(
    symtab,
    alphabet: list[int],
    marker: int,
    left_items,
    replacement: dict[int, int],
    expect_markers: bool,
) -> Fst:
    """The rewriting pass: tracks the left context over input symbols,
    buffers a left-hand symbol until the marker verdict arrives (when a
    right context exists), rewrites on marker, and erases stray markers."""
    nstates, delta, complete = _suffix_tracker(alphabet, list(left_items))

    numbering: dict[tuple, int] = {}

    def sid(key) -> int:
        idx = numbering.get(key)
        if idx is None:
            idx = numbering[key] = len(numbering)
        return idx

    start = sid(("k", 0, None))
    sink = sid(("sink",))
    arcs: list[Arc] = []
    finals: set[int] = {sink}

    for k in range(nstates):
        base = sid(("k", k, None))
        finals.add(base)
        arcs.append(Arc(base, base, marker, EPSILON))  # marker at a non-site boundary
        for sym in alphabet:
            k2 = delta[(k, sym)]
            if sym in replacement and k in complete:
                if expect_markers:
                    arcs.append(Arc(base, sid(("k", k2, sym)), sym, EPSILON))
                else:
                    arcs.append(Arc(base, sid(("k", k2, None)), sym, replacement[sym]))
            else:
                arcs.append(Arc(base, sid(("k", k2, None)), sym, sym))

    if expect_markers:
        seen: set[tuple] = set()
        while True:
            pending = [
                key
                for key in list(numbering)
                if key[0] == "k" and key[2] is not None and key not in seen
            ]
            if not pending:
                break
            for key in pending:
                seen.add(key)
                _, k, buf = key
                state = sid(key)
                arcs.append(Arc(state, sid(("k", k, None)), marker, replacement[buf]))
                arcs.append(Arc(state, sink, EPSILON, buf))  # end of input: flush unrewritten
                for sym in alphabet:
                    k2 = delta[(k, sym)]
                    if sym in replacement and k in complete:
                        arcs.append(Arc(state, sid(("k", k2, sym)), sym, buf))
                    else:
                        helper = sid(("flush", k2, sym))
                        arcs.append(Arc(state, helper, sym, buf))
                        arcs.append(Arc(helper, sid(("k", k2, None)), EPSILON, sym))

    return make_fst(symtab, len(numbering), start, finals, arcs)


def compile_rule(
    rule: ReplaceRule,
    symtab: SymbolTable,
    *,
    classes: dict[str, frozenset[str]] | None = None,
    alphabet: list[int] | None = None,
) -> Fst:
    """Compile one rule to a transducer over the alphabet.

    ``alphabet`` (symbol ids) defaults to every registered non-marker
    symbol; strings over it that contain no match site map to themselves.
    """
    classes = classes or {}
    if any(sym in ("", "0") for sym in rule.lhs):
        raise RuleError("epsilon cannot appear on the left-hand side")
    _register_rule_symbols(rule, symtab, classes)
    marker = symtab.add(MARKER_TEXT)
    if alphabet is None:
        alphabet = _default_alphabet(symtab)
    alpha_set = set(alphabet)

    def item_ids(item: str) -> frozenset[int]:
        if item in classes:
            return frozenset(symtab.id_of(m) for m in classes[item])
        return frozenset([symtab.id_of(item)])

    replacement: dict[int, int] = {}
    for k, sym in enumerate(rule.lhs):
        out = rule.rhs_for(k)
        replacement[symtab.id_of(sym)] = symtab.id_of(out) if out else EPSILON
    left_items = [item_ids(x) for x in rule.left_ctx]
    right_items = [item_ids(x) for x in rule.right_ctx]

    for needed in (set(replacement) | {s for it in left_items + right_items for s in it}):
        if needed not in alpha_set:
            raise RuleError(f"rule symbol {symtab.text_of(needed)!r} is outside the alphabet")

    forward = _forward_rewrite_pass(
        symtab, alphabet, marker, left_items, replacement, expect_markers=bool(right_items)
    )
    if right_items:
        marking = _right_marker_pass(symtab, alphabet, marker, right_items)
        return compose(marking, forward)
    return trim(forward)


def compile_ruleset(rs: RuleSet, symtab: SymbolTable, *, alphabet: list[int] | None = None) -> Fst:
    """Compose the rules in file order (first rule applies first)."""
    for rule in rs.rules:
        _register_rule_symbols(rule, symtab, rs.classes)
    symtab.add(MARKER_TEXT)
    if alphabet is None:
        alphabet = _default_alphabet(symtab)
    machine: Fst | None = None
    for rule in rs.rules:
        step = compile_rule(rule, symtab, classes=rs.classes, alphabet=alphabet)
        machine = step if machine is None else determinize_min(compose(machine, step))
    if machine is None:
        return identity_star(symtab, alphabet)
    return machine
