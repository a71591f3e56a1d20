"""Command-line front-end.

Subcommands wire the compilers and the runtime together: ``compile`` builds
a grammar directory from lexicon + rule files, ``analyze``/``generate`` run
lookups line by line (streaming, so corpus-sized inputs need flat memory),
``eval`` scores against a gold file, and ``convert`` maps legacy-font bytes
to UTF-8.

Exit codes: 0 success, 1 domain error (parse/compile/eval), 2 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import ExitStack

from fstmorph import encoding, lexc, rules, scoring
from fstmorph.fst import FstError
from fstmorph.runtime import DEFAULT_MAX_OUTPUT_LEN, Grammar, GrammarError, build_grammar
from fstmorph.symbols import SymbolTable

NO_ANALYSIS = "+?"

_DOMAIN_ERRORS = (
    lexc.LexcError,
    rules.RuleError,
    GrammarError,
    FstError,
    encoding.MappingError,
    scoring.ScoringError,
)


def _open_in(stack: ExitStack, path: str | None, binary: bool = False):
    if path is None:
        return sys.stdin.buffer if binary else sys.stdin
    mode = "rb" if binary else "r"
    kwargs = {} if binary else {"encoding": "utf-8"}
    return stack.enter_context(open(path, mode, **kwargs))


def _open_out(stack: ExitStack, path: str | None):
    if path is None:
        return sys.stdout
    return stack.enter_context(open(path, "w", encoding="utf-8", newline="\n"))


def cmd_compile(args) -> int:
    symtab = SymbolTable()
    ast = lexc.parse_lexc(
        open(args.lexicon, encoding="utf-8").read(), filename=args.lexicon
    )
    lexicon = lexc.compile_lexicon(ast, symtab)
    ruleset = rules.parse_rules(
        open(args.rules, encoding="utf-8").read(), filename=args.rules
    )
    rule_fst = rules.compile_ruleset(ruleset, symtab)
    grammar = build_grammar(lexicon, rule_fst)
    grammar.save(args.grammar)
    net = grammar.net
    print(f"wrote {args.grammar}: {net.state_count} states, {len(net.arcs)} arcs")
    return 0


def cmd_analyze(args) -> int:
    grammar = Grammar.load(args.grammar)
    with ExitStack() as stack:
        source = _open_in(stack, args.input)
        sink = _open_out(stack, args.output)
        for line in source:
            word = line.strip()
            if not word:
                continue
            analyses = grammar.apply_up(word, args.max_output_len)
            rendered = ",".join(a.rendered for a in analyses) if analyses else NO_ANALYSIS
            sink.write(f"{word}\t{rendered}\n")
    return 0


def cmd_generate(args) -> int:
    grammar = Grammar.load(args.grammar)
    with ExitStack() as stack:
        source = _open_in(stack, args.input)
        sink = _open_out(stack, args.output)
        for line in source:
            lexical = line.strip()
            if not lexical:
                continue
            grammar.lexical_ids(lexical, strict=True)  # diagnose bad tags
            surfaces = grammar.apply_down(lexical, args.max_output_len)
            rendered = ",".join(surfaces) if surfaces else NO_ANALYSIS
            sink.write(f"{lexical}\t{rendered}\n")
    return 0


def cmd_eval(args) -> int:
    grammar = Grammar.load(args.grammar)
    gold = scoring.parse_gold(open(args.gold, encoding="utf-8").read())
    report = scoring.evaluate(grammar, gold)
    with ExitStack() as stack:
        sink = _open_out(stack, args.output)
        sink.write(report.as_table())
        sink.write("\n")
        sink.write(report.as_block())
    return 0


def cmd_convert(args) -> int:
    table = encoding.load_mapping(open(args.map, encoding="utf-8").read())
    with ExitStack() as stack:
        data = _open_in(stack, args.input, binary=True).read()
        sink = _open_out(stack, args.output)
        sink.write(encoding.convert(table, data))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fstmorph", description="Finite-state morphology toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile lexicon + rules into a grammar directory")
    p.add_argument("--lexicon", required=True, help="continuation-class lexicon (.lexc)")
    p.add_argument("--rules", required=True, help="replacement rules (.regex)")
    p.add_argument("--grammar", required=True, help="output grammar directory")
    p.set_defaults(func=cmd_compile)

    for name, func, help_text in [
        ("analyze", cmd_analyze, "surface words to analyses (one word per line)"),
        ("generate", cmd_generate, "lexical strings to surface forms"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--grammar", required=True, help="compiled grammar directory")
        p.add_argument("--input", help="input file (default: stdin)")
        p.add_argument("--output", help="output file (default: stdout)")
        p.add_argument(
            "--max-output-len",
            type=int,
            default=DEFAULT_MAX_OUTPUT_LEN,
            help="cap on symbols per produced string",
        )
        p.set_defaults(func=func)

    p = sub.add_parser("eval", help="score the analyzer against a gold word list")
    p.add_argument("--grammar", required=True, help="compiled grammar directory")
    p.add_argument("--gold", required=True, help="gold file: surface<TAB>analyses")
    p.add_argument("--output", help="report file (default: stdout)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("convert", help="convert legacy-font bytes to UTF-8")
    p.add_argument("--map", required=True, help="mapping table (TSV)")
    p.add_argument("--input", help="input file (default: stdin)")
    p.add_argument("--output", help="output file (default: stdout)")
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as exc:
        print(f"fstmorph {args.command}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        name = getattr(exc, "filename", None)
        detail = f"{exc.strerror}: {name}" if name else str(exc)
        print(f"fstmorph {args.command}: {detail}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
