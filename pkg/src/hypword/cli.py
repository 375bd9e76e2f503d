"""Command-line front end.

Words on the command line use the whitespace-separated token syntax with
``_`` for the empty word, so multi-character symbol names stay
unambiguous.  Boolean verbs exit 0 for true and 1 for false; any error
exits 2; a cross-section collision exits 3.  All output is deterministic:
identical invocations produce byte-identical text.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .core import (
    Alphabet,
    DomainError,
    FormatError,
    Symbol,
    Word,
    parse_word,
    render_word,
    symbol_from_token,
    word_key,
)
from .automata import (
    dfa_from_nfa,
    emit_automaton,
    nfa_enumerate,
    parse_automaton,
)
from .grammar import Cfg, enumerate_language, parse_grammar, trim_grammar
from .equality import (
    EqualityGrammar,
    build_equality_grammar,
    emit_equality_grammar,
    equality_member,
    table_member,
)
from .rewriting import (
    InvalidSystemError,
    MonadicCfSystem,
    check_confluence_bounded,
    emit_system,
    equal_in_monoid,
    find_redex,
    normal_form,
    parse_system,
)
from .structures import (
    GeneratorMap,
    WordHypStructure,
    change_generators,
    counterexample_system,
    validate_cross_section,
)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2
EXIT_COLLISION = 3


@dataclass
class Report:
    """Canonical textual report: status, witnesses, counts."""

    status: str
    witnesses: list[str] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    def render(self) -> str:
        lines = [f"status: {self.status}"]
        lines.extend(self.witnesses)
        for key in sorted(self.counts):
            lines.append(f"{key}: {self.counts[key]}")
        return "\n".join(lines) + "\n"


def _first_content_line(text: str) -> str:
    from .grammar import _strip_comment

    for raw in text.splitlines():
        line = _strip_comment(raw).strip()
        if line:
            return line
    return ""


def _sniff_kind(text: str) -> str:
    head = _first_content_line(text)
    if head.startswith("alphabet:"):
        return "system"
    if head.startswith("start:"):
        return "grammar"
    if head.startswith("states:"):
        return "automaton"
    raise FormatError(1, "cannot tell the file kind from its first line")


def _load_equality_grammar(path: str, trim: bool) -> EqualityGrammar:
    text = Path(path).read_text()
    kind = _sniff_kind(text)
    if kind == "system":
        return build_equality_grammar(parse_system(text))
    if kind == "grammar":
        g = parse_grammar(text)
        if trim:
            g = trim_grammar(g)
        return EqualityGrammar.from_cfg(g)
    raise FormatError(1, f"expected a system or grammar file, found {kind}")


def _load_system(path: str) -> MonadicCfSystem:
    return parse_system(Path(path).read_text())


# --- structure and generator-map files --------------------------------------

def parse_structure_file(text: str, base_dir: Path) -> tuple[WordHypStructure, str]:
    """Parse a structure file; returns the structure and its system path.

    Header lines ``alphabet:``, ``system:`` and optional ``interp x: w``
    precede a ``reps:`` line followed by an automaton in the usual
    format.  Equality interprets words through the named system.
    """
    from .grammar import _strip_comment

    header_done = False
    alphabet: Alphabet | None = None
    system_path: str | None = None
    interp: dict[Symbol, Word] = {}
    reps_lines: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if header_done:
            reps_lines.append(raw)
            continue
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            alphabet = Alphabet(symbol_from_token(t) for t in line[len("alphabet:"):].split())
        elif line.startswith("system:"):
            system_path = line[len("system:"):].strip()
        elif line.startswith("interp "):
            head, _, body = line.partition(":")
            sym = symbol_from_token(head[len("interp "):].strip())
            interp[sym] = parse_word(body)
        elif line == "reps:":
            header_done = True
        else:
            raise FormatError(lineno, f"unrecognized structure line {line!r}")
    if alphabet is None or system_path is None or not header_done:
        raise FormatError(1, "structure file needs alphabet:, system: and reps: sections")
    reps = parse_automaton("\n".join(reps_lines))
    system = parse_system((base_dir / system_path).read_text())
    images = {x: interp.get(x, (x,)) for x in alphabet}

    def eq(u: Word, v: Word) -> bool:
        iu = tuple(s for x in u for s in images[x])
        iv = tuple(s for x in v for s in images[x])
        return equal_in_monoid(system, iu, iv)

    return WordHypStructure(alphabet, reps, eq, images), system_path


def parse_generator_map_file(text: str, base_dir: Path) -> tuple[GeneratorMap, MonadicCfSystem, str]:
    """Parse a generator-map file: source, target, target-system, map lines."""
    from .grammar import _strip_comment

    source: Alphabet | None = None
    target: Alphabet | None = None
    system_path: str | None = None
    images: dict[Symbol, Word] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("source:"):
            source = Alphabet(symbol_from_token(t) for t in line[len("source:"):].split())
        elif line.startswith("target-system:"):
            system_path = line[len("target-system:"):].strip()
        elif line.startswith("target:"):
            target = Alphabet(symbol_from_token(t) for t in line[len("target:"):].split())
        elif line.startswith("map "):
            head, _, body = line.partition(":")
            sym = symbol_from_token(head[len("map "):].strip())
            images[sym] = parse_word(body)
        else:
            raise FormatError(lineno, f"unrecognized map line {line!r}")
    if source is None or target is None or system_path is None:
        raise FormatError(1, "map file needs source:, target: and target-system: lines")
    system = parse_system((base_dir / system_path).read_text())
    return GeneratorMap(source, target, images), system, system_path


def emit_structure_file(s: WordHypStructure, system_path: str) -> str:
    lines = ["alphabet: " + " ".join(render_word((x,)) for x in s.alphabet)]
    lines.append(f"system: {system_path}")
    for x in s.alphabet:
        if s.interpretation.get(x, (x,)) != (x,):
            lines.append(f"interp {render_word((x,))}: {render_word(s.interpretation[x])}")
    lines.append("reps:")
    lines.append(emit_automaton(s.reps).rstrip("\n"))
    return "\n".join(lines) + "\n"


# --- verbs -------------------------------------------------------------------

def _cmd_reduce(args) -> int:
    system = _load_system(args.system)
    w = parse_word(args.word, system.alphabet)
    print(render_word(normal_form(system, w)))
    return EXIT_TRUE


def _cmd_equal(args) -> int:
    system = _load_system(args.system)
    u = parse_word(args.u, system.alphabet)
    v = parse_word(args.v, system.alphabet)
    result = equal_in_monoid(system, u, v)
    print("true" if result else "false")
    return EXIT_TRUE if result else EXIT_FALSE


def _cmd_compile(args) -> int:
    system = _load_system(args.system)
    text = emit_equality_grammar(build_equality_grammar(system), provenance=True)
    if args.output:
        Path(args.output).write_text(text)
    else:
        print(text, end="")
    return EXIT_TRUE


def _cmd_member_eq(args) -> int:
    eg = _load_equality_grammar(args.file, args.trim)
    u = parse_word(args.u, eg.base_alphabet)
    v = parse_word(args.v, eg.base_alphabet)
    result = equality_member(eg, u, v)
    print("true" if result else "false")
    return EXIT_TRUE if result else EXIT_FALSE


def _cmd_member_mul(args) -> int:
    eg = _load_equality_grammar(args.file, args.trim)
    u = parse_word(args.u, eg.base_alphabet)
    v = parse_word(args.v, eg.base_alphabet)
    w = parse_word(args.w, eg.base_alphabet)
    result = table_member(eg, u, v, w)
    print("true" if result else "false")
    return EXIT_TRUE if result else EXIT_FALSE


def _cmd_check_confluence(args) -> int:
    system = _load_system(args.system)
    rep = check_confluence_bounded(system, args.max_len)
    witnesses = []
    if not rep.passed:
        forms = ", ".join(render_word(u) for u in rep.witness_forms)
        witnesses.append(f"witness: {render_word(rep.witness)} -> [{forms}]")
    report = Report(
        status="pass" if rep.passed else "fail",
        witnesses=witnesses,
        counts={"max-len": rep.max_len, "words-checked": rep.words_checked},
    )
    print(report.render(), end="")
    return EXIT_TRUE if rep.passed else EXIT_FALSE


def _cmd_cross_section(args) -> int:
    system = _load_system(args.system)
    candidate = dfa_from_nfa(parse_automaton(Path(args.dfa).read_text()))
    rep = validate_cross_section(candidate, system, args.max_len)
    witnesses = [
        f"collision: {render_word(w1)} | {render_word(w2)} -> {render_word(nf)}"
        for w1, w2, nf in rep.collisions
    ]
    witnesses += [f"unwitnessed: {render_word(w)}" for w in rep.unwitnessed]
    report = Report(
        status=rep.status,
        witnesses=witnesses,
        counts={"max-len": rep.max_len, "words-checked": rep.words_checked},
    )
    print(report.render(), end="")
    return EXIT_COLLISION if rep.collisions else EXIT_TRUE


def _cmd_change_gens(args) -> int:
    base_dir = Path(args.structure).resolve().parent
    structure, _ = parse_structure_file(Path(args.structure).read_text(), base_dir)
    map_dir = Path(args.map).resolve().parent
    gmap, target_system, target_path = parse_generator_map_file(Path(args.map).read_text(), map_dir)

    def eq(u: Word, v: Word) -> bool:
        return equal_in_monoid(target_system, u, v)

    out = change_generators(structure, gmap, eq)
    print(emit_structure_file(out, target_path), end="")
    return EXIT_TRUE


def _cmd_example(args) -> int:
    print(emit_system(counterexample_system(args.min_repeat)), end="")
    return EXIT_TRUE


def _cmd_enumerate(args) -> int:
    text = Path(args.file).read_text()
    kind = _sniff_kind(text)
    if kind == "grammar":
        g = parse_grammar(text)
        if args.trim:
            g = trim_grammar(g)
        words = enumerate_language(g, args.max_len)
    elif kind == "automaton":
        words = nfa_enumerate(parse_automaton(text), args.max_len)
    else:
        system = parse_system(text)
        words = set()
        frontier: list[Word] = [()]
        for _ in range(args.max_len + 1):
            for w in frontier:
                if find_redex(system, w) is None:
                    words.add(w)
            frontier = [w + (x,) for w in frontier for x in system.alphabet if len(w) < args.max_len]
    for w in sorted(words, key=word_key):
        print(render_word(w))
    return EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypword",
        description="Word problems and equality-language grammars for confluent context-free monadic rewriting systems.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("reduce", help="reduce a word to its normal form")
    p.add_argument("system")
    p.add_argument("word")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("equal", help="decide equality of two words in the monoid")
    p.add_argument("system")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=_cmd_equal)

    p = sub.add_parser("compile", help="compile the equality-language grammar")
    p.add_argument("system")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("member-eq", help="decide membership in the equality language")
    p.add_argument("file", help="system file or compiled grammar file")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--trim", action="store_true", help="trim useless nonterminals when loading a grammar")
    p.set_defaults(func=_cmd_member_eq)

    p = sub.add_parser("member-mul", help="decide membership in the multiplication table")
    p.add_argument("file", help="system file or compiled grammar file")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("w")
    p.add_argument("--trim", action="store_true")
    p.set_defaults(func=_cmd_member_mul)

    p = sub.add_parser("check-confluence", help="bounded confluence check")
    p.add_argument("system")
    p.add_argument("--max-len", type=int, default=6)
    p.set_defaults(func=_cmd_check_confluence)

    p = sub.add_parser("cross-section", help="search a candidate cross-section for collisions")
    p.add_argument("system")
    p.add_argument("dfa")
    p.add_argument("--max-len", type=int, default=8)
    p.set_defaults(func=_cmd_cross_section)

    p = sub.add_parser("change-gens", help="transport a structure to new generators")
    p.add_argument("structure")
    p.add_argument("map")
    p.set_defaults(func=_cmd_change_gens)

    p = sub.add_parser("example", help="print the built-in counterexample system")
    p.add_argument("--min-repeat", type=int, choices=(0, 1), default=1)
    p.set_defaults(func=_cmd_example)

    p = sub.add_parser("enumerate", help="enumerate a language to a length bound")
    p.add_argument("file", help="grammar, automaton or system file")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--trim", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_TRUE
    try:
        return args.func(args)
    except (FormatError, InvalidSystemError, DomainError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
