"""The equality-language grammar of a confluent monadic system.

For a confluent context-free monadic system over A, the words
``u #2 reverse(v)`` with u and v naming the same monoid element form a
context-free language.  This module compiles its grammar mechanically:

* every left-hand-side family grammar is copied twice, once with its
  terminals dollar-annotated and once reversed with tilde annotation;
* a small mirror grammar generates ``$p #2 ~reverse(p)`` for the
  annotated copies of every word p (the empty p becomes the two single
  letters ``$eps`` / ``~eps``);
* insertion productions let an annotated letter absorb an adjacent
  annotated empty word, start productions jump into a family grammar,
  and end productions turn each annotated letter into the letter itself
  (``$eps`` and ``~eps`` into the empty word).

Membership of ``u #2 reverse(v)`` then decides u = v in the monoid, and
membership of ``u #1 v #2 reverse(w)`` in the multiplication-table
language reduces to it by erasing the first marker.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Alphabet,
    DOLLAR,
    DOLLAR_EPS,
    DomainError,
    MARKER_2,
    Symbol,
    TILDE,
    TILDE_EPS,
    Word,
    annotate,
    check_word,
    render_symbol,
    reverse,
)
from .grammar import (
    Cfg,
    Production,
    cfg_member,
    disjoint_rename,
    eliminate_epsilon_productions,
    emit_grammar,
    relabel_terminals,
    reverse_productions,
)
from .rewriting import InvalidSystemError, MonadicCfSystem, Rhs, rhs_label, validate_system

MIRROR_START = Symbol("M")
MIRROR_INNER = Symbol("I")


def dollar_lhs_grammar(g: Cfg) -> Cfg:
    """The grammar with every terminal dollar-annotated.

    Requires an epsilon-free grammar; it generates exactly the
    dollar-annotated copies of the original words.
    """
    if any(not rhs for _, rhs in g.productions):
        raise DomainError("run eliminate_epsilon_productions first: empty right-hand side present")
    mapping = {t: Symbol(t.name, DOLLAR) for t in g.terminals}
    return relabel_terminals(g, mapping)


def tilde_lhs_grammar(g: Cfg) -> Cfg:
    """The reversed grammar with every terminal tilde-annotated.

    Generates exactly the tilde-annotated reversals of the original
    words.
    """
    if any(not rhs for _, rhs in g.productions):
        raise DomainError("run eliminate_epsilon_productions first: empty right-hand side present")
    mapping = {t: Symbol(t.name, TILDE) for t in g.terminals}
    return relabel_terminals(reverse_productions(g), mapping)


def mirror_grammar(alphabet: Alphabet) -> Cfg:
    """Grammar for the annotated mirror pairs around the #2 marker.

    The language is ``$p #2 ~reverse(p)`` for every nonempty p over the
    alphabet, plus the single word ``$eps #2 ~eps`` standing for p empty.
    """
    dollars = [Symbol(x.name, DOLLAR) for x in alphabet]
    tildes = [Symbol(x.name, TILDE) for x in alphabet]
    terminals = Alphabet(dollars + [DOLLAR_EPS] + tildes + [TILDE_EPS, MARKER_2])
    prods: list[Production] = []
    for dol, til in zip(dollars, tildes):
        prods.append((MIRROR_START, (dol, MIRROR_INNER, til)))
    for dol, til in zip(dollars, tildes):
        prods.append((MIRROR_INNER, (dol, MIRROR_INNER, til)))
    prods.append((MIRROR_INNER, (MARKER_2,)))
    prods.append((MIRROR_START, (DOLLAR_EPS, MARKER_2, TILDE_EPS)))
    return Cfg(Alphabet([MIRROR_START, MIRROR_INNER]), terminals, prods, MIRROR_START)


@dataclass(frozen=True)
class EqualityGrammar:
    """The compiled grammar plus a provenance tag for each production.

    Tags: ``mirror``, ``dollar(a)``, ``tilde(a)``, ``insertion``,
    ``start(a)``, ``end(a)`` with a an alphabet letter or ``eps``.
    """

    grammar: Cfg
    base_alphabet: Alphabet
    provenance: dict[Production, str]

    @classmethod
    def from_cfg(cls, g: Cfg) -> "EqualityGrammar":
        """Wrap an already-compiled grammar (e.g. read back from a file)."""
        base = Alphabet(t for t in g.terminals if t != MARKER_2)
        if MARKER_2 not in g.terminals:
            raise DomainError("an equality grammar must have #2 among its terminals")
        return cls(g, base, {})


def _empty_family_grammar(alphabet: Alphabet) -> Cfg:
    return Cfg(Alphabet([Symbol("O")]), alphabet, [], Symbol("O"))


def build_equality_grammar(system: MonadicCfSystem) -> EqualityGrammar:
    """Compile the equality-language grammar of a validated system.

    Pipeline: drop empty productions from each family grammar, build the
    dollar and tilde copies, rename all nonterminal alphabets apart, and
    assemble the mirror, family, insertion, start and end productions
    over terminals A plus #2.  Because productions form a set, the two
    insertion productions for the annotated empty word coincide.
    """
    report = validate_system(system)
    if not report.ok:
        raise InvalidSystemError(report)
    A = system.alphabet
    families: list[Rhs] = list(A) + [None]
    base: dict[Rhs, Cfg] = {}
    for rhs in families:
        g = system.lhs_grammars.get(rhs)
        if g is None:
            g = _empty_family_grammar(A)
        base[rhs] = eliminate_epsilon_productions(g)

    dollar = {rhs: dollar_lhs_grammar(base[rhs]) for rhs in families}
    tilde = {rhs: tilde_lhs_grammar(base[rhs]) for rhs in families}
    mirror = mirror_grammar(A)
    renamed = disjoint_rename([mirror] + [dollar[r] for r in families] + [tilde[r] for r in families])
    mirror = renamed[0]
    dollar = dict(zip(families, renamed[1 : 1 + len(families)]))
    tilde = dict(zip(families, renamed[1 + len(families) :]))

    def dol(rhs: Rhs) -> Symbol:
        return DOLLAR_EPS if rhs is None else Symbol(rhs.name, DOLLAR)

    def til(rhs: Rhs) -> Symbol:
        return TILDE_EPS if rhs is None else Symbol(rhs.name, TILDE)

    tagged: list[tuple[str, list[tuple[str, Production]]]] = []
    tagged.append(("mirror", [("mirror", p) for p in mirror.productions]))
    for kind, copies in (("dollar", dollar), ("tilde", tilde)):
        group = []
        for rhs in families:
            tag = f"{kind}({rhs_label(rhs)})"
            group += [(tag, p) for p in copies[rhs].productions]
        tagged.append((kind, group))
    insertion: list[tuple[str, Production]] = []
    for rhs in families:
        d, t = dol(rhs), til(rhs)
        for p in ((d, (d, DOLLAR_EPS)), (d, (DOLLAR_EPS, d)), (t, (t, TILDE_EPS)), (t, (TILDE_EPS, t))):
            insertion.append(("insertion", p))
    tagged.append(("insertion", insertion))
    starts: list[tuple[str, Production]] = []
    ends: list[tuple[str, Production]] = []
    for rhs in families:
        lbl = rhs_label(rhs)
        starts.append((f"start({lbl})", (dol(rhs), (dollar[rhs].start,))))
        starts.append((f"start({lbl})", (til(rhs), (tilde[rhs].start,))))
        body: Word = () if rhs is None else (rhs,)
        ends.append((f"end({lbl})", (dol(rhs), body)))
        ends.append((f"end({lbl})", (til(rhs), body)))
    tagged.append(("start", starts))
    tagged.append(("end", ends))

    def prod_key(item: tuple[str, Production]):
        _, p = item
        return (render_symbol(p[0]), tuple(render_symbol(s) for s in p[1]))

    prods: list[Production] = []
    provenance: dict[Production, str] = {}
    for _, group in tagged:
        for tag, p in sorted(group, key=prod_key):
            if p not in provenance:
                prods.append(p)
                provenance[p] = tag

    annotated = [dol(r) for r in families] + [til(r) for r in families]
    nonterminals = list(mirror.nonterminals) + annotated
    for rhs in families:
        nonterminals.extend(dollar[rhs].nonterminals)
        nonterminals.extend(tilde[rhs].nonterminals)
    terminals = Alphabet(list(A) + [MARKER_2])
    grammar = Cfg(Alphabet(nonterminals), terminals, prods, mirror.start)
    return EqualityGrammar(grammar, A, provenance)


def equality_member(eg: EqualityGrammar, u: Word, v: Word) -> bool:
    """Whether u and v name the same monoid element.

    Decided as membership of ``u #2 reverse(v)`` in the compiled
    language.
    """
    check_word(u, eg.base_alphabet)
    check_word(v, eg.base_alphabet)
    return cfg_member(eg.grammar, u + (MARKER_2,) + reverse(v))


def table_member(eg: EqualityGrammar, u: Word, v: Word, w: Word) -> bool:
    """Whether ``u #1 v #2 reverse(w)`` lies in the multiplication table.

    The marker-erasing homomorphism preimage makes this the same
    question as membership of ``uv #2 reverse(w)`` in the equality
    language, the shape constraint holding by construction.
    """
    check_word(u, eg.base_alphabet)
    check_word(v, eg.base_alphabet)
    check_word(w, eg.base_alphabet)
    return equality_member(eg, u + v, w)


def dollar_annotation(w: Word) -> Word:
    return annotate(w, DOLLAR)


def tilde_annotation(w: Word) -> Word:
    return annotate(w, TILDE)


def emit_equality_grammar(eg: EqualityGrammar, provenance: bool = False) -> str:
    """Deterministic rendering; optional family tags as trailing comments."""
    text = emit_grammar(eg.grammar)
    if not provenance:
        return text
    lines = text.rstrip("\n").split("\n")
    out = [lines[0]]
    for line, prod in zip(lines[1:], eg.grammar.productions):
        tag = eg.provenance.get(prod, "")
        out.append(f"{line} ; {tag}" if tag else line)
    return "\n".join(out) + "\n"
