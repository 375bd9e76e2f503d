"""Context-free grammars: transformations, recognition, enumeration.

Recognition is a chart parser in the Earley style, run on the grammar's
literal productions (no normal-form conversion), so grammars assembled
from several sources keep their production sets byte-for-byte intact.
The recognizer handles empty productions, unit cycles and left recursion.

Grammar file format::

    ; comment
    start: S
    S -> a T d | _
    T -> b T c

A token that occurs on the left of ``->`` is a nonterminal; any other
token is a nonterminal when it begins with an uppercase letter and a
terminal otherwise.  Quoted tokens are always terminals.  ``_`` denotes
an empty right-hand side.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .core import (
    Alphabet,
    DomainError,
    FormatError,
    Symbol,
    Word,
    render_symbol,
    symbol_from_token,
    word_key,
)

Production = tuple[Symbol, Word]
SententialForm = tuple[Symbol, ...]

# Packed chart item layout: prod << 20 | dot << 12 | origin.
_DOT1 = 1 << 12
_MAX_INPUT = (1 << 12) - 2
_MAX_DOT = (1 << 8) - 1


class Cfg:
    """An immutable context-free grammar.

    Productions keep their construction order (deduplicated); equality
    disregards order so that structurally identical grammars compare
    equal however they were assembled.
    """

    def __init__(
        self,
        nonterminals: Alphabet,
        terminals: Alphabet,
        productions: Iterable[Production],
        start: Symbol,
    ):
        for s in nonterminals:
            if s in terminals:
                raise ValueError(f"symbol {render_symbol(s)} is both nonterminal and terminal")
        if start not in nonterminals:
            raise ValueError(f"start symbol {render_symbol(start)} not among nonterminals")
        prods: list[Production] = []
        seen = set()
        for lhs, rhs in productions:
            rhs = tuple(rhs)
            if lhs not in nonterminals:
                raise ValueError(f"production head {render_symbol(lhs)} not a nonterminal")
            for s in rhs:
                if s not in nonterminals and s not in terminals:
                    raise ValueError(f"production symbol {render_symbol(s)} not declared")
            if len(rhs) > _MAX_DOT:
                raise ValueError("production right-hand side too long")
            if (lhs, rhs) not in seen:
                seen.add((lhs, rhs))
                prods.append((lhs, rhs))
        self.nonterminals = nonterminals
        self.terminals = terminals
        self.productions: tuple[Production, ...] = tuple(prods)
        self.start = start
        self._engine = _Engine(self)

    def alphabet(self) -> Alphabet:
        """Nonterminals followed by terminals."""
        return self.nonterminals.union(self.terminals)

    def productions_for(self, nt: Symbol) -> list[Production]:
        return [p for p in self.productions if p[0] == nt]

    def __eq__(self, other):
        return (
            isinstance(other, Cfg)
            and set(self.nonterminals) == set(other.nonterminals)
            and set(self.terminals) == set(other.terminals)
            and set(self.productions) == set(other.productions)
            and self.start == other.start
        )

    def __hash__(self):
        return hash((frozenset(self.productions), self.start))

    def __repr__(self):
        return f"Cfg(start={render_symbol(self.start)}, {len(self.productions)} productions)"


class _Engine:
    """Integer-compiled recognizer tables for one grammar.

    Nonterminals get ids ``0..NN-1``, terminals ``NN..``.  For every
    nonterminal the full prediction closure is precomputed, with dots
    pre-advanced over nullable symbols, so a chart position predicts a
    symbol with one table lookup.
    """

    def __init__(self, g: Cfg):
        nts = list(g.nonterminals)
        ts = list(g.terminals)
        self.nn = len(nts)
        ids: dict[Symbol, int] = {}
        for i, s in enumerate(nts + ts):
            ids[s] = i
        self.ids = ids
        self.lhs = [ids[l] for l, _ in g.productions]
        self.rhs = [tuple(ids[s] for s in r) for _, r in g.productions]
        by_lhs: dict[int, list[int]] = {}
        for p, l in enumerate(self.lhs):
            by_lhs.setdefault(l, []).append(p)

        nullable: set[int] = set()
        changed = True
        while changed:
            changed = False
            for p, r in enumerate(self.rhs):
                l = self.lhs[p]
                if l not in nullable and all(s in nullable for s in r):
                    nullable.add(l)
                    changed = True
        self.nullable = nullable

        nn = self.nn
        closure: list[tuple[int, ...]] = []
        for x in range(nn):
            items: list[int] = []
            item_set: set[int] = set()
            predicted = {x}
            stack = [x]
            while stack:
                y = stack.pop()
                for p in by_lhs.get(y, ()):
                    r = self.rhs[p]
                    d = 0
                    while True:
                        packed = p << 20 | d << 12
                        if packed not in item_set:
                            item_set.add(packed)
                            items.append(packed)
                        if d == len(r):
                            break
                        s = r[d]
                        if s < nn:
                            if s not in predicted:
                                predicted.add(s)
                                stack.append(s)
                            if s in nullable:
                                d += 1
                                continue
                        break
            closure.append(tuple(items))
        self.closure = closure

    def encode_word(self, w: Word, terminals: Alphabet) -> tuple[int, ...]:
        ids = self.ids
        for s in w:
            if s not in terminals:
                raise DomainError(f"letter {render_symbol(s)} not a grammar terminal")
        return tuple(ids[s] for s in w)

    def run(self, forms: Sequence[tuple[int, ...]], w: tuple[int, ...]) -> list[bool]:
        """Which of the given sentential forms derive w.

        Each form acts as the body of a fresh virtual start production
        seeded into the initial chart position.
        """
        n = len(w)
        if n > _MAX_INPUT:
            raise ValueError("input too long for packed chart items")
        nn = self.nn
        nullable = self.nullable
        closure = self.closure
        lhs = self.lhs
        nreal = len(lhs)
        rhs_all = list(self.rhs)
        rhs_all.extend(forms)
        lens = [len(r) for r in rhs_all]
        results = [False] * len(forms)

        wants_by_set: list[dict[int, list[int]]] = []
        cur_items = [(p << 20) for p in range(nreal, nreal + len(forms))]
        for i in range(n + 1):
            seen: set[int] = set()
            seen_add = seen.add
            wants: dict[int, list[int]] = {}
            predicted: set[int] = set()
            stack = cur_items
            next_items: list[int] = []
            cur = w[i] if i < n else -1
            while stack:
                item = stack.pop()
                if item in seen:
                    continue
                seen_add(item)
                p = item >> 20
                d = (item >> 12) & 0xFF
                if d < lens[p]:
                    s = rhs_all[p][d]
                    if s < nn:
                        wl = wants.get(s)
                        if wl is None:
                            wants[s] = [item]
                        else:
                            wl.append(item)
                        if s not in predicted:
                            predicted.add(s)
                            base = i
                            for packed in closure[s]:
                                stack.append(packed | base)
                        if s in nullable:
                            stack.append(item + _DOT1)
                    elif s == cur:
                        next_items.append(item + _DOT1)
                else:
                    o = item & 0xFFF
                    if p >= nreal:
                        if i == n:
                            results[p - nreal] = True
                    elif o != i:
                        # empty spans need no completer pass: every waiter
                        # on a nullable symbol advanced at prediction time
                        waiters = wants_by_set[o].get(lhs[p])
                        if waiters:
                            for q in waiters:
                                stack.append(q + _DOT1)
            wants_by_set.append(wants)
            cur_items = next_items
            if i < n and not next_items:
                break
        return results


def cfg_member(g: Cfg, w: Word) -> bool:
    """Whether the start symbol derives w."""
    eng = g._engine
    wi = eng.encode_word(w, g.terminals)
    return eng.run([(eng.ids[g.start],)], wi)[0]


def derives(g: Cfg, form: SententialForm, w: Word) -> bool:
    """Whether the sentential form derives the terminal word w.

    Equivalent to recognition with a fresh start symbol whose single
    production body is the form.
    """
    return derives_batch(g, [form], w)[0]


def derives_batch(g: Cfg, forms: Sequence[SententialForm], w: Word) -> list[bool]:
    """derives() for many forms against one word, sharing a single chart."""
    eng = g._engine
    combined = g.alphabet()
    encoded = []
    for form in forms:
        for s in form:
            if s not in combined:
                raise DomainError(f"form symbol {render_symbol(s)} not in grammar alphabet")
        encoded.append(tuple(eng.ids[s] for s in form))
    wi = eng.encode_word(w, g.terminals)
    return eng.run(encoded, wi)


def nullable_nonterminals(g: Cfg) -> set[Symbol]:
    eng = g._engine
    inv = {i: s for s, i in eng.ids.items()}
    return {inv[i] for i in eng.nullable}


def eliminate_epsilon_productions(g: Cfg) -> Cfg:
    """Remove empty right-hand sides; the language loses exactly the empty word.

    Standard nullable-set construction: every production is expanded by
    optionally dropping nullable occurrences.  Useless self-productions
    ``A -> A`` are not emitted.  A grammar with no nullable symbols comes
    back with its production list unchanged.
    """
    nullable = nullable_nonterminals(g)
    new_prods: list[Production] = []
    for lhs, rhs in g.productions:
        spots = [i for i, s in enumerate(rhs) if s in nullable]
        for mask in range(1 << len(spots)):
            dropped = {spots[k] for k in range(len(spots)) if mask >> k & 1}
            variant = tuple(s for i, s in enumerate(rhs) if i not in dropped)
            if not variant or variant == (lhs,):
                continue
            new_prods.append((lhs, variant))
    return Cfg(g.nonterminals, g.terminals, new_prods, g.start)


def relabel_terminals(g: Cfg, mapping: dict[Symbol, Symbol]) -> Cfg:
    """Rename terminals letterwise throughout the grammar."""
    for t in g.terminals:
        if t not in mapping:
            raise DomainError(f"relabeling map missing terminal {render_symbol(t)}")
    images = [mapping[t] for t in g.terminals]
    if len(set(images)) != len(images):
        raise DomainError("relabeling map is not injective on the terminals")
    for img in images:
        if img in g.nonterminals:
            raise DomainError(f"relabeled terminal {render_symbol(img)} collides with a nonterminal")
    new_prods = [
        (lhs, tuple(mapping.get(s, s) if s in g.terminals else s for s in rhs))
        for lhs, rhs in g.productions
    ]
    return Cfg(g.nonterminals, Alphabet(images), new_prods, g.start)


def reverse_productions(g: Cfg) -> Cfg:
    """Reverse every right-hand side; the language is reversed letterwise."""
    return Cfg(
        g.nonterminals,
        g.terminals,
        [(lhs, rhs[::-1]) for lhs, rhs in g.productions],
        g.start,
    )


def disjoint_rename(gs: Sequence[Cfg]) -> list[Cfg]:
    """Suffix every nonterminal with ``#k``, k the grammar's list index.

    The resulting nonterminal alphabets are pairwise disjoint and each
    language is unchanged.
    """
    out = []
    for k, g in enumerate(gs):
        mapping: dict[Symbol, Symbol] = {}
        for nt in g.nonterminals:
            name = f"{nt.name}#{k}"
            while any(t.name == name and t.flavor == nt.flavor for t in g.terminals):
                name = f"{name}#{k}"
            mapping[nt] = Symbol(name, nt.flavor)
        new_prods = [
            (mapping[lhs], tuple(mapping.get(s, s) for s in rhs))
            for lhs, rhs in g.productions
        ]
        out.append(
            Cfg(
                Alphabet(mapping[nt] for nt in g.nonterminals),
                g.terminals,
                new_prods,
                mapping[g.start],
            )
        )
    return out


def min_word_length(g: Cfg) -> int | float:
    """Length of a shortest derivable terminal word; inf for the empty language.

    Shortest-derivation fixpoint over the nonterminals.
    """
    dist: dict[Symbol, float] = {nt: math.inf for nt in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            total = 0.0
            for s in rhs:
                total += 1 if s in g.terminals else dist[s]
                if total == math.inf:
                    break
            if total < dist[lhs]:
                dist[lhs] = total
                changed = True
    d = dist[g.start]
    return d if d == math.inf else int(d)


def enumerate_language(g: Cfg, maxlen: int) -> set[Word]:
    """Exactly the derivable terminal words of length at most maxlen.

    Runs a breadth-first leftmost derivation with memoized sentential
    forms over an epsilon-free copy of the grammar, where no step can
    shrink a form and the length bound prunes safely; the empty word is
    restored when the original start symbol is nullable.
    """
    if maxlen < 0:
        raise ValueError("maxlen must be nonnegative")
    found: set[Word] = set()
    if g.start in nullable_nonterminals(g):
        found.add(())
    if maxlen == 0:
        return found
    g2 = eliminate_epsilon_productions(g)
    by_lhs: dict[Symbol, list[Word]] = {}
    for lhs, rhs in g2.productions:
        by_lhs.setdefault(lhs, []).append(rhs)
    terminals = set(g2.terminals)
    start_form: SententialForm = (g2.start,)
    seen = {start_form}
    frontier = [start_form]
    while frontier:
        nxt = []
        for form in frontier:
            i = next((k for k, s in enumerate(form) if s not in terminals), None)
            if i is None:
                found.add(form)
                continue
            for rhs in by_lhs.get(form[i], ()):
                new = form[:i] + rhs + form[i + 1 :]
                if len(new) <= maxlen and new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    return found


def trim_grammar(g: Cfg) -> Cfg:
    """Drop unproductive and unreachable nonterminals (start always kept)."""
    productive: set[Symbol] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if lhs not in productive and all(
                s in g.terminals or s in productive for s in rhs
            ):
                productive.add(lhs)
                changed = True
    keep_prods = [
        (lhs, rhs)
        for lhs, rhs in g.productions
        if lhs in productive and all(s in g.terminals or s in productive for s in rhs)
    ]
    reachable = {g.start}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in keep_prods:
            if lhs in reachable:
                for s in rhs:
                    if s not in g.terminals and s not in reachable:
                        reachable.add(s)
                        changed = True
    keep_prods = [(lhs, rhs) for lhs, rhs in keep_prods if lhs in reachable]
    keep_nts = [nt for nt in g.nonterminals if nt == g.start or nt in (productive & reachable)]
    return Cfg(Alphabet(keep_nts), g.terminals, keep_prods, g.start)


# --- file format ----------------------------------------------------------

def _strip_comment(line: str) -> str:
    out = []
    in_quote = False
    for ch in line:
        if ch == '"':
            in_quote = not in_quote
        if ch == ";" and not in_quote:
            break
        out.append(ch)
    return "".join(out)


def parse_grammar(text: str, terminals: Alphabet | None = None) -> Cfg:
    """Parse the grammar file format.

    When a terminal alphabet is supplied it fixes the terminal set and
    its order; otherwise terminals are collected in order of first
    appearance.
    """
    start_sym: Symbol | None = None
    raw_prods: list[tuple[Symbol, list[Symbol]]] = []
    lhs_order: list[Symbol] = []
    lhs_set: set[Symbol] = set()
    rhs_tokens: list[tuple[int, Symbol, bool]] = []  # (line, symbol, quoted)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("start:"):
            if start_sym is not None:
                raise FormatError(lineno, "duplicate start: line")
            tok = line[len("start:"):].strip()
            if not tok:
                raise FormatError(lineno, "start: line names no symbol")
            start_sym = symbol_from_token(tok)
            continue
        if start_sym is None:
            raise FormatError(lineno, "expected a start: line before productions")
        if "->" not in line:
            raise FormatError(lineno, f"expected 'NT -> ...' production, got {line!r}")
        lhs_text, rhs_text = line.split("->", 1)
        lhs_tok = lhs_text.strip()
        if not lhs_tok or " " in lhs_tok:
            raise FormatError(lineno, "production needs a single head token")
        lhs = symbol_from_token(lhs_tok)
        if lhs not in lhs_set:
            lhs_set.add(lhs)
            lhs_order.append(lhs)
        for alt in rhs_text.split("|"):
            toks = alt.split()
            if not toks:
                raise FormatError(lineno, "empty alternative; write _ for an empty right-hand side")
            if toks == ["_"]:
                raw_prods.append((lhs, []))
                continue
            syms = []
            for t in toks:
                if t == "_":
                    raise FormatError(lineno, "_ must stand alone in an alternative")
                s = symbol_from_token(t)
                syms.append(s)
                rhs_tokens.append((lineno, s, t.startswith('"')))
            raw_prods.append((lhs, syms))

    if start_sym is None:
        raise FormatError(1, "missing start: line")

    nts: list[Symbol] = []
    if start_sym not in lhs_set:
        nts.append(start_sym)
    nts.extend(lhs_order)
    nt_set = set(nts)
    term_order: list[Symbol] = list(terminals) if terminals is not None else []
    term_set = set(term_order)
    for lineno, s, quoted in rhs_tokens:
        if s in nt_set or s in term_set:
            continue
        if not quoted and s.flavor == "plain" and s.name[0].isupper():
            nt_set.add(s)
            nts.append(s)
        elif terminals is not None:
            raise FormatError(lineno, f"terminal {render_symbol(s)} not in the declared alphabet")
        else:
            term_set.add(s)
            term_order.append(s)
    return Cfg(Alphabet(nts), Alphabet(term_order), [(l, tuple(r)) for l, r in raw_prods], start_sym)


def emit_grammar(g: Cfg) -> str:
    """Deterministic rendering; productions in stored order, one per line."""
    lines = [f"start: {render_symbol(g.start)}"]
    for lhs, rhs in g.productions:
        body = " ".join(render_symbol(s) for s in rhs) if rhs else "_"
        lines.append(f"{render_symbol(lhs)} -> {body}")
    return "\n".join(lines) + "\n"


def sort_words(ws: Iterable[Word]) -> list[Word]:
    return sorted(ws, key=word_key)
