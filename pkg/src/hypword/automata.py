"""Finite automata and finite transducers.

Regular languages are handled by nondeterministic automata with epsilon
moves; rational relations by transducers whose transitions read at most
one letter and write a finite word.  No minimization is performed
anywhere: language comparisons in this package are always bounded
enumerations.

Automaton file format::

    states: q0 q1
    alphabet: a b
    initial: q0
    accepting: q0 q1
    trans: q0 a q1
    trans: q1 _ q0

Transducers add an ``output-alphabet:`` line and write transitions as
``trans: q in/out q'`` where ``in`` is one token or ``_`` and ``out`` is
a comma-separated token list or ``_``.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .core import (
    Alphabet,
    DomainError,
    FormatError,
    Symbol,
    Word,
    check_word,
    render_symbol,
    symbol_from_token,
    word_key,
)

State = Hashable


def _ordered_states(states: Iterable[State]) -> tuple[State, ...]:
    out: list[State] = []
    seen = set()
    for s in states:
        if s not in seen:
            seen.add(s)
            out.append(s)
    return tuple(out)


class Nfa:
    """Nondeterministic finite automaton; ``None`` labels epsilon moves."""

    def __init__(
        self,
        states: Iterable[State],
        alphabet: Alphabet,
        transitions: Iterable[tuple[State, Symbol | None, State]],
        initial: Iterable[State],
        accepting: Iterable[State],
    ):
        self.states = _ordered_states(states)
        state_set = set(self.states)
        self.alphabet = alphabet
        trans: list[tuple[State, Symbol | None, State]] = []
        seen = set()
        for q, x, r in transitions:
            if q not in state_set or r not in state_set:
                raise ValueError(f"transition {q!r} -> {r!r} references an undeclared state")
            if x is not None and x not in alphabet:
                raise ValueError(f"transition letter {render_symbol(x)} not in the alphabet")
            if (q, x, r) not in seen:
                seen.add((q, x, r))
                trans.append((q, x, r))
        self.transitions = tuple(trans)
        self.initial = frozenset(initial)
        self.accepting = frozenset(accepting)
        if not self.initial <= state_set or not self.accepting <= state_set:
            raise ValueError("initial/accepting states must be declared states")
        self._eps: dict[State, list[State]] = {}
        self._step: dict[tuple[State, Symbol], list[State]] = {}
        for q, x, r in trans:
            if x is None:
                self._eps.setdefault(q, []).append(r)
            else:
                self._step.setdefault((q, x), []).append(r)

    def closure(self, qs: Iterable[State]) -> frozenset:
        out = set(qs)
        stack = list(out)
        while stack:
            q = stack.pop()
            for r in self._eps.get(q, ()):
                if r not in out:
                    out.add(r)
                    stack.append(r)
        return frozenset(out)

    def step(self, qs: Iterable[State], x: Symbol) -> frozenset:
        nxt = set()
        for q in qs:
            nxt.update(self._step.get((q, x), ()))
        return self.closure(nxt)

    def __eq__(self, other):
        return (
            isinstance(other, Nfa)
            and set(self.states) == set(other.states)
            and set(self.alphabet) == set(other.alphabet)
            and set(self.transitions) == set(other.transitions)
            and self.initial == other.initial
            and self.accepting == other.accepting
        )

    def __repr__(self):
        return f"Nfa({len(self.states)} states, {len(self.transitions)} transitions)"


class Dfa:
    """Deterministic automaton; completeness is not required."""

    def __init__(
        self,
        states: Iterable[State],
        alphabet: Alphabet,
        transitions: dict[tuple[State, Symbol], State],
        initial: State,
        accepting: Iterable[State],
    ):
        self.states = _ordered_states(states)
        state_set = set(self.states)
        self.alphabet = alphabet
        for (q, x), r in transitions.items():
            if q not in state_set or r not in state_set:
                raise ValueError("transition references an undeclared state")
            if x not in alphabet:
                raise ValueError(f"transition letter {render_symbol(x)} not in the alphabet")
        self.transitions = dict(transitions)
        if initial not in state_set:
            raise ValueError("initial state must be declared")
        self.initial = initial
        self.accepting = frozenset(accepting)
        if not self.accepting <= state_set:
            raise ValueError("accepting states must be declared")

    def to_nfa(self) -> Nfa:
        return Nfa(
            self.states,
            self.alphabet,
            [(q, x, r) for (q, x), r in sorted(self.transitions.items(), key=_dfa_key(self))],
            [self.initial],
            self.accepting,
        )

    def __repr__(self):
        return f"Dfa({len(self.states)} states, {len(self.transitions)} transitions)"


def _dfa_key(d: Dfa):
    order = {q: i for i, q in enumerate(d.states)}

    def key(item):
        (q, x), r = item
        return (order[q], d.alphabet.index(x), order[r])

    return key


def nfa_member(a: Nfa, w: Word) -> bool:
    """Whether some accepting run reads w."""
    check_word(w, a.alphabet)
    cur = a.closure(a.initial)
    for x in w:
        cur = a.step(cur, x)
        if not cur:
            return False
    return bool(cur & a.accepting)


def nfa_enumerate(a: Nfa, maxlen: int) -> set[Word]:
    """Exactly the accepted words of length at most maxlen."""
    if maxlen < 0:
        raise ValueError("maxlen must be nonnegative")
    found: set[Word] = set()
    start = a.closure(a.initial)
    frontier: list[tuple[Word, frozenset]] = [((), start)]
    if start & a.accepting:
        found.add(())
    for _ in range(maxlen):
        nxt = []
        for w, qs in frontier:
            for x in a.alphabet:
                qs2 = a.step(qs, x)
                if qs2:
                    w2 = w + (x,)
                    nxt.append((w2, qs2))
                    if qs2 & a.accepting:
                        found.add(w2)
        frontier = nxt
    return found


def dfa_from_nfa(a: Nfa) -> Dfa:
    """Subset construction; states are named q0, q1, ... in discovery order."""
    start = a.closure(a.initial)
    names: dict[frozenset, str] = {start: "q0"}
    order = [start]
    transitions: dict[tuple[State, Symbol], State] = {}
    i = 0
    while i < len(order):
        qs = order[i]
        i += 1
        for x in a.alphabet:
            qs2 = a.step(qs, x)
            if not qs2:
                continue
            if qs2 not in names:
                names[qs2] = f"q{len(order)}"
                order.append(qs2)
            transitions[(names[qs], x)] = names[qs2]
    accepting = [names[qs] for qs in order if qs & a.accepting]
    return Dfa([names[qs] for qs in order], a.alphabet, transitions, "q0", accepting)


# --- small builders (tests and built-in structures) ------------------------

def nfa_word(alphabet: Alphabet, w: Word) -> Nfa:
    """The single-word language {w}."""
    check_word(w, alphabet)
    states = [("w", i) for i in range(len(w) + 1)]
    trans = [(("w", i), x, ("w", i + 1)) for i, x in enumerate(w)]
    return Nfa(states, alphabet, trans, [("w", 0)], [("w", len(w))])


def nfa_all_words(alphabet: Alphabet) -> Nfa:
    """The full language over the alphabet."""
    q = ("all",)
    return Nfa([q], alphabet, [(q, x, q) for x in alphabet], [q], [q])


def nfa_union(a: Nfa, b: Nfa) -> Nfa:
    alphabet = a.alphabet.union(b.alphabet)
    states = [(0, q) for q in a.states] + [(1, q) for q in b.states]
    trans = [((0, q), x, (0, r)) for q, x, r in a.transitions]
    trans += [((1, q), x, (1, r)) for q, x, r in b.transitions]
    initial = [(0, q) for q in a.states if q in a.initial] + [
        (1, q) for q in b.states if q in b.initial
    ]
    accepting = [(0, q) for q in a.states if q in a.accepting] + [
        (1, q) for q in b.states if q in b.accepting
    ]
    return Nfa(states, alphabet, trans, initial, accepting)


def nfa_concat(a: Nfa, b: Nfa) -> Nfa:
    alphabet = a.alphabet.union(b.alphabet)
    states = [(0, q) for q in a.states] + [(1, q) for q in b.states]
    trans = [((0, q), x, (0, r)) for q, x, r in a.transitions]
    trans += [((1, q), x, (1, r)) for q, x, r in b.transitions]
    trans += [
        ((0, q), None, (1, r))
        for q in a.states
        if q in a.accepting
        for r in b.states
        if r in b.initial
    ]
    initial = [(0, q) for q in a.states if q in a.initial]
    accepting = [(1, q) for q in b.states if q in b.accepting]
    return Nfa(states, alphabet, trans, initial, accepting)


def nfa_star(a: Nfa) -> Nfa:
    hub = ("star",)
    states = [hub] + [("s", q) for q in a.states]
    trans = [(("s", q), x, ("s", r)) for q, x, r in a.transitions]
    trans += [(hub, None, ("s", q)) for q in a.states if q in a.initial]
    trans += [(("s", q), None, hub) for q in a.states if q in a.accepting]
    return Nfa(states, a.alphabet, trans, [hub], [hub])


def nfa_strip_empty_word(a: Nfa) -> Nfa:
    """The same language minus the empty word.

    A fresh initial state copies the outgoing letter transitions of the
    old initial closure but is never accepting.
    """
    fresh = ("ne",)
    states = [fresh] + [("s", q) for q in a.states]
    trans = [(("s", q), x, ("s", r)) for q, x, r in a.transitions]
    start = a.closure(a.initial)
    for q, x, r in a.transitions:
        if x is not None and q in start:
            trans.append((fresh, x, ("s", r)))
    accepting = [("s", q) for q in a.states if q in a.accepting]
    return Nfa(states, a.alphabet, trans, [fresh], accepting)


# --- transducers ------------------------------------------------------------

class Transducer:
    """Finite transducer; transitions read at most one letter, write a word."""

    def __init__(
        self,
        states: Iterable[State],
        input_alphabet: Alphabet,
        output_alphabet: Alphabet,
        transitions: Iterable[tuple[State, Word, Word, State]],
        initial: Iterable[State],
        accepting: Iterable[State],
    ):
        self.states = _ordered_states(states)
        state_set = set(self.states)
        self.input_alphabet = input_alphabet
        self.output_alphabet = output_alphabet
        trans: list[tuple[State, Word, Word, State]] = []
        seen = set()
        for q, win, wout, r in transitions:
            win, wout = tuple(win), tuple(wout)
            if q not in state_set or r not in state_set:
                raise ValueError("transducer transition references an undeclared state")
            if len(win) > 1:
                raise ValueError("transducer input words are at most one letter")
            check_word(win, input_alphabet)
            check_word(wout, output_alphabet)
            if (q, win, wout, r) not in seen:
                seen.add((q, win, wout, r))
                trans.append((q, win, wout, r))
        self.transitions = tuple(trans)
        self.initial = frozenset(initial)
        self.accepting = frozenset(accepting)
        if not self.initial <= state_set or not self.accepting <= state_set:
            raise ValueError("initial/accepting states must be declared states")
        self._by_state: dict[State, list[tuple[Word, Word, State]]] = {}
        for q, win, wout, r in self.transitions:
            self._by_state.setdefault(q, []).append((win, wout, r))

    def __repr__(self):
        return f"Transducer({len(self.states)} states, {len(self.transitions)} transitions)"


def transducer_literal(pairs: Iterable[tuple[Word, Word]], input_alphabet: Alphabet, output_alphabet: Alphabet) -> Transducer:
    """The finite relation consisting exactly of the given pairs.

    Multi-letter inputs are spelled out one letter per transition.
    """
    states: list[State] = [("i",), ("f",)]
    trans: list[tuple[State, Word, Word, State]] = []
    for n, (u, v) in enumerate(pairs):
        u, v = tuple(u), tuple(v)
        if len(u) <= 1:
            trans.append((("i",), u, v, ("f",)))
            continue
        prev: State = ("i",)
        for k, x in enumerate(u):
            nxt: State = ("f",) if k == len(u) - 1 else ("p", n, k)
            if nxt != ("f",):
                states.append(nxt)
            trans.append((prev, (x,), v if k == 0 else (), nxt))
            prev = nxt
    return Transducer(states, input_alphabet, output_alphabet, trans, [("i",)], [("f",)])


def transducer_star(t: Transducer) -> Transducer:
    """Reflexive-transitive concatenation closure; relates the empty pair."""
    hub = ("hub",)
    states = [hub] + [("s", q) for q in t.states]
    trans = [(("s", q), win, wout, ("s", r)) for q, win, wout, r in t.transitions]
    trans += [(hub, (), (), ("s", q)) for q in t.states if q in t.initial]
    trans += [(("s", q), (), (), hub) for q in t.states if q in t.accepting]
    return Transducer(states, t.input_alphabet, t.output_alphabet, trans, [hub], [hub])


def transducer_concat(ts: Sequence[Transducer]) -> Transducer:
    """Pairwise concatenation of the factor relations; alphabets are unioned."""
    if not ts:
        one = ("one",)
        return Transducer([one], Alphabet([]), Alphabet([]), [], [one], [one])
    in_alpha = ts[0].input_alphabet
    out_alpha = ts[0].output_alphabet
    for t in ts[1:]:
        in_alpha = in_alpha.union(t.input_alphabet)
        out_alpha = out_alpha.union(t.output_alphabet)
    states = [(k, q) for k, t in enumerate(ts) for q in t.states]
    trans = [
        ((k, q), win, wout, (k, r))
        for k, t in enumerate(ts)
        for q, win, wout, r in t.transitions
    ]
    for k in range(len(ts) - 1):
        trans += [
            ((k, q), (), (), (k + 1, r))
            for q in ts[k].states
            if q in ts[k].accepting
            for r in ts[k + 1].states
            if r in ts[k + 1].initial
        ]
    initial = [(0, q) for q in ts[0].states if q in ts[0].initial]
    last = len(ts) - 1
    accepting = [(last, q) for q in ts[last].states if q in ts[last].accepting]
    return Transducer(states, in_alpha, out_alpha, trans, initial, accepting)


def transducer_reverse(t: Transducer) -> Transducer:
    """The relation applied to reversed words on both sides."""
    trans = [(r, win, wout[::-1], q) for q, win, wout, r in t.transitions]
    return Transducer(t.states, t.input_alphabet, t.output_alphabet, trans, t.accepting, t.initial)


def relation_member(t: Transducer, u: Word, v: Word) -> bool:
    """Whether the pair (u, v) is in the relation."""
    check_word(u, t.input_alphabet)
    check_word(v, t.output_alphabet)
    nu, nv = len(u), len(v)
    start = {(0, 0, q) for q in t.initial}
    seen = set(start)
    stack = list(start)
    while stack:
        i, j, q = stack.pop()
        if i == nu and j == nv and q in t.accepting:
            return True
        for win, wout, r in t._by_state.get(q, ()):
            k, l = len(win), len(wout)
            if u[i : i + k] == win and v[j : j + l] == wout:
                nxt = (i + k, j + l, r)
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return False


def relation_image(t: Transducer, a: Nfa) -> Nfa:
    """The automaton for the image of L(a) under the relation of t.

    Product construction; multi-letter outputs become chains of fresh
    states, so the result may contain epsilon transitions.
    """
    for x in a.alphabet:
        if x not in t.input_alphabet:
            raise DomainError(
                f"automaton letter {render_symbol(x)} not in the transducer input alphabet"
            )
    states: list[State] = [(s, q) for s in a.states for q in t.states]
    trans: list[tuple[State, Symbol | None, State]] = []

    def emit_chain(src: State, wout: Word, dst: State, tag: tuple) -> None:
        if len(wout) == 0:
            trans.append((src, None, dst))
            return
        prev = src
        for k, y in enumerate(wout):
            nxt = dst if k == len(wout) - 1 else ("c", tag, k)
            if nxt != dst:
                states.append(nxt)
            trans.append((prev, y, nxt))
            prev = nxt

    a_edges = [(si, q, x, r) for si, (q, x, r) in enumerate(a.transitions)]
    for ti, (q, win, wout, q2) in enumerate(t.transitions):
        if len(win) == 1:
            x = win[0]
            for si, s, y, s2 in a_edges:
                if y == x:
                    emit_chain((s, q), wout, (s2, q2), (ti, si))
        else:
            for sk, s in enumerate(a.states):
                emit_chain((s, q), wout, (s, q2), (ti, "e", sk))
    for si, s, y, s2 in a_edges:
        if y is None:
            for q in t.states:
                trans.append(((s, q), None, (s2, q)))
    initial = [(s, q) for s in a.states if s in a.initial for q in t.states if q in t.initial]
    accepting = [
        (s, q) for s in a.states if s in a.accepting for q in t.states if q in t.accepting
    ]
    return Nfa(states, t.output_alphabet, trans, initial, accepting)


# --- file format ------------------------------------------------------------

def _parse_header(text: str, fields: tuple[str, ...]) -> tuple[dict[str, tuple[str, int]], list[tuple[int, str]]]:
    header: dict[str, tuple[str, int]] = {}
    trans_lines: list[tuple[int, str]] = []
    from .grammar import _strip_comment

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("trans:"):
            trans_lines.append((lineno, line[len("trans:"):].strip()))
            continue
        for f in fields:
            if line.startswith(f + ":"):
                if f in header:
                    raise FormatError(lineno, f"duplicate {f}: line")
                header[f] = (line[len(f) + 1 :].strip(), lineno)
                break
        else:
            raise FormatError(lineno, f"unrecognized line {line!r}")
    return header, trans_lines


def parse_automaton(text: str) -> Nfa:
    header, trans_lines = _parse_header(text, ("states", "alphabet", "initial", "accepting"))
    for f in ("states", "alphabet", "initial", "accepting"):
        if f not in header:
            raise FormatError(1, f"missing {f}: line")
    states = header["states"][0].split()
    alphabet = Alphabet(symbol_from_token(t) for t in header["alphabet"][0].split())
    initial = header["initial"][0].split()
    accepting = header["accepting"][0].split()
    trans = []
    for lineno, body in trans_lines:
        parts = body.split()
        if len(parts) != 3:
            raise FormatError(lineno, "expected 'trans: q a q''")
        q, tok, r = parts
        x = None if tok == "_" else symbol_from_token(tok)
        trans.append((q, x, r))
    try:
        return Nfa(states, alphabet, trans, initial, accepting)
    except ValueError as e:
        raise FormatError(trans_lines[0][0] if trans_lines else 1, str(e)) from e


def _state_names(states: tuple[State, ...]) -> dict[State, str]:
    # Library-built automata use structured state labels; relabel those
    # wholesale so a fresh name can never shadow an existing one.
    if all(isinstance(q, str) for q in states):
        return {q: q for q in states}
    return {q: f"q{i}" for i, q in enumerate(states)}


def emit_automaton(a: Nfa) -> str:
    names = _state_names(a.states)
    lines = [
        "states: " + " ".join(names[q] for q in a.states),
        "alphabet: " + " ".join(render_symbol(x) for x in a.alphabet),
        "initial: " + " ".join(names[q] for q in a.states if q in a.initial),
        "accepting: " + " ".join(names[q] for q in a.states if q in a.accepting),
    ]
    for q, x, r in a.transitions:
        tok = "_" if x is None else render_symbol(x)
        lines.append(f"trans: {names[q]} {tok} {names[r]}")
    return "\n".join(lines) + "\n"


def _parse_inout(tok: str, lineno: int) -> tuple[Word, Word]:
    if "/" not in tok:
        raise FormatError(lineno, "transducer transitions are written in/out")
    left, right = tok.split("/", 1)

    def side(s: str) -> Word:
        if s == "_" or s == "":
            return ()
        return tuple(symbol_from_token(p) for p in s.split(","))

    return side(left), side(right)


def parse_transducer(text: str) -> Transducer:
    header, trans_lines = _parse_header(
        text, ("states", "alphabet", "output-alphabet", "initial", "accepting")
    )
    for f in ("states", "alphabet", "initial", "accepting"):
        if f not in header:
            raise FormatError(1, f"missing {f}: line")
    states = header["states"][0].split()
    in_alpha = Alphabet(symbol_from_token(t) for t in header["alphabet"][0].split())
    if "output-alphabet" in header:
        out_alpha = Alphabet(symbol_from_token(t) for t in header["output-alphabet"][0].split())
    else:
        out_alpha = in_alpha
    trans = []
    for lineno, body in trans_lines:
        parts = body.split()
        if len(parts) != 3:
            raise FormatError(lineno, "expected 'trans: q in/out q''")
        q, tok, r = parts
        win, wout = _parse_inout(tok, lineno)
        if len(win) > 1:
            raise FormatError(lineno, "input side of a transition is at most one letter")
        trans.append((q, win, wout, r))
    try:
        return Transducer(states, in_alpha, out_alpha, trans, header["initial"][0].split(), header["accepting"][0].split())
    except ValueError as e:
        raise FormatError(trans_lines[0][0] if trans_lines else 1, str(e)) from e


def emit_transducer(t: Transducer) -> str:
    names = _state_names(t.states)
    lines = [
        "states: " + " ".join(names[q] for q in t.states),
        "alphabet: " + " ".join(render_symbol(x) for x in t.input_alphabet),
        "output-alphabet: " + " ".join(render_symbol(x) for x in t.output_alphabet),
        "initial: " + " ".join(names[q] for q in t.states if q in t.initial),
        "accepting: " + " ".join(names[q] for q in t.states if q in t.accepting),
    ]

    def side(w: Word) -> str:
        return "_" if not w else ",".join(render_symbol(x) for x in w)

    for q, win, wout, r in t.transitions:
        lines.append(f"trans: {names[q]} {side(win)}/{side(wout)} {names[r]}")
    return "\n".join(lines) + "\n"


def sort_words(ws: Iterable[Word]) -> list[Word]:
    return sorted(ws, key=word_key)
