"""Word-hyperbolic structures, change of generators, cross-section checks.

A structure couples a regular language of representatives with an
equality decision procedure for the monoid it names.  Changing the
generating alphabet pushes the representative language through the
letterwise substitution relation, which preserves uniqueness of
representatives; the multiplication-table language of the new structure
is exposed as a membership decision only.

The built-in counterexample system over {a, b, c, d} rewrites every
``a b^n c^n d`` block to the empty word.  Its monoid carries a
word-hyperbolic structure but no regular language can name each element
exactly once; ``validate_cross_section`` refutes concrete candidate
automata at bounded length by exhibiting two representatives with the
same normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .core import (
    Alphabet,
    DomainError,
    MARKER_1,
    MARKER_2,
    Symbol,
    Word,
    check_word,
    render_word,
    word_key,
)
from .automata import (
    Dfa,
    Nfa,
    Transducer,
    nfa_enumerate,
    nfa_member,
    nfa_strip_empty_word,
    nfa_union,
    nfa_word,
    relation_image,
    transducer_concat,
    transducer_literal,
    transducer_reverse,
    transducer_star,
)
from .grammar import Cfg
from .rewriting import MonadicCfSystem, find_redex, normal_form


@dataclass(frozen=True)
class GeneratorMap:
    """Images of one generating alphabet inside another.

    With ``semigroup_generating`` set, every image must be a nonempty
    word (needed when the target alphabet generates only as a
    semigroup and some source letter names the identity).
    """

    source: Alphabet
    target: Alphabet
    images: dict[Symbol, Word]
    semigroup_generating: bool = False

    def __post_init__(self):
        for b in self.source:
            if b not in self.images:
                raise ValueError(f"generator map misses a letter: {render_word((b,))}")
            check_word(self.images[b], self.target)
            if self.semigroup_generating and not self.images[b]:
                raise ValueError("semigroup-generating maps need nonempty images")


@dataclass
class WordHypStructure:
    """A representative language plus an equality decision procedure."""

    alphabet: Alphabet
    reps: Nfa
    equality: Callable[[Word, Word], bool]
    interpretation: dict[Symbol, Word] = field(default_factory=dict)

    def __post_init__(self):
        if not self.interpretation:
            self.interpretation = {x: (x,) for x in self.alphabet}

    def table_member(self, u: Word, v: Word, w: Word) -> bool:
        """Whether ``u #1 v #2 reverse(w)`` lies in the multiplication table.

        All three factors must be representatives and uv must equal w in
        the monoid.
        """
        for x in (u, v, w):
            check_word(x, self.alphabet)
        return (
            nfa_member(self.reps, u)
            and nfa_member(self.reps, v)
            and nfa_member(self.reps, w)
            and self.equality(u + v, w)
        )


def substitution_relation(m: GeneratorMap) -> Transducer:
    """The starred letter-to-image relation of a generator map.

    Relates exactly the pairs (b1..bk, image(b1)..image(bk)), including
    the empty pair.
    """
    base = transducer_literal(
        [((b,), m.images[b]) for b in m.source], m.source, m.target
    )
    return transducer_star(base)


def table_substitution_relation(m: GeneratorMap) -> Transducer:
    """The relation transporting multiplication-table words letterwise.

    Concatenation of the substitution relation around both markers, with
    the reversed relation on the final factor.
    """
    p = substitution_relation(m)
    m1 = Alphabet([MARKER_1])
    m2 = Alphabet([MARKER_2])
    keep1 = transducer_literal([((MARKER_1,), (MARKER_1,))], m1, m1)
    keep2 = transducer_literal([((MARKER_2,), (MARKER_2,))], m2, m2)
    return transducer_concat([p, keep1, p, keep2, transducer_reverse(p)])


def change_generators(
    s: WordHypStructure, m: GeneratorMap, target_equality: Callable[[Word, Word], bool]
) -> WordHypStructure:
    """Transport a structure to a new generating alphabet.

    The new representatives are the image of the old ones under the
    substitution relation; since that relation is a function on source
    words, a bijective representative language stays bijective.  The
    equality procedure over the target alphabet is supplied by the
    caller.
    """
    if set(m.source) != set(s.alphabet):
        raise DomainError("generator map source must match the structure alphabet")
    reps = relation_image(substitution_relation(m), s.reps)
    return WordHypStructure(m.target, reps, target_equality)


def adjust_identity_rep(reps: Nfa, e: Word) -> Nfa:
    """Replace the empty representative by a nonempty identity name.

    The language becomes (L - {empty}) plus {e}.
    """
    if not e:
        raise DomainError("the replacement identity representative must be nonempty")
    alphabet = reps.alphabet
    for x in e:
        if x not in alphabet:
            alphabet = alphabet.union(Alphabet([x]))
    stripped = nfa_strip_empty_word(reps)
    return nfa_union(stripped, nfa_word(alphabet, e))


def counterexample_system(min_repeat: int = 1) -> MonadicCfSystem:
    """The built-in system over {a,b,c,d} erasing every a b^n c^n d block.

    With ``min_repeat`` 1 the shortest rule erases ``a b c d``; with 0
    the rule ``a d`` is included as well.  Both variants are confluent
    (left-hand sides only overlap when equal).
    """
    if min_repeat not in (0, 1):
        raise ValueError("min_repeat must be 0 or 1")
    A = Alphabet([Symbol("a"), Symbol("b"), Symbol("c"), Symbol("d")])
    a, b, c, d = A.symbols
    S, T = Symbol("S"), Symbol("T")
    prods = [(S, (a, T, d)), (T, (b, T, c)), (T, (b, c))]
    if min_repeat == 0:
        prods.append((S, (a, d)))
    g = Cfg(Alphabet([S, T]), A, prods, S)
    return MonadicCfSystem(A, {None: g})


@dataclass(frozen=True)
class CrossSectionReport:
    """Bounded evidence against (or not) a candidate cross-section.

    Each collision names two distinct candidate words with the same
    normal form; unwitnessed lists normal forms with no representative
    found within the enumeration bound (inconclusive, not failing).
    """

    max_len: int
    words_checked: int
    collisions: tuple[tuple[Word, Word, Word], ...]
    unwitnessed: tuple[Word, ...]

    @property
    def status(self) -> str:
        if self.collisions:
            return "fail"
        if self.unwitnessed:
            return "inconclusive"
        return "pass"


def validate_cross_section(candidate: Dfa, system: MonadicCfSystem, maxlen: int) -> CrossSectionReport:
    """Search a candidate language for normal-form collisions.

    Candidate words are enumerated to maxlen and grouped by normal form;
    any group of two or more refutes uniqueness.  Normal forms of length
    at most maxlen - 4 with no representative found are reported as
    unwitnessed (the slack allows representatives somewhat longer than
    the elements they name).
    """
    words = sorted(nfa_enumerate(candidate.to_nfa(), maxlen), key=word_key)
    groups: dict[Word, list[Word]] = {}
    for w in words:
        groups.setdefault(normal_form(system, w), []).append(w)
    collisions = tuple(
        (ws[0], ws[1], nf)
        for nf, ws in sorted(groups.items(), key=lambda kv: word_key(kv[0]))
        if len(ws) >= 2
    )
    unwitnessed = []
    bound = maxlen - 4
    if bound >= 0:
        frontier: list[Word] = [()]
        for _ in range(bound + 1):
            for w in frontier:
                if find_redex(system, w) is None and w not in groups:
                    unwitnessed.append(w)
            frontier = [w + (x,) for w in frontier for x in system.alphabet if len(w) < bound]
    return CrossSectionReport(maxlen, len(words), collisions, tuple(unwitnessed))
