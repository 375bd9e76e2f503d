"""Symbols, alphabets, words and alphabet homomorphisms.

A word is a plain tuple of Symbol values; the empty tuple is the empty
word.  Symbols carry an explicit flavor so that an annotated copy of a
letter (``$a``, ``~a``) can never collide with the letter itself, and so
that the two marker symbols stay outside every user alphabet.

Textual conventions used by every file format and by the CLI:

* plain symbols print as their name (quoted if the name is ambiguous),
* dollar-annotated symbols print as ``$name``, tilde ones as ``~name``,
* the markers print as ``#1`` and ``#2``,
* the annotation of the empty word prints as ``$eps`` / ``~eps``,
* a word is a whitespace-separated token list; ``_`` is the empty word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


PLAIN = "plain"
DOLLAR = "dollar"
TILDE = "tilde"
MARKER = "marker"

FLAVORS = (PLAIN, DOLLAR, TILDE, MARKER)

# Name of the annotated empty word; reserved, never a user letter.
EPS_NAME = "eps"


class DomainError(ValueError):
    """A word or symbol fell outside the alphabet an operation expects."""


class ResourceLimitError(RuntimeError):
    """A bounded exploration exceeded its cap."""


class FormatError(ValueError):
    """Malformed textual input; carries a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Symbol:
    name: str
    flavor: str = PLAIN

    def __post_init__(self):
        if not self.name or any(ch.isspace() for ch in self.name):
            raise ValueError(f"symbol name must be nonempty and whitespace-free: {self.name!r}")
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.flavor == MARKER and self.name not in ("1", "2"):
            raise ValueError("marker flavor is reserved for #1 and #2")

    def __repr__(self):
        return f"Symbol({render_symbol(self)!r})"


MARKER_1 = Symbol("1", MARKER)
MARKER_2 = Symbol("2", MARKER)
DOLLAR_EPS = Symbol(EPS_NAME, DOLLAR)
TILDE_EPS = Symbol(EPS_NAME, TILDE)

Word = tuple[Symbol, ...]

EMPTY_WORD: Word = ()


class Alphabet:
    """A finite ordered set of symbols; insertion order is canonical."""

    def __init__(self, symbols: Iterable[Symbol]):
        syms = tuple(symbols)
        seen = set()
        for s in syms:
            if s in seen:
                raise ValueError(f"duplicate symbol {s!r} in alphabet")
            seen.add(s)
        self.symbols = syms
        self._index = {s: i for i, s in enumerate(syms)}

    def __contains__(self, s: Symbol) -> bool:
        return s in self._index

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, s: Symbol) -> int:
        return self._index[s]

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Alphabet([{', '.join(render_symbol(s) for s in self.symbols)}])"

    def union(self, other: "Alphabet") -> "Alphabet":
        extra = [s for s in other if s not in self]
        return Alphabet(self.symbols + tuple(extra))


def letters(names: str) -> Alphabet:
    """Alphabet of plain one-token letters, e.g. letters("a b c d")."""
    return Alphabet(Symbol(n) for n in names.split())


def check_word(w: Word, alphabet: Alphabet) -> None:
    for s in w:
        if s not in alphabet:
            raise DomainError(f"letter {render_symbol(s)} not in alphabet {alphabet!r}")


def reverse(w: Word) -> Word:
    """The word read backwards."""
    return w[::-1]


@dataclass(frozen=True)
class Homomorphism:
    """A monoid homomorphism given by the images of the domain letters."""

    domain: Alphabet
    images: dict[Symbol, Word]

    def __post_init__(self):
        missing = [s for s in self.domain if s not in self.images]
        if missing:
            raise ValueError(f"no image for {missing[0]!r}")


def apply_homomorphism(h: Homomorphism, w: Word) -> Word:
    """Concatenation of the images of the letters of w, in order."""
    out: list[Symbol] = []
    for s in w:
        if s not in h.domain:
            raise DomainError(f"letter {render_symbol(s)} not in homomorphism domain")
        out.extend(h.images[s])
    return tuple(out)


def annotate(w: Word, flavor: str) -> Word:
    """Letterwise annotated copy of a plain word.

    The empty word annotates to the single letter ``$eps`` (resp.
    ``~eps``) rather than to the empty word; downstream grammar
    constructions rely on that convention.
    """
    if flavor not in (DOLLAR, TILDE):
        raise ValueError(f"annotation flavor must be dollar or tilde, got {flavor!r}")
    for s in w:
        if s.flavor != PLAIN:
            raise DomainError(f"cannot annotate non-plain letter {render_symbol(s)}")
        if s.name == EPS_NAME:
            raise DomainError(f"letter name {EPS_NAME!r} is reserved for the empty-word annotation")
    if not w:
        return (DOLLAR_EPS,) if flavor == DOLLAR else (TILDE_EPS,)
    return tuple(Symbol(s.name, flavor) for s in w)


# --- textual rendering and parsing ---------------------------------------

def _needs_quoting(name: str) -> bool:
    return name == "_" or name[0] in "$~#\"'" or name.startswith(";")


def render_symbol(s: Symbol) -> str:
    if s.flavor == DOLLAR:
        return "$" + s.name
    if s.flavor == TILDE:
        return "~" + s.name
    if s.flavor == MARKER:
        return "#" + s.name
    if _needs_quoting(s.name):
        return '"' + s.name + '"'
    return s.name


def render_word(w: Word) -> str:
    if not w:
        return "_"
    return " ".join(render_symbol(s) for s in w)


def symbol_from_token(token: str) -> Symbol:
    if token.startswith('"') and token.endswith('"') and len(token) >= 3:
        return Symbol(token[1:-1], PLAIN)
    if token.startswith("#"):
        return Symbol(token[1:], MARKER)
    if token.startswith("$"):
        return Symbol(token[1:], DOLLAR)
    if token.startswith("~"):
        return Symbol(token[1:], TILDE)
    return Symbol(token, PLAIN)


def parse_word(text: str, alphabet: Alphabet | None = None) -> Word:
    """Parse the whitespace-separated word syntax; ``_`` is the empty word."""
    text = text.strip()
    if text == "_" or text == "":
        return EMPTY_WORD
    w = tuple(symbol_from_token(t) for t in text.split())
    if alphabet is not None:
        check_word(w, alphabet)
    return w


def word_key(w: Word) -> tuple:
    """Canonical sort key: length, then letterwise rendering."""
    return (len(w), tuple(render_symbol(s) for s in w))
