import itertools

import pytest

from hypword import Alphabet, Cfg, MonadicCfSystem, Symbol, letters
from hypword.equality import build_equality_grammar
from hypword.structures import counterexample_system


def all_words(alphabet, maxlen):
    """Every word up to maxlen, shortest first, in alphabet order."""
    out = []
    for n in range(maxlen + 1):
        out.extend(tuple(t) for t in itertools.product(list(alphabet), repeat=n))
    return out


@pytest.fixture(scope="session")
def cx_system():
    return counterexample_system()


@pytest.fixture(scope="session")
def cx_grammar(cx_system):
    return build_equality_grammar(cx_system)


def involution_system():
    """The special system over {a, abar} cancelling adjacent inverse pairs."""
    A = letters("a abar")
    a, abar = A.symbols
    S = Symbol("S")
    g = Cfg(Alphabet([S]), A, [(S, (a, abar)), (S, (abar, a))], S)
    return MonadicCfSystem(A, {None: g})


def square_system(letter="x"):
    """The one-letter system with the square of the letter erased."""
    A = letters(letter)
    (x,) = A.symbols
    S = Symbol("S")
    g = Cfg(Alphabet([S]), A, [(S, (x, x))], S)
    return MonadicCfSystem(A, {None: g})


def free_system(names):
    """A free monoid: no rules at all."""
    return MonadicCfSystem(letters(names), {})


@pytest.fixture(scope="session")
def inv_system():
    return involution_system()


@pytest.fixture(scope="session")
def inv_grammar(inv_system):
    return build_equality_grammar(inv_system)
