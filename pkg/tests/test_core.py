import random

import pytest

from hypword.core import (
    Alphabet,
    DOLLAR,
    DOLLAR_EPS,
    DomainError,
    Homomorphism,
    MARKER_1,
    MARKER_2,
    Symbol,
    TILDE,
    annotate,
    apply_homomorphism,
    letters,
    parse_word,
    render_symbol,
    render_word,
    reverse,
)
from conftest import all_words


def w(text, alphabet=None):
    return parse_word(text, alphabet)


def test_symbol_identity():
    assert Symbol("a") == Symbol("a", "plain")
    assert Symbol("a") != Symbol("a", DOLLAR)
    assert Symbol("a", DOLLAR) != Symbol("a", TILDE)


def test_symbol_validation():
    with pytest.raises(ValueError):
        Symbol("")
    with pytest.raises(ValueError):
        Symbol("a b")
    with pytest.raises(ValueError):
        Symbol("a", "marker")
    with pytest.raises(ValueError):
        Symbol("a", "sparkly")


def test_alphabet_rejects_duplicates():
    with pytest.raises(ValueError):
        Alphabet([Symbol("a"), Symbol("a")])


def test_alphabet_order_is_canonical():
    A = letters("c a b")
    assert [s.name for s in A] == ["c", "a", "b"]
    assert A.index(Symbol("a")) == 1


def test_reverse_examples():
    A = letters("a b c")
    assert reverse(w("a b c", A)) == w("c b a", A)
    assert reverse(w("_", A)) == ()
    assert reverse(w("a b b c", A)) == w("c b b a", A)


def test_reverse_involution_exhaustive_two_letters():
    A = letters("a b")
    for word in all_words(A, 12):
        assert reverse(reverse(word)) == word


def test_reverse_involution_sampled_three_letters():
    A = letters("x y z")
    rng = random.Random(7)
    syms = list(A)
    for _ in range(500):
        word = tuple(rng.choice(syms) for _ in range(rng.randint(13, 25)))
        assert reverse(reverse(word)) == word


def test_marker_erasing_homomorphism():
    A = letters("a b c d")
    domain = Alphabet(list(A) + [MARKER_1, MARKER_2])
    images = {x: (x,) for x in A}
    images[MARKER_1] = ()
    images[MARKER_2] = (MARKER_2,)
    h = Homomorphism(domain, images)
    word = w("a b", A) + (MARKER_1,) + w("c d", A) + (MARKER_2,) + w("a", A)
    assert apply_homomorphism(h, word) == w("a b c d", A) + (MARKER_2,) + w("a", A)


def test_homomorphism_empty_word():
    h = Homomorphism(letters("x"), {Symbol("x"): (Symbol("a"), Symbol("a"))})
    assert apply_homomorphism(h, ()) == ()


def test_homomorphism_doubles():
    x = Symbol("x")
    a = Symbol("a")
    h = Homomorphism(letters("x"), {x: (a, a)})
    assert apply_homomorphism(h, (x, x)) == (a, a, a, a)


def test_homomorphism_domain_error():
    h = Homomorphism(letters("x"), {Symbol("x"): ()})
    with pytest.raises(DomainError):
        apply_homomorphism(h, (Symbol("y"),))


def test_homomorphism_requires_total_images():
    with pytest.raises(ValueError):
        Homomorphism(letters("x y"), {Symbol("x"): ()})


def test_homomorphism_distributes_over_concatenation():
    A = letters("x y z")
    x, y, z = A.symbols
    h = Homomorphism(A, {x: (y, y), y: (), z: (x, z)})
    words = all_words(A, 6)
    img = {word: apply_homomorphism(h, word) for word in words}
    for u in words:
        iu = img[u]
        for v in words:
            assert iu + img[v] == apply_homomorphism(h, u + v)


def test_annotate_examples():
    A = letters("a b")
    a, b = A.symbols
    assert annotate((a, b), DOLLAR) == (Symbol("a", DOLLAR), Symbol("b", DOLLAR))
    assert annotate((), DOLLAR) == (DOLLAR_EPS,)
    assert annotate((b, a), TILDE) == (Symbol("b", TILDE), Symbol("a", TILDE))


def test_annotate_length():
    A = letters("a b c")
    for word in all_words(A, 5):
        assert len(annotate(word, DOLLAR)) == max(len(word), 1)


def test_annotate_rejects_annotated_input():
    with pytest.raises(DomainError):
        annotate((Symbol("a", DOLLAR),), DOLLAR)


def test_annotate_rejects_reserved_name():
    with pytest.raises(DomainError):
        annotate((Symbol("eps"),), DOLLAR)


def test_annotate_rejects_bad_flavor():
    with pytest.raises(ValueError):
        annotate((), "plain")


def test_word_rendering():
    assert render_word(()) == "_"
    assert render_word((Symbol("a"), Symbol("b", DOLLAR), MARKER_2)) == "a $b #2"
    assert render_symbol(DOLLAR_EPS) == "$eps"
    assert render_symbol(Symbol("a", TILDE)) == "~a"


def test_word_parsing_round_trip():
    for text in ("_", "a b c", "$a ~b #1 #2 $eps", '"weird$name" a'):
        word = parse_word(text)
        assert parse_word(render_word(word)) == word


def test_parse_word_checks_alphabet():
    with pytest.raises(DomainError):
        parse_word("a z", letters("a b"))
