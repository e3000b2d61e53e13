import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from redukt.automata import (Edge, Tgba, cl, emptiness_check, is_empty, letters_of, lowest_letter,
                             member, product, sl, to_dot, universal, word_to_tgba)
from redukt.errors import AlphabetMismatch, ResourceLimitExceeded
from redukt.ltl import ApSet, eval_on_word, parse_formula, translate
from redukt.words import all_lassos, canonicalize, shorter_than

from conftest import PQ, lasso_words

P = ApSet(["p"])
WORDS_P = all_lassos(P.letters, 5)


def test_label_helpers():
    assert lowest_letter(0b1010) == 1
    assert letters_of(0b1010) == [1, 3]


def test_constructor_normalises_edges():
    a = Tgba(P, 2, 0, [(0, 0b01, 0, 1), (0, 0b10, 0, 1), (1, 0, 0, 0), (1, 0b11, 0, 1)], 0)
    assert a.mark_count == 1
    assert sorted(a.edges) == [Edge(0, 0b11, 1, 1), Edge(1, 0b11, 1, 1)]


def test_universal_and_empty():
    assert not is_empty(universal(PQ))
    assert is_empty(translate(parse_formula("p & !p"), PQ))


def test_witness_is_accepted():
    a = translate(parse_formula("G F p & F G !q"), PQ)
    res = emptiness_check(a)
    assert not res.empty
    assert member(res.witness.word, a)
    assert eval_on_word(parse_formula("G F p & F G !q"), res.witness.word, PQ)
    edges = res.witness.prefix_edges + res.witness.cycle_edges
    assert all(e in a.edges for e in edges)


def test_generalized_acceptance_needs_every_mark():
    # two marks, each on a different self-loop of separate components
    a = Tgba(P, 3, 0, [(0, 1, 0, 1), (0, 1, 0, 2), (1, 1, 1, 1), (2, 1, 2, 2)], 2)
    assert is_empty(a)
    b = Tgba(P, 2, 0, [(0, 1, 1, 1), (1, 1, 2, 0)], 2)
    assert not is_empty(b)


def test_product_shifts_marks_and_checks_alphabets():
    a = translate(parse_formula("G F p"), P)
    b = translate(parse_formula("G F !p"), P)
    ab = product(a, b)
    assert ab.mark_count == a.mark_count + b.mark_count
    assert member(canonicalize([], [0, 1]), ab)
    assert not member(canonicalize([], [1]), ab)
    with pytest.raises(AlphabetMismatch):
        product(a, translate(parse_formula("G F p"), PQ))


def test_product_state_cap():
    a = translate(parse_formula("G F p"), PQ)
    with pytest.raises(ResourceLimitExceeded):
        product(a, a, max_states=1)


def test_word_automaton_has_one_word():
    w = canonicalize([1, 0], [1, 1, 0], P.letters)
    a = word_to_tgba(w, P)
    assert [x for x in WORDS_P if member(x, a)] == [w]
    with pytest.raises(AlphabetMismatch):
        word_to_tgba(canonicalize([], [7]), P)


@pytest.mark.parametrize("text", ["F(p & X p)", "G !(p & X p)", "X p", "G(p -> X !p)", "p U X p"])
def test_closures_match_the_order_on_small_words(text):
    # w in cl(A) iff some member of A is at least as long; dually for sl
    f = parse_formula(text)
    a = translate(f, P)
    c, s = cl(a), sl(a)
    for w in all_lassos(P.letters, 4):
        wa = word_to_tgba(w, P)
        assert member(w, c) == (not is_empty(product(sl(wa), a))), w
        assert member(w, s) == (not is_empty(product(cl(wa), a))), w


@settings(max_examples=60, deadline=None)
@given(lasso_words(alphabet=(0, 1), max_len=3), lasso_words(alphabet=(0, 1), max_len=3))
def test_closure_of_a_word_is_the_order(x, y):
    ax = word_to_tgba(x, P)
    assert member(y, sl(ax)) == shorter_than(x, y)
    assert member(y, cl(ax)) == shorter_than(y, x)


def test_closures_contain_the_language():
    a = translate(parse_formula("G(p -> X !p)"), P)
    for w in WORDS_P:
        if member(w, a):
            assert member(w, cl(a)) and member(w, sl(a))


def test_dot_output():
    text = to_dot(translate(parse_formula("F p"), P))
    assert text.startswith("digraph") and "->" in text
