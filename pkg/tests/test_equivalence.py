import random

import pytest

from src.automata.determinize import determinize
from src.automata.equivalence import (
    cover_equal,
    cover_witnesses,
    deepest_cover_witness,
    exact_equal,
    random_cover_witness,
)
from src.automata.tree_automaton import accepts, empty_automaton
from src.generators.grammar_generator import GeneratorSettings, generate_grammar
from src.grammar.cfg import skeletal_alphabet, skeletons_upto
from src.grammar.dualities import na
from src.grammar.text_format import parse_grammar
from src.skeletal.ordering import min_tree

from tests.helpers import tree


SMALL = GeneratorSettings(max_nonterminals=3, max_terminals=2, max_rhs_length=2, max_productions=5)


def test_reflexive(example_grammar):
    dfta = determinize(na(example_grammar))
    assert cover_equal(dfta, dfta, 3) is None
    assert exact_equal(dfta, dfta) is None


def test_least_witness_against_the_empty_language(example_grammar, example_alphabet):
    assert cover_equal(empty_automaton(example_alphabet), na(example_grammar), 2) == tree("s(a)")


def test_witness_over_different_terminals():
    only_a = na(parse_grammar("start: S\nterminals: a\nS -> a\n"))
    only_b = na(parse_grammar("start: S\nterminals: b\nS -> b\n"))
    assert cover_equal(only_a, only_b, 1) == tree("s(a)")


def test_cover_equality_ignores_deeper_trees():
    short = na(parse_grammar("start: S\nterminals: a\nS -> a\n"))
    longer = na(parse_grammar("start: S\nterminals: a\nS -> a\nS -> T\nT -> S\n"))
    assert cover_equal(short, longer, 1) is None
    assert cover_equal(short, longer, 2) is None
    assert cover_equal(short, longer, 3) == tree("s(s(s(a)))")


def test_cover_equal_needs_a_positive_bound(example_grammar):
    with pytest.raises(ValueError):
        cover_equal(na(example_grammar), na(example_grammar), 0)


def test_exact_equal_finds_a_witness():
    single = na(parse_grammar("start: S\nterminals: a\nS -> a\n"))
    recursive = na(parse_grammar("start: S\nterminals: a\nS -> a\nS -> a S\n"))
    witness = exact_equal(single, recursive)
    assert witness == tree("s(a,s(a))")
    assert accepts(single, witness) != accepts(recursive, witness)


def test_exact_equal_after_determinization(example_grammar):
    assert exact_equal(na(example_grammar), determinize(na(example_grammar))) is None


def test_exact_equal_on_infinite_languages():
    left = parse_grammar("start: S\nterminals: a b\nS -> a\nS -> S b\n")
    right = parse_grammar("start: S\nterminals: a b\nS -> a\nS -> T b\nT -> a\nT -> S b\n")
    assert exact_equal(na(left), na(right)) is None


@pytest.mark.parametrize("seed", range(25))
def test_witness_is_the_least_tree_of_the_symmetric_difference(seed):
    rng = random.Random(seed)
    g1, g2 = generate_grammar(rng, SMALL), generate_grammar(rng, SMALL)
    alphabet = skeletal_alphabet(g1).merge(skeletal_alphabet(g2))
    difference = skeletons_upto(g1, 2) ^ skeletons_upto(g2, 2)
    expected = min_tree(alphabet, difference) if difference else None
    assert cover_equal(na(g1), na(g2), 2) == expected


def test_witness_policies(example_grammar, example_alphabet):
    target = determinize(na(example_grammar))
    nothing = empty_automaton(example_alphabet)
    found = cover_witnesses(target, nothing, 2)
    assert sorted(found) == [1, 2]
    assert found[2] == [tree("s(s(a),b)")]
    assert deepest_cover_witness(target, nothing, 2) == tree("s(s(a),b)")

    rng = random.Random(7)
    for _ in range(10):
        witness = random_cover_witness(target, nothing, 2, rng)
        assert witness in skeletons_upto(example_grammar, 2)
    assert random_cover_witness(target, target, 2, rng) is None
    assert deepest_cover_witness(target, target, 2) is None
