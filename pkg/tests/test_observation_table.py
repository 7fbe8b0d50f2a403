import pytest

from src.grammar.text_format import parse_grammar
from src.learning.observation_table import ObservationTable
from src.learning.teacher import Teacher
from src.skeletal.ordering import SkeletalAlphabet
from src.skeletal.trees import IDENTITY
from src.utils.errors import (
    ClosureViolationError,
    NoRepresentativeError,
    TableNotClosedError,
)

from tests.helpers import ALL_UNARY_GRAMMAR, ctx, tree


@pytest.fixture
def table(example_alphabet, example_teacher):
    """S = {s(a)}, E = {_} over the example target with ell = 2"""
    t = ObservationTable(example_alphabet, example_teacher, 2)
    t.add_row(tree("s(a)"))
    t.add_column(IDENTITY)
    return t


@pytest.fixture
def example_table(example_alphabet, example_teacher):
    """S = {t1, t2, t3}, E = {_, s(_,b)}"""
    t = ObservationTable(example_alphabet, example_teacher, 2)
    t.add_rows([tree("s(a)"), tree("s(s(a),b)"), tree("s(b)")])
    t.add_column(IDENTITY)
    t.add_column(ctx("s(_,b)"))
    return t


def test_t_values(table):
    assert table.t_value(tree("s(a)")) == 1
    assert table.t_value(tree("s(s(b),b)")) == 0
    assert table.t_value(tree("s(s(s(a),b),b)")) == -1


def test_deep_cells_ask_no_queries(table, example_teacher):
    before = example_teacher.counters.membership_queries
    assert table.cell(tree("s(s(a),b)"), ctx("s(_,b)")) == -1
    assert example_teacher.counters.membership_queries == before


def test_plugged_trees_share_one_query(table, example_teacher):
    table.cell(tree("s(s(a),b)"), IDENTITY)
    before = example_teacher.counters.membership_queries
    assert table.cell(tree("s(a)"), ctx("s(_,b)")) == 1
    assert example_teacher.counters.membership_queries == before


def test_example_similarities(example_table):
    t1, t2, t3 = tree("s(a)"), tree("s(s(a),b)"), tree("s(b)")
    assert example_table.rows == [t1, t3, t2]
    assert example_table.columns == [IDENTITY, ctx("s(_,b)")]
    assert example_table.similar_k(t1, t2, 2)
    assert example_table.similar_k(t2, t3, 2)
    assert not example_table.similar_k(t1, t3, 2)
    assert example_table.similar_k(t1, t1, 2)


def test_similarity_is_not_transitive(example_table):
    t1, t2, t3 = tree("s(a)"), tree("s(s(a),b)"), tree("s(b)")
    assert example_table.similar(t1, t2) and example_table.similar(t2, t3)
    assert not example_table.similar(t1, t3)


def test_distinguishes(example_table):
    assert example_table.distinguishes(ctx("s(_,b)"), tree("s(a)"), tree("s(b)"))
    assert not example_table.distinguishes(IDENTITY, tree("s(a)"), tree("s(a)"))
    assert not example_table.distinguishes(ctx("s(_,b)"), tree("s(s(a),b)"), tree("s(a)"))


def test_representatives(example_table):
    assert example_table.representative(tree("s(s(a),b)")) == tree("s(a)")
    assert example_table.representative(tree("s(s(s(a),b),b)")) == tree("s(a)")
    assert example_table.representative(tree("s(b)")) == tree("s(b)")
    for r in example_table.representatives():
        assert example_table.representative(r) == r


def test_no_representative(example_alphabet, example_teacher):
    empty = ObservationTable(example_alphabet, example_teacher, 2)
    with pytest.raises(NoRepresentativeError):
        empty.representative(tree("s(a)"))
    empty.add_row(tree("s(a)"))
    empty.add_column(IDENTITY)
    with pytest.raises(NoRepresentativeError):
        empty.representative(tree("s(a,a)"))


def test_sigma_hole_contexts():
    unary = ObservationTable(SkeletalAlphabet(frozenset({1}), ('a', 'b')), None, 2)
    unary.add_row(tree("s(a)"))
    assert unary.sigma_hole() == [ctx("s(_)")]

    binary = ObservationTable(SkeletalAlphabet(frozenset({2}), ('a',)), None, 2)
    binary.add_row(tree("s(a,a)"))
    assert set(binary.sigma_hole()) == {ctx("s(_,a)"), ctx("s(_,s(a,a))"), ctx("s(a,_)"), ctx("s(s(a,a),_)")}


def test_x_of():
    unary = ObservationTable(SkeletalAlphabet(frozenset({1}), ('a',)), None, 2)
    unary.add_row(tree("s(a)"))
    assert unary.x_of() == [tree("s(s(a))")]


def test_single_row_is_consistent(table):
    assert table.find_inconsistency() is None


def test_example_inconsistency(example_alphabet, example_teacher):
    t = ObservationTable(example_alphabet, example_teacher, 2)
    t.add_rows([tree("s(a)"), tree("s(b)")])
    t.add_column(IDENTITY)
    found = t.find_inconsistency()
    assert found is not None
    assert (found.s1, found.s2) == (tree("s(a)"), tree("s(b)"))
    assert found.context == IDENTITY
    assert found.sub_context == ctx("s(_,b)")
    assert found.new_column == ctx("s(_,b)")
    t.add_column(found.new_column)
    assert t.is_consistent()


def test_first_unclosed_candidate(table):
    assert table.find_unclosed() == tree("s(a,a)")
    assert not table.is_closed()
    with pytest.raises(TableNotClosedError):
        table.build_automaton()


def test_rows_keep_subterm_closure(table):
    with pytest.raises(ClosureViolationError):
        table.add_row(tree("s(s(b),b)"))
    with pytest.raises(ClosureViolationError):
        table.add_row(tree("s(s(s(a),b),b)"))
    rows = list(table.rows)
    table.add_row(tree("s(a)"))
    assert table.rows == rows
    assert table.add_rows([tree("s(s(b),b)"), tree("s(b)"), tree("s(a)")]) == [tree("s(b)"), tree("s(s(b),b)")]
    assert table.is_subterm_closed()


def test_columns_keep_prefix_closure(example_alphabet):
    deep = ObservationTable(example_alphabet, None, 3)
    deep.add_row(tree("s(a)"))
    deep.add_column(IDENTITY)
    with pytest.raises(ClosureViolationError):
        deep.add_column(ctx("s(s(_,b),b)"))
    deep.add_column(ctx("s(_,b)"))
    deep.add_column(ctx("s(s(_,b),b)"))
    assert deep.is_prefix_closed()
    with pytest.raises(ClosureViolationError):
        deep.add_column(ctx("s(s(s(_,b),b),b)"))


def test_snapshot_leaves_unknown_cells_empty(table):
    table.t_value(tree("s(a)"))
    table.add_row(tree("s(b)"))
    snapshot = table.snapshot(event="test")
    assert snapshot == {
        'ell': 2,
        'rows': ["s(a)", "s(b)"],
        'columns': ["_"],
        'values': [[1], [None]],
        'event': "test",
    }


def test_single_representative_automaton():
    teacher = Teacher(parse_grammar(ALL_UNARY_GRAMMAR), ell=2)
    t = ObservationTable(teacher.alphabet, teacher, 2)
    t.add_row(tree("s(a)"))
    t.add_column(IDENTITY)
    automaton = t.build_automaton()
    assert automaton.states == (tree("s(a)"),)
    assert automaton.finals == {tree("s(a)")}
    assert automaton.is_total()


def test_exact_mode_compares_whole_rows(example_alphabet, example_grammar):
    exact = ObservationTable(example_alphabet, Teacher(example_grammar), None)
    exact.add_rows([tree("s(a)"), tree("s(s(a),b)")])
    exact.add_column(IDENTITY)
    exact.add_column(ctx("s(_,b)"))
    assert exact.row(tree("s(a)")) == exact.row(tree("s(s(a),b)")) == (1, 1)
    assert exact.similar(tree("s(a)"), tree("s(s(a),b)"))
    assert exact.t_value(tree("s(s(s(a),b),b)")) == 1
