# src/learning/learner.py

"""
The cover learner and the exact baseline.

Both drive an ObservationTable against a Teacher: start from the trivial
grammar, seed S with the subterms of the first counterexample and E with the
identity context, then repeat consistency fixes and closedness fixes until
the table is closed and consistent, and ask an equivalence query on the
grammar of its automaton. The cover learner compares rows by similarity and
never asks about trees deeper than ell; the baseline compares rows by
equality.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

from src.automata.tree_automaton import TreeAutomaton, empty_automaton, run
from src.grammar.cfg import Cfg
from src.grammar.dualities import g_of
from src.learning.observation_table import ObservationTable
from src.learning.stats import SessionStats, check_bounds
from src.learning.teacher import Teacher
from src.skeletal.trees import IDENTITY, Context, SkeletalTree, format_tree, plug, subterms_depth_ge1
from src.utils.errors import BoundViolationError, IterationCeilingError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LearnerSettings:
    iteration_ceiling_factor: int = 10
    enforce_bounds: bool = True
    trace: bool = False
    # Called with (event, table) after every change to the table and before every hypothesis
    on_step: Optional[Callable[[str, ObservationTable], None]] = None


@dataclass
class LearnResult:
    grammar: Cfg
    automaton: TreeAutomaton
    stats: SessionStats
    trace: Optional[List[Dict[str, Any]]] = None
    table: Optional[ObservationTable] = None


def _finish(stats: SessionStats, teacher: Teacher, settings: LearnerSettings):
    stats.membership_queries = teacher.counters.membership_queries
    stats.equivalence_queries = teacher.counters.equivalence_queries
    stats.max_counterexample_size = teacher.counters.max_counterexample_size
    violations = check_bounds(stats)
    if violations:
        logger.warning(f"Session exceeded its bounds: {', '.join(violations)}")
        if settings.enforce_bounds:
            raise BoundViolationError(violations)


def _learn(teacher: Teacher, ell: Optional[int], settings: LearnerSettings) -> LearnResult:
    alphabet = teacher.alphabet
    stats = SessionStats(
        mode="exact" if ell is None else "cover",
        ell=ell,
        terminals=len(alphabet.terminals),
        max_arity=alphabet.max_arity,
    )
    trace: Optional[List[Dict[str, Any]]] = [] if settings.trace else None

    trivial = empty_automaton(alphabet)
    counterexample = teacher.equivalence(g_of(trivial))
    if counterexample is None:
        logger.info("The trivial grammar is already correct")
        stats.final_states = 1
        _finish(stats, teacher, settings)
        return LearnResult(g_of(trivial), trivial, stats, trace)
    stats.failed_equivalence += 1

    table = ObservationTable(alphabet, teacher, ell)
    table.add_rows(subterms_depth_ge1(counterexample))
    table.add_column(IDENTITY)

    def record(event: str, **details):
        if settings.on_step is not None:
            settings.on_step(event, table)
        if trace is not None:
            trace.append(table.snapshot(event=event, **details))

    record("initialized", counterexample=format_tree(counterexample))

    turns = 0
    while True:
        while True:
            turns += 1
            ceiling = settings.iteration_ceiling_factor * (len(table.rows) ** 2 + 1)
            if turns > ceiling:
                raise IterationCeilingError(f"No closed and consistent table after {turns - 1} turns")

            inconsistency = table.find_inconsistency()
            if inconsistency is not None:
                stats.failed_consistency += 1
                table.add_column(inconsistency.new_column)
                record("consistency", column=str(inconsistency.new_column))
                continue

            new_row = table.find_unclosed()
            if new_row is not None:
                stats.failed_closedness += 1
                table.add_row(new_row)
                record("closedness", row=format_tree(new_row))
                continue
            break

        if settings.on_step is not None:
            settings.on_step("hypothesis", table)
        automaton = table.build_automaton(check=False)
        stats.hypothesis_sizes.append(len(automaton.states))
        grammar = g_of(automaton)
        logger.debug(f"Hypothesis {len(stats.hypothesis_sizes)} has {len(automaton.states)} states")

        counterexample = teacher.equivalence(grammar)
        if counterexample is None:
            break
        stats.failed_equivalence += 1
        added = table.add_rows(subterms_depth_ge1(counterexample))
        record("counterexample", counterexample=format_tree(counterexample),
               added=[format_tree(t) for t in added])

    stats.final_states = len(automaton.states)
    record("final", closed=True, consistent=True)
    _finish(stats, teacher, settings)
    logger.info(
        f"Learned {len(automaton.states)} states with {stats.equivalence_queries} equivalence "
        f"and {stats.membership_queries} membership queries"
    )
    return LearnResult(grammar, automaton, stats, trace, table)


def learn_cover(teacher: Teacher, settings: Optional[LearnerSettings] = None) -> LearnResult:
    """Learn a cover grammar of the teacher's target with respect to its ell"""
    if not teacher.cover_mode:
        raise ValueError("learn_cover needs a teacher in cover mode")
    return _learn(teacher, teacher.ell, settings or LearnerSettings())


def learn_exact(teacher: Teacher, settings: Optional[LearnerSettings] = None) -> LearnResult:
    """The exact baseline: learn a grammar structurally equivalent to the target"""
    if teacher.cover_mode:
        raise ValueError("learn_exact needs a teacher in exact mode")
    return _learn(teacher, None, settings or LearnerSettings())


def audit_table_agreement(table: ObservationTable, automaton: TreeAutomaton) -> List[Tuple[SkeletalTree, Context]]:
    """Cells (x, C) with d(C[x]) <= ell where the automaton disagrees with T(C[x])"""
    violations = []
    for x in table.sorted_rows() + table.x_of_depth_le_ell():
        for c in table.columns:
            t = plug(c, x)
            if table.ell is not None and t.depth > table.ell:
                continue
            accepted = run(automaton, t) in automaton.finals
            if accepted != (table.t_value(t) == 1):
                violations.append((x, c))
    return violations
