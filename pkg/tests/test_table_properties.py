"""Properties of the observation tables the cover learner passes through, checked after every learner step."""

import functools
import itertools
import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List

import pytest

from src.automata.tree_automaton import run
from src.generators.grammar_generator import GeneratorSettings, generate_grammar
from src.learning.learner import LearnerSettings, learn_cover
from src.learning.teacher import Teacher
from src.skeletal.trees import format_tree, plug
from src.utils.errors import NoRepresentativeError


SMALL = GeneratorSettings(max_nonterminals=3, max_terminals=2, max_rhs_length=2, max_productions=5)
SEEDS = range(100)
ELLS = (2, 3)
POLICIES = ("minimal", "maximal-depth")
SAMPLE = 25
MIN_STATES = 1000


@dataclass
class TableAudit:
    states: int = 0
    unclosed: int = 0
    inconsistent: int = 0
    closed_and_consistent: int = 0
    violations: Dict[str, List[str]] = field(default_factory=lambda: defaultdict(list))


def _sample(rng, items):
    items = list(items)
    return items if len(items) <= SAMPLE else rng.sample(items, SAMPLE)


class TableAuditor:
    """on_step callback checking one session's table in place"""

    def __init__(self, audit: TableAudit, label: str, seed: int):
        self.audit = audit
        self.label = label
        self.rng = random.Random(seed)

    def fail(self, prop: str, event: str, detail: str):
        self.audit.violations[prop].append(f"{self.label} after {event}: {detail}")

    def __call__(self, event, table):
        self.audit.states += 1
        points = table.sorted_rows() + _sample(self.rng, table.x_of_depth_le_ell())
        self.check_transitivity(event, table, points)

        closed = table.find_unclosed() is None
        consistent = table.find_inconsistency() is None
        self.audit.unclosed += not closed
        self.audit.inconsistent += not consistent
        if closed:
            self.check_closed(event, table, points)
        if closed and consistent:
            self.audit.closed_and_consistent += 1
            self.check_automaton(event, table, points)

    def check_transitivity(self, event, table, points):
        for s, t, x in _sample(self.rng, itertools.product(points, repeat=3)):
            if x.depth > max(s.depth, t.depth):
                continue
            for k in range(1, table.ell + 1):
                if table.similar_k(s, x, k) and table.similar_k(x, t, k) and not table.similar_k(s, t, k):
                    self.fail("transitivity", event, f"{format_tree(s)} {format_tree(x)} {format_tree(t)} k={k}")

    def check_closed(self, event, table, points):
        reps = set()
        for x in points:
            try:
                r = table.representative(x)
            except NoRepresentativeError:
                self.fail("has_representative", event, format_tree(x))
                continue
            reps.add(r)
            if r.depth > x.depth:
                self.fail("shallow_representative", event, format_tree(x))

        for r1, r2 in itertools.combinations(reps, 2):
            if table.similar(r1, r2):
                self.fail("dissimilar_representatives", event, f"{format_tree(r1)} {format_tree(r2)}")
        for r in reps:
            if table.representative(r) != r:
                self.fail("idempotent_representative", event, format_tree(r))

        row_reps = {table.representative(s) for s in table.rows}
        for x, c1 in _sample(self.rng, itertools.product(points, table.sigma_hole())):
            if table.representative(plug(c1, table.representative(x))) not in row_reps:
                self.fail("transition_on_row_representative", event, f"{format_tree(x)} {c1}")

    def check_automaton(self, event, table, points):
        automaton = table.build_automaton(check=False)
        for x in points:
            q = run(automaton, x)
            if not table.similar(q, x) or q.depth > x.depth:
                self.fail("run_reaches_similar_state", event, format_tree(x))
        for r in table.representatives():
            if run(automaton, r) != r:
                self.fail("representative_is_its_own_run", event, format_tree(r))


@functools.lru_cache(maxsize=None)
def _audit() -> TableAudit:
    audit = TableAudit()
    for seed, ell, policy in itertools.product(SEEDS, ELLS, POLICIES):
        target = generate_grammar(random.Random(seed), SMALL)
        auditor = TableAuditor(audit, f"seed={seed} ell={ell} policy={policy}", seed)
        learn_cover(Teacher(target, ell=ell, policy=policy), LearnerSettings(enforce_bounds=False, on_step=auditor))
    return audit


@pytest.fixture
def audit():
    return _audit()


def test_enough_intermediate_tables_are_audited(audit):
    assert audit.states >= MIN_STATES
    assert audit.unclosed > 0
    assert audit.inconsistent > 0
    assert audit.closed_and_consistent > 0


def test_restricted_transitivity(audit):
    assert audit.violations["transitivity"] == []


def test_closed_tables_give_every_point_a_representative(audit):
    assert audit.violations["has_representative"] == []


def test_representatives_are_no_deeper(audit):
    assert audit.violations["shallow_representative"] == []


def test_similar_representatives_are_equal(audit):
    assert audit.violations["dissimilar_representatives"] == []
    assert audit.violations["idempotent_representative"] == []


def test_transitions_land_on_row_representatives(audit):
    assert audit.violations["transition_on_row_representative"] == []


def test_run_reaches_a_similar_shallower_state(audit):
    assert audit.violations["run_reaches_similar_state"] == []
    assert audit.violations["representative_is_its_own_run"] == []
