# src/learning/teacher.py

import logging
import random
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional

from src.automata.determinize import determinize
from src.automata.equivalence import (
    cover_equal,
    deepest_cover_witness,
    exact_equal,
    random_cover_witness,
)
from src.automata.tree_automaton import TreeAutomaton, run
from src.grammar.cfg import Cfg, skeletal_alphabet
from src.grammar.dualities import na
from src.skeletal.trees import SkeletalTree, format_tree, size
from src.utils.errors import QueryTooDeepError


class CounterexamplePolicy(str, Enum):
    MINIMAL = "minimal"
    MAXIMAL_DEPTH = "maximal-depth"
    RANDOM = "random"


@dataclass
class TeacherStats:
    membership_queries: int = 0
    equivalence_queries: int = 0
    last_counterexample_size: int = 0
    max_counterexample_size: int = 0


class Teacher:
    """
    Mechanized teacher for a hidden target grammar.

    With ell set the teacher works in cover mode: membership queries deeper
    than ell are refused and equivalence is checked on trees of depth <= ell
    only. With ell=None it answers exact structural equivalence.
    """

    def __init__(self, target: Cfg, ell: Optional[int] = None,
                 policy: CounterexamplePolicy = CounterexamplePolicy.MINIMAL,
                 seed: Optional[int] = None):
        self.logger = logging.getLogger(__name__)
        if ell is not None and ell < 1:
            raise ValueError(f"ell must be at least 1, got {ell}")
        self.policy = CounterexamplePolicy(policy)
        if self.policy is CounterexamplePolicy.RANDOM and seed is None:
            raise ValueError("The random counterexample policy needs a seed")
        if self.policy is not CounterexamplePolicy.MINIMAL and ell is None:
            raise ValueError(f"Policy {self.policy.value} is only available in cover mode")

        self.target = target
        self.ell = ell
        self.alphabet = skeletal_alphabet(target)
        self.target_dfta: TreeAutomaton = determinize(na(target, self.alphabet))
        self.counters = TeacherStats()
        self.query_log: List[SkeletalTree] = []
        self._rng = random.Random(seed)
        self._answers: Dict[SkeletalTree, bool] = {}

    @property
    def cover_mode(self) -> bool:
        return self.ell is not None

    def membership(self, s: SkeletalTree) -> bool:
        """Is s a skeleton of the target?"""
        if s.depth < 1:
            raise ValueError(f"Membership queries need depth >= 1: {format_tree(s)}")
        if self.cover_mode and s.depth > self.ell:
            raise QueryTooDeepError(
                f"Membership query {format_tree(s)} has depth {s.depth} > ell={self.ell}"
            )
        self.counters.membership_queries += 1
        self.query_log.append(s)
        answer = self._answers.get(s)
        if answer is None:
            answer = run(self.target_dfta, s) in self.target_dfta.finals
            self._answers[s] = answer
        return answer

    def hypothesis_automaton(self, hypothesis: Cfg) -> TreeAutomaton:
        return determinize(na(hypothesis, self.alphabet))

    def equivalence(self, hypothesis: Cfg) -> Optional[SkeletalTree]:
        """None when the hypothesis is accepted, otherwise a counterexample"""
        self.counters.equivalence_queries += 1
        candidate = self.hypothesis_automaton(hypothesis)

        if not self.cover_mode:
            witness = exact_equal(self.target_dfta, candidate)
        elif self.policy is CounterexamplePolicy.MINIMAL:
            witness = cover_equal(self.target_dfta, candidate, self.ell)
        elif self.policy is CounterexamplePolicy.MAXIMAL_DEPTH:
            witness = deepest_cover_witness(self.target_dfta, candidate, self.ell)
        else:
            witness = random_cover_witness(self.target_dfta, candidate, self.ell, self._rng)

        if witness is None:
            self.logger.debug(f"Equivalence query {self.counters.equivalence_queries}: yes")
            return None

        self.counters.last_counterexample_size = size(witness)
        self.counters.max_counterexample_size = max(
            self.counters.max_counterexample_size, self.counters.last_counterexample_size
        )
        self.logger.debug(
            f"Equivalence query {self.counters.equivalence_queries}: counterexample {format_tree(witness)}"
        )
        return witness

    def stats(self) -> Dict[str, int]:
        return {
            'membership_queries': self.counters.membership_queries,
            'equivalence_queries': self.counters.equivalence_queries,
            'max_counterexample_size': self.counters.max_counterexample_size,
        }
