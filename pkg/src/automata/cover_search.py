# src/automata/cover_search.py

"""
Exhaustive search for small deterministic cover automata.

Used as a minimality oracle in tests and in the corpus harness. Trees of
depth <= ell are visited in tree order, so every child is evaluated before
its parent; a transition is only chosen the first time a tree needs it, and
a fresh state is only ever the next unused number.

Every tree value carries the set of choices it was computed from, as a
bitmask over stack positions, and every state remembers the choice that
created it. A conflict therefore names the choices that caused it, and the
search jumps straight back to the latest of them instead of undoing the
most recent choice (conflict-directed backjumping).
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from src.automata.tree_automaton import Rule, TreeAutomaton
from src.skeletal.ordering import SkeletalAlphabet, enumerate_trees
from src.skeletal.trees import Leaf, SkeletalTree


logger = logging.getLogger(__name__)

MAX_SEARCH_STATES = 3


@dataclass
class _Choice:
    index: int
    inputs: Tuple
    # choices the argument states were computed from
    below: int
    options: List[int]
    # choices that shaped the option list, then every conflict blamed on this choice
    conflicts: int
    position: int = 0
    created: bool = False


def _complete(alphabet: SkeletalAlphabet, delta: dict, finals: List[bool]) -> TreeAutomaton:
    states = tuple(range(len(finals)))
    domain = list(alphabet.leaves) + list(states)
    rules = []
    for m in alphabet.arities:
        for inputs in itertools.product(domain, repeat=m):
            rules.append(Rule(inputs, delta.get(inputs, 0)))
    accepting = frozenset(q for q in states if finals[q])
    return TreeAutomaton(alphabet, states, accepting, tuple(rules), deterministic=True)


class _CoverSearch:
    def __init__(self, trees: List[SkeletalTree], target: frozenset, k: int):
        self.trees = trees
        self.target = target
        self.k = k
        self.delta: Dict[Tuple, int] = {}
        self.origin: Dict[Tuple, int] = {}
        self.finals: List[bool] = []
        self.creator: List[int] = []
        self.value: Dict[SkeletalTree, int] = {}
        self.support: Dict[SkeletalTree, int] = {}
        self.stack: List[_Choice] = []
        self.nodes = 0

    def _creators(self) -> int:
        mask = 0
        for position in self.creator:
            mask |= 1 << position
        return mask

    def _apply(self, choice: _Choice):
        q = choice.options[choice.position]
        level = len(self.stack) - 1
        choice.created = q == len(self.finals)
        if choice.created:
            self.finals.append(self.trees[choice.index] in self.target)
            self.creator.append(level)
        self.delta[choice.inputs] = q
        self.origin[choice.inputs] = level
        t = self.trees[choice.index]
        self.value[t] = q
        self.support[t] = choice.below | (1 << level)
        self.nodes += 1

    def _undo(self, choice: _Choice):
        del self.delta[choice.inputs]
        del self.origin[choice.inputs]
        if choice.created:
            self.finals.pop()
            self.creator.pop()

    def _jump(self, conflicts: int) -> Optional[int]:
        """Back to the latest choice in conflicts with an untried option; the tree index to resume at"""
        while conflicts:
            level = conflicts.bit_length() - 1
            while len(self.stack) > level + 1:
                self._undo(self.stack.pop())
            choice = self.stack[level]
            choice.conflicts |= conflicts & ~(1 << level)
            self._undo(choice)
            choice.position += 1
            if choice.position < len(choice.options):
                self._apply(choice)
                return choice.index + 1
            conflicts = choice.conflicts
            self.stack.pop()
        return None

    def run(self) -> bool:
        i: Optional[int] = 0
        while i is not None and i < len(self.trees):
            t = self.trees[i]
            accepting = t in self.target
            inputs = []
            below = 0
            for c in t.children:
                if isinstance(c, Leaf):
                    inputs.append(c)
                else:
                    inputs.append(self.value[c])
                    below |= self.support[c]
            inputs = tuple(inputs)

            q = self.delta.get(inputs)
            if q is not None:
                used = below | (1 << self.origin[inputs])
                if self.finals[q] == accepting:
                    self.value[t] = q
                    self.support[t] = used
                    i += 1
                else:
                    i = self._jump(used | (1 << self.creator[q]))
                continue

            options = [j for j, final in enumerate(self.finals) if final == accepting]
            if len(self.finals) < self.k:
                options.append(len(self.finals))
            if not options:
                i = self._jump(below | self._creators())
                continue
            choice = _Choice(i, inputs, below, options, below | self._creators())
            self.stack.append(choice)
            self._apply(choice)
            i += 1
        return i is not None


def find_cover_automaton(target: Iterable[SkeletalTree], alphabet: SkeletalAlphabet,
                         ell: int, k: int) -> Optional[TreeAutomaton]:
    """A total DFTA with at most k states whose depth-<=ell language is target, or None"""
    trees = enumerate_trees(alphabet, ell)
    target = frozenset(target)
    outside = target - set(trees)
    if outside:
        raise ValueError(f"{len(outside)} target trees are not trees of depth <= {ell} over the alphabet")

    search = _CoverSearch(trees, target, k)
    found = search.run()
    logger.debug(f"Cover search with k={k} over {len(trees)} trees tried {search.nodes} transitions")
    if not found:
        return None
    return _complete(alphabet, search.delta, search.finals)


def brute_min_cover_states(target: Iterable[SkeletalTree], alphabet: SkeletalAlphabet,
                           ell: int, max_states: int = MAX_SEARCH_STATES) -> Optional[int]:
    """Least number of states of a total DFTA covering target up to depth ell; None when above max_states"""
    if not 1 <= max_states <= MAX_SEARCH_STATES:
        raise ValueError(f"max_states must be between 1 and {MAX_SEARCH_STATES}, got {max_states}")
    target = frozenset(target)
    for k in range(1, max_states + 1):
        if find_cover_automaton(target, alphabet, ell, k) is not None:
            logger.debug(f"Minimal cover automaton for {len(target)} trees has {k} states")
            return k
    return None
