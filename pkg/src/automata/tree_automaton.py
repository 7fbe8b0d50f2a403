# src/automata/tree_automaton.py

"""
Bottom-up tree automata over a skeletal set.

Rule inputs are drawn from Sigma and Q: a terminal argument is the Leaf
itself, any other value is a state. A deterministic automaton may be partial,
in which case a run that needs an undefined transition ends in STUCK.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, FrozenSet, Hashable, Iterable, List, Tuple

from src.skeletal.ordering import SkeletalAlphabet
from src.skeletal.trees import Leaf, Node, SkeletalTree


class _Stuck:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return 'STUCK'


STUCK = _Stuck()

State = Hashable


@dataclass(frozen=True)
class Rule:
    """sigma(q1, ..., qm) -> target"""
    inputs: Tuple[Any, ...]
    target: State

    def __post_init__(self):
        object.__setattr__(self, 'inputs', tuple(self.inputs))

    @property
    def arity(self) -> int:
        return len(self.inputs)


@dataclass(frozen=True)
class TreeAutomaton:
    alphabet: SkeletalAlphabet
    states: Tuple[State, ...]
    finals: FrozenSet[State]
    rules: Tuple[Rule, ...]
    deterministic: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'states', tuple(self.states))
        object.__setattr__(self, 'finals', frozenset(self.finals))
        object.__setattr__(self, 'rules', tuple(self.rules))
        self._validate()

    def _validate(self):
        states = set(self.states)
        if len(states) != len(self.states):
            raise ValueError("Duplicate states")
        if not self.finals <= states:
            raise ValueError("Final states must be states")
        seen = set()
        for rule in self.rules:
            if rule.arity not in self.alphabet.sigma_arities:
                raise ValueError(f"Rule arity {rule.arity} not in ar(sigma)={self.alphabet.arities}")
            for q in rule.inputs:
                if isinstance(q, Leaf):
                    if q.symbol not in self.alphabet.terminals:
                        raise ValueError(f"Unknown terminal {q.symbol} in rule inputs")
                elif q not in states:
                    raise ValueError(f"Unknown state {q!r} in rule inputs")
            if rule.target not in states:
                raise ValueError(f"Unknown target state {rule.target!r}")
            if self.deterministic:
                if rule.inputs in seen:
                    raise ValueError(f"Two rules share the inputs {rule.inputs!r} in a deterministic automaton")
                seen.add(rule.inputs)

    @cached_property
    def targets(self) -> Dict[Tuple[Any, ...], Tuple[State, ...]]:
        """inputs -> targets of every rule with those inputs, in rule order"""
        index: Dict[Tuple[Any, ...], List[State]] = {}
        for rule in self.rules:
            index.setdefault(rule.inputs, []).append(rule.target)
        return {inputs: tuple(ts) for inputs, ts in index.items()}

    @cached_property
    def delta(self) -> Dict[Tuple[Any, ...], State]:
        """The transition map of a deterministic automaton"""
        if not self.deterministic:
            raise ValueError("delta is only defined for deterministic automata")
        return {rule.inputs: rule.target for rule in self.rules}

    def symbols(self) -> List[Any]:
        """Sigma followed by Q, the argument domain of every transition"""
        return list(self.alphabet.leaves) + list(self.states)

    def is_total(self) -> bool:
        if not self.deterministic:
            return False
        domain = self.symbols()
        return all(
            inputs in self.delta
            for m in self.alphabet.arities
            for inputs in itertools.product(domain, repeat=m)
        )


def empty_automaton(alphabet: SkeletalAlphabet) -> TreeAutomaton:
    """The automaton with no states, accepting nothing"""
    return TreeAutomaton(alphabet, (), frozenset(), (), deterministic=True)


def step(a: TreeAutomaton, inputs: Tuple[Any, ...]):
    """One deterministic move on already evaluated arguments"""
    if any(q is STUCK for q in inputs):
        return STUCK
    return a.delta.get(inputs, STUCK)


def run(a: TreeAutomaton, t: SkeletalTree):
    """delta*(t), or STUCK when a needed transition is undefined"""
    if isinstance(t, Leaf):
        return t
    inputs = []
    for child in t.children:
        q = run(a, child)
        if q is STUCK:
            return STUCK
        inputs.append(q)
    return a.delta.get(tuple(inputs), STUCK)


def states_of(a: TreeAutomaton, t: SkeletalTree) -> FrozenSet[State]:
    """Every state some run of a reaches on t"""
    if isinstance(t, Leaf):
        return frozenset([t])
    child_sets = [states_of(a, child) for child in t.children]
    reached = set()
    for inputs in itertools.product(*child_sets):
        reached.update(a.targets.get(inputs, ()))
    return frozenset(reached)


def accepts(a: TreeAutomaton, t: SkeletalTree) -> bool:
    if a.deterministic:
        return run(a, t) in a.finals
    return bool(states_of(a, t) & a.finals)


def language_upto(a: TreeAutomaton, trees: Iterable[SkeletalTree]) -> FrozenSet[SkeletalTree]:
    return frozenset(t for t in trees if accepts(a, t))


def reachable_witnesses(a: TreeAutomaton) -> Dict[State, SkeletalTree]:
    """A shallowest witness tree for every reachable state of a deterministic automaton"""
    known: Dict[Any, SkeletalTree] = {leaf: leaf for leaf in a.alphabet.leaves}
    witnesses: Dict[State, SkeletalTree] = {}
    changed = True
    while changed:
        changed = False
        new_found = {}
        for rule in a.rules:
            if rule.target in witnesses or rule.target in new_found:
                continue
            if all(q in known for q in rule.inputs):
                new_found[rule.target] = Node(tuple(known[q] for q in rule.inputs))
        for state, tree in new_found.items():
            witnesses[state] = tree
            known[state] = tree
            changed = True
    return witnesses


def trim(a: TreeAutomaton) -> TreeAutomaton:
    """Restrict a deterministic automaton to its reachable states"""
    reachable = reachable_witnesses(a)
    states = tuple(q for q in a.states if q in reachable)
    rules = tuple(
        rule for rule in a.rules
        if rule.target in reachable and all(isinstance(q, Leaf) or q in reachable for q in rule.inputs)
    )
    return TreeAutomaton(a.alphabet, states, a.finals & set(states), rules, a.deterministic)
