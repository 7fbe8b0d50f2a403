# src/automata/determinize.py

import itertools
import logging
from typing import Any, Dict, FrozenSet, List, Tuple

from src.automata.tree_automaton import Rule, TreeAutomaton
from src.skeletal.trees import Leaf


logger = logging.getLogger(__name__)


def _matches(rule_inputs: Tuple[Any, ...], subset_inputs: Tuple[Any, ...]) -> bool:
    for q, arg in zip(rule_inputs, subset_inputs):
        if isinstance(arg, Leaf):
            if q != arg:
                return False
        elif q not in arg:
            return False
    return True


def determinize(a: TreeAutomaton, total: bool = False) -> TreeAutomaton:
    """
    Subset construction restricted to reachable subset-states.

    States of the result are frozensets of states of a. Tuples whose target
    subset is empty are left undefined unless total=True, in which case the
    empty subset is added as a rejecting sink and every tuple is defined.
    """
    rules_by_arity: Dict[int, List[Rule]] = {}
    for rule in a.rules:
        rules_by_arity.setdefault(rule.arity, []).append(rule)

    leaves = list(a.alphabet.leaves)
    subsets: List[FrozenSet] = []
    known = set()
    fresh: List[Any] = list(leaves)
    transitions: Dict[Tuple[Any, ...], FrozenSet] = {}

    while fresh:
        fresh_set = set(fresh)
        domain = leaves + subsets
        discovered: List[FrozenSet] = []
        for m in a.alphabet.arities:
            candidates = rules_by_arity.get(m, [])
            for inputs in itertools.product(domain, repeat=m):
                if inputs in transitions or not any(arg in fresh_set for arg in inputs):
                    continue
                target = frozenset(
                    rule.target for rule in candidates if _matches(rule.inputs, inputs)
                )
                if not target and not total:
                    continue
                transitions[inputs] = target
                if target not in known:
                    known.add(target)
                    discovered.append(target)
        subsets.extend(discovered)
        fresh = discovered

    finals = frozenset(s for s in subsets if s & a.finals)
    rules = tuple(Rule(inputs, target) for inputs, target in transitions.items())
    logger.debug(f"Determinized {len(a.states)} states into {len(subsets)} subset-states")
    return TreeAutomaton(a.alphabet, tuple(subsets), finals, rules, deterministic=True)
