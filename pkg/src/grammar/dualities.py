# src/grammar/dualities.py

"""
The grammar/automaton correspondence: NA(G) reads skeletons of G, and G(A)
derives exactly the skeletons A accepts.
"""

from typing import Dict, List, Optional

from src.automata.tree_automaton import Rule, TreeAutomaton
from src.grammar.cfg import Cfg, Production, skeletal_alphabet
from src.skeletal.ordering import SkeletalAlphabet
from src.skeletal.trees import Leaf, is_symbol_name


FRESH_START = "S'"


def na(g: Cfg, alphabet: Optional[SkeletalAlphabet] = None) -> TreeAutomaton:
    """NA(G) = (N, Sk u Sigma, {S}, {sigma(U1..Um) -> X | X -> U1..Um in P})"""
    alphabet = alphabet or skeletal_alphabet(g)
    terminals = set(g.terminals)
    rules = []
    for production in g.productions:
        inputs = tuple(Leaf(u) if u in terminals else u for u in production.rhs)
        rules.append(Rule(inputs, production.lhs))
    return TreeAutomaton(alphabet, g.nonterminals, frozenset([g.start]), tuple(rules))


def state_names(a: TreeAutomaton) -> Dict[object, str]:
    """Nonterminal names for the states of a: string states keep their name, others become q<i>"""
    taken = set(a.alphabet.terminals)
    names: Dict[object, str] = {}
    for i, state in enumerate(a.states):
        name = state if isinstance(state, str) and is_symbol_name(state) else f"q{i}"
        while name in taken:
            name += "'"
        taken.add(name)
        names[state] = name
    return names


def g_of(a: TreeAutomaton) -> Cfg:
    """G(A) with a fresh start symbol deriving the rhs of every rule into a final state"""
    names = state_names(a)
    start = FRESH_START
    while start in names.values() or start in a.alphabet.terminals:
        start += "'"

    def symbol(q) -> str:
        return q.symbol if isinstance(q, Leaf) else names[q]

    productions: List[Production] = []
    start_productions: List[Production] = []
    for rule in a.rules:
        rhs = tuple(symbol(q) for q in rule.inputs)
        productions.append(Production(names[rule.target], rhs))
        if rule.target in a.finals:
            start_productions.append(Production(start, rhs))

    # Several final targets may share one rhs
    unique_start = list(dict.fromkeys(start_productions))
    nonterminals = (start,) + tuple(names[q] for q in a.states)
    return Cfg(nonterminals, a.alphabet.terminals, tuple(productions + unique_start), start)


def trivial_grammar(terminals) -> Cfg:
    """({S'}, Sigma, {}, S'), the first hypothesis of every session"""
    return Cfg((FRESH_START,), tuple(terminals), (), FRESH_START)
