# src/automata/isomorphism.py

from typing import Dict

from src.automata.tree_automaton import STUCK, TreeAutomaton, reachable_witnesses, run, trim
from src.skeletal.trees import Leaf


def isomorphic(a1: TreeAutomaton, a2: TreeAutomaton) -> bool:
    """
    True when the reachable parts of two deterministic automata are equal up to
    a renaming of states.

    Any isomorphism has to send the state a witness tree reaches in a1 to the
    state the same tree reaches in a2, so the only candidate bijection is read
    off the witnesses and then checked against finals and every transition.
    Partial automata are compared as they are: a transition defined on one side
    only breaks the isomorphism.
    """
    if not (a1.deterministic and a2.deterministic):
        raise ValueError("isomorphic() expects deterministic automata")
    if a1.alphabet.sigma_arities != a2.alphabet.sigma_arities:
        return False
    if set(a1.alphabet.terminals) != set(a2.alphabet.terminals):
        return False

    t1, t2 = trim(a1), trim(a2)
    if len(t1.states) != len(t2.states) or len(t1.finals) != len(t2.finals):
        return False

    phi: Dict[object, object] = {}
    for state, witness in reachable_witnesses(t1).items():
        image = run(t2, witness)
        if image is STUCK:
            return False
        phi[state] = image
    if len(set(phi.values())) != len(phi):
        return False
    if {phi[q] for q in t1.finals} != set(t2.finals):
        return False

    def rename(x):
        return x if isinstance(x, Leaf) else phi[x]

    renamed = {
        (tuple(rename(x) for x in inputs), phi[target])
        for inputs, target in t1.delta.items()
    }
    return renamed == set(t2.delta.items())
