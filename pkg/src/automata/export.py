# src/automata/export.py

"""
Automaton documents (JSON) and DOT rendering.

Document layout:

    {
      "version": 1,
      "arities": [1, 2],
      "terminals": ["a", "b"],
      "states": [0, 1],
      "labels": ["s(a)", "s(b)"],
      "finals": [0],
      "transitions": [{"arity": 2, "inputs": ["a", 1], "to": 0}],
      "deterministic": true
    }

States are integer ids in declaration order, terminal inputs are written by
name. Loading gives back an automaton whose states are those ids.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

import pydot

from src.automata.tree_automaton import Rule, TreeAutomaton
from src.skeletal.ordering import SkeletalAlphabet
from src.skeletal.trees import Context, Leaf, Node, format_context, format_term
from src.utils.errors import MalformedDocumentError


logger = logging.getLogger(__name__)

DOCUMENT_VERSION = 1


def state_label(q) -> str:
    """Readable name of a state: trees in canonical syntax, subset-states as {..}"""
    if isinstance(q, (Leaf, Node)):
        return format_term(q)
    if isinstance(q, Context):
        return format_context(q)
    if isinstance(q, frozenset):
        return '{' + ','.join(sorted(state_label(x) for x in q)) + '}'
    return str(q)


def dump(a: TreeAutomaton) -> Dict[str, Any]:
    ids = {q: i for i, q in enumerate(a.states)}

    def encode(x):
        return x.symbol if isinstance(x, Leaf) else ids[x]

    return {
        'version': DOCUMENT_VERSION,
        'arities': a.alphabet.arities,
        'terminals': list(a.alphabet.terminals),
        'states': list(range(len(a.states))),
        'labels': [state_label(q) for q in a.states],
        'finals': sorted(ids[q] for q in a.finals),
        'transitions': [
            {'arity': rule.arity, 'inputs': [encode(x) for x in rule.inputs], 'to': ids[rule.target]}
            for rule in a.rules
        ],
        'deterministic': a.deterministic,
    }


def _require(document: Dict[str, Any], key: str, kind):
    if key not in document:
        raise MalformedDocumentError(f"Missing field '{key}'")
    value = document[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise MalformedDocumentError(f"Field '{key}' has the wrong type")
    return value


def load(document: Dict[str, Any]) -> TreeAutomaton:
    if not isinstance(document, dict):
        raise MalformedDocumentError("An automaton document must be an object")
    version = _require(document, 'version', int)
    if version != DOCUMENT_VERSION:
        raise MalformedDocumentError(f"Unsupported document version {version}")

    arities = _require(document, 'arities', list)
    terminals = _require(document, 'terminals', list)
    states: List[Any] = _require(document, 'states', list)
    finals = _require(document, 'finals', list)
    transitions = _require(document, 'transitions', list)
    deterministic = _require(document, 'deterministic', bool)

    if not all(isinstance(q, int) and not isinstance(q, bool) for q in states):
        raise MalformedDocumentError("State ids must be integers")
    known = set(states)
    terminal_set = set(terminals)

    def decode(x):
        if isinstance(x, str):
            if x not in terminal_set:
                raise MalformedDocumentError(f"Unknown terminal {x!r} in transition inputs")
            return Leaf(x)
        if isinstance(x, int) and not isinstance(x, bool) and x in known:
            return x
        raise MalformedDocumentError(f"Unknown transition input {x!r}")

    rules = []
    for entry in transitions:
        if not isinstance(entry, dict):
            raise MalformedDocumentError("Every transition must be an object")
        inputs = _require(entry, 'inputs', list)
        arity = _require(entry, 'arity', int)
        target = _require(entry, 'to', int)
        if arity != len(inputs):
            raise MalformedDocumentError(f"Transition arity {arity} does not match {len(inputs)} inputs")
        if target not in known:
            raise MalformedDocumentError(f"Unknown target state {target}")
        rules.append(Rule(tuple(decode(x) for x in inputs), target))

    if not set(finals) <= known:
        raise MalformedDocumentError("Final states must be declared states")

    try:
        alphabet = SkeletalAlphabet(frozenset(arities), tuple(terminals))
        return TreeAutomaton(alphabet, tuple(states), frozenset(finals), tuple(rules), deterministic)
    except (ValueError, TypeError) as e:
        raise MalformedDocumentError(str(e)) from e


def save_automaton(a: TreeAutomaton, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(dump(a), f, indent=2)
    logger.debug(f"Saved automaton with {len(a.states)} states to {path}")


def load_automaton(path: Union[str, Path]) -> TreeAutomaton:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except json.JSONDecodeError as e:
        raise MalformedDocumentError(f"{path} is not valid JSON: {e}") from e
    return load(document)


def to_dot(a: TreeAutomaton, name: str = "automaton") -> str:
    """Hypergraph rendering: one node per state and terminal, one point node per rule"""
    graph = pydot.Dot(name, graph_type='digraph', rankdir="LR")
    ids = {q: f"q{i}" for i, q in enumerate(a.states)}

    for leaf in a.alphabet.leaves:
        graph.add_node(pydot.Node(f"t_{leaf.symbol}", label=leaf.symbol, shape="plaintext"))
    for q in a.states:
        shape = "doublecircle" if q in a.finals else "circle"
        graph.add_node(pydot.Node(ids[q], label=state_label(q), shape=shape))

    for i, rule in enumerate(a.rules):
        branch = f"r{i}"
        graph.add_node(pydot.Node(branch, label="", shape="point"))
        for position, x in enumerate(rule.inputs, start=1):
            source = f"t_{x.symbol}" if isinstance(x, Leaf) else ids[x]
            graph.add_edge(pydot.Edge(source, branch, label=str(position), arrowhead="none"))
        graph.add_edge(pydot.Edge(branch, ids[rule.target]))

    return graph.to_string()


def save_dot(a: TreeAutomaton, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(to_dot(a, name=path.stem.replace('-', '_') or "automaton"))
