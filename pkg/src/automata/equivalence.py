# src/automata/equivalence.py

"""
Language comparison of two tree automata by a depth-layered product search.

For every depth d the search keeps, per product signature (state of the
first automaton or STUCK, state of the second or STUCK), the least tree of
depth exactly d reaching it. A tree of depth d is sigma applied to children
of depth < d with at least one of depth d-1; for fixed child signatures and
depth classes the least tree takes the least child in every slot, so the
least tree per signature only needs the least trees of the previous layers.
Signatures where both runs are stuck are dropped, they never lead to a
witness.
"""

import itertools
import random
from typing import Dict, Iterator, List, Optional, Tuple

from src.automata.determinize import determinize
from src.automata.tree_automaton import STUCK, TreeAutomaton, step
from src.skeletal.ordering import SkeletalAlphabet
from src.skeletal.trees import Node, SkeletalTree


Signature = Tuple[object, object]
Layer = Dict[Signature, Tuple[tuple, SkeletalTree]]


def _deterministic(a: TreeAutomaton) -> TreeAutomaton:
    return a if a.deterministic else determinize(a)


def _accepting(a: TreeAutomaton, q) -> bool:
    return q is not STUCK and q in a.finals


def _layers(a1: TreeAutomaton, a2: TreeAutomaton, alphabet: SkeletalAlphabet,
            max_depth: Optional[int]) -> Iterator[Tuple[int, Layer]]:
    """Yield (d, least tree per signature at depth exactly d) for d = 1, 2, ..."""
    previous: Layer = {(leaf, leaf): (alphabet.tree_key(leaf), leaf) for leaf in alphabet.leaves}
    lower: Layer = {}
    seen = set(previous)
    d = 0

    while max_depth is None or d < max_depth:
        d += 1
        options = [(sig, key, tree, True) for sig, (key, tree) in previous.items()]
        options += [(sig, key, tree, False) for sig, (key, tree) in lower.items()]

        current: Layer = {}
        for m in alphabet.arities:
            for combination in itertools.product(options, repeat=m):
                if not any(option[3] for option in combination):
                    continue
                q1 = step(a1, tuple(option[0][0] for option in combination))
                q2 = step(a2, tuple(option[0][1] for option in combination))
                if q1 is STUCK and q2 is STUCK:
                    continue
                key = (d, 1, tuple(option[1] for option in combination))
                best = current.get((q1, q2))
                if best is None or key < best[0]:
                    current[(q1, q2)] = (key, Node(tuple(option[2] for option in combination)))

        yield d, current

        grown = not set(current) <= seen
        seen.update(current)
        for sig, entry in previous.items():
            lower.setdefault(sig, entry)
        previous = current
        if max_depth is None and not grown:
            return


def _mismatched(a1: TreeAutomaton, a2: TreeAutomaton, layer: Layer) -> List[Tuple[tuple, SkeletalTree]]:
    return sorted(
        entry for (q1, q2), entry in layer.items()
        if _accepting(a1, q1) != _accepting(a2, q2)
    )


def _shared_alphabet(a1: TreeAutomaton, a2: TreeAutomaton) -> SkeletalAlphabet:
    return a1.alphabet.merge(a2.alphabet)


def cover_equal(a1: TreeAutomaton, a2: TreeAutomaton, ell: int) -> Optional[SkeletalTree]:
    """None when both accept the same trees of depth <= ell, else the least witness"""
    if ell < 1:
        raise ValueError(f"ell must be at least 1, got {ell}")
    a1, a2 = _deterministic(a1), _deterministic(a2)
    for _, layer in _layers(a1, a2, _shared_alphabet(a1, a2), ell):
        witnesses = _mismatched(a1, a2, layer)
        if witnesses:
            return witnesses[0][1]
    return None


def cover_witnesses(a1: TreeAutomaton, a2: TreeAutomaton, ell: int) -> Dict[int, List[SkeletalTree]]:
    """Per depth <= ell, the least witness of every mismatched signature, in tree order"""
    a1, a2 = _deterministic(a1), _deterministic(a2)
    found: Dict[int, List[SkeletalTree]] = {}
    for d, layer in _layers(a1, a2, _shared_alphabet(a1, a2), ell):
        witnesses = _mismatched(a1, a2, layer)
        if witnesses:
            found[d] = [tree for _, tree in witnesses]
    return found


def deepest_cover_witness(a1: TreeAutomaton, a2: TreeAutomaton, ell: int) -> Optional[SkeletalTree]:
    found = cover_witnesses(a1, a2, ell)
    return found[max(found)][0] if found else None


def random_cover_witness(a1: TreeAutomaton, a2: TreeAutomaton, ell: int,
                         rng: random.Random) -> Optional[SkeletalTree]:
    found = cover_witnesses(a1, a2, ell)
    if not found:
        return None
    d = rng.choice(sorted(found))
    return rng.choice(found[d])


def exact_equal(a1: TreeAutomaton, a2: TreeAutomaton) -> Optional[SkeletalTree]:
    """None when L(a1) = L(a2), else a least witness among those of minimal depth"""
    a1, a2 = _deterministic(a1), _deterministic(a2)
    for _, layer in _layers(a1, a2, _shared_alphabet(a1, a2), None):
        witnesses = _mismatched(a1, a2, layer)
        if witnesses:
            return witnesses[0][1]
    return None
