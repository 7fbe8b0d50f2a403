# src/skeletal/ordering.py

"""
Skeletal alphabets and the canonical total orders on trees and contexts.

Both orders are realised through sort keys: comparing keys with the usual
tuple comparison compares trees depth first, then leaves by the terminal
order, leaves before nodes, and nodes by their child sequences
lexicographically with a proper prefix ranking first.
"""

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Tuple

from src.skeletal.trees import Context, Hole, Leaf, Node, SkeletalTree, Term


@dataclass(frozen=True)
class SkeletalAlphabet:
    """ar(sigma) together with the terminals in their total order"""
    sigma_arities: FrozenSet[int]
    terminals: Tuple[str, ...]
    _rank: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)
    _keys: Dict[Term, tuple] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'sigma_arities', frozenset(self.sigma_arities))
        object.__setattr__(self, 'terminals', tuple(self.terminals))
        if not self.sigma_arities:
            raise ValueError("ar(sigma) must not be empty")
        if any(m < 1 for m in self.sigma_arities):
            raise ValueError(f"Arities must be positive: {sorted(self.sigma_arities)}")
        if not self.terminals:
            raise ValueError("The terminal alphabet must not be empty")
        if len(set(self.terminals)) != len(self.terminals):
            raise ValueError(f"Duplicate terminals in {list(self.terminals)}")
        object.__setattr__(self, '_rank', {a: i for i, a in enumerate(self.terminals)})
        object.__setattr__(self, '_keys', {})

    @property
    def arities(self) -> List[int]:
        return sorted(self.sigma_arities)

    @property
    def max_arity(self) -> int:
        return max(self.sigma_arities)

    @property
    def leaves(self) -> List[Leaf]:
        return [Leaf(a) for a in self.terminals]

    def merge(self, other: 'SkeletalAlphabet') -> 'SkeletalAlphabet':
        """Union of arities; terminals of self first, then unseen ones of other"""
        extra = tuple(a for a in other.terminals if a not in self._rank)
        return SkeletalAlphabet(self.sigma_arities | other.sigma_arities, self.terminals + extra)

    def admits(self, t: Term) -> bool:
        """True when every node arity is in ar(sigma) and every leaf is a terminal"""
        if isinstance(t, Leaf):
            return t.symbol in self._rank
        if isinstance(t, Hole):
            return True
        return len(t.children) in self.sigma_arities and all(self.admits(c) for c in t.children)

    def tree_key(self, t: Term) -> tuple:
        """Sort key realising the tree order; the hole ranks below every terminal"""
        key = self._keys.get(t)
        if key is None:
            if isinstance(t, Leaf):
                key = (0, 0, self._rank[t.symbol])
            elif isinstance(t, Hole):
                key = (0, 0, -1)
            else:
                key = (t.depth, 1, tuple(self.tree_key(c) for c in t.children))
            self._keys[t] = key
        return key

    def context_key(self, c: Context) -> tuple:
        return (c.hole_depth, self.tree_key(c.body))


def _sign(a, b) -> int:
    return (a > b) - (a < b)


def cmp_tree(alphabet: SkeletalAlphabet, s: SkeletalTree, t: SkeletalTree) -> int:
    """-1, 0 or 1 as s precedes, equals or follows t"""
    return _sign(alphabet.tree_key(s), alphabet.tree_key(t))


def cmp_context(alphabet: SkeletalAlphabet, c1: Context, c2: Context) -> int:
    return _sign(alphabet.context_key(c1), alphabet.context_key(c2))


def sort_trees(alphabet: SkeletalAlphabet, trees: Iterable[SkeletalTree]) -> List[SkeletalTree]:
    return sorted(trees, key=alphabet.tree_key)


def sort_contexts(alphabet: SkeletalAlphabet, contexts: Iterable[Context]) -> List[Context]:
    return sorted(contexts, key=alphabet.context_key)


def min_tree(alphabet: SkeletalAlphabet, trees: Iterable[SkeletalTree]) -> SkeletalTree:
    return min(trees, key=alphabet.tree_key)


def enumerate_trees(alphabet: SkeletalAlphabet, max_depth: int) -> List[SkeletalTree]:
    """All trees of depth 1..max_depth in increasing tree order"""
    if max_depth < 1:
        raise ValueError(f"max_depth must be at least 1, got {max_depth}")

    shallower: List[SkeletalTree] = list(alphabet.leaves)
    previous_level: List[SkeletalTree] = list(alphabet.leaves)
    result: List[SkeletalTree] = []

    for k in range(1, max_depth + 1):
        newest = set(previous_level)
        level = []
        for m in alphabet.arities:
            for children in itertools.product(shallower, repeat=m):
                if any(c in newest for c in children):
                    level.append(Node(children))
        level.sort(key=alphabet.tree_key)
        result.extend(level)
        shallower.extend(level)
        previous_level = level

    return result
