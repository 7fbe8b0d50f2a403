# src/grammar/cfg.py

"""
Epsilon-free context-free grammars, derivation trees and their skeletons.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple, Union

from src.skeletal.ordering import SkeletalAlphabet
from src.skeletal.trees import Leaf, Node, SkeletalTree


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Production:
    """X -> U1 ... Um"""
    lhs: str
    rhs: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, 'rhs', tuple(self.rhs))

    def __str__(self) -> str:
        return f"{self.lhs} -> {' '.join(self.rhs)}"


@dataclass(frozen=True)
class Cfg:
    """G = (N, Sigma, P, S); construction does not validate, see validate()"""
    nonterminals: Tuple[str, ...]
    terminals: Tuple[str, ...]
    productions: Tuple[Production, ...]
    start: str

    def __post_init__(self):
        object.__setattr__(self, 'nonterminals', tuple(self.nonterminals))
        object.__setattr__(self, 'terminals', tuple(self.terminals))
        object.__setattr__(self, 'productions', tuple(self.productions))

    def productions_of(self, lhs: str) -> List[Production]:
        return [p for p in self.productions if p.lhs == lhs]


@dataclass(frozen=True)
class NTNode:
    """Derivation tree node X(t1, ..., tm)"""
    label: str
    children: Tuple['DerivationTree', ...]

    def __post_init__(self):
        object.__setattr__(self, 'children', tuple(self.children))
        if not self.children:
            raise ValueError(f"Derivation node {self.label} needs at least one child")


DerivationTree = Union[Leaf, NTNode]


def validate(g: Cfg) -> Optional[str]:
    """Return None when g satisfies every Cfg invariant, else the first violation"""
    nonterminals = set(g.nonterminals)
    terminals = set(g.terminals)

    if len(nonterminals) != len(g.nonterminals):
        return "duplicate nonterminal"
    if len(terminals) != len(g.terminals):
        return "duplicate terminal"
    overlap = sorted(nonterminals & terminals)
    if overlap:
        return f"nonterminals and terminals overlap: {' '.join(overlap)}"
    if g.start not in nonterminals:
        return f"start symbol {g.start} is not a nonterminal"
    for production in g.productions:
        if production.lhs not in nonterminals:
            return f"unknown lhs {production.lhs} in {production}"
        if not production.rhs:
            return f"empty rhs in production {production.lhs} ->"
        for symbol in production.rhs:
            if symbol not in nonterminals and symbol not in terminals:
                return f"unknown symbol {symbol} in {production}"
    return None


def skeletal_alphabet(g: Cfg) -> SkeletalAlphabet:
    """ar(sigma) is the set of rhs lengths; {1} for a grammar without productions"""
    arities = {len(p.rhs) for p in g.productions} or {1}
    return SkeletalAlphabet(frozenset(arities), g.terminals)


def sk(t: DerivationTree) -> SkeletalTree:
    """Relabel every internal node with sigma"""
    if isinstance(t, Leaf):
        return t
    return Node(tuple(sk(child) for child in t.children))


def derivation_root(t: DerivationTree) -> str:
    return t.symbol if isinstance(t, Leaf) else t.label


def is_derivation(g: Cfg, t: DerivationTree, root: Optional[str] = None) -> bool:
    """True when t is in D_G(root), root defaulting to the start symbol"""
    root = g.start if root is None else root
    if isinstance(t, Leaf):
        return t.symbol == root and root in g.terminals
    if t.label != root:
        return False
    rhs = tuple(derivation_root(child) for child in t.children)
    if Production(t.label, rhs) not in g.productions:
        return False
    return all(is_derivation(g, child, symbol) for child, symbol in zip(t.children, rhs))


def productive_nonterminals(g: Cfg) -> Set[str]:
    productive: Set[str] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.lhs not in productive and all(
                    u in productive or u in g.terminals for u in p.rhs):
                productive.add(p.lhs)
                changed = True
    return productive


def reachable_nonterminals(g: Cfg) -> Set[str]:
    reachable = {g.start}
    frontier = [g.start]
    while frontier:
        x = frontier.pop()
        for p in g.productions_of(x):
            for u in p.rhs:
                if u in g.nonterminals and u not in reachable:
                    reachable.add(u)
                    frontier.append(u)
    return reachable


def skeletons_upto(g: Cfg, ell: int) -> FrozenSet[SkeletalTree]:
    """K(D(G))_[ell] by dynamic programming over (symbol, exact depth)"""
    if ell < 1:
        raise ValueError(f"ell must be at least 1, got {ell}")

    # exact[U][d]: skeletons of derivations from U with depth exactly d
    exact: Dict[str, List[Set[SkeletalTree]]] = {}
    for a in g.terminals:
        exact[a] = [{Leaf(a)}] + [set() for _ in range(ell)]
    for x in g.nonterminals:
        exact[x] = [set() for _ in range(ell + 1)]

    for d in range(1, ell + 1):
        for p in g.productions:
            slots = []
            for u in p.rhs:
                # (tree, is_exactly_d_minus_1)
                options = [(t, j == d - 1) for j in range(d) for t in exact[u][j]]
                slots.append(options)
            for combination in itertools.product(*slots):
                if any(is_top for _, is_top in combination):
                    exact[p.lhs][d].add(Node(tuple(t for t, _ in combination)))

    result = set()
    for d in range(1, ell + 1):
        result |= exact[g.start][d]
    logger.debug(f"K(D(G))_[{ell}] has {len(result)} skeletons")
    return frozenset(result)
