# src/skeletal/trees.py

"""
Skeletal trees and contexts.

A skeletal tree is either a terminal leaf or a node labelled by the single
skeletal symbol sigma. A context is a skeletal term with exactly one hole.
Values are immutable, compare structurally and carry a precomputed hash, so
they can be used directly as dictionary keys by the observation table.
"""

import re
from dataclasses import dataclass, field
from typing import FrozenSet, Iterator, List, Tuple, Union

from src.utils.errors import InvalidPositionError, TreeSyntaxError


SIGMA = 's'
HOLE_TEXT = '_'

Position = Tuple[int, ...]


@dataclass(frozen=True)
class Leaf:
    """Terminal leaf a"""
    symbol: str

    @property
    def depth(self) -> int:
        return 0


@dataclass(frozen=True)
class Hole:
    """The hole marker of a context"""

    @property
    def depth(self) -> int:
        return 0


HOLE = Hole()


@dataclass(frozen=True)
class Node:
    """sigma(t1, ..., tm)"""
    children: Tuple['Term', ...]
    depth: int = field(init=False, repr=False, compare=False)
    holes: int = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.children:
            raise ValueError("A sigma node needs at least one child")
        object.__setattr__(self, 'children', tuple(self.children))
        object.__setattr__(self, 'depth', 1 + max(child.depth for child in self.children))
        object.__setattr__(self, 'holes', sum(hole_count(child) for child in self.children))
        object.__setattr__(self, '_hash', hash((SIGMA, self.children)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Node):
            return NotImplemented
        return self._hash == other._hash and self.children == other.children

    @property
    def arity(self) -> int:
        return len(self.children)


Term = Union[Leaf, Node, Hole]
SkeletalTree = Union[Leaf, Node]


def hole_count(t: Term) -> int:
    if isinstance(t, Hole):
        return 1
    if isinstance(t, Node):
        return t.holes
    return 0


@dataclass(frozen=True)
class Context:
    """A skeletal term with exactly one hole"""
    body: Term
    hole_position: Position = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if hole_count(self.body) != 1:
            raise ValueError(f"A context needs exactly one hole, got {hole_count(self.body)}")
        object.__setattr__(self, 'hole_position', _find_hole(self.body))

    @property
    def depth(self) -> int:
        return self.body.depth

    @property
    def hole_depth(self) -> int:
        return len(self.hole_position)

    def __str__(self) -> str:
        return format_context(self)


def _find_hole(t: Term) -> Position:
    path: List[int] = []
    while not isinstance(t, Hole):
        for i, child in enumerate(t.children, start=1):
            if hole_count(child):
                path.append(i)
                t = child
                break
    return tuple(path)


IDENTITY = Context(HOLE)


# Measures -------------------------------------------------------------------


def depth(t: Union[Term, Context]) -> int:
    return t.depth


def positions(t: Term) -> Iterator[Position]:
    """Pos(t) in preorder"""
    stack: List[Tuple[Position, Term]] = [((), t)]
    while stack:
        p, u = stack.pop()
        yield p
        if isinstance(u, Node):
            for i in range(len(u.children), 0, -1):
                stack.append((p + (i,), u.children[i - 1]))


def size(t: Term) -> int:
    """Number of positions whose length differs from d(t)"""
    d = t.depth
    return sum(1 for p in positions(t) if len(p) != d)


def tree_yield(t: Term) -> Tuple[str, ...]:
    """Left-to-right sequence of leaf symbols"""
    if isinstance(t, Leaf):
        return (t.symbol,)
    if isinstance(t, Hole):
        return ()
    out: List[str] = []
    for child in t.children:
        out.extend(tree_yield(child))
    return tuple(out)


# Positions, subterms, contexts ---------------------------------------------


def subterm_at(t: Term, p: Position) -> Term:
    """t|_p"""
    u = t
    for i in p:
        if not isinstance(u, Node) or not 1 <= i <= len(u.children):
            raise InvalidPositionError(f"{list(p)} is not a position of {format_term(t)}")
        u = u.children[i - 1]
    return u


def replace_at(t: Term, p: Position, u: Term) -> Term:
    """t[u]_p"""
    if not p:
        return u
    if not isinstance(t, Node) or not 1 <= p[0] <= len(t.children):
        raise InvalidPositionError(f"{list(p)} is not a position of {format_term(t)}")
    i = p[0] - 1
    children = list(t.children)
    children[i] = replace_at(children[i], p[1:], u)
    return Node(tuple(children))


def punch(t: SkeletalTree, p: Position) -> Context:
    """The context obtained by replacing t|_p with a hole"""
    return Context(replace_at(t, p, HOLE))


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, Node):
        for child in t.children:
            yield from subterms(child)


def subterms_depth_ge1(t: SkeletalTree) -> FrozenSet[SkeletalTree]:
    """All subterms of t, t included, with depth at least 1"""
    return frozenset(u for u in subterms(t) if u.depth >= 1)


def plug(c: Context, u: Union[SkeletalTree, Context]) -> Union[SkeletalTree, Context]:
    """C[u]; the result is a context iff u is one"""
    if isinstance(u, Context):
        return Context(replace_at(c.body, c.hole_position, u.body))
    return replace_at(c.body, c.hole_position, u)


def hole_depth(c: Context) -> int:
    return c.hole_depth


def sigma_hole_context(others: Tuple[SkeletalTree, ...], index: int) -> Context:
    """sigma with the hole at argument index (from 1) and others filling the remaining slots"""
    children = list(others)
    children.insert(index - 1, HOLE)
    return Context(Node(tuple(children)))


# Canonical text syntax ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z0-9][A-Za-z0-9_']*|_)|(?P<punct>[(),]))")
_IDENT = re.compile(r"[A-Za-z0-9][A-Za-z0-9_']*\Z")


def is_symbol_name(name: str) -> bool:
    """True when name can be written in the canonical tree syntax"""
    return bool(_IDENT.match(name))


def format_term(t: Term) -> str:
    if isinstance(t, Leaf):
        return t.symbol
    if isinstance(t, Hole):
        return HOLE_TEXT
    return f"{SIGMA}({','.join(format_term(child) for child in t.children)})"


def format_tree(t: SkeletalTree) -> str:
    return format_term(t)


def format_context(c: Context) -> str:
    return format_term(c.body)


class _TermParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: List[str] = []
        pos = 0
        stripped_end = len(text.rstrip())
        while pos < stripped_end:
            match = _TOKEN.match(text, pos)
            if not match:
                raise TreeSyntaxError(f"Unexpected character at offset {pos} in {text!r}")
            self.tokens.append(match.group('ident') or match.group('punct'))
            pos = match.end()
        self.index = 0

    def _peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _take(self, expected=None) -> str:
        token = self._peek()
        if token is None or (expected is not None and token != expected):
            raise TreeSyntaxError(f"Expected {expected or 'a term'} in {self.text!r}, got {token!r}")
        self.index += 1
        return token

    def parse(self) -> Term:
        term = self._term()
        if self._peek() is not None:
            raise TreeSyntaxError(f"Trailing input {self._peek()!r} in {self.text!r}")
        return term

    def _term(self) -> Term:
        token = self._take()
        if token == HOLE_TEXT:
            return HOLE
        if token in '(),':
            raise TreeSyntaxError(f"Unexpected {token!r} in {self.text!r}")
        if token == SIGMA and self._peek() == '(':
            self._take('(')
            children = [self._term()]
            while self._peek() == ',':
                self._take(',')
                children.append(self._term())
            self._take(')')
            return Node(tuple(children))
        return Leaf(token)


def parse_term(text: str) -> Term:
    return _TermParser(text).parse()


def parse_tree(text: str) -> SkeletalTree:
    term = parse_term(text)
    if hole_count(term):
        raise TreeSyntaxError(f"A tree may not contain a hole: {text!r}")
    return term


def parse_context(text: str) -> Context:
    term = parse_term(text)
    if hole_count(term) != 1:
        raise TreeSyntaxError(f"A context needs exactly one hole: {text!r}")
    return Context(term)
