# src/learning/observation_table.py

"""
The observation table (S, E, T, ell).

Rows S are skeletal trees, columns E are contexts, and T(C[x]) is the
teacher's membership answer as 1/0, or -1 when C[x] is deeper than ell (no
query is asked for those). T is filled lazily and keyed by the plugged tree,
so two (C, x) pairs building the same tree share one query.

With ell=None the table runs in exact mode for the baseline learner: there
is no depth bound, and rows are compared by equality over all of E instead
of by k-similarity.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Set, Tuple

from src.automata.tree_automaton import Rule, TreeAutomaton
from src.skeletal.ordering import SkeletalAlphabet, sort_contexts, sort_trees
from src.skeletal.trees import (
    HOLE,
    IDENTITY,
    Context,
    Node,
    SkeletalTree,
    format_context,
    format_tree,
    plug,
    replace_at,
    sigma_hole_context,
    subterm_at,
    subterms_depth_ge1,
)
from src.utils.errors import (
    ClosureViolationError,
    NoRepresentativeError,
    TableNotClosedError,
    TableNotConsistentError,
)


@dataclass(frozen=True)
class Inconsistency:
    """C[C1[s1]] and C[C1[s2]] disagree although s1 and s2 look alike"""
    context: Context
    sub_context: Context
    s1: SkeletalTree
    s2: SkeletalTree
    k: Optional[int] = None

    @property
    def new_column(self) -> Context:
        return plug(self.context, self.sub_context)


class ObservationTable:
    def __init__(self, alphabet: SkeletalAlphabet, teacher, ell: Optional[int]):
        self.logger = logging.getLogger(__name__)
        if ell is not None and ell < 1:
            raise ValueError(f"ell must be at least 1, got {ell}")
        self.alphabet = alphabet
        self.teacher = teacher
        self.ell = ell

        self.rows: List[SkeletalTree] = []
        self.columns: List[Context] = []
        self._row_set: Set[SkeletalTree] = set()
        self._column_set: Set[Context] = set()

        self._cache: Dict[SkeletalTree, int] = {}
        self._cells: Dict[Tuple[SkeletalTree, Context], int] = {}

        self._sigma_hole: List[Context] = []
        self._sigma_hole_set: Set[Context] = set()
        self._sorted_sigma_hole: Optional[List[Context]] = None
        self._sorted_rows: Optional[List[SkeletalTree]] = None
        self._representatives: Dict[SkeletalTree, SkeletalTree] = {}
        self._extend_sigma_hole()

    @property
    def exact(self) -> bool:
        return self.ell is None

    def _within_bound(self, t) -> bool:
        return self.ell is None or t.depth <= self.ell

    # T ----------------------------------------------------------------------

    def t_value(self, t: SkeletalTree) -> int:
        if t.depth < 1:
            raise ValueError(f"T is only defined on trees of depth >= 1: {format_tree(t)}")
        if not self._within_bound(t):
            return -1
        value = self._cache.get(t)
        if value is None:
            value = 1 if self.teacher.membership(t) else 0
            self._cache[t] = value
        return value

    def cell(self, x: SkeletalTree, c: Context) -> int:
        """T(C[x])"""
        key = (x, c)
        value = self._cells.get(key)
        if value is None:
            value = self.t_value(plug(c, x))
            self._cells[key] = value
        return value

    def known_value(self, t: SkeletalTree) -> Optional[int]:
        """T(t) if it is already determined, without asking the teacher"""
        if not self._within_bound(t):
            return -1
        return self._cache.get(t)

    def row(self, x: SkeletalTree) -> Tuple[int, ...]:
        return tuple(self.cell(x, c) for c in self.columns)

    # S, E and the generated sets -------------------------------------------

    def fillers(self) -> List[SkeletalTree]:
        """Sigma followed by S in insertion order"""
        return list(self.alphabet.leaves) + self.rows

    def sorted_rows(self) -> List[SkeletalTree]:
        if self._sorted_rows is None:
            self._sorted_rows = sort_trees(self.alphabet, self.rows)
        return self._sorted_rows

    def sigma_hole(self) -> List[Context]:
        """sigma<S> in context order"""
        if self._sorted_sigma_hole is None:
            self._sorted_sigma_hole = sort_contexts(self.alphabet, self._sigma_hole)
        return self._sorted_sigma_hole

    def _extend_sigma_hole(self, required: Optional[SkeletalTree] = None):
        """Add the contexts of sigma<S> that mention required (all of them when None)"""
        fillers = self.fillers()
        for m in self.alphabet.arities:
            for index in range(1, m + 1):
                for others in itertools.product(fillers, repeat=m - 1):
                    if required is not None and required not in others:
                        continue
                    c = sigma_hole_context(others, index)
                    if c not in self._sigma_hole_set:
                        self._sigma_hole_set.add(c)
                        self._sigma_hole.append(c)
        self._sorted_sigma_hole = None

    def x_of(self) -> List[SkeletalTree]:
        """X(S) in tree order"""
        found = {plug(c1, s) for c1 in self._sigma_hole for s in self.fillers()}
        return sort_trees(self.alphabet, found - self._row_set)

    def x_of_depth_le_ell(self) -> List[SkeletalTree]:
        return [x for x in self.x_of() if self._within_bound(x)]

    # Similarity -------------------------------------------------------------

    def similar_k(self, s: SkeletalTree, t: SkeletalTree, k: int) -> bool:
        bound = k - max(s.depth, t.depth)
        if bound < 0:
            return True
        return all(
            self.cell(s, c) == self.cell(t, c)
            for c in self.columns if c.hole_depth <= bound
        )

    def similar(self, s: SkeletalTree, t: SkeletalTree) -> bool:
        """~ (that is ~_ell), or row equality in exact mode"""
        if s == t:
            return True
        if self.exact:
            return self.row(s) == self.row(t)
        return self.similar_k(s, t, self.ell)

    def distinguishes(self, c: Context, s1: SkeletalTree, s2: SkeletalTree) -> bool:
        if self.exact:
            return self.cell(s1, c) != self.cell(s2, c)
        if c.hole_depth > self.ell - max(s1.depth, s2.depth):
            return False
        return self.cell(s1, c) != self.cell(s2, c)

    def representative(self, x: SkeletalTree) -> SkeletalTree:
        """r(x), the least row of S similar to x"""
        rep = self._representatives.get(x)
        if rep is not None:
            return rep
        if not self.rows:
            raise NoRepresentativeError("The table has no rows")
        if not self._within_bound(x):
            rep = self.sorted_rows()[0]
        else:
            rep = next((s for s in self.sorted_rows() if self.similar(x, s)), None)
            if rep is None:
                raise NoRepresentativeError(f"No row is similar to {format_tree(x)}")
        self._representatives[x] = rep
        return rep

    def representatives(self) -> List[SkeletalTree]:
        """{r(s) | s in S} in tree order"""
        return sort_trees(self.alphabet, {self.representative(s) for s in self.rows})

    # Consistency and closedness --------------------------------------------

    def _columns_by_hole_depth(self) -> List[Context]:
        return sorted(self.columns, key=lambda c: c.hole_depth)

    def find_inconsistency(self) -> Optional[Inconsistency]:
        if self.exact:
            return self.find_row_inconsistency()
        for c in self._columns_by_hole_depth():
            i = c.hole_depth
            bound = self.ell - i - 1
            candidates = [s for s in self.sorted_rows() if s.depth <= bound]
            for n, s1 in enumerate(candidates):
                for s2 in candidates[n + 1:]:
                    k = max(s1.depth, s2.depth) + i + 1
                    if not self.similar_k(s1, s2, k):
                        continue
                    for c1 in self.sigma_hole():
                        u1 = plug(c, plug(c1, s1))
                        u2 = plug(c, plug(c1, s2))
                        if u1.depth > self.ell or u2.depth > self.ell:
                            continue
                        if self.t_value(u1) != self.t_value(u2):
                            return Inconsistency(c, c1, s1, s2, k)
        return None

    def find_row_inconsistency(self) -> Optional[Inconsistency]:
        """Equal rows s1, s2 whose one-level extensions C1[s1], C1[s2] have different rows"""
        rows = self.sorted_rows()
        for n, s1 in enumerate(rows):
            for s2 in rows[n + 1:]:
                if self.row(s1) != self.row(s2):
                    continue
                for c1 in self.sigma_hole():
                    x1, x2 = plug(c1, s1), plug(c1, s2)
                    for c in self.columns:
                        if self.cell(x1, c) != self.cell(x2, c):
                            return Inconsistency(c, c1, s1, s2)
        return None

    def _closedness_candidates(self):
        for s in list(self.alphabet.leaves) + self.sorted_rows():
            for c1 in self.sigma_hole():
                x = plug(c1, s)
                if x not in self._row_set:
                    yield x

    def find_unclosed(self) -> Optional[SkeletalTree]:
        """The first x in X(S) not similar to any row of depth <= d(x)"""
        if self.exact:
            return self.find_row_unclosed()
        for x in self._closedness_candidates():
            if x.depth > self.ell:
                continue
            if not any(self.similar(x, t) for t in self.sorted_rows() if t.depth <= x.depth):
                return x
        return None

    def find_row_unclosed(self) -> Optional[SkeletalTree]:
        rows = {self.row(s) for s in self.rows}
        for x in self._closedness_candidates():
            if self.row(x) not in rows:
                return x
        return None

    # Mutation ---------------------------------------------------------------

    def _invalidate(self):
        self._representatives.clear()

    def add_row(self, s: SkeletalTree):
        if s in self._row_set:
            return
        if s.depth < 1:
            raise ClosureViolationError(f"Rows need depth >= 1: {format_tree(s)}")
        if not self._within_bound(s):
            raise ClosureViolationError(f"Row {format_tree(s)} is deeper than ell={self.ell}")
        missing = [u for u in subterms_depth_ge1(s) if u != s and u not in self._row_set]
        if missing:
            raise ClosureViolationError(
                f"Adding {format_tree(s)} breaks subterm closure, missing {format_tree(missing[0])}"
            )
        self.rows.append(s)
        self._row_set.add(s)
        self._sorted_rows = None
        self._extend_sigma_hole(s)
        self._invalidate()
        self.logger.debug(f"Added row {format_tree(s)} (|S|={len(self.rows)})")

    def add_rows(self, trees) -> List[SkeletalTree]:
        """Add trees in tree order, skipping rows already present; returns the added ones"""
        added = []
        for t in sort_trees(self.alphabet, set(trees)):
            if t not in self._row_set:
                self.add_row(t)
                added.append(t)
        return added

    def _decompose(self, c: Context) -> Optional[Tuple[Context, Context]]:
        """C = C'[C1] with C1 the one-level context around the hole"""
        if c.hole_depth == 0:
            return None
        parent = c.hole_position[:-1]
        outer = Context(replace_at(c.body, parent, HOLE))
        inner = Context(subterm_at(c.body, parent))
        return outer, inner

    def add_column(self, c: Context):
        if c in self._column_set:
            return
        if c != IDENTITY:
            if not self.exact and (c.hole_depth > self.ell - 1 or c.depth > self.ell):
                raise ClosureViolationError(f"Column {format_context(c)} exceeds the depth bounds for ell={self.ell}")
            outer, inner = self._decompose(c)
            if outer not in self._column_set or inner not in self._sigma_hole_set:
                raise ClosureViolationError(f"Adding {format_context(c)} breaks prefix closure")
        self.columns.append(c)
        self._column_set.add(c)
        self._invalidate()
        self.logger.debug(f"Added column {format_context(c)} (|E|={len(self.columns)})")

    # Audits -----------------------------------------------------------------

    def is_subterm_closed(self) -> bool:
        return all(subterms_depth_ge1(s) <= self._row_set for s in self.rows)

    def is_prefix_closed(self) -> bool:
        if self.columns and IDENTITY not in self._column_set:
            return False
        for c in self.columns:
            if c == IDENTITY:
                continue
            outer, inner = self._decompose(c)
            if outer not in self._column_set or inner not in self._sigma_hole_set:
                return False
        return True

    def is_closed(self) -> bool:
        return self.find_unclosed() is None

    def is_consistent(self) -> bool:
        return self.find_inconsistency() is None

    # Automaton --------------------------------------------------------------

    def build_automaton(self, check: bool = True) -> TreeAutomaton:
        """A(T): states are the representatives, delta(q1..qm) = r(sigma(q1..qm))"""
        if check:
            if not self.is_closed():
                raise TableNotClosedError("The observation table is not closed")
            if not self.is_consistent():
                raise TableNotConsistentError("The observation table is not consistent")

        states = self.representatives()
        finals = frozenset(q for q in states if self.t_value(q) == 1)
        domain: List[Any] = list(self.alphabet.leaves) + states
        rules = []
        for m in self.alphabet.arities:
            for inputs in itertools.product(domain, repeat=m):
                rules.append(Rule(inputs, self.representative(Node(inputs))))
        self.logger.debug(f"Built automaton with {len(states)} states and {len(rules)} transitions")
        return TreeAutomaton(self.alphabet, tuple(states), finals, tuple(rules), deterministic=True)

    def snapshot(self, **extra) -> Dict[str, Any]:
        """Trace document of S, E and the known T values; unknown cells are null"""
        document = {
            'ell': self.ell,
            'rows': [format_tree(s) for s in self.rows],
            'columns': [format_context(c) for c in self.columns],
            'values': [
                [self.known_value(plug(c, s)) for c in self.columns]
                for s in self.rows
            ],
        }
        document.update(extra)
        return document
