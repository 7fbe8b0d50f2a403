import itertools
import random
from functools import lru_cache

from src.automata.tree_automaton import Rule, TreeAutomaton, trim
from src.skeletal.ordering import SkeletalAlphabet, enumerate_trees
from src.skeletal.trees import Leaf, Node, parse_context, parse_tree


EXAMPLE_GRAMMAR = """\
# S -> a | b | A b,  A -> a | A b
start: S
terminals: a b
S -> a
S -> b
S -> A b
A -> a
A -> A b
"""

EMPTY_GRAMMAR = """\
start: S
terminals: a
"""

ALL_UNARY_GRAMMAR = """\
start: S
terminals: a
S -> a
S -> S
"""

# Above this many trees a depth is checked on a seeded sample
EXHAUSTIVE_LIMIT = 2000
SAMPLE_SIZE = 300


def tree(text):
    return parse_tree(text)


def trees(*texts):
    return {parse_tree(text) for text in texts}


def ctx(text):
    return parse_context(text)


def count_trees(alphabet, max_depth):
    """Number of trees of depth 1..max_depth"""
    terms = len(alphabet.terminals)
    for _ in range(max_depth):
        terms = len(alphabet.terminals) + sum(terms ** m for m in alphabet.arities)
    return terms - len(alphabet.terminals)


@lru_cache(maxsize=None)
def cached_trees(alphabet, max_depth):
    return tuple(enumerate_trees(alphabet, max_depth))


def random_tree(rng, alphabet, depth):
    """A random tree of depth exactly depth"""
    if depth == 0:
        return rng.choice(alphabet.leaves)
    m = rng.choice(alphabet.arities)
    deep = rng.randrange(m)
    return Node(tuple(
        random_tree(rng, alphabet, depth - 1 if i == deep else rng.randint(0, depth - 1))
        for i in range(m)
    ))


def trees_to_check(alphabet, max_depth, seed=0):
    """Every tree up to max_depth when that is cheap, else every small tree plus a seeded deep sample"""
    exhaustive = max_depth
    while exhaustive > 1 and count_trees(alphabet, exhaustive) > EXHAUSTIVE_LIMIT:
        exhaustive -= 1
    checked = set(cached_trees(alphabet, exhaustive))
    rng = random.Random(seed)
    for depth in range(exhaustive + 1, max_depth + 1):
        checked.update(random_tree(rng, alphabet, depth) for _ in range(SAMPLE_SIZE))
    return checked


def random_nfta(rng, alphabet, max_states=3, max_rules=8):
    states = tuple(range(rng.randint(1, max_states)))
    domain = list(alphabet.leaves) + list(states)
    rules = set()
    for _ in range(rng.randint(1, max_rules)):
        m = rng.choice(alphabet.arities)
        rules.add(Rule(tuple(rng.choice(domain) for _ in range(m)), rng.choice(states)))
    finals = frozenset(q for q in states if rng.random() < 0.5)
    return TreeAutomaton(alphabet, states, finals, tuple(sorted(rules, key=repr)))


# Alphabets used by the fuzzed automaton tests, with the depth each is checked to
FUZZ_ALPHABETS = (
    (SkeletalAlphabet(frozenset({1, 2}), ('a', 'b')), 4),
    (SkeletalAlphabet(frozenset({2}), ('a',)), 4),
    (SkeletalAlphabet(frozenset({1}), ('a', 'b')), 4),
    (SkeletalAlphabet(frozenset({1, 2}), ('a',)), 4),
)


def minimal_dfta(a):
    """Reference Moore refinement of a total deterministic automaton, restricted to its reachable part"""
    a = trim(a)
    domain = list(a.alphabet.leaves) + list(a.states)
    delta = a.delta

    def signature(q, block):
        key = [block[q]]
        for m in a.alphabet.arities:
            for i in range(m):
                for others in itertools.product(domain, repeat=m - 1):
                    key.append(block[delta[others[:i] + (q,) + others[i:]]])
        return tuple(key)

    block = {q: int(q in a.finals) for q in a.states}
    while True:
        ids = {}
        refined = {q: ids.setdefault(signature(q, block), len(ids)) for q in a.states}
        if len(ids) == len(set(block.values())):
            break
        block = refined

    def rename(x):
        return x if isinstance(x, Leaf) else block[x]

    rules = {Rule(tuple(rename(x) for x in inputs), block[target]) for inputs, target in delta.items()}
    return TreeAutomaton(a.alphabet, tuple(sorted(set(block.values()))),
                         frozenset(block[q] for q in a.finals), tuple(sorted(rules, key=repr)), deterministic=True)
