# src/generators/grammar_generator.py

import logging
import random
from dataclasses import dataclass, fields
from typing import Any, Dict, List

from src.grammar.cfg import Cfg, Production, productive_nonterminals, reachable_nonterminals
from src.utils.errors import GrammarGenerationError


logger = logging.getLogger(__name__)

NONTERMINAL_NAMES = ("S", "A", "B", "C", "D", "E", "F", "G", "H")
TERMINAL_NAMES = ("a", "b", "c", "d", "e", "f", "g", "h")


@dataclass(frozen=True)
class GeneratorSettings:
    max_nonterminals: int = 4
    max_terminals: int = 3
    max_rhs_length: int = 3
    max_productions: int = 8
    max_retries: int = 200

    @classmethod
    def from_config(cls, settings: Dict[str, Any]) -> 'GeneratorSettings':
        names = {f.name for f in fields(cls)}
        return cls(**{k: int(v) for k, v in settings.items() if k in names})

    def validate(self):
        if not 1 <= self.max_nonterminals <= len(NONTERMINAL_NAMES):
            raise GrammarGenerationError(
                f"max_nonterminals must be between 1 and {len(NONTERMINAL_NAMES)}, got {self.max_nonterminals}"
            )
        if not 1 <= self.max_terminals <= len(TERMINAL_NAMES):
            raise GrammarGenerationError(
                f"max_terminals must be between 1 and {len(TERMINAL_NAMES)}, got {self.max_terminals}"
            )
        if self.max_rhs_length < 1:
            raise GrammarGenerationError(f"max_rhs_length must be positive, got {self.max_rhs_length}")
        if self.max_productions < 1:
            raise GrammarGenerationError(f"max_productions must be positive, got {self.max_productions}")
        if self.max_retries < 1:
            raise GrammarGenerationError(f"max_retries must be positive, got {self.max_retries}")


def _sample(rng: random.Random, settings: GeneratorSettings) -> Cfg:
    n_nonterminals = rng.randint(1, min(settings.max_nonterminals, settings.max_productions))
    n_terminals = rng.randint(1, settings.max_terminals)
    nonterminals = NONTERMINAL_NAMES[:n_nonterminals]
    terminals = TERMINAL_NAMES[:n_terminals]
    symbols = nonterminals + terminals

    n_productions = rng.randint(n_nonterminals, settings.max_productions)
    # Every nonterminal gets at least one production
    lhs_order: List[str] = list(nonterminals) + [
        rng.choice(nonterminals) for _ in range(n_productions - n_nonterminals)
    ]

    productions: List[Production] = []
    for lhs in lhs_order:
        length = rng.randint(1, settings.max_rhs_length)
        production = Production(lhs, tuple(rng.choice(symbols) for _ in range(length)))
        if production not in productions:
            productions.append(production)

    return Cfg(nonterminals, terminals, tuple(productions), "S")


def generate_grammar(rng: random.Random, settings: GeneratorSettings = GeneratorSettings()) -> Cfg:
    """Rejection-sample an epsilon-free grammar whose nonterminals are all productive and reachable"""
    settings.validate()
    for attempt in range(1, settings.max_retries + 1):
        grammar = _sample(rng, settings)
        everything = set(grammar.nonterminals)
        if productive_nonterminals(grammar) == everything and reachable_nonterminals(grammar) == everything:
            logger.debug(f"Accepted random grammar after {attempt} attempts")
            return grammar
    raise GrammarGenerationError(f"No productive and reachable grammar after {settings.max_retries} attempts")
