# src/grammar/text_format.py

"""
Line-oriented grammar files:

    # comment
    start: S
    terminals: a b
    S -> A b
    A -> a

An optional `nonterminals:` line fixes N explicitly; otherwise N is the start
symbol followed by every other non-terminal symbol in order of appearance.
format_grammar never writes the `nonterminals:` line.
"""

from pathlib import Path
from typing import List, Optional, Union

from src.grammar.cfg import Cfg, Production, validate
from src.skeletal.trees import HOLE_TEXT, is_symbol_name
from src.utils.errors import GrammarFormatError, GrammarValidationError


ARROW = '->'


def _check_symbol(symbol: str, line_no: int):
    if symbol == HOLE_TEXT or symbol == ARROW or not is_symbol_name(symbol):
        raise GrammarFormatError(f"line {line_no}: invalid symbol {symbol!r}")


def parse_grammar(text: str, check: bool = True) -> Cfg:
    """Parse grammar text; with check=True the result must also validate"""
    start: Optional[str] = None
    terminals: Optional[List[str]] = None
    declared: Optional[List[str]] = None
    productions: List[Production] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue

        if line.startswith('start:'):
            symbols = line[len('start:'):].split()
            if len(symbols) != 1:
                raise GrammarFormatError(f"line {line_no}: expected exactly one start symbol")
            _check_symbol(symbols[0], line_no)
            start = symbols[0]
        elif line.startswith('terminals:'):
            terminals = line[len('terminals:'):].split()
            for symbol in terminals:
                _check_symbol(symbol, line_no)
        elif line.startswith('nonterminals:'):
            declared = line[len('nonterminals:'):].split()
            for symbol in declared:
                _check_symbol(symbol, line_no)
        else:
            tokens = line.split()
            if len(tokens) < 2 or tokens[1] != ARROW:
                raise GrammarFormatError(f"line {line_no}: expected 'X -> U1 U2 ...', got {line!r}")
            if len(tokens) == 2:
                raise GrammarFormatError(f"line {line_no}: empty rhs (epsilon productions are not allowed)")
            for symbol in tokens[:1] + tokens[2:]:
                _check_symbol(symbol, line_no)
            productions.append(Production(tokens[0], tuple(tokens[2:])))

    if start is None:
        raise GrammarFormatError("missing 'start:' line")
    if terminals is None:
        raise GrammarFormatError("missing 'terminals:' line")

    if declared is None:
        declared = [start]
        for production in productions:
            for symbol in (production.lhs,) + production.rhs:
                if symbol not in terminals and symbol not in declared:
                    declared.append(symbol)

    grammar = Cfg(tuple(declared), tuple(terminals), tuple(productions), start)
    if check:
        violation = validate(grammar)
        if violation is not None:
            raise GrammarValidationError(violation)
    return grammar


def format_grammar(g: Cfg) -> str:
    """The start line, the terminals line and one line per production; N is inferred on reading"""
    lines = [
        f"start: {g.start}",
        f"terminals: {' '.join(g.terminals)}",
    ]
    lines.extend(str(p) for p in g.productions)
    return '\n'.join(lines) + '\n'


def load_grammar(path: Union[str, Path]) -> Cfg:
    with open(path, 'r', encoding='utf-8') as f:
        return parse_grammar(f.read())


def save_grammar(g: Cfg, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(format_grammar(g))
