# src/scripts/enumerate.py

import logging
from pathlib import Path
from typing import List, Union

from src.grammar.cfg import skeletal_alphabet, skeletons_upto
from src.grammar.text_format import load_grammar
from src.skeletal.ordering import sort_trees
from src.skeletal.trees import format_tree


def enumerate_skeletons(grammar_path: Union[str, Path], ell: int) -> List[str]:
    """Skeletons of depth <= ell derivable in the grammar, in tree order"""
    grammar = load_grammar(grammar_path)
    alphabet = skeletal_alphabet(grammar)
    skeletons = sort_trees(alphabet, skeletons_upto(grammar, ell))
    logging.info(f"{Path(grammar_path).name} has {len(skeletons)} skeletons of depth <= {ell}")
    return [format_tree(t) for t in skeletons]


if __name__ == "__main__":
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s'
    )

    for line in enumerate_skeletons("runs/grammars/example.cfg", 2):
        print(line)
