# src/scripts/check_cover.py

import logging
from pathlib import Path
from typing import Optional, Union

from src.automata.determinize import determinize
from src.automata.equivalence import cover_equal
from src.grammar.cfg import Cfg, skeletal_alphabet
from src.grammar.dualities import na
from src.grammar.text_format import load_grammar
from src.skeletal.trees import SkeletalTree, format_tree


def cover_counterexample(target: Cfg, hypothesis: Cfg, ell: int) -> Optional[SkeletalTree]:
    """None when both grammars have the same skeletons up to depth ell, else the least witness"""
    alphabet = skeletal_alphabet(target).merge(skeletal_alphabet(hypothesis))
    return cover_equal(determinize(na(target, alphabet)), determinize(na(hypothesis, alphabet)), ell)


def check_cover(grammar_path: Union[str, Path], hypothesis_path: Union[str, Path],
                ell: int) -> Optional[SkeletalTree]:
    target = load_grammar(grammar_path)
    hypothesis = load_grammar(hypothesis_path)
    witness = cover_counterexample(target, hypothesis, ell)
    if witness is None:
        logging.info(f"{Path(hypothesis_path).name} covers {Path(grammar_path).name} for ell={ell}")
    else:
        logging.info(f"Counterexample {format_tree(witness)}")
    return witness


if __name__ == "__main__":
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s'
    )

    witness = check_cover("runs/grammars/example.cfg", "runs/learned/example-ell2.cfg", 2)
    print("equal" if witness is None else format_tree(witness))
