# src/scripts/random_grammar.py

import logging
import random
from pathlib import Path
from typing import Optional, Union

from src.generators.grammar_generator import GeneratorSettings, generate_grammar
from src.grammar.text_format import format_grammar
from src.utils.config import ConfigManager


def random_grammar_text(seed: int, settings: Optional[GeneratorSettings] = None,
                        config: Optional[ConfigManager] = None) -> str:
    if settings is None:
        config = config or ConfigManager()
        settings = GeneratorSettings.from_config(config.random_grammar_settings)
    grammar = generate_grammar(random.Random(seed), settings)
    return f"# random grammar, seed {seed}\n" + format_grammar(grammar)


def write_random_grammar(seed: int, output_path: Optional[Union[str, Path]] = None,
                         settings: Optional[GeneratorSettings] = None,
                         config: Optional[ConfigManager] = None) -> Path:
    """Generate a seeded random target grammar and save it"""
    config = config or ConfigManager()
    if output_path is None:
        output_path = Path(config.artifact_paths.get('grammars', 'runs/grammars')) / f"random-{seed}.cfg"
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, 'w', encoding='utf-8') as f:
        f.write(random_grammar_text(seed, settings, config))
    logging.info(f"Random grammar for seed {seed} written to {output_path}")
    return output_path


if __name__ == "__main__":
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s'
    )

    print(random_grammar_text(0), end='')
