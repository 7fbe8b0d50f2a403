# src/scripts/learn.py

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Union

from src.automata.export import save_automaton, save_dot
from src.grammar.text_format import load_grammar, save_grammar
from src.learning.learner import LearnerSettings, LearnResult, learn_cover, learn_exact
from src.learning.stats import stats_record
from src.learning.teacher import Teacher
from src.utils.config import ConfigManager


@dataclass
class LearnArtifacts:
    result: LearnResult
    paths: Dict[str, Path] = field(default_factory=dict)


def learner_settings(config: ConfigManager, trace: Optional[bool] = None) -> LearnerSettings:
    settings = config.learning_settings
    return LearnerSettings(
        iteration_ceiling_factor=int(settings.get('iteration_ceiling_factor', 10)),
        enforce_bounds=bool(settings.get('enforce_bounds', True)),
        trace=bool(settings.get('trace', False)) if trace is None else trace,
    )


def _write_json(document, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(document, f, indent=2)
    return path


def learn_grammar(grammar_path: Union[str, Path],
                  ell: Optional[int] = None,
                  exact: bool = False,
                  policy: Optional[str] = None,
                  seed: Optional[int] = None,
                  trace: Optional[bool] = None,
                  output_dir: Optional[Union[str, Path]] = None,
                  config: Optional[ConfigManager] = None) -> LearnArtifacts:
    """Learn a grammar for the target in grammar_path and write its artifacts.

    Args:
        grammar_path: Target grammar in the line-oriented grammar format
        ell: Cover bound; falls back to learning.default_ell (ignored when exact)
        exact: Run the exact baseline instead of the cover learner
        policy: Counterexample policy of the teacher
        seed: Seed of the random counterexample policy
        trace: Record a table snapshot after every mutation
        output_dir: Directory for every artifact; the configured paths otherwise

    Returns:
        LearnArtifacts: The learning result and the paths written
    """
    config = config or ConfigManager()
    settings = config.learning_settings
    grammar_path = Path(grammar_path)
    target = load_grammar(grammar_path)

    if exact:
        ell = None
    elif ell is None:
        ell = int(settings.get('default_ell', 2))
    policy = policy or settings.get('teacher_policy', 'minimal')
    if exact:
        policy = 'minimal'

    teacher = Teacher(target, ell=ell, policy=policy, seed=seed)
    run_settings = learner_settings(config, trace)
    mode = "exact" if exact else f"cover ell={ell}"
    logging.info(f"Learning {grammar_path.name} ({mode}, policy {teacher.policy.value})")

    result = learn_exact(teacher, run_settings) if exact else learn_cover(teacher, run_settings)

    stem = grammar_path.stem + ("-exact" if exact else f"-ell{ell}")
    if output_dir is not None:
        base = Path(output_dir)
        dirs = {key: base for key in ('learned', 'stats', 'traces')}
    else:
        paths = config.artifact_paths
        dirs = {key: Path(paths.get(key, 'runs')) for key in ('learned', 'stats', 'traces')}

    artifacts = LearnArtifacts(result)
    artifacts.paths['grammar'] = dirs['learned'] / f"{stem}.cfg"
    save_grammar(result.grammar, artifacts.paths['grammar'])
    artifacts.paths['automaton'] = dirs['learned'] / f"{stem}.json"
    save_automaton(result.automaton, artifacts.paths['automaton'])
    artifacts.paths['dot'] = dirs['learned'] / f"{stem}.dot"
    save_dot(result.automaton, artifacts.paths['dot'])

    record = stats_record(result.stats, grammar=grammar_path.name, policy=teacher.policy.value)
    artifacts.paths['stats'] = _write_json(record, dirs['stats'] / f"{stem}.stats.json")
    if result.trace is not None:
        artifacts.paths['trace'] = _write_json(result.trace, dirs['traces'] / f"{stem}.trace.json")

    logging.info(f"Learned grammar written to {artifacts.paths['grammar']}")
    return artifacts


if __name__ == "__main__":
    # Setup logging
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s'
    )

    # Example usage
    artifacts = learn_grammar("runs/grammars/example.cfg", ell=2)
    print(f"Learned {artifacts.result.stats.final_states} states")
