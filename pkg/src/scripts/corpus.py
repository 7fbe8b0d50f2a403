# src/scripts/corpus.py

"""
Corpus harness: learn every target of a seeded random corpus for every ell,
check each result against the target and record one stats document per
session.
"""

import json
import logging
import random
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from tqdm import tqdm

from src.automata.cover_search import MAX_SEARCH_STATES, find_cover_automaton
from src.automata.equivalence import cover_equal, exact_equal
from src.generators.grammar_generator import GeneratorSettings, generate_grammar
from src.grammar.cfg import Cfg, skeletons_upto
from src.grammar.text_format import format_grammar
from src.learning.learner import LearnerSettings, audit_table_agreement, learn_cover, learn_exact
from src.learning.stats import stats_record
from src.learning.teacher import Teacher
from src.skeletal.trees import format_tree
from src.utils.config import ConfigManager
from src.utils.errors import SkeletalLearningError


# Enumeration and brute-force checks only run on targets this small
ENUMERATION_MAX_ELL = 3
MINIMALITY_MAX_ELL = 3
MINIMALITY_MAX_ARITY = 2
MINIMALITY_MAX_TERMINALS = 2


@dataclass(frozen=True)
class CorpusTask:
    index: int
    seed: int
    grammar: Cfg
    ell: Optional[int]


def _check_minimality(target: Cfg, teacher: Teacher, ell: int, final_states: int) -> Optional[bool]:
    """Whether no total DFTA with fewer states than the learned one covers the target; None when out of reach"""
    alphabet = teacher.alphabet
    if ell > MINIMALITY_MAX_ELL or alphabet.max_arity > MINIMALITY_MAX_ARITY:
        return None
    if len(alphabet.terminals) > MINIMALITY_MAX_TERMINALS:
        return None
    if final_states == 1:
        return True
    if final_states - 1 > MAX_SEARCH_STATES:
        return None
    # The learned automaton is a total cover, so only one size below it needs to be ruled out
    smaller = find_cover_automaton(skeletons_upto(target, ell), alphabet, ell, final_states - 1)
    return smaller is None


def run_session(task: CorpusTask, settings: LearnerSettings) -> Dict[str, Any]:
    """Learn one target and verify the result; a failing session becomes a record with an error"""
    name = f"target-{task.index:03d}"
    mode = "exact" if task.ell is None else "cover"
    record: Dict[str, Any] = {'target': name, 'seed': task.seed, 'mode': mode, 'ell': task.ell}
    try:
        teacher = Teacher(task.grammar, ell=task.ell)
        if task.ell is None:
            result = learn_exact(teacher, settings)
        else:
            result = learn_cover(teacher, settings)
        hypothesis = teacher.hypothesis_automaton(result.grammar)

        if task.ell is None:
            witness = exact_equal(teacher.target_dfta, hypothesis)
        else:
            witness = cover_equal(teacher.target_dfta, hypothesis, task.ell)
        record = stats_record(result.stats, **record)
        record['correct'] = witness is None
        if witness is not None:
            record['witness'] = format_tree(witness)

        if task.ell is not None and task.ell <= ENUMERATION_MAX_ELL:
            record['enumeration_agrees'] = (
                skeletons_upto(result.grammar, task.ell) == skeletons_upto(task.grammar, task.ell)
            )
        if result.table is not None:
            record['table_disagreements'] = len(audit_table_agreement(result.table, result.automaton))
        if task.ell is not None and record['correct']:
            record['minimal'] = _check_minimality(task.grammar, teacher, task.ell, result.stats.final_states)
    except SkeletalLearningError as e:
        logging.error(f"Session {name} ({mode}, ell={task.ell}) failed: {str(e)}", exc_info=True)
        record.update({'correct': False, 'error': f"{type(e).__name__}: {e}"})
    except Exception as e:
        logging.error(f"Unexpected error in session {name} ({mode}, ell={task.ell}): {str(e)}", exc_info=True)
        record.update({'correct': False, 'error': f"{type(e).__name__}: {e}"})
    return record


def build_corpus(size: int, seed: int, settings: GeneratorSettings) -> List[Cfg]:
    """Target i is drawn from a generator seeded with seed + i"""
    return [generate_grammar(random.Random(seed + i), settings) for i in range(size)]


def run_corpus(size: Optional[int] = None,
               ells: Optional[Sequence[int]] = None,
               seed: Optional[int] = None,
               max_workers: Optional[int] = None,
               include_exact: bool = True,
               output_dir: Optional[Union[str, Path]] = None,
               config: Optional[ConfigManager] = None) -> Dict[str, Any]:
    """Run the corpus and write one stats record per session plus a manifest.

    Returns:
        Dict: The manifest, with per-session records ordered by target and ell
    """
    config = config or ConfigManager()
    corpus_settings = config.corpus_settings
    size = int(corpus_settings.get('size', 100)) if size is None else size
    ells = list(corpus_settings.get('ells', [2, 3, 4])) if ells is None else list(ells)
    seed = int(corpus_settings.get('seed', 0)) if seed is None else seed
    max_workers = int(corpus_settings.get('max_workers', 4)) if max_workers is None else max_workers

    generator_settings = GeneratorSettings.from_config(config.random_grammar_settings)
    learning = config.learning_settings
    learner_settings = LearnerSettings(
        iteration_ceiling_factor=int(learning.get('iteration_ceiling_factor', 10)),
        enforce_bounds=False,
    )

    grammars = build_corpus(size, seed, generator_settings)
    modes: List[Optional[int]] = list(ells) + ([None] if include_exact else [])
    tasks = [
        CorpusTask(i, seed + i, grammar, ell)
        for i, grammar in enumerate(grammars)
        for ell in modes
    ]
    logging.info(f"Running {len(tasks)} sessions over {size} targets with {max_workers} workers")

    records: List[Dict[str, Any]] = []
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        futures = {executor.submit(run_session, task, learner_settings): task for task in tasks}
        for future in tqdm(as_completed(futures), total=len(futures), desc="Learning corpus"):
            records.append(future.result())

    order = {ell: n for n, ell in enumerate(modes)}
    records.sort(key=lambda r: (r['seed'], order[r['ell']]))

    _compare_state_counts(records)
    manifest = {
        'size': size,
        'seed': seed,
        'ells': ells,
        'sessions': len(records),
        'incorrect': sum(1 for r in records if not r.get('correct')),
        'bound_violations': sum(1 for r in records if r.get('bounds_ok') is False),
        'table_disagreements': sum(r.get('table_disagreements', 0) for r in records),
        'not_minimal': sum(1 for r in records if r.get('minimal') is False),
        'cover_above_exact': sum(1 for r in records if r.get('cover_le_exact') is False),
        'records': records,
    }

    base = Path(output_dir) if output_dir is not None else Path(config.artifact_paths.get('stats', 'runs/stats')) / 'corpus'
    _write_corpus(base, grammars, records, manifest)
    logging.info(
        f"Corpus done: {manifest['incorrect']} incorrect, {manifest['bound_violations']} bound violations, "
        f"{manifest['table_disagreements']} table cells disagreeing with the hypothesis"
    )
    return manifest


def _compare_state_counts(records: List[Dict[str, Any]]):
    """Mark cover sessions whose state count exceeds the exact baseline's on the same target"""
    exact = {r['seed']: r.get('final_states') for r in records if r['mode'] == 'exact'}
    for record in records:
        if record['mode'] == 'cover' and exact.get(record['seed']) is not None and 'final_states' in record:
            record['cover_le_exact'] = record['final_states'] <= exact[record['seed']]


def _write_corpus(base: Path, grammars: List[Cfg], records: List[Dict[str, Any]], manifest: Dict[str, Any]):
    base.mkdir(parents=True, exist_ok=True)
    for i, grammar in enumerate(grammars):
        with open(base / f"target-{i:03d}.cfg", 'w', encoding='utf-8') as f:
            f.write(format_grammar(grammar))
    for record in records:
        suffix = "exact" if record['ell'] is None else f"ell{record['ell']}"
        with open(base / f"{record['target']}-{suffix}.stats.json", 'w', encoding='utf-8') as f:
            json.dump(record, f, indent=2)
    with open(base / "manifest.json", 'w', encoding='utf-8') as f:
        json.dump(manifest, f, indent=2)


if __name__ == "__main__":
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s'
    )

    manifest = run_corpus(size=10)
    print(f"{manifest['sessions']} sessions, {manifest['incorrect']} incorrect")
