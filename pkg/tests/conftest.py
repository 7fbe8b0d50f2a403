import logging

import pytest
import yaml

from src.grammar.text_format import parse_grammar
from src.learning.teacher import Teacher
from src.skeletal.ordering import SkeletalAlphabet

from tests.helpers import EXAMPLE_GRAMMAR


@pytest.fixture(autouse=True)
def _restore_root_logger():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers = handlers
    root.setLevel(level)


@pytest.fixture
def example_grammar():
    return parse_grammar(EXAMPLE_GRAMMAR)


@pytest.fixture
def example_alphabet():
    return SkeletalAlphabet(frozenset({1, 2}), ('a', 'b'))


@pytest.fixture
def example_teacher(example_grammar):
    return Teacher(example_grammar, ell=2)


@pytest.fixture
def grammar_file(tmp_path):
    def write(text, name="target.cfg"):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return path
    return write


@pytest.fixture
def config_file(tmp_path):
    """Settings with every artifact directory under tmp_path and a small generator"""
    runs = tmp_path / "runs"
    settings = {
        'paths': {key: str(runs / key) for key in ('grammars', 'learned', 'stats', 'traces', 'logs')},
        'learning': {
            'default_ell': 2,
            'teacher_policy': 'minimal',
            'iteration_ceiling_factor': 10,
            'enforce_bounds': False,
            'trace': False,
        },
        'random_grammar': {
            'max_nonterminals': 3,
            'max_terminals': 2,
            'max_rhs_length': 2,
            'max_productions': 5,
            'max_retries': 200,
        },
        'corpus': {'size': 3, 'ells': [2], 'seed': 0, 'max_workers': 2},
        'logging': {'level': 'WARNING', 'debug_file': False},
    }
    path = tmp_path / "settings.yaml"
    with open(path, 'w') as f:
        yaml.safe_dump(settings, f)
    return path
