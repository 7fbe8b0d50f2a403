# src/utils/config.py

import yaml
from pathlib import Path
from typing import Dict, Any, List


# (section, key) pairs that must hold a positive integer when present
POSITIVE_SETTINGS = [
    ('learning', 'default_ell'),
    ('learning', 'iteration_ceiling_factor'),
    ('random_grammar', 'max_nonterminals'),
    ('random_grammar', 'max_terminals'),
    ('random_grammar', 'max_rhs_length'),
    ('random_grammar', 'max_productions'),
    ('random_grammar', 'max_retries'),
    ('corpus', 'max_workers'),
]


class ConfigManager:
    def __init__(self, config_path: str = "config/settings.yaml"):
        # Find the project root directory (where src/ is located)
        current_file = Path(__file__)
        project_root = current_file.parent.parent.parent

        # Absolute config paths are kept as given
        self.config_path = project_root / config_path
        self.project_root = project_root

        # Load and process configuration
        self._config = self._load_config()
        self._resolve_paths()
        self._validate()

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from YAML file."""
        if not self.config_path.exists():
            raise FileNotFoundError(
                f"Config file not found at {self.config_path}. "
                f"Working directory is {Path.cwd()}"
            )

        with open(self.config_path, 'r', encoding='utf-8') as f:
            config = yaml.safe_load(f) or {}
        if not isinstance(config, dict):
            raise ValueError(f"Config file {self.config_path} must hold a mapping of sections")
        return config

    def _resolve_paths(self):
        """Resolve all artifact directories relative to project root."""
        self._config['paths'] = {
            key: str(self.project_root / path)
            for key, path in self.section('paths').items()
        }

    def _validate(self):
        problems: List[str] = []
        for section, key in POSITIVE_SETTINGS:
            value = self.section(section).get(key)
            if value is not None and (isinstance(value, bool) or not isinstance(value, int) or value < 1):
                problems.append(f"{section}.{key} must be a positive integer, got {value!r}")

        ells = self.section('corpus').get('ells')
        if ells is not None and (not isinstance(ells, list) or not ells
                                 or any(isinstance(e, bool) or not isinstance(e, int) or e < 1 for e in ells)):
            problems.append(f"corpus.ells must be a non-empty list of positive integers, got {ells!r}")

        size = self.section('corpus').get('size')
        if size is not None and (not isinstance(size, int) or size < 0):
            problems.append(f"corpus.size must be a non-negative integer, got {size!r}")

        if problems:
            raise ValueError(f"Invalid settings in {self.config_path}: " + "; ".join(problems))

    def section(self, name: str) -> Dict[str, Any]:
        """One top-level section; a missing or empty section reads as {}."""
        return self._config.get(name) or {}

    @property
    def artifact_paths(self) -> Dict[str, str]:
        """Get artifact directory paths."""
        return self.section('paths')

    @property
    def learning_settings(self) -> Dict[str, Any]:
        """Get learner and teacher settings."""
        return self.section('learning')

    @property
    def random_grammar_settings(self) -> Dict[str, Any]:
        return self.section('random_grammar')

    @property
    def corpus_settings(self) -> Dict[str, Any]:
        return self.section('corpus')

    @property
    def logging_settings(self) -> Dict[str, Any]:
        return self.section('logging')
