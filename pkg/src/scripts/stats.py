# src/scripts/stats.py

import json
import logging
from pathlib import Path
from typing import Optional, Tuple, Union

import pandas as pd

from src.utils.config import ConfigManager


SUMMARY_COLUMNS = [
    'sessions',
    'mean_final_states',
    'max_final_states',
    'mean_membership_queries',
    'max_failed_closedness',
    'max_failed_consistency',
    'max_failed_equivalence',
    'bound_violations',
]


def load_stats(directory: Union[str, Path]) -> pd.DataFrame:
    """One row per stats record (*.stats.json) found under directory"""
    records = []
    for path in sorted(Path(directory).rglob('*.stats.json')):
        try:
            with open(path, 'r', encoding='utf-8') as f:
                record = json.load(f)
        except json.JSONDecodeError as e:
            logging.warning(f"Skipping unreadable stats record {path}: {e}")
            continue
        record['record'] = str(path.relative_to(directory))
        records.append(record)
    return pd.DataFrame.from_records(records)


def summarize_stats(directory: Union[str, Path]) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """Load the stats records of a directory and aggregate them per (mode, ell).

    Returns:
        Tuple of the per-run frame (counters next to their bounds) and the summary
    """
    frame = load_stats(directory)
    if frame.empty:
        logging.warning(f"No stats records found in {directory}")
        return frame, pd.DataFrame(columns=SUMMARY_COLUMNS)

    frame['ell'] = frame['ell'].fillna(-1).astype(int)
    frame['violated'] = ~frame['bounds_ok'].astype(bool)
    summary = frame.groupby(['mode', 'ell']).agg(
        sessions=('final_states', 'size'),
        mean_final_states=('final_states', 'mean'),
        max_final_states=('final_states', 'max'),
        mean_membership_queries=('membership_queries', 'mean'),
        max_failed_closedness=('failed_closedness', 'max'),
        max_failed_consistency=('failed_consistency', 'max'),
        max_failed_equivalence=('failed_equivalence', 'max'),
        bound_violations=('violated', 'sum'),
    )
    logging.info(f"Summarized {len(frame)} stats records, {int(frame['violated'].sum())} bound violations")
    return frame, summary


def write_summary(directory: Union[str, Path], output_path: Optional[Union[str, Path]] = None) -> pd.DataFrame:
    _, summary = summarize_stats(directory)
    if output_path is not None:
        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        summary.to_csv(output_path)
        logging.info(f"Summary written to {output_path}")
    return summary


if __name__ == "__main__":
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s'
    )

    config = ConfigManager()
    print(write_summary(config.artifact_paths['stats']).to_string())
