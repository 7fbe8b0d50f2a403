# src/learning/stats.py

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class SessionStats:
    """
    Counters of one learning session.

    equivalence_queries counts every query including the final accepted one;
    failed_equivalence counts those answered with a counterexample, which is
    what the step-count bound is stated for.
    """
    mode: str = "cover"
    ell: Optional[int] = None
    failed_closedness: int = 0
    failed_consistency: int = 0
    failed_equivalence: int = 0
    equivalence_queries: int = 0
    membership_queries: int = 0
    final_states: int = 0
    max_counterexample_size: int = 0
    terminals: int = 0
    max_arity: int = 0
    hypothesis_sizes: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, record: Dict[str, Any]) -> 'SessionStats':
        known = {k: v for k, v in record.items() if k in cls.__dataclass_fields__}
        return cls(**known)


def closedness_bound(n: int) -> int:
    return n * (n + 1) // 2


def consistency_bound(n: int) -> int:
    return n * (n - 1) // 2


def check_bounds(stats: SessionStats) -> List[str]:
    """Names of the step-count bounds the session exceeded, empty when all hold"""
    n = stats.final_states
    violations = []
    if stats.mode == "exact":
        # every failed check of the baseline adds one distinct row
        fixes = stats.failed_closedness + stats.failed_consistency
        if fixes > max(n - 1, 0):
            violations.append(f"row fixes ({fixes} > {max(n - 1, 0)})")
    else:
        if stats.failed_closedness > closedness_bound(n):
            violations.append(f"closedness ({stats.failed_closedness} > {closedness_bound(n)})")
        if stats.failed_consistency > consistency_bound(n):
            violations.append(f"consistency ({stats.failed_consistency} > {consistency_bound(n)})")
    if stats.failed_equivalence > n:
        violations.append(f"equivalence ({stats.failed_equivalence} > {n})")
    return violations


def stats_record(stats: SessionStats, **extra) -> Dict[str, Any]:
    """Stats document: the counters plus the bound verdicts"""
    record = stats.to_dict()
    n = stats.final_states
    violations = check_bounds(stats)
    record.update({
        'closedness_bound': closedness_bound(n),
        'consistency_bound': consistency_bound(n),
        'equivalence_bound': n,
        'bounds_ok': not violations,
        'violations': violations,
    })
    record.update(extra)
    return record
