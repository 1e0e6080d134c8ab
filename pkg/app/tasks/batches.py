"""
Sample batch runner
SeedSequence 로 배치별 난수열을 나누고 thread pool 에서 실행한 뒤 배치 순서대로 max-merge 합니다.

Batch boundaries depend only on the sample count, so a report is the same for any
QHAM_MAX_WORKERS value.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from config.settings import get_settings

logger = logging.getLogger(__name__)

BATCH_SIZE = 25


@dataclass
class ResidualAccumulator:
    """Per-identity max residual with the index of the worst sample"""

    maxima: Dict[str, float] = field(default_factory=dict)
    worst: Dict[str, int] = field(default_factory=dict)
    counts: Dict[str, int] = field(default_factory=dict)
    sums: Dict[str, float] = field(default_factory=dict)
    details: Dict[str, dict] = field(default_factory=dict)

    def record(self, name: str, residual: float, sample: Optional[int]) -> None:
        residual = float(residual)
        if not math.isfinite(residual):
            residual = math.inf
        self.counts[name] = self.counts.get(name, 0) + 1
        if name not in self.maxima or residual > self.maxima[name]:
            self.maxima[name] = residual
            self.worst[name] = sample

    def add(self, name: str, value: float) -> None:
        self.sums[name] = self.sums.get(name, 0.0) + float(value)

    def note(self, name: str, key: str, value) -> None:
        self.details.setdefault(name, {})[key] = value

    def merge(self, other: "ResidualAccumulator") -> "ResidualAccumulator":
        # 동률이면 먼저 병합된 배치의 sample 을 유지
        for name, residual in other.maxima.items():
            if name not in self.maxima or residual > self.maxima[name]:
                self.maxima[name] = residual
                self.worst[name] = other.worst[name]
        for name, count in other.counts.items():
            self.counts[name] = self.counts.get(name, 0) + count
        for name, value in other.sums.items():
            self.sums[name] = self.sums.get(name, 0.0) + value
        for name, info in other.details.items():
            self.details.setdefault(name, {}).update(info)
        return self


BatchTask = Callable[[np.random.Generator, int, int], ResidualAccumulator]


def plan_batches(samples: int, batch_size: int = BATCH_SIZE) -> List[Tuple[int, int]]:
    """(start index, count) pairs covering range(samples)"""
    if samples < 0:
        raise ValueError(f"Sample count must be non-negative, got {samples}")
    return [(start, min(batch_size, samples - start)) for start in range(0, samples, batch_size)]


def run_batches(
    task: BatchTask,
    samples: int,
    seed: int,
    max_workers: Optional[int] = None,
    batch_size: int = BATCH_SIZE,
) -> ResidualAccumulator:
    """
    Run a sampling task over independent batches and merge the results

    Args:
        task: (rng, start, count) -> ResidualAccumulator
        samples: 전체 샘플 수
        seed: SeedSequence 시드 (배치마다 spawn)
        max_workers: thread 수 (기본값 QHAM_MAX_WORKERS)
        batch_size: 배치 크기

    Returns:
        ResidualAccumulator: 배치 순서대로 병합된 결과
    """
    plan = plan_batches(samples, batch_size)
    merged = ResidualAccumulator()
    if not plan:
        return merged

    children = np.random.SeedSequence(seed).spawn(len(plan))
    workers = max_workers or get_settings().QHAM_MAX_WORKERS
    logger.debug(f"Running {samples} samples in {len(plan)} batches on {workers} workers (seed={seed})")

    def run_one(args):
        child, (start, count) = args
        return task(np.random.default_rng(child), start, count)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        for partial in executor.map(run_one, zip(children, plan)):
            merged.merge(partial)
    return merged
