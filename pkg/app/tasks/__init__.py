"""
Sampling Tasks Module
시드 고정 배치 실행기 (thread pool)
"""
from app.tasks.batches import BATCH_SIZE, ResidualAccumulator, plan_batches, run_batches

__all__ = ["BATCH_SIZE", "ResidualAccumulator", "plan_batches", "run_batches"]
