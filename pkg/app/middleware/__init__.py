"""HTTP middleware"""
from .logging import SLOW_EXACT_SECONDS, SLOW_REQUEST_SECONDS, RequestLoggingMiddleware, slow_threshold

__all__ = ["RequestLoggingMiddleware", "SLOW_EXACT_SECONDS", "SLOW_REQUEST_SECONDS", "slow_threshold"]
