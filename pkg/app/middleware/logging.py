"""
Request logging middleware
Logs method, path, query, status and elapsed time of every HTTP request
"""
import logging
import time
from starlette.types import ASGIApp, Message, Receive, Scope, Send
from config.settings import get_settings

logger = logging.getLogger(__name__)

# 검증 엔드포인트는 샘플 수에 따라 오래 걸릴 수 있음
SLOW_REQUEST_SECONDS = 10.0
# 유리수 조합론 (groups, checks) 은 E8 에서도 수 초 이내
SLOW_EXACT_SECONDS = 2.0
NUMERIC_PREFIXES = ("/api/verify", "/api/moduli/sample")


def slow_threshold(path: str) -> float:
    """Seconds after which a request on this path is logged as slow"""
    return SLOW_REQUEST_SECONDS if path.startswith(NUMERIC_PREFIXES) else SLOW_EXACT_SECONDS


class RequestLoggingMiddleware:
    """
    Middleware to log API requests

    Adds an ``x-process-time`` response header with the elapsed seconds.
    """

    def __init__(self, app: ASGIApp) -> None:
        self.app = app

    async def __call__(self, scope: Scope, receive: Receive, send: Send) -> None:
        if scope["type"] != "http":
            await self.app(scope, receive, send)
            return

        settings = get_settings()
        start_time = time.perf_counter()

        method = scope["method"]
        path = scope["path"]
        query = scope.get("query_string", b"").decode()
        target = f"{path}?{query}" if query else path

        status_code = None

        async def send_with_timing(message: Message) -> None:
            nonlocal status_code
            if message["type"] == "http.response.start":
                status_code = message["status"]
                elapsed = time.perf_counter() - start_time
                headers = list(message.get("headers", []))
                headers.append((b"x-process-time", f"{elapsed:.4f}".encode()))
                message["headers"] = headers
            await send(message)

        if settings.DEBUG or settings.LOG_LEVEL == "DEBUG":
            logger.debug(f"Request: {method} {target}")

        await self.app(scope, receive, send_with_timing)

        process_time = time.perf_counter() - start_time
        message = f"{method} {target} - Status: {status_code or 'unknown'} - Time: {process_time:.3f}s"
        if process_time > slow_threshold(path):
            logger.warning(f"Slow request: {message}")
        else:
            logger.info(message)
