"""Run independent request documents on a thread pool, keeping input order."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
import logging
from typing import Any

from realsurf_app.constants.cli_constants import BATCH_WORKER_COUNT
from realsurf_app.core.models import Response

logger = logging.getLogger(__name__)


def run_batch(
    run_document: Callable[[Any], Response],
    documents: Sequence[Any],
    workers: int = BATCH_WORKER_COUNT,
) -> list[Response]:
    logger.info("Running batch of %d requests on %d workers", len(documents), workers)
    if not documents:
        return []
    with ThreadPoolExecutor(max_workers=max(1, workers), thread_name_prefix="RealSurfBatch") as pool:
        return list(pool.map(run_document, documents))
