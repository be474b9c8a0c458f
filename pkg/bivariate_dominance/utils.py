"""Logging setup, atomic file writes and worker-count helpers."""

from __future__ import annotations

import logging
import os
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional


LOG_FORMAT = "%(asctime)s %(levelname)s [%(name)s] %(message)s"


def setup_logging(level: int = logging.INFO) -> None:
    # stdout is reserved for report documents
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


@contextmanager
def atomic_write(path: Path) -> Iterator[Path]:
    tmp = path.with_suffix(path.suffix + ".tmp")
    yield tmp
    tmp.replace(path)


def resolve_workers(requested: Optional[int]) -> int:
    """Worker count for replicate pools: explicit value, else one per CPU."""
    if requested is not None and requested > 0:
        return int(requested)
    return max(1, os.cpu_count() or 1)
